#include "uea/ensembles.hpp"

#include <algorithm>
#include <cmath>

namespace uea {

Ensemble::Ensemble(RealVector p, Vector phi_vec, int d_g1_, int d_g2_, std::vector<Matrix> enc,
                   std::string label_)
    : p_x(std::move(p)), phi(std::move(phi_vec)), d_g1(d_g1_), d_g2(d_g2_),
      encoders(std::move(enc)), label(std::move(label_)) {
    if (p_x.size() == 0 || static_cast<int>(encoders.size()) != p_x.size())
        throw ValidationError("Ensemble: need one encoder per letter of p_x");
    if (p_x.minCoeff() < 0.0 || std::abs(p_x.sum() - 1.0) > 1e-12)
        throw ValidationError("Ensemble: p_x must be a probability vector (sum 1 to 1e-12)");
    if (static_cast<long>(d_g1) * d_g2 != phi.size())
        throw DimensionError("Ensemble: phi does not live on G1 (x) G2");
    if (std::abs(phi.norm() - 1.0) > 1e-12)
        throw ValidationError("Ensemble: phi must be a unit vector");
    for (const auto& f : encoders) {
        if (f.cols() != d_g1) throw DimensionError("Ensemble: encoder input must be G1");
        const double viol = (f.adjoint() * f - Matrix::Identity(d_g1, d_g1)).cwiseAbs().maxCoeff();
        if (viol > 1e-10)
            throw ValidationError("Ensemble: encoder is not an isometry (violation " +
                                  std::to_string(viol) + ")");
    }
}

Vector Ensemble::encoded_state(int x) const {
    if (x < 0 || x >= alphabet_size()) throw ValidationError("Ensemble: letter out of range");
    // (F^(x) (x) id) phi : G1 G2 -> A G2
    return apply_to_subsystem_vec(encoders[static_cast<std::size_t>(x)], phi,
                                  DimensionList{d_g1, d_g2}, 0);
}

Matrix CqState::average() const {
    Matrix avg = Matrix::Zero(block_dim(), block_dim());
    for (const auto& b : blocks) avg += b.weight * b.rho;
    return avg;
}

Matrix CqState::explicit_matrix() const {
    const int n = static_cast<int>(blocks.size());
    const int d = block_dim();
    Matrix full = Matrix::Zero(static_cast<Eigen::Index>(n) * d, static_cast<Eigen::Index>(n) * d);
    for (int x = 0; x < n; ++x)
        full.block(static_cast<Eigen::Index>(x) * d, static_cast<Eigen::Index>(x) * d, d, d) =
            blocks[static_cast<std::size_t>(x)].weight * blocks[static_cast<std::size_t>(x)].rho;
    return full;
}

Vector build_phi(double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw ValidationError("build_phi: beta must lie in [0,1]");
    Vector u = Vector::Zero(4);
    const double r = 1.0 / std::sqrt(2.0);
    u(0) = std::sqrt(1.0 - beta) + std::sqrt(beta) * r; // |00>
    u(3) = std::sqrt(beta) * r;                         // |11>
    return u / u.norm();
}

std::vector<Matrix> bitflip_encoders() {
    Matrix f0 = Matrix::Identity(2, 2);
    Matrix f1 = Matrix::Zero(2, 2);
    f1(0, 1) = 1.0;
    f1(1, 0) = 1.0;
    return {f0, f1};
}

Ensemble paper_ensemble(double beta) {
    RealVector p(2);
    p << 0.5, 0.5;
    return Ensemble(p, build_phi(beta), 2, 2, bitflip_encoders(),
                    "paper_iv_c beta=" + std::to_string(beta));
}

CqState build_omega(const WiretapChannel& chan, const Ensemble& ens) {
    if (ens.d_a() != chan.d_a)
        throw DimensionError("build_omega: encoder output does not match channel input dimension");
    CqState cq;
    cq.dims = DimensionList{ens.d_g2, chan.d_b, chan.d_e};
    cq.blocks.reserve(static_cast<std::size_t>(ens.alphabet_size()));
    for (int x = 0; x < ens.alphabet_size(); ++x) {
        // psi^x on (A, G2) -> reorder to (G2, A) -> channel on A -> (G2, B, E)
        Vector psi_ag = ens.encoded_state(x);
        Vector psi_ga = permute_subsystems(psi_ag, DimensionList{ens.d_a(), ens.d_g2}, {1, 0});
        auto [out, dims_out] = apply_to_subsystem(chan, psi_ga, DimensionList{ens.d_g2, ens.d_a()}, 1);
        (void)dims_out;
        cq.blocks.push_back({ens.p_x(x), dyad(out)});
    }
    return cq;
}

CqState marginal(const CqState& cq, const std::vector<Sub>& keep) {
    if (keep.empty()) throw DimensionError("marginal: keep set must be nonempty");
    std::vector<int> idx;
    idx.reserve(keep.size());
    for (Sub s : keep) idx.push_back(static_cast<int>(s));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());

    CqState out;
    out.dims = cq.dims.select(idx);
    out.blocks.reserve(cq.blocks.size());
    const bool keep_all = static_cast<int>(idx.size()) == cq.dims.size();
    for (const auto& b : cq.blocks)
        out.blocks.push_back({b.weight, keep_all ? b.rho : partial_trace(b.rho, cq.dims, idx)});
    return out;
}

} // namespace uea
