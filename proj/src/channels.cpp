#include "uea/channels.hpp"

#include <cmath>

namespace uea {

KrausSet::KrausSet(std::vector<Matrix> ops, std::string label_)
    : operators(std::move(ops)), label(std::move(label_)) {
    if (operators.empty()) throw ValidationError("KrausSet: at least one operator required");
    d_out = static_cast<int>(operators.front().rows());
    d_in = static_cast<int>(operators.front().cols());
    for (const auto& k : operators)
        if (k.rows() != d_out || k.cols() != d_in)
            throw DimensionError("KrausSet: operators must share a common shape");
    Matrix completeness = Matrix::Zero(d_in, d_in);
    for (const auto& k : operators) completeness += k.adjoint() * k;
    const double viol = (completeness - Matrix::Identity(d_in, d_in)).cwiseAbs().maxCoeff();
    if (viol > 1e-10)
        throw ValidationError("KrausSet: completeness sum K^dagger K = I violated by " + std::to_string(viol));
}

Matrix KrausSet::apply(const Matrix& rho) const {
    if (rho.rows() != d_in || rho.cols() != d_in)
        throw DimensionError("KrausSet::apply: state dimension does not match channel input");
    Matrix out = Matrix::Zero(d_out, d_out);
    for (const auto& k : operators) out += k * rho * k.adjoint();
    return out;
}

Matrix WiretapChannel::apply(const Matrix& rho) const {
    if (rho.rows() != d_a || rho.cols() != d_a)
        throw DimensionError("WiretapChannel::apply: state dimension does not match channel input");
    return isometry * rho * isometry.adjoint();
}

Matrix WiretapChannel::b_marginal(const Matrix& rho) const {
    return partial_trace(apply(rho), DimensionList{d_b, d_e}, {0});
}

Matrix WiretapChannel::e_marginal(const Matrix& rho) const {
    return partial_trace(apply(rho), DimensionList{d_b, d_e}, {1});
}

KrausSet amplitude_damping(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw ValidationError("amplitude_damping: gamma must lie in [0,1]");
    Matrix k0 = Matrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    Matrix k1 = Matrix::Zero(2, 2);
    k1(0, 1) = std::sqrt(gamma);
    return KrausSet({k0, k1}, "amplitude_damping gamma=" + std::to_string(gamma));
}

WiretapChannel isometric_extension(const KrausSet& kraus) {
    const int d_e = static_cast<int>(kraus.operators.size());
    WiretapChannel chan;
    chan.d_a = kraus.d_in;
    chan.d_b = kraus.d_out;
    chan.d_e = d_e;
    chan.label = kraus.label;
    chan.isometry = Matrix::Zero(static_cast<Eigen::Index>(chan.d_b) * d_e, chan.d_a);
    for (int e = 0; e < d_e; ++e)
        for (int b = 0; b < chan.d_b; ++b)
            for (int a = 0; a < chan.d_a; ++a)
                chan.isometry(static_cast<Eigen::Index>(b) * d_e + e, a) =
                    kraus.operators[static_cast<std::size_t>(e)](b, a);
    const double viol = (chan.isometry.adjoint() * chan.isometry - Matrix::Identity(chan.d_a, chan.d_a))
                            .cwiseAbs()
                            .maxCoeff();
    if (viol > 1e-10)
        throw ValidationError("isometric_extension: V^dagger V = I violated by " + std::to_string(viol));
    return chan;
}

namespace {

DimensionList split_target(const DimensionList& dims, int target, int d_b, int d_e) {
    std::vector<int> out;
    out.reserve(dims.dims.size() + 1);
    for (int i = 0; i < dims.size(); ++i) {
        if (i == target) {
            out.push_back(d_b);
            out.push_back(d_e);
        } else {
            out.push_back(dims[i]);
        }
    }
    return DimensionList(out);
}

} // namespace

std::pair<Matrix, DimensionList> apply_to_subsystem(const WiretapChannel& chan, const Matrix& rho,
                                                    const DimensionList& dims, int target) {
    if (target < 0 || target >= dims.size() || dims[target] != chan.d_a)
        throw DimensionError("apply_to_subsystem: target subsystem does not match channel input dimension");
    Matrix out = apply_to_subsystem_op(chan.isometry, rho, dims, target);
    return {std::move(out), split_target(dims, target, chan.d_b, chan.d_e)};
}

std::pair<Vector, DimensionList> apply_to_subsystem(const WiretapChannel& chan, const Vector& psi,
                                                    const DimensionList& dims, int target) {
    if (target < 0 || target >= dims.size() || dims[target] != chan.d_a)
        throw DimensionError("apply_to_subsystem: target subsystem does not match channel input dimension");
    Vector out = apply_to_subsystem_vec(chan.isometry, psi, dims, target);
    return {std::move(out), split_target(dims, target, chan.d_b, chan.d_e)};
}

double complementary_marginal_check(double gamma, const Matrix& rho) {
    const WiretapChannel chan = isometric_extension(amplitude_damping(gamma));
    const Matrix eve = chan.e_marginal(rho);
    const Matrix direct = amplitude_damping(1.0 - gamma).apply(rho);
    return trace_distance(eve, direct);
}

} // namespace uea
