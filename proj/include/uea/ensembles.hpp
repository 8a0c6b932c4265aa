#pragma once

#include <string>
#include <vector>

#include "uea/channels.hpp"
#include "uea/linalg.hpp"

namespace uea {

/// Subsystem labels of a conditional block rho^x. Fixed order G2 < B < E.
enum class Sub : int { G2 = 0, B = 1, E = 2 };

/// An input ensemble: letter distribution p_x, pure bipartite resource state
/// phi on G1 (x) G2, and one encoder per letter mapping G1 into the channel
/// input A.
struct Ensemble {
    RealVector p_x;
    Vector phi; // on G1 (x) G2, G1 first
    int d_g1 = 0;
    int d_g2 = 0;
    std::vector<Matrix> encoders; // F^(x): d_a x d_g1, isometries
    std::string label;

    Ensemble(RealVector p, Vector phi_vec, int d_g1_, int d_g2_, std::vector<Matrix> enc,
             std::string label_ = "");

    int alphabet_size() const { return static_cast<int>(p_x.size()); }
    int d_a() const { return static_cast<int>(encoders.front().rows()); }

    /// Encoded pure state psi^x on A (x) G2 (A first).
    Vector encoded_state(int x) const;
};

/// Classical-quantum state stored block-wise: omega = sum_x p(x)|x><x| (x) rho^x
/// with each block on the subsystems named by dims (canonically G2, B, E).
struct CqState {
    struct Block {
        double weight;
        Matrix rho;
    };
    std::vector<Block> blocks;
    DimensionList dims;

    int block_dim() const { return static_cast<int>(dims.total()); }

    /// Average state sum_x p(x) rho^x.
    Matrix average() const;

    /// The equivalent explicit block-diagonal matrix with the classical
    /// register as the leading tensor factor.
    Matrix explicit_matrix() const;
};

/// |u_beta> = sqrt(1-beta)|00> + sqrt(beta)|Phi> with Phi the maximally
/// entangled qubit pair, normalized. Squared norm before normalization is
/// 1 + sqrt(2 beta (1-beta)).
Vector build_phi(double beta);

/// Per-letter encoders {F0 = I, F1 = Pauli X} on a qubit.
std::vector<Matrix> bitflip_encoders();

/// The one-parameter qubit family used in the worked example: uniform p_x,
/// phi = build_phi(beta), bit-flip encoders.
Ensemble paper_ensemble(double beta);

/// omega_{X G2 B E}: one block per letter, rho^x = (id (x) N)(psi^x) arranged
/// on (G2, B, E).
CqState build_omega(const WiretapChannel& chan, const Ensemble& ens);

/// Block-wise partial trace onto a subset of {G2, B, E}; weights unchanged,
/// kept subsystems stay in canonical order.
CqState marginal(const CqState& cq, const std::vector<Sub>& keep);

} // namespace uea
