#pragma once

#include <string>
#include <utility>
#include <vector>

#include "uea/linalg.hpp"

namespace uea {

/// A completely positive trace-preserving map given by Kraus operators.
struct KrausSet {
    std::vector<Matrix> operators;
    int d_in = 0;
    int d_out = 0;
    std::string label;

    KrausSet(std::vector<Matrix> ops, std::string label_ = "");

    /// Kraus-sum channel application: sum_i K_i rho K_i^dagger.
    Matrix apply(const Matrix& rho) const;
};

/// Isometric extension V: A -> B (x) E of a channel; the wiretap model keeps
/// both outputs, legitimate B first and environment E second.
struct WiretapChannel {
    Matrix isometry; // (d_b * d_e) x d_a
    int d_a = 0;
    int d_b = 0;
    int d_e = 0;
    std::string label;

    /// V rho V^dagger on B (x) E.
    Matrix apply(const Matrix& rho) const;

    Matrix b_marginal(const Matrix& rho) const;
    Matrix e_marginal(const Matrix& rho) const;
};

/// Amplitude damping Kraus pair: K0 = |0><0| + sqrt(1-gamma)|1><1|,
/// K1 = sqrt(gamma)|0><1|.
KrausSet amplitude_damping(double gamma);

/// Stinespring dilation V = sum_i K_i (x) |i>_E with d_e = number of Kraus
/// operators; the environment basis follows Kraus-operator index order.
WiretapChannel isometric_extension(const KrausSet& kraus);

/// Applies the channel isometry to one subsystem of a composite state. The
/// target slot is replaced by the (B, E) pair in place; returns the new state
/// and its dimension list.
std::pair<Matrix, DimensionList> apply_to_subsystem(const WiretapChannel& chan, const Matrix& rho,
                                                    const DimensionList& dims, int target);

/// Vector form of apply_to_subsystem for pure states.
std::pair<Vector, DimensionList> apply_to_subsystem(const WiretapChannel& chan, const Vector& psi,
                                                    const DimensionList& dims, int target);

/// Regression check for the qubit amplitude damping family: trace distance
/// between Eve's marginal of the gamma-extension and the amplitude damping
/// channel of parameter 1-gamma applied directly. Expected ~0 (<= 1e-10).
double complementary_marginal_check(double gamma, const Matrix& rho);

} // namespace uea
