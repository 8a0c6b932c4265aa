#pragma once

// Seeded random test fixtures, independent of the library's RNG helpers.

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "uea/linalg.hpp"

namespace testutil {

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double gauss(std::mt19937_64& rng) {
    // Box-Muller; avoids the implementation-defined std::normal_distribution.
    double u1 = unit_uniform(rng), u2 = unit_uniform(rng);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline uea::Matrix ginibre(int rows, int cols, std::mt19937_64& rng) {
    uea::Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = uea::Complex(gauss(rng), gauss(rng));
    return g;
}

inline uea::Matrix random_density(int dim, std::mt19937_64& rng) {
    uea::Matrix g = ginibre(dim, dim, rng);
    uea::Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

inline uea::Matrix random_unitary(int dim, std::mt19937_64& rng) {
    uea::Matrix g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<uea::Matrix> qr(g);
    uea::Matrix q = qr.householderQ();
    uea::Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        uea::Complex d = r(i, i);
        q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : 1.0;
    }
    return q;
}

inline uea::Vector random_pure(int dim, std::mt19937_64& rng) {
    uea::Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = uea::Complex(gauss(rng), gauss(rng));
    return v / v.norm();
}

/// Independent scalar oracle: binary entropy in bits.
inline double binary_entropy(double p) {
    double s = 0.0;
    if (p > 0.0) s -= p * std::log2(p);
    if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
    return s;
}

} // namespace testutil
