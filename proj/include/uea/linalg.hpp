#pragma once

#include <Eigen/Dense>
#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include "uea/errors.hpp"

namespace uea {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

/// Ordered subsystem dimensions of a composite system. Subsystem 0 is the
/// leftmost (most significant) tensor factor; flat indices are row-major
/// over the factors.
struct DimensionList {
    std::vector<int> dims;

    DimensionList() = default;
    DimensionList(std::initializer_list<int> d) : dims(d) { validate(); }
    explicit DimensionList(std::vector<int> d) : dims(std::move(d)) { validate(); }

    int size() const { return static_cast<int>(dims.size()); }
    int operator[](int i) const { return dims[static_cast<std::size_t>(i)]; }

    long total() const {
        long p = 1;
        for (int d : dims) p *= d;
        return p;
    }

    void validate() const {
        for (int d : dims)
            if (d <= 0) throw DimensionError("DimensionList: dimensions must be positive");
    }

    /// Dimensions of a subset of subsystems, in the given order.
    DimensionList select(const std::vector<int>& idx) const;

    std::string to_string() const;
};

/// Kronecker product with the convention
/// (A (x) B)[i*rowsB + k, j*colsB + l] = A[i,j] * B[k,l].
Matrix tensor_product(const Matrix& a, const Matrix& b);

/// Left-to-right Kronecker product of a list of factors (empty list -> 1x1 identity).
Matrix tensor_all(const std::vector<Matrix>& factors);
Vector tensor_all(const std::vector<Vector>& factors);

/// Reorders tensor factors. perm[i] is the old position of the subsystem that
/// lands at new position i; the returned state lives on dims.select(perm).
Matrix permute_subsystems(const Matrix& rho, const DimensionList& dims, const std::vector<int>& perm);
Vector permute_subsystems(const Vector& psi, const DimensionList& dims, const std::vector<int>& perm);

/// Partial trace onto the subsystems listed in keep (kept in their original
/// relative order). Trace is preserved.
Matrix partial_trace(const Matrix& rho, const DimensionList& dims, const std::vector<int>& keep);

/// Applies op to one subsystem of a pure-state vector: psi must live on dims,
/// op maps dims[target] to any output dimension. The result lives on dims
/// with dims[target] replaced by op.rows().
Vector apply_to_subsystem_vec(const Matrix& op, const Vector& psi, const DimensionList& dims, int target);

/// Same for a density operator: returns op rho op^dagger on the updated dims.
Matrix apply_to_subsystem_op(const Matrix& op, const Matrix& rho, const DimensionList& dims, int target);

/// Real eigenvalues of a Hermitian matrix, descending. The input is
/// symmetrized as (H + H^dagger)/2 after checking Hermiticity within tol.
RealVector hermitian_eigenvalues(const Matrix& h, double tol = 1e-10);

/// Von Neumann entropy in bits: -sum_i lambda_i log2 lambda_i with
/// eigenvalues below 1e-12 clipped to zero. Validates that rho is a state.
double von_neumann_entropy(const Matrix& rho);

/// (1/2) || rho - sigma ||_1 for Hermitian inputs of equal dimension.
double trace_distance(const Matrix& rho, const Matrix& sigma);

/// Outcome of checking the density-operator conditions on a matrix.
struct DensityReport {
    bool hermitian = false;
    bool unit_trace = false;
    bool positive = false;
    double max_hermiticity_violation = 0.0;
    double trace_deviation = 0.0;
    double min_eigenvalue = 0.0;

    bool ok() const { return hermitian && unit_trace && positive; }
    std::string describe() const;
};

/// Checks Hermiticity (max |rho - rho^dagger| <= tol), unit trace
/// (|tr - 1| <= tol) and positivity (min eigenvalue >= -tol).
DensityReport validate_density(const Matrix& rho, double tol = 1e-8);

/// Throws ValidationError unless validate_density passes.
void require_density(const Matrix& rho, double tol = 1e-8, const std::string& context = "");

/// |psi><psi|
Matrix dyad(const Vector& psi);

} // namespace uea
