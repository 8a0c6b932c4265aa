#include "uea/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace uea {

namespace {

// Flat strides for a row-major multi-index over dims.
std::vector<long> strides_of(const DimensionList& dims) {
    std::vector<long> s(dims.dims.size(), 1);
    for (int i = dims.size() - 2; i >= 0; --i)
        s[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i + 1)] * dims[i + 1];
    return s;
}

// For each flat index of the subsystems in subset, the contribution to the
// flat index of the full system.
std::vector<long> subset_offsets(const DimensionList& dims, const std::vector<int>& subset) {
    const auto full = strides_of(dims);
    long count = 1;
    for (int s : subset) count *= dims[s];
    std::vector<long> offsets(static_cast<std::size_t>(count), 0);
    long repeat = count;
    for (int s : subset) {
        const long d = dims[s];
        repeat /= d;
        const long stride = full[static_cast<std::size_t>(s)];
        for (long i = 0; i < count; ++i) {
            const long digit = (i / repeat) % d;
            offsets[static_cast<std::size_t>(i)] += digit * stride;
        }
    }
    return offsets;
}

void check_subset(const DimensionList& dims, const std::vector<int>& subset, const char* what) {
    for (int s : subset)
        if (s < 0 || s >= dims.size())
            throw DimensionError(std::string(what) + ": subsystem index out of range");
    for (std::size_t i = 1; i < subset.size(); ++i)
        if (subset[i] <= subset[i - 1])
            throw DimensionError(std::string(what) + ": subsystem indices must be strictly increasing");
}

void check_square_on(const Matrix& rho, const DimensionList& dims, const char* what) {
    if (rho.rows() != rho.cols())
        throw DimensionError(std::string(what) + ": matrix must be square");
    if (rho.rows() != dims.total())
        throw DimensionError(std::string(what) + ": dimension list does not match matrix size");
}

} // namespace

DimensionList DimensionList::select(const std::vector<int>& idx) const {
    std::vector<int> out;
    out.reserve(idx.size());
    for (int i : idx) {
        if (i < 0 || i >= size()) throw DimensionError("DimensionList::select: index out of range");
        out.push_back(dims[static_cast<std::size_t>(i)]);
    }
    return DimensionList(out);
}

std::string DimensionList::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
    os << "]";
    return os.str();
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix tensor_all(const std::vector<Matrix>& factors) {
    Matrix out = Matrix::Identity(1, 1);
    for (const auto& f : factors) out = tensor_product(out, f);
    return out;
}

Vector tensor_all(const std::vector<Vector>& factors) {
    Vector out = Vector::Ones(1);
    for (const auto& f : factors) {
        Vector next(out.size() * f.size());
        for (Eigen::Index i = 0; i < out.size(); ++i)
            next.segment(i * f.size(), f.size()) = out(i) * f;
        out = std::move(next);
    }
    return out;
}

namespace {

// map[new_flat] = old_flat for the given reordering of tensor factors.
std::vector<long> permutation_index_map(const DimensionList& dims, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != dims.size())
        throw DimensionError("permute_subsystems: permutation size mismatch");
    std::vector<bool> seen(perm.size(), false);
    for (int p : perm) {
        if (p < 0 || p >= dims.size() || seen[static_cast<std::size_t>(p)])
            throw DimensionError("permute_subsystems: not a permutation");
        seen[static_cast<std::size_t>(p)] = true;
    }
    const auto old_strides = strides_of(dims);
    const DimensionList new_dims = dims.select(perm);
    const auto new_strides = strides_of(new_dims);
    const long total = dims.total();
    std::vector<long> map(static_cast<std::size_t>(total), 0);
    for (long idx = 0; idx < total; ++idx) {
        long old_flat = 0;
        for (int k = 0; k < new_dims.size(); ++k) {
            const long digit = (idx / new_strides[static_cast<std::size_t>(k)]) % new_dims[k];
            old_flat += digit * old_strides[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
        }
        map[static_cast<std::size_t>(idx)] = old_flat;
    }
    return map;
}

} // namespace

Matrix permute_subsystems(const Matrix& rho, const DimensionList& dims, const std::vector<int>& perm) {
    check_square_on(rho, dims, "permute_subsystems");
    const auto map = permutation_index_map(dims, perm);
    const long n = static_cast<long>(map.size());
    Matrix out(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            out(i, j) = rho(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
    return out;
}

Vector permute_subsystems(const Vector& psi, const DimensionList& dims, const std::vector<int>& perm) {
    if (psi.size() != dims.total())
        throw DimensionError("permute_subsystems: dimension list does not match vector size");
    const auto map = permutation_index_map(dims, perm);
    Vector out(psi.size());
    for (long i = 0; i < psi.size(); ++i) out(i) = psi(map[static_cast<std::size_t>(i)]);
    return out;
}

Matrix partial_trace(const Matrix& rho, const DimensionList& dims, const std::vector<int>& keep) {
    check_square_on(rho, dims, "partial_trace");
    check_subset(dims, keep, "partial_trace");
    if (keep.empty()) throw DimensionError("partial_trace: keep set must be nonempty");

    std::vector<int> traced;
    for (int i = 0; i < dims.size(); ++i)
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) traced.push_back(i);

    const auto keep_off = subset_offsets(dims, keep);
    const auto trace_off = subset_offsets(dims, traced);
    const long k = static_cast<long>(keep_off.size());

    Matrix out = Matrix::Zero(k, k);
    for (long a = 0; a < k; ++a)
        for (long b = 0; b < k; ++b) {
            Complex acc = 0.0;
            for (long t : trace_off)
                acc += rho(keep_off[static_cast<std::size_t>(a)] + t,
                           keep_off[static_cast<std::size_t>(b)] + t);
            out(a, b) = acc;
        }
    return out;
}

namespace {

// Shared index walk for applying op to one tensor slot. in_cols==1 handles vectors.
Matrix apply_slot(const Matrix& op, const Matrix& in, const DimensionList& dims, int target) {
    if (target < 0 || target >= dims.size())
        throw DimensionError("apply_to_subsystem: target out of range");
    if (op.cols() != dims[target])
        throw DimensionError("apply_to_subsystem: operator input dimension does not match target subsystem");

    long pre = 1, post = 1;
    for (int i = 0; i < target; ++i) pre *= dims[i];
    for (int i = target + 1; i < dims.size(); ++i) post *= dims[i];
    const long din = op.cols(), dout = op.rows();

    Matrix out = Matrix::Zero(pre * dout * post, in.cols());
    for (long p = 0; p < pre; ++p)
        for (long q = 0; q < post; ++q)
            for (long r = 0; r < dout; ++r) {
                const long oi = (p * dout + r) * post + q;
                for (long c = 0; c < din; ++c) {
                    const Complex w = op(r, c);
                    if (w == Complex(0.0)) continue;
                    const long ii = (p * din + c) * post + q;
                    out.row(oi) += w * in.row(ii);
                }
            }
    return out;
}

} // namespace

Vector apply_to_subsystem_vec(const Matrix& op, const Vector& psi, const DimensionList& dims, int target) {
    if (psi.size() != dims.total())
        throw DimensionError("apply_to_subsystem_vec: dimension list does not match vector size");
    return apply_slot(op, psi, dims, target);
}

Matrix apply_to_subsystem_op(const Matrix& op, const Matrix& rho, const DimensionList& dims, int target) {
    check_square_on(rho, dims, "apply_to_subsystem_op");
    Matrix half = apply_slot(op, rho, dims, target);          // op rho
    Matrix full = apply_slot(op, half.adjoint(), dims, target); // op rho^dagger op^dagger, adjointed below
    return full.adjoint();
}

RealVector hermitian_eigenvalues(const Matrix& h, double tol) {
    if (h.rows() != h.cols()) throw DimensionError("hermitian_eigenvalues: matrix must be square");
    const double viol = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (viol > tol)
        throw ValidationError("hermitian_eigenvalues: matrix is not Hermitian (max violation " +
                              std::to_string(viol) + ")");
    const Matrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw ValidationError("hermitian_eigenvalues: eigensolver failed to converge");
    RealVector ev = solver.eigenvalues();
    std::reverse(ev.begin(), ev.end());
    return ev;
}

double von_neumann_entropy(const Matrix& rho) {
    require_density(rho, 1e-8, "von_neumann_entropy");
    const RealVector ev = hermitian_eigenvalues(rho, 1e-8);
    double s = 0.0;
    for (double lambda : ev) {
        if (lambda < 1e-12) continue;
        s -= lambda * std::log2(lambda);
    }
    return std::max(s, 0.0);
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw DimensionError("trace_distance: operands have different dimensions");
    const RealVector ev = hermitian_eigenvalues(rho - sigma, 1e-8);
    return 0.5 * ev.cwiseAbs().sum();
}

std::string DensityReport::describe() const {
    std::ostringstream os;
    os << (ok() ? "valid density operator" : "not a density operator:");
    if (!hermitian) os << " hermiticity violated (" << max_hermiticity_violation << ")";
    if (!unit_trace) os << " trace deviates (" << trace_deviation << ")";
    if (!positive) os << " negative eigenvalue (" << min_eigenvalue << ")";
    return os.str();
}

DensityReport validate_density(const Matrix& rho, double tol) {
    if (rho.rows() != rho.cols()) throw DimensionError("validate_density: matrix must be square");
    DensityReport rep;
    rep.max_hermiticity_violation = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    rep.hermitian = rep.max_hermiticity_violation <= tol;
    rep.trace_deviation = std::abs(rho.trace() - Complex(1.0));
    rep.unit_trace = rep.trace_deviation <= tol;
    if (rep.hermitian) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
        rep.min_eigenvalue = solver.eigenvalues().minCoeff();
        rep.positive = rep.min_eigenvalue >= -tol;
    } else {
        rep.min_eigenvalue = 0.0;
        rep.positive = false;
    }
    return rep;
}

void require_density(const Matrix& rho, double tol, const std::string& context) {
    const DensityReport rep = validate_density(rho, tol);
    if (!rep.ok())
        throw ValidationError((context.empty() ? std::string("require_density") : context) + ": " +
                              rep.describe());
}

Matrix dyad(const Vector& psi) { return psi * psi.adjoint(); }

} // namespace uea
