#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "uea/linalg.hpp"

using namespace uea;
using testutil::binary_entropy;

namespace {

Matrix ket_bra(int i, int j, int dim) {
    Matrix m = Matrix::Zero(dim, dim);
    m(i, j) = 1.0;
    return m;
}

// Brute-force partial trace by explicit index summation over a 3-party
// qubit system, independent of the library's stride machinery.
Matrix brute_trace_third(const Matrix& rho, int keep_a, int keep_b) {
    // keeps two of three qubits (indices keep_a < keep_b), traces the rest
    Matrix out = Matrix::Zero(4, 4);
    int traced = 3 - keep_a - keep_b;
    for (int ia = 0; ia < 2; ++ia)
        for (int ib = 0; ib < 2; ++ib)
            for (int ja = 0; ja < 2; ++ja)
                for (int jb = 0; jb < 2; ++jb)
                    for (int t = 0; t < 2; ++t) {
                        int idx[3], jdx[3];
                        idx[keep_a] = ia; idx[keep_b] = ib; idx[traced] = t;
                        jdx[keep_a] = ja; jdx[keep_b] = jb; jdx[traced] = t;
                        int r = (idx[0] * 2 + idx[1]) * 2 + idx[2];
                        int c = (jdx[0] * 2 + jdx[1]) * 2 + jdx[2];
                        out(ia * 2 + ib, ja * 2 + jb) += rho(r, c);
                    }
    return out;
}

} // namespace

TEST_CASE("tensor product basics") {
    Matrix i2 = Matrix::Identity(2, 2);
    CHECK((tensor_product(i2, i2) - Matrix::Identity(4, 4)).norm() == doctest::Approx(0.0));

    Matrix p0 = ket_bra(0, 0, 2), p1 = ket_bra(1, 1, 2);
    Matrix t = tensor_product(p0, p1);
    Matrix expect = Matrix::Zero(4, 4);
    expect(1, 1) = 1.0;
    CHECK((t - expect).norm() == doctest::Approx(0.0));
}

TEST_CASE("tensor product trace multiplicativity on random factors") {
    auto rng = testutil::make_rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        Matrix a = testutil::ginibre(2, 2, rng);
        Matrix b = testutil::ginibre(2, 2, rng);
        Complex lhs = tensor_product(a, b).trace();
        Complex rhs = a.trace() * b.trace();
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("partial trace of product and Bell states") {
    auto rng = testutil::make_rng(12);
    Matrix ra = testutil::random_density(2, rng);
    Matrix rb = testutil::random_density(2, rng);
    Matrix joint = tensor_product(ra, rb);
    CHECK((partial_trace(joint, {2, 2}, {0}) - ra).cwiseAbs().maxCoeff() < 1e-12);

    Vector bell(4);
    bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
    Matrix red = partial_trace(dyad(bell), {2, 2}, {0});
    CHECK((red - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace matches brute-force index summation") {
    auto rng = testutil::make_rng(13);
    Matrix rho = testutil::random_density(8, rng);
    DimensionList dims{2, 2, 2};
    CHECK((partial_trace(rho, dims, {0, 1}) - brute_trace_third(rho, 0, 1)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((partial_trace(rho, dims, {0, 2}) - brute_trace_third(rho, 0, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((partial_trace(rho, dims, {1, 2}) - brute_trace_third(rho, 1, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace over everything equals scalar trace") {
    auto rng = testutil::make_rng(14);
    Matrix rho = testutil::random_density(8, rng);
    Matrix t = partial_trace(rho, {2, 2, 2}, {0, 1, 2});
    CHECK((t - rho).cwiseAbs().maxCoeff() < 1e-15); // keep-all is the identity
    // tracing down to a single subsystem still preserves trace
    Matrix one = partial_trace(rho, {2, 2, 2}, {1});
    CHECK(std::abs(one.trace() - Complex(1.0)) < 1e-12);
}

TEST_CASE("tensor then trace recovers the factor scaled by partner trace") {
    auto rng = testutil::make_rng(15);
    Matrix a = testutil::ginibre(3, 3, rng);
    Matrix b = testutil::ginibre(2, 2, rng);
    Matrix back = partial_trace(tensor_product(a, b), {3, 2}, {0});
    CHECK((back - b.trace() * a).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace dimension mismatch raises") {
    Matrix rho = Matrix::Identity(4, 4);
    CHECK_THROWS_AS(partial_trace(rho, {2, 3}, {0}), DimensionError);
    CHECK_THROWS_AS(partial_trace(rho, {2, 2}, std::vector<int>{}), DimensionError);
    CHECK_THROWS_AS(partial_trace(rho, {2, 2}, {2}), DimensionError);
}

TEST_CASE("hermitian eigenvalues on simple matrices") {
    Matrix i2 = Matrix::Identity(2, 2);
    RealVector ev = hermitian_eigenvalues(i2);
    CHECK(ev(0) == doctest::Approx(1.0));
    CHECK(ev(1) == doctest::Approx(1.0));

    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    ev = hermitian_eigenvalues(z);
    CHECK(ev(0) == doctest::Approx(1.0));
    CHECK(ev(1) == doctest::Approx(-1.0));

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 0.3;
    d(1, 1) = 0.7;
    ev = hermitian_eigenvalues(d);
    CHECK(ev(0) == doctest::Approx(0.7)); // descending
    CHECK(ev(1) == doctest::Approx(0.3));

    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigenvalues(bad), ValidationError);
}

TEST_CASE("entropy of pure, maximally mixed and binary-diagonal states") {
    auto rng = testutil::make_rng(16);
    Vector psi = testutil::random_pure(4, rng);
    CHECK(von_neumann_entropy(dyad(psi)) == doctest::Approx(0.0).epsilon(1e-9));

    CHECK(von_neumann_entropy(0.5 * Matrix::Identity(2, 2)) == doctest::Approx(1.0));

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 0.3;
    d(1, 1) = 0.7;
    CHECK(von_neumann_entropy(d) == doctest::Approx(binary_entropy(0.3)).epsilon(1e-9));
    CHECK(std::abs(von_neumann_entropy(d) - 0.8813) < 1e-3);
}

TEST_CASE("entropy rejects non-states") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.5;
    d(1, 1) = -0.5;
    CHECK_THROWS_AS(von_neumann_entropy(d), ValidationError);
}

TEST_CASE("entropy is unitarily invariant") {
    auto rng = testutil::make_rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        Matrix rho = testutil::random_density(4, rng);
        Matrix u = testutil::random_unitary(4, rng);
        double s0 = von_neumann_entropy(rho);
        double s1 = von_neumann_entropy(u * rho * u.adjoint());
        CHECK(std::abs(s0 - s1) < 1e-9);
    }
}

TEST_CASE("entropy is additive on product states") {
    auto rng = testutil::make_rng(18);
    for (int rep = 0; rep < 10; ++rep) {
        Matrix a = testutil::random_density(2, rng);
        Matrix b = testutil::random_density(3, rng);
        double lhs = von_neumann_entropy(tensor_product(a, b));
        double rhs = von_neumann_entropy(a) + von_neumann_entropy(b);
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("trace distance basics and diagonal oracle") {
    auto rng = testutil::make_rng(19);
    Matrix rho = testutil::random_density(3, rng);
    CHECK(trace_distance(rho, rho) == doctest::Approx(0.0));

    CHECK(trace_distance(ket_bra(0, 0, 2), ket_bra(1, 1, 2)) == doctest::Approx(1.0));

    for (int rep = 0; rep < 10; ++rep) {
        double p = testutil::unit_uniform(rng), q = testutil::unit_uniform(rng);
        Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
        a(0, 0) = p; a(1, 1) = 1 - p;
        b(0, 0) = q; b(1, 1) = 1 - q;
        CHECK(trace_distance(a, b) == doctest::Approx(std::abs(p - q)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(trace_distance(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), DimensionError);
}

TEST_CASE("trace distance is a metric on random samples") {
    auto rng = testutil::make_rng(20);
    for (int rep = 0; rep < 10; ++rep) {
        Matrix a = testutil::random_density(4, rng);
        Matrix b = testutil::random_density(4, rng);
        Matrix c = testutil::random_density(4, rng);
        double dab = trace_distance(a, b);
        double dba = trace_distance(b, a);
        double dac = trace_distance(a, c);
        double dcb = trace_distance(c, b);
        CHECK(dab == doctest::Approx(dba).epsilon(1e-14));
        CHECK(dab <= dac + dcb + 1e-10);
        CHECK(dab >= 0.0);
    }
    Matrix a = testutil::random_density(4, rng);
    CHECK(trace_distance(a, a) < 1e-10);
}

TEST_CASE("density validation reports each condition") {
    DensityReport ok = validate_density(0.5 * Matrix::Identity(2, 2), 1e-10);
    CHECK(ok.ok());

    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    DensityReport rep = validate_density(bad, 1e-10);
    CHECK(rep.hermitian);
    CHECK(rep.unit_trace);
    CHECK_FALSE(rep.positive);
    CHECK(rep.min_eigenvalue == doctest::Approx(-0.5));
}

TEST_CASE("subsystem permutation agrees with explicit kron reordering") {
    auto rng = testutil::make_rng(21);
    Matrix a = testutil::random_density(2, rng);
    Matrix b = testutil::random_density(3, rng);
    Matrix ab = tensor_product(a, b);
    Matrix ba = permute_subsystems(ab, {2, 3}, {1, 0});
    CHECK((ba - tensor_product(b, a)).cwiseAbs().maxCoeff() < 1e-12);

    Vector va = testutil::random_pure(2, rng);
    Vector vb = testutil::random_pure(3, rng);
    Vector vab = tensor_all(std::vector<Vector>{va, vb});
    Vector vba = permute_subsystems(vab, {2, 3}, {1, 0});
    CHECK((vba - tensor_all(std::vector<Vector>{vb, va})).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("subsystem operator application matches embedded kron product") {
    auto rng = testutil::make_rng(22);
    Matrix op = testutil::ginibre(4, 2, rng); // dimension-changing map on the middle slot
    Matrix rho = testutil::random_density(8, rng);
    DimensionList dims{2, 2, 2};

    Matrix embedded = tensor_product(tensor_product(Matrix::Identity(2, 2), op), Matrix::Identity(2, 2));
    Matrix expect = embedded * rho * embedded.adjoint();
    Matrix got = apply_to_subsystem_op(op, rho, dims, 1);
    CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);

    Vector psi = testutil::random_pure(8, rng);
    Vector vexpect = embedded * psi;
    Vector vgot = apply_to_subsystem_vec(op, psi, dims, 1);
    CHECK((vgot - vexpect).cwiseAbs().maxCoeff() < 1e-12);
}
