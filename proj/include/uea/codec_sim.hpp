#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "uea/ensembles.hpp"
#include "uea/rng.hpp"

namespace uea {

/// Random classical codebook: one length-n word per (message m, key k), each
/// symbol drawn i.i.d. from p_x. Message/key counts are ceil(2^{nR}) and
/// ceil(2^{nR0}).
struct Codebook {
    int n = 0;
    double rate_r = 0.0;
    double rate_r0 = 0.0;
    int num_messages = 0;
    int num_keys = 0;
    uint64_t seed = 0;
    std::vector<std::vector<int>> words; // index m * num_keys + k

    const std::vector<int>& word(int m, int k) const {
        return words[static_cast<std::size_t>(m) * static_cast<std::size_t>(num_keys) +
                     static_cast<std::size_t>(k)];
    }
};

Codebook generate_codebook(int n, double rate_r, double rate_r0, const RealVector& p_x,
                           uint64_t seed, int max_words = 1 << 16);

/// Schmidt decomposition of a bipartite pure state on A (x) G2: weights are
/// the squared singular values in descending order; both bases are complete
/// orthonormal systems (zero-weight directions included).
struct SchmidtDecomposition {
    RealVector weights;
    Matrix a_basis;  // columns |xi_y>
    Matrix g2_basis; // columns |xi'_y>
};

SchmidtDecomposition schmidt_decompose(const Vector& psi, int d_a, int d_g2);

/// One conditional type class: all sequences y^n sharing the joint empirical
/// counts with the conditioning word x^n.
struct TypeClass {
    std::vector<int> counts;               // flattened (x symbol major) joint counts
    std::vector<std::vector<int>> members; // sequences in lexicographic order
    int size() const { return static_cast<int>(members.size()); }
};

/// Partition of Y^n into conditional type classes, ordered lexicographically
/// by count vector. When bases are attached (see attach_type_bases), class t
/// carries an orthonormal basis of its subspace of A^n built from per-letter
/// Schmidt vectors, members in lexicographic order.
struct TypeDecomposition {
    std::vector<int> x_n;
    int y_size = 0;
    std::vector<TypeClass> classes;
    std::vector<Matrix> class_bases; // empty until attached

    bool has_bases() const { return !class_bases.empty(); }
    long total_sequences() const;
};

TypeDecomposition conditional_types(const std::vector<int>& x_n, int y_size);

/// Builds per-class bases of A^n from the ensemble's per-letter Schmidt
/// vectors (the A side of each encoded state psi^x).
void attach_type_bases(TypeDecomposition& decomp, const Ensemble& ens);

/// Sigma_X^a Sigma_Z^b of dimension d: cyclic shift by a, then phases
/// omega^{-b j} with omega = e^{2 pi i / d} (so Sigma_X Sigma_Z = omega Sigma_Z Sigma_X).
Matrix heisenberg_weyl(int d, int a, int b);

/// Per-class key triple (a_t, b_t, c_t); a,b index Heisenberg-Weyl exponents
/// within the class dimension, c is a sign bit.
struct GammaKey {
    struct Triple {
        int a = 0;
        int b = 0;
        int c = 0;
    };
    std::vector<Triple> triples;
};

/// Number of keys: product over classes of 2 * size^2.
uint64_t key_space_size(const TypeDecomposition& decomp);

GammaKey identity_key(const TypeDecomposition& decomp);
GammaKey key_by_index(const TypeDecomposition& decomp, uint64_t index);
GammaKey sample_key(const TypeDecomposition& decomp, Rng& rng);

/// U(gamma) = direct sum over classes of (-1)^{c_t} Sigma_X^{a_t} Sigma_Z^{b_t}
/// in the attached type-ordered basis of A^n.
Matrix keyed_unitary(const TypeDecomposition& decomp, const GammaKey& key);

/// Precomputed machinery for Eve-state evaluation at a fixed conditioning
/// word x^n: encoded product state, type decomposition with bases, and the
/// per-key output marginal on (G2^n, E^n).
class EvePipeline {
public:
    EvePipeline(const WiretapChannel& chan, const Ensemble& ens, const std::vector<int>& x_n,
                int max_n = 6);

    const TypeDecomposition& decomposition() const { return decomp_; }
    uint64_t keys() const { return key_count_; }
    int n() const { return n_; }

    /// Density operator on (G2_1..G2_n, E_1..E_n) after keyed encoding and
    /// the channel isometry, with B^n traced out.
    Matrix state_for_key(const GammaKey& key) const;

    /// Exhaustive key average when the key space has at most max_exhaustive
    /// elements, otherwise a declared-seed sample average.
    struct Zeta {
        Matrix state;
        bool exact = true;
        uint64_t samples = 0;
        uint64_t seed = 0;
    };
    Zeta zeta(uint64_t max_exhaustive = 1 << 14, uint64_t sample_size = 4096,
              uint64_t sample_seed = 0) const;

private:
    WiretapChannel chan_;
    int n_ = 0;
    int d_a_ = 0;
    int d_g2_ = 0;
    TypeDecomposition decomp_;
    uint64_t key_count_ = 0;
    Vector psi_; // on (A_1..A_n, G2_1..G2_n)
};

/// Marginal on (G2^n, E^n) of the keyed output state; identity key gives the
/// tensor power of the single-letter omega.
Matrix eve_state(const WiretapChannel& chan, const Ensemble& ens, const std::vector<int>& x_n,
                 const GammaKey& key);

/// Delta*_m: trace distance between the key-averaged product state of message
/// m's codewords and the tensor power of the average single-letter state.
double delta_star(const WiretapChannel& chan, const Ensemble& ens, const Codebook& codebook, int m);

/// Delta_{m'|m,k}: trace distance between an average over key_count sampled
/// keys (exhaustive when key_count >= key space) and the exact full-key
/// average zeta at the given conditioning word.
double delta_excess(const WiretapChannel& chan, const Ensemble& ens, const std::vector<int>& x_n,
                    uint64_t key_count, uint64_t seed);

/// One covering-diagnostic row: mean/max of Delta*_m over messages for a
/// fresh codebook.
struct CoveringSample {
    int n = 0;
    double rate_r0 = 0.0;
    uint64_t seed = 0;
    double delta_star_mean = 0.0;
    double delta_star_max = 0.0;
};

CoveringSample covering_trial(const WiretapChannel& chan, const Ensemble& ens, int n,
                              double rate_r, double rate_r0, uint64_t seed);

/// One excess-key diagnostic row: mean of Delta over num_mprime independent
/// key samples at a fixed conditioning word.
struct ExcessSample {
    int n = 0;
    uint64_t key_count = 0; // effective count (key space size when exhaustive)
    uint64_t seed = 0;
    double delta_excess_mean = 0.0;
};

ExcessSample excess_trial(const WiretapChannel& chan, const Ensemble& ens,
                          const std::vector<int>& x_n, uint64_t key_count, int num_mprime,
                          uint64_t seed);

/// Pairwise error table e(m, m') in [0,1].
struct ErrorMatrix {
    Eigen::MatrixXd entries;
    std::string provenance; // "synthetic" or "measured"

    int messages() const { return static_cast<int>(entries.rows()); }
    int excess_messages() const { return static_cast<int>(entries.cols()); }
    double row_mean(int m) const { return entries.row(m).mean(); }
    double grand_mean() const { return entries.mean(); }
    void validate() const;
};

/// CSV with header m,mprime,e and zero-based indices.
ErrorMatrix load_error_matrix(std::istream& in);
void save_error_matrix(const ErrorMatrix& err, std::ostream& out);

/// Fixture with every row mean exactly lambda and spiky columns (the seed
/// selects among several spike layouts).
ErrorMatrix synthetic_spiky_matrix(int rows, int cols, double lambda, uint64_t seed);

/// Fixture with grand mean exactly lambda^2 and a few rows above lambda.
ErrorMatrix synthetic_expurgation_matrix(int rows, int cols, double lambda, uint64_t seed);

/// Messages kept after removing every row with semi-average error above
/// lambda; rate loss is log2(1/(1-removed fraction))/n.
struct Expurgation {
    std::vector<int> kept;
    double lambda = 0.0;
    double removed_fraction = 0.0;
    double rate_loss_bits = 0.0;
};

Expurgation expurgate(const ErrorMatrix& errors, double lambda, int blocklength);

/// Restriction of an error matrix to a subset of rows (post-expurgation).
ErrorMatrix restrict_rows(const ErrorMatrix& errors, const std::vector<int>& rows);

/// n^2 random permutations of the excess message set; max_error is the
/// worst (m, m') average of e(m, pi_l(m')) over the selected permutations.
/// Redraws (deterministically from the seed) until max_error <= 4 lambda or
/// the retry budget is exhausted (ok=false then).
struct PermutationScheme {
    std::vector<std::vector<int>> permutations;
    double max_error = 0.0;
    double bound = 0.0; // 4 lambda
    int attempts = 0;
    bool ok = false;
};

PermutationScheme permutation_scheme(const ErrorMatrix& errors, int n, uint64_t seed, double lambda,
                                     int retry_budget = 100);

} // namespace uea
