#include "uea/codec_sim.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace uea {

Codebook generate_codebook(int n, double rate_r, double rate_r0, const RealVector& p_x,
                           uint64_t seed, int max_words) {
    if (n < 1) throw ValidationError("generate_codebook: blocklength must be at least 1");
    if (rate_r < 0.0 || rate_r0 < 0.0)
        throw ValidationError("generate_codebook: rates must be nonnegative");
    if (p_x.size() == 0 || p_x.minCoeff() < 0.0 || std::abs(p_x.sum() - 1.0) > 1e-12)
        throw ValidationError("generate_codebook: p_x must be a probability vector");

    const double m_real = std::exp2(static_cast<double>(n) * rate_r);
    const double k_real = std::exp2(static_cast<double>(n) * rate_r0);
    const auto m_count = static_cast<long>(std::ceil(m_real - 1e-9));
    const auto k_count = static_cast<long>(std::ceil(k_real - 1e-9));
    if (m_count * k_count > max_words)
        throw GuardError("generate_codebook: " + std::to_string(m_count * k_count) +
                         " codewords exceed the guard of " + std::to_string(max_words));

    Codebook cb;
    cb.n = n;
    cb.rate_r = rate_r;
    cb.rate_r0 = rate_r0;
    cb.num_messages = static_cast<int>(m_count);
    cb.num_keys = static_cast<int>(k_count);
    cb.seed = seed;
    cb.words.reserve(static_cast<std::size_t>(m_count * k_count));

    Rng rng(seed);
    for (long m = 0; m < m_count; ++m)
        for (long k = 0; k < k_count; ++k) {
            std::vector<int> word(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) word[static_cast<std::size_t>(i)] = rng.sample_pmf(p_x);
            cb.words.push_back(std::move(word));
        }
    return cb;
}

SchmidtDecomposition schmidt_decompose(const Vector& psi, int d_a, int d_g2) {
    if (static_cast<long>(d_a) * d_g2 != psi.size())
        throw DimensionError("schmidt_decompose: dimensions do not match the vector");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw ValidationError("schmidt_decompose: input must be a unit vector");

    Matrix coeff(d_a, d_g2);
    for (int a = 0; a < d_a; ++a)
        for (int g = 0; g < d_g2; ++g) coeff(a, g) = psi(static_cast<long>(a) * d_g2 + g);

    Eigen::JacobiSVD<Matrix> svd(coeff, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SchmidtDecomposition out;
    const int rank = static_cast<int>(std::min(d_a, d_g2));
    out.weights = RealVector::Zero(rank);
    for (int y = 0; y < rank; ++y) {
        const double s = svd.singularValues()(y);
        out.weights(y) = s * s;
    }
    out.a_basis = svd.matrixU();
    // coeff = U S V^dagger, so psi = sum_y s_y |u_y> (x) |conj(v_y)>
    out.g2_basis = svd.matrixV().conjugate();
    return out;
}

long TypeDecomposition::total_sequences() const {
    long total = 0;
    for (const auto& c : classes) total += c.size();
    return total;
}

TypeDecomposition conditional_types(const std::vector<int>& x_n, int y_size) {
    const int n = static_cast<int>(x_n.size());
    if (n < 1) throw ValidationError("conditional_types: empty conditioning word");
    if (y_size < 1) throw ValidationError("conditional_types: y alphabet must be nonempty");
    if (n > 8) throw GuardError("conditional_types: blocklength guard n <= 8 exceeded");
    double seqs = std::pow(static_cast<double>(y_size), n);
    if (seqs > 65536.0)
        throw GuardError("conditional_types: |Y|^n exceeds the enumeration guard of 65536");

    int x_size = 0;
    for (int x : x_n) {
        if (x < 0) throw ValidationError("conditional_types: negative symbol");
        x_size = std::max(x_size, x + 1);
    }

    // Enumerate Y^n lexicographically and bucket by joint empirical counts.
    std::map<std::vector<int>, std::vector<std::vector<int>>> buckets;
    std::vector<int> y(static_cast<std::size_t>(n), 0);
    const long total = static_cast<long>(seqs);
    for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        for (int i = n - 1; i >= 0; --i) {
            y[static_cast<std::size_t>(i)] = static_cast<int>(rest % y_size);
            rest /= y_size;
        }
        std::vector<int> counts(static_cast<std::size_t>(x_size) * static_cast<std::size_t>(y_size), 0);
        for (int i = 0; i < n; ++i)
            counts[static_cast<std::size_t>(x_n[static_cast<std::size_t>(i)]) * y_size +
                   static_cast<std::size_t>(y[static_cast<std::size_t>(i)])]++;
        buckets[counts].push_back(y);
    }

    TypeDecomposition decomp;
    decomp.x_n = x_n;
    decomp.y_size = y_size;
    decomp.classes.reserve(buckets.size());
    for (auto& [counts, members] : buckets) {
        TypeClass tc;
        tc.counts = counts;
        tc.members = std::move(members);
        decomp.classes.push_back(std::move(tc));
    }
    return decomp;
}

void attach_type_bases(TypeDecomposition& decomp, const Ensemble& ens) {
    const int d_a = ens.d_a();
    if (decomp.y_size != d_a)
        throw DimensionError("attach_type_bases: y alphabet must match the channel input dimension");
    const int n = static_cast<int>(decomp.x_n.size());

    std::vector<Matrix> letter_basis(static_cast<std::size_t>(ens.alphabet_size()));
    for (int x : decomp.x_n) {
        if (x >= ens.alphabet_size())
            throw ValidationError("attach_type_bases: conditioning symbol outside the ensemble alphabet");
        if (letter_basis[static_cast<std::size_t>(x)].size() == 0)
            letter_basis[static_cast<std::size_t>(x)] =
                schmidt_decompose(ens.encoded_state(x), d_a, ens.d_g2).a_basis;
    }

    const long dim = static_cast<long>(std::pow(static_cast<double>(d_a), n));
    decomp.class_bases.clear();
    decomp.class_bases.reserve(decomp.classes.size());
    for (const auto& tc : decomp.classes) {
        Matrix basis(dim, tc.size());
        for (int j = 0; j < tc.size(); ++j) {
            std::vector<Vector> cols;
            cols.reserve(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                const int x = decomp.x_n[static_cast<std::size_t>(i)];
                const int y = tc.members[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
                cols.push_back(letter_basis[static_cast<std::size_t>(x)].col(y));
            }
            basis.col(j) = tensor_all(cols);
        }
        decomp.class_bases.push_back(std::move(basis));
    }
}

Matrix heisenberg_weyl(int d, int a, int b) {
    if (d < 1) throw ValidationError("heisenberg_weyl: dimension must be positive");
    if (a < 0 || a >= d || b < 0 || b >= d)
        throw ValidationError("heisenberg_weyl: exponents must lie in [0, d)");
    Matrix w = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        const double phase = -2.0 * M_PI * static_cast<double>(b) * j / d;
        w((j + a) % d, j) = std::polar(1.0, phase);
    }
    return w;
}

uint64_t key_space_size(const TypeDecomposition& decomp) {
    uint64_t total = 1;
    for (const auto& tc : decomp.classes) {
        const uint64_t s = static_cast<uint64_t>(tc.size());
        total *= 2ULL * s * s;
    }
    return total;
}

GammaKey identity_key(const TypeDecomposition& decomp) {
    GammaKey key;
    key.triples.resize(decomp.classes.size());
    return key;
}

GammaKey key_by_index(const TypeDecomposition& decomp, uint64_t index) {
    if (index >= key_space_size(decomp))
        throw ValidationError("key_by_index: index outside the key space");
    GammaKey key;
    key.triples.resize(decomp.classes.size());
    // mixed-radix digits, last class fastest, (a, b, c) with c fastest
    for (int t = static_cast<int>(decomp.classes.size()) - 1; t >= 0; --t) {
        const uint64_t s = static_cast<uint64_t>(decomp.classes[static_cast<std::size_t>(t)].size());
        auto& tri = key.triples[static_cast<std::size_t>(t)];
        tri.c = static_cast<int>(index % 2);
        index /= 2;
        tri.b = static_cast<int>(index % s);
        index /= s;
        tri.a = static_cast<int>(index % s);
        index /= s;
    }
    return key;
}

GammaKey sample_key(const TypeDecomposition& decomp, Rng& rng) {
    GammaKey key;
    key.triples.reserve(decomp.classes.size());
    for (const auto& tc : decomp.classes) {
        const uint64_t s = static_cast<uint64_t>(tc.size());
        GammaKey::Triple tri;
        tri.a = static_cast<int>(rng.below(s));
        tri.b = static_cast<int>(rng.below(s));
        tri.c = static_cast<int>(rng.below(2));
        key.triples.push_back(tri);
    }
    return key;
}

Matrix keyed_unitary(const TypeDecomposition& decomp, const GammaKey& key) {
    if (!decomp.has_bases())
        throw ValidationError("keyed_unitary: type decomposition carries no bases");
    if (key.triples.size() != decomp.classes.size())
        throw ValidationError("keyed_unitary: key does not match the class list");

    const long dim = decomp.class_bases.front().rows();
    Matrix u = Matrix::Zero(dim, dim);
    for (std::size_t t = 0; t < decomp.classes.size(); ++t) {
        const int s = decomp.classes[t].size();
        const auto& tri = key.triples[t];
        if (tri.a < 0 || tri.a >= s || tri.b < 0 || tri.b >= s || tri.c < 0 || tri.c > 1)
            throw ValidationError("keyed_unitary: key entry outside the class range");
        Matrix v = heisenberg_weyl(s, tri.a, tri.b);
        if (tri.c == 1) v = -v;
        const Matrix& basis = decomp.class_bases[t];
        u += basis * v * basis.adjoint();
    }
    return u;
}

EvePipeline::EvePipeline(const WiretapChannel& chan, const Ensemble& ens,
                         const std::vector<int>& x_n, int max_n)
    : chan_(chan), n_(static_cast<int>(x_n.size())), d_a_(ens.d_a()), d_g2_(ens.d_g2) {
    if (n_ < 1) throw ValidationError("EvePipeline: empty conditioning word");
    if (n_ > max_n)
        throw GuardError("EvePipeline: blocklength guard n <= " + std::to_string(max_n) + " exceeded");

    decomp_ = conditional_types(x_n, d_a_);
    attach_type_bases(decomp_, ens);
    key_count_ = key_space_size(decomp_);

    // product of encoded letters on (A_1, G2_1, ..., A_n, G2_n)
    std::vector<Vector> letters;
    letters.reserve(static_cast<std::size_t>(n_));
    for (int x : x_n) letters.push_back(ens.encoded_state(x));
    Vector interleaved = tensor_all(letters);

    std::vector<int> dims_v;
    dims_v.reserve(static_cast<std::size_t>(2 * n_));
    for (int i = 0; i < n_; ++i) {
        dims_v.push_back(d_a_);
        dims_v.push_back(d_g2_);
    }
    std::vector<int> perm(static_cast<std::size_t>(2 * n_));
    for (int j = 0; j < n_; ++j) perm[static_cast<std::size_t>(j)] = 2 * j;          // A block
    for (int j = 0; j < n_; ++j) perm[static_cast<std::size_t>(n_ + j)] = 2 * j + 1; // G2 block
    psi_ = permute_subsystems(interleaved, DimensionList(dims_v), perm);
}

Matrix EvePipeline::state_for_key(const GammaKey& key) const {
    const long a_dim = static_cast<long>(std::pow(static_cast<double>(d_a_), n_));
    const long g_dim = static_cast<long>(std::pow(static_cast<double>(d_g2_), n_));

    const Matrix u = keyed_unitary(decomp_, key);
    Vector psi = apply_to_subsystem_vec(u, psi_, DimensionList{static_cast<int>(a_dim),
                                                               static_cast<int>(g_dim)}, 0);

    std::vector<int> dims_v;
    dims_v.reserve(static_cast<std::size_t>(2 * n_));
    for (int i = 0; i < n_; ++i) dims_v.push_back(d_a_);
    for (int i = 0; i < n_; ++i) dims_v.push_back(d_g2_);
    DimensionList dims(dims_v);
    for (int i = n_ - 1; i >= 0; --i) {
        auto [next, next_dims] = apply_to_subsystem(chan_, psi, dims, i);
        psi = std::move(next);
        dims = std::move(next_dims);
    }
    // dims now (B_1, E_1, ..., B_n, E_n, G2_1, ..., G2_n); regroup with B first
    std::vector<int> perm(static_cast<std::size_t>(3 * n_));
    for (int j = 0; j < n_; ++j) perm[static_cast<std::size_t>(j)] = 2 * j;                  // B block
    for (int j = 0; j < n_; ++j) perm[static_cast<std::size_t>(n_ + j)] = 2 * n_ + j;        // G2 block
    for (int j = 0; j < n_; ++j) perm[static_cast<std::size_t>(2 * n_ + j)] = 2 * j + 1;     // E block
    psi = permute_subsystems(psi, dims, perm);

    long b_dim = 1, e_dim = 1;
    for (int i = 0; i < n_; ++i) {
        b_dim *= chan_.d_b;
        e_dim *= chan_.d_e;
    }
    const long rest = g_dim * e_dim;
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        psi.data(), b_dim, rest);
    return (m.adjoint() * m).conjugate(); // trace over B^n of |psi><psi|
}

EvePipeline::Zeta EvePipeline::zeta(uint64_t max_exhaustive, uint64_t sample_size,
                                    uint64_t sample_seed) const {
    Zeta z;
    const long g_dim = static_cast<long>(std::pow(static_cast<double>(d_g2_), n_));
    long e_dim = 1;
    for (int i = 0; i < n_; ++i) e_dim *= chan_.d_e;
    Matrix acc = Matrix::Zero(g_dim * e_dim, g_dim * e_dim);

    if (key_count_ <= max_exhaustive) {
        for (uint64_t idx = 0; idx < key_count_; ++idx)
            acc += state_for_key(key_by_index(decomp_, idx));
        z.state = acc / static_cast<double>(key_count_);
        z.exact = true;
        z.samples = key_count_;
    } else {
        Rng rng(sample_seed);
        for (uint64_t s = 0; s < sample_size; ++s) acc += state_for_key(sample_key(decomp_, rng));
        z.state = acc / static_cast<double>(sample_size);
        z.exact = false;
        z.samples = sample_size;
        z.seed = sample_seed;
    }
    return z;
}

Matrix eve_state(const WiretapChannel& chan, const Ensemble& ens, const std::vector<int>& x_n,
                 const GammaKey& key) {
    EvePipeline pipeline(chan, ens, x_n);
    return pipeline.state_for_key(key);
}

namespace {

// tensor product of single-letter (G2,E) blocks regrouped to (G2^n, E^n)
Matrix letterwise_to_blocks(const std::vector<Matrix>& letters, int d_g2, int d_e) {
    const int n = static_cast<int>(letters.size());
    Matrix prod = tensor_all(letters);
    std::vector<int> dims_v;
    for (int i = 0; i < n; ++i) {
        dims_v.push_back(d_g2);
        dims_v.push_back(d_e);
    }
    std::vector<int> perm(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < n; ++j) perm[static_cast<std::size_t>(j)] = 2 * j;
    for (int j = 0; j < n; ++j) perm[static_cast<std::size_t>(n + j)] = 2 * j + 1;
    return permute_subsystems(prod, DimensionList(dims_v), perm);
}

} // namespace

double delta_star(const WiretapChannel& chan, const Ensemble& ens, const Codebook& codebook, int m) {
    if (m < 0 || m >= codebook.num_messages)
        throw ValidationError("delta_star: message index out of range");
    const int n = codebook.n;
    const CqState eg2 = marginal(build_omega(chan, ens), {Sub::G2, Sub::E});
    const int block = eg2.block_dim();
    if (std::pow(static_cast<double>(block), n) > 4096.0)
        throw GuardError("delta_star: (d_G2 d_E)^n exceeds the guard of 4096");

    std::vector<Matrix> singles;
    singles.reserve(eg2.blocks.size());
    for (const auto& b : eg2.blocks) singles.push_back(b.rho);
    const Matrix avg_single = eg2.average();

    const long dim = static_cast<long>(std::pow(static_cast<double>(block), n));
    Matrix mixture = Matrix::Zero(dim, dim);
    for (int k = 0; k < codebook.num_keys; ++k) {
        const auto& word = codebook.word(m, k);
        std::vector<Matrix> letters;
        letters.reserve(static_cast<std::size_t>(n));
        for (int x : word) {
            if (x < 0 || x >= static_cast<int>(singles.size()))
                throw ValidationError("delta_star: codeword symbol outside the ensemble alphabet");
            letters.push_back(singles[static_cast<std::size_t>(x)]);
        }
        mixture += letterwise_to_blocks(letters, ens.d_g2, chan.d_e);
    }
    mixture /= static_cast<double>(codebook.num_keys);

    const std::vector<Matrix> ref_letters(static_cast<std::size_t>(n), avg_single);
    const Matrix reference = letterwise_to_blocks(ref_letters, ens.d_g2, chan.d_e);
    return trace_distance(mixture, reference);
}

double delta_excess(const WiretapChannel& chan, const Ensemble& ens, const std::vector<int>& x_n,
                    uint64_t key_count, uint64_t seed) {
    if (key_count == 0) throw ValidationError("delta_excess: key_count must be positive");
    EvePipeline pipeline(chan, ens, x_n, 4);
    const EvePipeline::Zeta zeta = pipeline.zeta(1 << 14, 4096, mix_seed(seed, 0x7e7a));

    Matrix acc = Matrix::Zero(zeta.state.rows(), zeta.state.cols());
    if (key_count >= pipeline.keys() && zeta.exact) {
        for (uint64_t idx = 0; idx < pipeline.keys(); ++idx)
            acc += pipeline.state_for_key(key_by_index(pipeline.decomposition(), idx));
        acc /= static_cast<double>(pipeline.keys());
    } else {
        Rng rng(mix_seed(seed, 1));
        for (uint64_t s = 0; s < key_count; ++s)
            acc += pipeline.state_for_key(sample_key(pipeline.decomposition(), rng));
        acc /= static_cast<double>(key_count);
    }
    return trace_distance(acc, zeta.state);
}

CoveringSample covering_trial(const WiretapChannel& chan, const Ensemble& ens, int n, double rate_r,
                              double rate_r0, uint64_t seed) {
    const Codebook cb = generate_codebook(n, rate_r, rate_r0, ens.p_x, seed);
    CoveringSample sample;
    sample.n = n;
    sample.rate_r0 = rate_r0;
    sample.seed = seed;
    double total = 0.0;
    for (int m = 0; m < cb.num_messages; ++m) {
        const double d = delta_star(chan, ens, cb, m);
        total += d;
        sample.delta_star_max = std::max(sample.delta_star_max, d);
    }
    sample.delta_star_mean = total / cb.num_messages;
    return sample;
}

ExcessSample excess_trial(const WiretapChannel& chan, const Ensemble& ens,
                          const std::vector<int>& x_n, uint64_t key_count, int num_mprime,
                          uint64_t seed) {
    if (num_mprime < 1) throw ValidationError("excess_trial: need at least one excess message");
    EvePipeline pipeline(chan, ens, x_n, 4);
    const EvePipeline::Zeta zeta = pipeline.zeta(1 << 14, 4096, mix_seed(seed, 0x7e7a));
    const bool exhaustive = key_count >= pipeline.keys() && zeta.exact;

    ExcessSample sample;
    sample.n = static_cast<int>(x_n.size());
    sample.key_count = exhaustive ? pipeline.keys() : key_count;
    sample.seed = seed;

    double total = 0.0;
    for (int j = 0; j < num_mprime; ++j) {
        Matrix acc = Matrix::Zero(zeta.state.rows(), zeta.state.cols());
        if (exhaustive) {
            for (uint64_t idx = 0; idx < pipeline.keys(); ++idx)
                acc += pipeline.state_for_key(key_by_index(pipeline.decomposition(), idx));
            acc /= static_cast<double>(pipeline.keys());
        } else {
            Rng rng(mix_seed(seed, static_cast<uint64_t>(j) + 2));
            for (uint64_t s = 0; s < key_count; ++s)
                acc += pipeline.state_for_key(sample_key(pipeline.decomposition(), rng));
            acc /= static_cast<double>(key_count);
        }
        total += trace_distance(acc, zeta.state);
    }
    sample.delta_excess_mean = total / num_mprime;
    return sample;
}

void ErrorMatrix::validate() const {
    if (entries.rows() == 0 || entries.cols() == 0)
        throw ValidationError("ErrorMatrix: empty table");
    if (entries.minCoeff() < 0.0 || entries.maxCoeff() > 1.0)
        throw ValidationError("ErrorMatrix: entries must lie in [0,1]");
}

ErrorMatrix load_error_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("load_error_matrix: empty input");
    // header: m,mprime,e
    std::vector<std::tuple<int, int, double>> triples;
    int max_m = -1, max_mp = -1;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        int vals_i[2] = {0, 0};
        double e = 0.0;
        for (int f = 0; f < 3; ++f) {
            if (!std::getline(ls, tok, f == 2 ? '\n' : ','))
                throw ValidationError("load_error_matrix: malformed row at line " +
                                      std::to_string(lineno));
            try {
                if (f < 2)
                    vals_i[f] = std::stoi(tok);
                else
                    e = std::stod(tok);
            } catch (const std::exception&) {
                throw ValidationError("load_error_matrix: unparsable value at line " +
                                      std::to_string(lineno));
            }
        }
        if (vals_i[0] < 0 || vals_i[1] < 0)
            throw ValidationError("load_error_matrix: negative index at line " + std::to_string(lineno));
        max_m = std::max(max_m, vals_i[0]);
        max_mp = std::max(max_mp, vals_i[1]);
        triples.emplace_back(vals_i[0], vals_i[1], e);
    }
    if (triples.empty()) throw ValidationError("load_error_matrix: no rows");
    ErrorMatrix err;
    err.entries = Eigen::MatrixXd::Zero(max_m + 1, max_mp + 1);
    for (const auto& [m, mp, e] : triples) err.entries(m, mp) = e;
    err.provenance = "measured";
    err.validate();
    return err;
}

void save_error_matrix(const ErrorMatrix& err, std::ostream& out) {
    const auto old_precision = out.precision(17);
    out << "m,mprime,e\n";
    for (int m = 0; m < err.messages(); ++m)
        for (int mp = 0; mp < err.excess_messages(); ++mp)
            out << m << "," << mp << "," << err.entries(m, mp) << "\n";
    out.precision(old_precision);
}

namespace {

// Distributes an exact budget over the given columns with random jitter.
void fill_row(Eigen::MatrixXd& e, int row, const std::vector<int>& cols, double budget, Rng& rng) {
    if (cols.empty() || budget <= 0.0) return;
    std::vector<double> w(cols.size());
    double total = 0.0;
    for (auto& x : w) {
        x = 0.5 + rng.uniform();
        total += x;
    }
    for (std::size_t j = 0; j < cols.size(); ++j)
        e(row, cols[j]) = budget * w[j] / total;
}

} // namespace

ErrorMatrix synthetic_spiky_matrix(int rows, int cols, double lambda, uint64_t seed) {
    if (rows < 1 || cols < 1) throw ValidationError("synthetic_spiky_matrix: empty shape");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw ValidationError("synthetic_spiky_matrix: lambda must lie in (0,1)");

    Rng rng(mix_seed(seed, 0xf1));
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(rows, cols);
    const double row_budget = lambda * cols;

    // column spikes shared by every row; the layout cycles with the seed
    std::vector<std::pair<int, double>> spikes;
    switch (static_cast<int>(seed % 4)) {
    case 0: spikes = {{0, 0.8}, {1, 0.8}}; break;
    case 1: spikes = {{0, 0.4}, {1, 0.4}, {2, 0.4}, {3, 0.4}}; break;
    case 2: spikes = {{0, 1.0}, {1, 0.6}}; break;
    default: spikes = {}; break; // uniform row
    }
    // randomize spike column positions
    std::vector<int> shuffled = rng.permutation(cols);
    double spike_total = 0.0;
    for (auto& [c, v] : spikes) {
        c = shuffled[static_cast<std::size_t>(c)];
        spike_total += v;
    }
    if (spike_total > 0.9 * row_budget) {
        const double scale = 0.9 * row_budget / spike_total;
        for (auto& [c, v] : spikes) v *= scale;
        spike_total *= scale;
    }

    for (int m = 0; m < rows; ++m) {
        std::vector<int> filler_cols;
        filler_cols.reserve(static_cast<std::size_t>(cols));
        for (int c = 0; c < cols; ++c) {
            bool is_spike = false;
            for (const auto& [sc, v] : spikes)
                if (sc == c) {
                    e(m, c) = v;
                    is_spike = true;
                }
            if (!is_spike) filler_cols.push_back(c);
        }
        fill_row(e, m, filler_cols, row_budget - spike_total, rng);
    }

    ErrorMatrix err;
    err.entries = std::move(e);
    err.provenance = "synthetic";
    err.validate();
    return err;
}

ErrorMatrix synthetic_expurgation_matrix(int rows, int cols, double lambda, uint64_t seed) {
    if (rows < 1 || cols < 1) throw ValidationError("synthetic_expurgation_matrix: empty shape");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw ValidationError("synthetic_expurgation_matrix: lambda must lie in (0,1)");

    Rng rng(mix_seed(seed, 0xe2));
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(rows, cols);
    const double grand_total = lambda * lambda * rows * cols;

    const int hot_rows = static_cast<int>(seed % 3); // 0..2 rows above lambda
    const double hot_row_total = 1.2 * lambda * cols;
    double hot_total = 0.0;
    for (int h = 0; h < hot_rows; ++h) {
        // a few large spikes inside the hot row
        const int spikes = 4;
        std::vector<int> where = rng.permutation(cols);
        for (int s = 0; s < spikes; ++s)
            e(h, where[static_cast<std::size_t>(s)]) = hot_row_total / spikes;
        hot_total += hot_row_total;
    }
    if (hot_total > grand_total)
        throw ValidationError("synthetic_expurgation_matrix: infeasible hot-row budget");

    const double cold_budget = (grand_total - hot_total) / std::max(1, rows - hot_rows);
    for (int m = hot_rows; m < rows; ++m) {
        std::vector<int> all(static_cast<std::size_t>(cols));
        for (int c = 0; c < cols; ++c) all[static_cast<std::size_t>(c)] = c;
        fill_row(e, m, all, cold_budget, rng);
    }

    ErrorMatrix err;
    err.entries = std::move(e);
    err.provenance = "synthetic";
    err.validate();
    return err;
}

Expurgation expurgate(const ErrorMatrix& errors, double lambda, int blocklength) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw ValidationError("expurgate: lambda must lie in (0,1)");
    if (blocklength < 1) throw ValidationError("expurgate: blocklength must be at least 1");
    errors.validate();

    Expurgation out;
    out.lambda = lambda;
    for (int m = 0; m < errors.messages(); ++m)
        if (errors.row_mean(m) <= lambda) out.kept.push_back(m);
    out.removed_fraction =
        1.0 - static_cast<double>(out.kept.size()) / static_cast<double>(errors.messages());
    out.rate_loss_bits = out.removed_fraction >= 1.0
                             ? std::numeric_limits<double>::infinity()
                             : std::log2(1.0 / (1.0 - out.removed_fraction)) / blocklength;
    return out;
}

ErrorMatrix restrict_rows(const ErrorMatrix& errors, const std::vector<int>& rows) {
    if (rows.empty()) throw ValidationError("restrict_rows: empty row set");
    ErrorMatrix out;
    out.entries = Eigen::MatrixXd(static_cast<int>(rows.size()), errors.excess_messages());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 0 || rows[i] >= errors.messages())
            throw ValidationError("restrict_rows: row index out of range");
        out.entries.row(static_cast<int>(i)) = errors.entries.row(rows[i]);
    }
    out.provenance = errors.provenance;
    return out;
}

PermutationScheme permutation_scheme(const ErrorMatrix& errors, int n, uint64_t seed, double lambda,
                                     int retry_budget) {
    if (n < 1) throw ValidationError("permutation_scheme: n must be at least 1");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw ValidationError("permutation_scheme: lambda must lie in (0,1)");
    if (retry_budget < 1) throw ValidationError("permutation_scheme: retry budget must be positive");
    errors.validate();
    for (int m = 0; m < errors.messages(); ++m)
        if (errors.row_mean(m) > lambda + 1e-12)
            throw ValidationError("permutation_scheme: row " + std::to_string(m) +
                                  " has semi-average error above lambda; expurgate first");

    const int num_perms = n * n;
    const int cols = errors.excess_messages();
    PermutationScheme best;
    best.bound = 4.0 * lambda;
    best.max_error = std::numeric_limits<double>::infinity();

    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        Rng rng(mix_seed(seed, static_cast<uint64_t>(attempt)));
        std::vector<std::vector<int>> perms;
        perms.reserve(static_cast<std::size_t>(num_perms));
        for (int l = 0; l < num_perms; ++l) perms.push_back(rng.permutation(cols));

        double max_err = 0.0;
        for (int m = 0; m < errors.messages(); ++m)
            for (int mp = 0; mp < cols; ++mp) {
                double acc = 0.0;
                for (const auto& perm : perms) acc += errors.entries(m, perm[static_cast<std::size_t>(mp)]);
                max_err = std::max(max_err, acc / num_perms);
            }

        if (max_err < best.max_error) {
            best.permutations = std::move(perms);
            best.max_error = max_err;
        }
        best.attempts = attempt + 1;
        if (best.max_error <= best.bound) {
            best.ok = true;
            break;
        }
    }
    return best;
}

} // namespace uea
