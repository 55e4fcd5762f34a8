// Validated parameter records, log-densities, analytic means, and exact
// samplers for the distribution families covered by the bound catalog.
// Parameter records are immutable after construction; densities and means
// are pure. Samplers advance only the RngState handed to them.
#ifndef LRB_DISTRIBUTIONS_HPP
#define LRB_DISTRIBUTIONS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "lrb/numerics.hpp"

namespace lrb {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// PCG32 (pcg_xsh_rr_64_32). The (seed, stream) pair fully determines the
// output sequence; distinct streams are statistically independent.
struct RngState {
    std::uint64_t state = 0;
    std::uint64_t inc = 1;

    RngState() : RngState(0, 0) {}
    RngState(std::uint64_t seed, std::uint64_t stream) {
        inc = (stream << 1u) | 1u;
        state = 0;
        next_u32();
        state += seed;
        next_u32();
    }
    std::uint32_t next_u32() {
        const std::uint64_t old = state;
        state = old * 6364136223846793005ULL + inc;
        const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }
    // Uniform on [0, 1) with 53 random bits.
    double next_double() {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
    }
    // Standard normal via Box-Muller; no spare is cached so the draw count
    // per call is fixed and replay is position-independent.
    double next_normal() {
        double u1;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
};

// ---------------------------------------------------------------------------
// Parameter records. Constructors validate and throw std::invalid_argument.
// ---------------------------------------------------------------------------

struct BernoulliParams {
    double p;
    explicit BernoulliParams(double p_) : p(p_) {
        if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("BernoulliParams: requires 0 < p < 1");
    }
};

struct HypergeomParams {
    long long N, R, n;
    HypergeomParams(long long N_, long long R_, long long n_) : N(N_), R(R_), n(n_) {
        if (N < 1) throw std::invalid_argument("HypergeomParams: requires N >= 1");
        if (R < 0 || R > N) throw std::invalid_argument("HypergeomParams: requires 0 <= R <= N");
        if (n < 1 || n > N) throw std::invalid_argument("HypergeomParams: requires 1 <= n <= N");
    }
    long long B() const { return N - R; }
};

struct GenPoissonParams {
    double lambda, alpha;
    GenPoissonParams(double lambda_, double alpha_) : lambda(lambda_), alpha(alpha_) {
        if (!(lambda > 0.0)) throw std::invalid_argument("GenPoissonParams: requires lambda > 0");
        if (!(alpha >= 0.0 && alpha < 1.0))
            throw std::invalid_argument("GenPoissonParams: requires 0 <= alpha < 1");
    }
};

struct GammaParams {
    double k, theta;
    GammaParams(double k_, double theta_) : k(k_), theta(theta_) {
        if (!(k > 0.0) || !(theta > 0.0))
            throw std::invalid_argument("GammaParams: requires k > 0 and theta > 0");
    }
};

// The standard uniform distribution on [0, 1]; parameter-free.
struct UniformParams {};

struct MultiHyperParams {
    std::vector<double> C;  // class sizes, indices 0..kappa; real, possibly negative
    long long n;            // draws
    MultiHyperParams(std::vector<double> C_, long long n_) : C(std::move(C_)), n(n_) {
        if (C.size() < 2) throw std::invalid_argument("MultiHyperParams: requires >= 2 classes");
        if (n < 1) throw std::invalid_argument("MultiHyperParams: requires n >= 1");
        const double N = total();
        if (N == 0.0) throw std::invalid_argument("MultiHyperParams: requires sum C != 0");
        for (double c : C)
            if (!(c / N > 0.0)) throw std::invalid_argument("MultiHyperParams: requires C_i/N > 0");
        if (!((static_cast<double>(n) - 1.0) / N < 1.0))
            throw std::invalid_argument("MultiHyperParams: requires (n-1)/N < 1");
    }
    double total() const {
        double s = 0.0;
        for (double c : C) s += c;
        return s;
    }
    std::size_t kappa() const { return C.size() - 1; }
};

struct InvHyperParams {
    std::vector<double> C;  // class sizes, indices 0..kappa
    long long gamma;        // stopping count of class-0 draws (= x_0)
    InvHyperParams(std::vector<double> C_, long long gamma_) : C(std::move(C_)), gamma(gamma_) {
        if (C.size() < 2) throw std::invalid_argument("InvHyperParams: requires >= 2 classes");
        if (gamma < 1) throw std::invalid_argument("InvHyperParams: requires gamma >= 1");
        const double N = total();
        if (N == 0.0) throw std::invalid_argument("InvHyperParams: requires sum C != 0");
        if (!(C[0] / N > (static_cast<double>(gamma) - 1.0) / N))
            throw std::invalid_argument("InvHyperParams: requires C_0/N > (gamma-1)/N");
        for (std::size_t i = 1; i < C.size(); ++i)
            if (!(C[i] / N > 0.0)) throw std::invalid_argument("InvHyperParams: requires C_i/N > 0");
    }
    double total() const {
        double s = 0.0;
        for (double c : C) s += c;
        return s;
    }
    std::size_t kappa() const { return C.size() - 1; }
};

struct MultinomialParams {
    std::vector<double> p;  // category probabilities, indices 0..kappa
    long long n;
    MultinomialParams(std::vector<double> p_, long long n_) : p(std::move(p_)), n(n_) {
        if (p.size() < 2) throw std::invalid_argument("MultinomialParams: requires >= 2 categories");
        if (n < 1) throw std::invalid_argument("MultinomialParams: requires n >= 1");
        double s = 0.0;
        for (double v : p) {
            if (!(v > 0.0)) throw std::invalid_argument("MultinomialParams: requires p_i > 0");
            s += v;
        }
        if (std::fabs(s - 1.0) > 1e-12)
            throw std::invalid_argument("MultinomialParams: requires sum p_i = 1");
    }
    std::size_t kappa() const { return p.size() - 1; }
};

struct NegMultinomialParams {
    std::vector<double> p;
    long long gamma;  // stopping count of category-0 successes (= x_0)
    NegMultinomialParams(std::vector<double> p_, long long gamma_) : p(std::move(p_)), gamma(gamma_) {
        if (p.size() < 2)
            throw std::invalid_argument("NegMultinomialParams: requires >= 2 categories");
        if (gamma < 1) throw std::invalid_argument("NegMultinomialParams: requires gamma >= 1");
        double s = 0.0;
        for (double v : p) {
            if (!(v > 0.0)) throw std::invalid_argument("NegMultinomialParams: requires p_i > 0");
            s += v;
        }
        if (std::fabs(s - 1.0) > 1e-12)
            throw std::invalid_argument("NegMultinomialParams: requires sum p_i = 1");
    }
    std::size_t kappa() const { return p.size() - 1; }
};

struct DirichletParams {
    std::vector<double> alpha;  // concentration, indices 0..kappa
    explicit DirichletParams(std::vector<double> alpha_) : alpha(std::move(alpha_)) {
        if (alpha.size() < 2) throw std::invalid_argument("DirichletParams: requires >= 2 components");
        for (double a : alpha)
            if (!(a > 0.0)) throw std::invalid_argument("DirichletParams: requires alpha_i > 0");
    }
    std::size_t kappa() const { return alpha.size() - 1; }
    double alpha_sum() const {
        double s = 0.0;
        for (double a : alpha) s += a;
        return s;
    }
};

// Symmetric positive-definite test. Pivots of the Cholesky factorization
// must exceed 1e-12 times the largest diagonal entry.
inline bool is_spd(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() < 1) return false;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) return false;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) return false;
    const Eigen::VectorXd d = llt.matrixL().toDenseMatrix().diagonal();
    const double maxdiag = m.diagonal().maxCoeff();
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (!(d[i] * d[i] > 1e-12 * maxdiag)) return false;
    return true;
}

struct MatrixGammaParams {
    double alpha, beta;
    Eigen::MatrixXd Sigma;
    MatrixGammaParams(double alpha_, double beta_, Eigen::MatrixXd Sigma_)
        : alpha(alpha_), beta(beta_), Sigma(std::move(Sigma_)) {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw std::invalid_argument("MatrixGammaParams: requires alpha > 0 and beta > 0");
        if (!is_spd(Sigma))
            throw std::invalid_argument("MatrixGammaParams: Sigma must be symmetric positive-definite");
        // Normalizability assumption for the density on the p x p cone.
        if (!(alpha > (static_cast<double>(p()) - 1.0) / 2.0))
            throw std::invalid_argument("MatrixGammaParams: requires alpha > (p-1)/2");
    }
    int p() const { return static_cast<int>(Sigma.rows()); }
};

using FamilyParams =
    std::variant<BernoulliParams, HypergeomParams, GenPoissonParams, GammaParams, UniformParams,
                 MultiHyperParams, InvHyperParams, MultinomialParams, NegMultinomialParams,
                 DirichletParams, MatrixGammaParams>;

using Point = std::variant<double, std::vector<double>, Eigen::MatrixXd>;

namespace detail {

inline bool near_integer(double x) { return std::fabs(x - std::round(x)) <= 1e-9; }

inline long long as_count(double x) {
    if (!near_integer(x) || x < -0.5) return -1;
    return static_cast<long long>(std::llround(x));
}

// log of prod_i binom(C_i, x_i) / binom(N, n) for integer counts x against
// real class sizes C, honoring the zero branch x_i >= 1 + C_i > 1. Returns
// -inf for zero mass; a negative product would mean the parameters do not
// define a distribution, which the param invariants exclude.
inline double log_gen_hyper_core(const std::vector<double>& C, const std::vector<long long>& x,
                                 double N, long long n) {
    SignedLogValue prod{+1, 0.0};
    for (std::size_t i = 0; i < C.size(); ++i) {
        if (C[i] > 0.0 && static_cast<double>(x[i]) >= 1.0 + C[i]) return kNegInf;
        prod = prod * signed_log_gen_binom(C[i], x[i]);
    }
    const SignedLogValue den = signed_log_gen_binom(N, n);
    if (den.sign == 0) throw std::domain_error("generalized hypergeometric: zero denominator");
    const SignedLogValue r = prod / den;
    if (r.sign == 0) return kNegInf;
    if (r.sign < 0) throw std::domain_error("generalized hypergeometric: negative mass");
    return r.log_mag;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Log densities (natural log of the pmf/pdf at a point).
// ---------------------------------------------------------------------------

inline double log_density(const BernoulliParams& par, double x) {
    const long long v = detail::as_count(x);
    if (v == 0) return std::log1p(-par.p);
    if (v == 1) return std::log(par.p);
    return kNegInf;
}

inline double log_density(const HypergeomParams& par, double x) {
    const long long v = detail::as_count(x);
    if (v < 0 || v > par.n || v > par.R || par.n - v > par.B()) return kNegInf;
    return signed_log_gen_binom(static_cast<double>(par.R), v).log_mag +
           signed_log_gen_binom(static_cast<double>(par.B()), par.n - v).log_mag -
           signed_log_gen_binom(static_cast<double>(par.N), par.n).log_mag;
}

// pmf lambda (lambda + x alpha)^{x-1} e^{-lambda - x alpha} / x!, kept in log
// form so counts in the thousands do not overflow.
inline double log_density(const GenPoissonParams& par, double x) {
    const long long v = detail::as_count(x);
    if (v < 0) return kNegInf;
    const double xd = static_cast<double>(v);
    return std::log(par.lambda) + (xd - 1.0) * std::log(par.lambda + xd * par.alpha) - par.lambda -
           xd * par.alpha - log_gamma(xd + 1.0);
}

inline double log_density(const GammaParams& par, double x) {
    if (!(x > 0.0)) return kNegInf;
    return (par.k - 1.0) * std::log(x) - log_gamma(par.k) - par.k * std::log(par.theta) -
           x / par.theta;
}

inline double log_density(const UniformParams&, double x) {
    return (x >= 0.0 && x <= 1.0) ? 0.0 : kNegInf;
}

inline double log_density(const MultiHyperParams& par, const std::vector<double>& x) {
    if (x.size() != par.C.size())
        throw std::invalid_argument("log_density: point dimension mismatch");
    std::vector<long long> v(x.size());
    long long sum = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        v[i] = detail::as_count(x[i]);
        if (v[i] < 0) return kNegInf;
        sum += v[i];
    }
    if (sum != par.n) return kNegInf;
    return detail::log_gen_hyper_core(par.C, v, par.total(), par.n);
}

inline double log_density(const InvHyperParams& par, const std::vector<double>& x) {
    if (x.size() != par.C.size())
        throw std::invalid_argument("log_density: point dimension mismatch");
    std::vector<long long> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        v[i] = detail::as_count(x[i]);
        if (v[i] < 0) return kNegInf;
    }
    if (v[0] != par.gamma) return kNegInf;
    long long n = 0;
    for (long long c : v) n += c;
    const double N = par.total();
    if ((static_cast<double>(n) - 1.0) / N >= 1.0) return kNegInf;
    for (std::size_t i = 1; i < par.C.size(); ++i)
        if (par.C[i] > 0.0 && static_cast<double>(v[i]) >= 1.0 + par.C[i]) return kNegInf;
    const double core = detail::log_gen_hyper_core(par.C, v, N, n);
    if (core == kNegInf) return kNegInf;
    return std::log(static_cast<double>(par.gamma) / static_cast<double>(n)) + core;
}

inline double log_density(const MultinomialParams& par, const std::vector<double>& x) {
    if (x.size() != par.p.size())
        throw std::invalid_argument("log_density: point dimension mismatch");
    long long sum = 0;
    double lp = log_gamma(static_cast<double>(par.n) + 1.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long long v = detail::as_count(x[i]);
        if (v < 0) return kNegInf;
        sum += v;
        lp += static_cast<double>(v) * std::log(par.p[i]) - log_gamma(static_cast<double>(v) + 1.0);
    }
    return sum == par.n ? lp : kNegInf;
}

inline double log_density(const NegMultinomialParams& par, const std::vector<double>& x) {
    if (x.size() != par.p.size())
        throw std::invalid_argument("log_density: point dimension mismatch");
    std::vector<long long> v(x.size());
    long long n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        v[i] = detail::as_count(x[i]);
        if (v[i] < 0) return kNegInf;
        n += v[i];
    }
    if (v[0] != par.gamma) return kNegInf;
    double lp = std::log(static_cast<double>(par.gamma) / static_cast<double>(n)) +
                log_gamma(static_cast<double>(n) + 1.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        lp += static_cast<double>(v[i]) * std::log(par.p[i]) -
              log_gamma(static_cast<double>(v[i]) + 1.0);
    return lp;
}

inline double log_density(const DirichletParams& par, const std::vector<double>& x) {
    if (x.size() != par.alpha.size())
        throw std::invalid_argument("log_density: point dimension mismatch");
    double s = 0.0;
    for (double v : x) s += v;
    if (std::fabs(s - 1.0) > 1e-9)
        throw std::invalid_argument("log_density: Dirichlet point off the simplex");
    double lp = log_gamma(par.alpha_sum());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0)) return kNegInf;
        lp += (par.alpha[i] - 1.0) * std::log(x[i]) - log_gamma(par.alpha[i]);
    }
    return lp;
}

// log of the multivariate gamma function Gamma_p(a).
inline double log_multigamma(int p, double a) {
    double lg = 0.25 * static_cast<double>(p) * (static_cast<double>(p) - 1.0) * std::log(M_PI);
    for (int j = 1; j <= p; ++j) lg += log_gamma(a - 0.5 * static_cast<double>(j - 1));
    return lg;
}

inline double log_density(const MatrixGammaParams& par, const Eigen::MatrixXd& x) {
    const int p = par.p();
    if (x.rows() != p || x.cols() != p)
        throw std::invalid_argument("log_density: point dimension mismatch");
    if ((x - x.transpose()).cwiseAbs().maxCoeff() >
        1e-9 * std::max(1.0, x.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("log_density: matrix point must be symmetric");
    Eigen::LLT<Eigen::MatrixXd> lx(x);
    if (lx.info() != Eigen::Success) return kNegInf;
    const double logdet_x =
        2.0 * lx.matrixL().toDenseMatrix().diagonal().array().log().sum();
    Eigen::LLT<Eigen::MatrixXd> ls(par.Sigma);
    const double logdet_sigma =
        2.0 * ls.matrixL().toDenseMatrix().diagonal().array().log().sum();
    const double tr = ls.solve(x).trace();
    const double pd = static_cast<double>(p);
    return -par.alpha * logdet_sigma - pd * par.alpha * std::log(par.beta) -
           log_multigamma(p, par.alpha) + (par.alpha - (pd + 1.0) / 2.0) * logdet_x -
           tr / par.beta;
}

namespace detail {
// Point kind each family's density accepts; used to keep the variant
// dispatch from self-selecting through implicit conversions.
template <class F>
struct expected_point {
    using type = std::vector<double>;
};
template <> struct expected_point<BernoulliParams> { using type = double; };
template <> struct expected_point<HypergeomParams> { using type = double; };
template <> struct expected_point<GenPoissonParams> { using type = double; };
template <> struct expected_point<GammaParams> { using type = double; };
template <> struct expected_point<UniformParams> { using type = double; };
template <> struct expected_point<MatrixGammaParams> { using type = Eigen::MatrixXd; };
}  // namespace detail

inline double log_density(const FamilyParams& par, const Point& x) {
    return std::visit(
        [](const auto& fam, const auto& pt) -> double {
            using F = std::decay_t<decltype(fam)>;
            using P = std::decay_t<decltype(pt)>;
            if constexpr (std::is_same_v<P, typename detail::expected_point<F>::type>) {
                return log_density(fam, pt);
            } else {
                throw std::invalid_argument("log_density: point type does not match family");
            }
        },
        par, x);
}

// ---------------------------------------------------------------------------
// Analytic means of one draw.
// ---------------------------------------------------------------------------

inline double family_mean(const BernoulliParams& par) { return par.p; }
inline double family_mean(const HypergeomParams& par) {
    return static_cast<double>(par.n) * static_cast<double>(par.R) / static_cast<double>(par.N);
}
inline double family_mean(const GenPoissonParams& par) { return par.lambda / (1.0 - par.alpha); }
inline double family_mean(const GammaParams& par) { return par.k * par.theta; }
inline double family_mean(const UniformParams&) { return 0.5; }
inline std::vector<double> family_mean(const MultiHyperParams& par) {
    std::vector<double> mu(par.C.size());
    const double N = par.total();
    for (std::size_t i = 0; i < par.C.size(); ++i)
        mu[i] = static_cast<double>(par.n) * par.C[i] / N;
    return mu;
}
// Reported mean uses the ratio form gamma*C_i/C_0, the sampling-with-
// replacement limit. The exact mean of the finite-population pmf is
// gamma*C_i/(C_0+1) for i >= 1; callers needing the exact value should
// enumerate the pmf.
inline std::vector<double> family_mean(const InvHyperParams& par) {
    std::vector<double> mu(par.C.size());
    for (std::size_t i = 0; i < par.C.size(); ++i)
        mu[i] = static_cast<double>(par.gamma) * par.C[i] / par.C[0];
    return mu;
}
inline std::vector<double> family_mean(const MultinomialParams& par) {
    std::vector<double> mu(par.p.size());
    for (std::size_t i = 0; i < par.p.size(); ++i) mu[i] = static_cast<double>(par.n) * par.p[i];
    return mu;
}
inline std::vector<double> family_mean(const NegMultinomialParams& par) {
    std::vector<double> mu(par.p.size());
    for (std::size_t i = 0; i < par.p.size(); ++i)
        mu[i] = static_cast<double>(par.gamma) * par.p[i] / par.p[0];
    return mu;
}
inline std::vector<double> family_mean(const DirichletParams& par) {
    std::vector<double> mu(par.alpha.size());
    const double s = par.alpha_sum();
    for (std::size_t i = 0; i < par.alpha.size(); ++i) mu[i] = par.alpha[i] / s;
    return mu;
}
inline Eigen::MatrixXd family_mean(const MatrixGammaParams& par) {
    return par.alpha * par.beta * par.Sigma;
}

inline Point family_mean(const FamilyParams& par) {
    return std::visit([](const auto& fam) -> Point { return family_mean(fam); }, par);
}

// ---------------------------------------------------------------------------
// Samplers. Lattice families draw by inversion over a cached cumulative pmf;
// the cache is rebuilt when the parameters change and is thread-local.
// ---------------------------------------------------------------------------

namespace detail {

struct ScalarTable {
    std::vector<double> cum;
    long long first = 0;
    bool valid = false;
};

inline long long invert_cum(const std::vector<double>& cum, double u) {
    // First index with cum >= u; u beyond the table (mass < 1e-13) clamps.
    std::size_t lo = 0, hi = cum.size() - 1;
    if (u > cum[hi]) return static_cast<long long>(hi);
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (cum[mid] >= u)
            hi = mid;
        else
            lo = mid + 1;
    }
    return static_cast<long long>(lo);
}

struct VectorTable {
    std::vector<double> cum;
    std::vector<std::vector<double>> pts;
    bool valid = false;
};

// Enumerate all nonnegative integer vectors of length dim with sum n,
// invoking fn on each.
template <class Fn>
void for_each_composition(long long n, std::size_t dim, std::vector<double>& buf, std::size_t pos,
                          Fn&& fn) {
    if (pos + 1 == dim) {
        buf[pos] = static_cast<double>(n);
        fn(buf);
        return;
    }
    for (long long v = 0; v <= n; ++v) {
        buf[pos] = static_cast<double>(v);
        for_each_composition(n - v, dim, buf, pos + 1, fn);
    }
}

inline double n_compositions(long long n, std::size_t dim) {
    // binom(n + dim - 1, dim - 1)
    return signed_log_gen_binom(static_cast<double>(n) + static_cast<double>(dim) - 1.0,
                                static_cast<long long>(dim) - 1)
        .value();
}

}  // namespace detail

inline double draw_sample(const UniformParams&, RngState& rng) { return rng.next_double(); }

inline double draw_sample(const BernoulliParams& par, RngState& rng) {
    return rng.next_double() < par.p ? 1.0 : 0.0;
}

// Marsaglia-Tsang squeeze rejection, shape-adaptive: shapes below one are
// boosted by one and corrected with a power of a uniform.
inline double draw_sample(const GammaParams& par, RngState& rng) {
    double k = par.k;
    double boost = 1.0;
    if (k < 1.0) {
        double u;
        do {
            u = rng.next_double();
        } while (u <= 0.0);
        boost = std::pow(u, 1.0 / k);
        k += 1.0;
    }
    const double d = k - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = rng.next_normal();
        const double cx = 1.0 + c * x;
        if (cx <= 0.0) continue;
        const double v = cx * cx * cx;
        const double u = rng.next_double();
        if (u < 1.0 - 0.0331 * x * x * x * x) return par.theta * boost * d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return par.theta * boost * d * v;
    }
}

inline double draw_sample(const GenPoissonParams& par, RngState& rng) {
    thread_local detail::ScalarTable table;
    thread_local double c_lambda = -1.0, c_alpha = -1.0;
    if (!table.valid || c_lambda != par.lambda || c_alpha != par.alpha) {
        table.cum.clear();
        table.first = 0;
        double cum = 0.0;
        for (long long x = 0; x < 10000000; ++x) {
            cum += std::exp(log_density(par, static_cast<double>(x)));
            table.cum.push_back(cum);
            if (cum >= 1.0 - 1e-13) break;
        }
        table.valid = true;
        c_lambda = par.lambda;
        c_alpha = par.alpha;
    }
    return static_cast<double>(detail::invert_cum(table.cum, rng.next_double()));
}

inline double draw_sample(const HypergeomParams& par, RngState& rng) {
    thread_local detail::ScalarTable table;
    thread_local long long c_N = -1, c_R = -1, c_n = -1;
    if (!table.valid || c_N != par.N || c_R != par.R || c_n != par.n) {
        table.cum.clear();
        table.first = std::max(0LL, par.n - par.B());
        const long long hi = std::min(par.n, par.R);
        double cum = 0.0;
        for (long long x = table.first; x <= hi; ++x) {
            cum += std::exp(log_density(par, static_cast<double>(x)));
            table.cum.push_back(cum);
        }
        table.valid = true;
        c_N = par.N;
        c_R = par.R;
        c_n = par.n;
    }
    return static_cast<double>(table.first + detail::invert_cum(table.cum, rng.next_double()));
}

inline std::vector<double> draw_sample(const MultiHyperParams& par, RngState& rng) {
    for (double c : par.C)
        if (c <= 0.0)
            throw std::invalid_argument(
                "draw_sample: multivariate hypergeometric sampling needs positive class sizes");
    if (detail::n_compositions(par.n, par.C.size()) > 1e7)
        throw std::invalid_argument("draw_sample: lattice support too large to tabulate");
    thread_local detail::VectorTable table;
    thread_local std::vector<double> c_C;
    thread_local long long c_n = -1;
    if (!table.valid || c_C != par.C || c_n != par.n) {
        table.cum.clear();
        table.pts.clear();
        double cum = 0.0;
        std::vector<double> buf(par.C.size());
        detail::for_each_composition(par.n, par.C.size(), buf, 0, [&](const std::vector<double>& x) {
            const double lp = log_density(par, x);
            if (lp == kNegInf) return;
            cum += std::exp(lp);
            table.cum.push_back(cum);
            table.pts.push_back(x);
        });
        table.valid = true;
        c_C = par.C;
        c_n = par.n;
    }
    return table.pts[static_cast<std::size_t>(detail::invert_cum(table.cum, rng.next_double()))];
}

inline std::vector<double> draw_sample(const MultinomialParams& par, RngState& rng) {
    if (detail::n_compositions(par.n, par.p.size()) > 1e7)
        throw std::invalid_argument("draw_sample: lattice support too large to tabulate");
    thread_local detail::VectorTable table;
    thread_local std::vector<double> c_p;
    thread_local long long c_n = -1;
    if (!table.valid || c_p != par.p || c_n != par.n) {
        table.cum.clear();
        table.pts.clear();
        double cum = 0.0;
        std::vector<double> buf(par.p.size());
        detail::for_each_composition(par.n, par.p.size(), buf, 0, [&](const std::vector<double>& x) {
            cum += std::exp(log_density(par, x));
            table.cum.push_back(cum);
            table.pts.push_back(x);
        });
        table.valid = true;
        c_p = par.p;
        c_n = par.n;
    }
    return table.pts[static_cast<std::size_t>(detail::invert_cum(table.cum, rng.next_double()))];
}

// Urn process: draw without replacement until the gamma-th class-0 unit
// appears. Exact for positive integer class sizes.
inline std::vector<double> draw_sample(const InvHyperParams& par, RngState& rng) {
    std::vector<long long> left(par.C.size());
    double total = 0.0;
    for (std::size_t i = 0; i < par.C.size(); ++i) {
        if (par.C[i] <= 0.0 || !detail::near_integer(par.C[i]))
            throw std::invalid_argument(
                "draw_sample: inverse hypergeometric sampling needs positive integer class sizes");
        left[i] = static_cast<long long>(std::llround(par.C[i]));
        total += par.C[i];
    }
    if (static_cast<double>(par.gamma) > par.C[0])
        throw std::invalid_argument("draw_sample: gamma exceeds class-0 size");
    std::vector<double> counts(par.C.size(), 0.0);
    long long remaining = static_cast<long long>(std::llround(total));
    while (counts[0] < static_cast<double>(par.gamma)) {
        const double u = rng.next_double() * static_cast<double>(remaining);
        double acc = 0.0;
        std::size_t pick = par.C.size() - 1;
        for (std::size_t i = 0; i < par.C.size(); ++i) {
            acc += static_cast<double>(left[i]);
            if (u < acc) {
                pick = i;
                break;
            }
        }
        left[pick] -= 1;
        remaining -= 1;
        counts[pick] += 1.0;
    }
    return counts;
}

// Categorical trials until gamma category-0 successes.
inline std::vector<double> draw_sample(const NegMultinomialParams& par, RngState& rng) {
    std::vector<double> counts(par.p.size(), 0.0);
    while (counts[0] < static_cast<double>(par.gamma)) {
        double u = rng.next_double();
        std::size_t pick = par.p.size() - 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < par.p.size(); ++i) {
            acc += par.p[i];
            if (u < acc) {
                pick = i;
                break;
            }
        }
        counts[pick] += 1.0;
    }
    return counts;
}

inline std::vector<double> draw_sample(const DirichletParams& par, RngState& rng) {
    std::vector<double> g(par.alpha.size());
    double s = 0.0;
    for (std::size_t i = 0; i < par.alpha.size(); ++i) {
        g[i] = draw_sample(GammaParams(par.alpha[i], 1.0), rng);
        s += g[i];
    }
    for (double& v : g) v /= s;
    return g;
}

// Bartlett-style factorization of a Wishart draw with 2*alpha degrees of
// freedom and scale (beta/2)*Sigma; requires 2*alpha > p - 1.
inline Eigen::MatrixXd draw_sample(const MatrixGammaParams& par, RngState& rng) {
    const int p = par.p();
    const double dof = 2.0 * par.alpha;
    if (!(dof > static_cast<double>(p) - 1.0))
        throw std::invalid_argument("draw_sample: matrix gamma sampling requires 2*alpha > p-1");
    const Eigen::MatrixXd V = 0.5 * par.beta * par.Sigma;
    const Eigen::MatrixXd L = Eigen::LLT<Eigen::MatrixXd>(V).matrixL();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < p; ++i) {
        // Chi-square with dof - i degrees of freedom is Gamma((dof-i)/2, 2).
        A(i, i) = std::sqrt(draw_sample(GammaParams(0.5 * (dof - static_cast<double>(i)), 2.0), rng));
        for (int j = 0; j < i; ++j) A(i, j) = rng.next_normal();
    }
    const Eigen::MatrixXd LA = L * A;
    return LA * LA.transpose();
}

inline Point draw_sample(const FamilyParams& par, RngState& rng) {
    return std::visit([&rng](const auto& fam) -> Point { return draw_sample(fam, rng); }, par);
}

}  // namespace lrb

#endif  // LRB_DISTRIBUTIONS_HPP
