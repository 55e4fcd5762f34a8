#pragma once

// Independent ground-truth tail probabilities for the sample mean: exact
// summation and enumeration, closed-form CDFs, and seeded Monte Carlo with
// conservative brackets.  Every estimate carries an interval [lower, upper]
// that is believed to contain the true tail probability; verification code
// checks bounds against these intervals rather than against point values.
//
// This header deliberately does not depend on the bound catalog: oracles are
// computed from densities and samplers alone, so agreement between the two
// sides is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lrb/distributions.hpp"
#include "lrb/lr_core.hpp"
#include "lrb/numerics.hpp"

namespace lrb {

enum class OracleKind { exact, truncated, monte_carlo };

inline const char* to_string(OracleKind k) {
    switch (k) {
        case OracleKind::exact: return "exact";
        case OracleKind::truncated: return "truncated";
        default: return "monte_carlo";
    }
}

// invariant: 0 <= lower <= estimate <= upper <= 1; exact kinds keep the
// bracket width at or below 1e-12.
struct OracleEstimate {
    double estimate = 0.0;
    double lower = 0.0;
    double upper = 1.0;
    OracleKind kind = OracleKind::exact;
    std::string detail;
};

// Threshold convention shared with the verification driver: for lattice sums
// the event {mean >= z} is {sum >= ceil(n z)} with a 1e-9 slop absorbing
// representation error in n*z, and symmetrically for the lower tail.
inline double ceil_eps(double x) { return std::ceil(x - 1e-9); }
inline double floor_eps(double x) { return std::floor(x + 1e-9); }

namespace detail {

inline OracleEstimate make_exact(double est, const std::string& detail_text,
                                 double half_width = 4.5e-13) {
    OracleEstimate out;
    out.estimate = std::min(1.0, std::max(0.0, est));
    out.lower = std::max(0.0, out.estimate - half_width);
    out.upper = std::min(1.0, out.estimate + half_width);
    out.kind = OracleKind::exact;
    out.detail = detail_text;
    return out;
}

// Compensated accumulator: keeps the summation error independent of the
// term count, so exact-kind brackets stay honest on large enumerations.
struct KahanSum {
    long double sum = 0.0L;
    long double comp = 0.0L;
    void add(long double term) {
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double value() const { return static_cast<double>(sum); }
};

// Sum exp(log-mass) over an inclusive integer range in the log domain.
template <class LogMass>
double log_range_sum(long long k_lo, long long k_hi, LogMass&& log_mass) {
    if (k_lo > k_hi) return kNegInf;
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
    for (long long k = k_lo; k <= k_hi; ++k) logs.push_back(log_mass(k));
    return log_sum_exp(logs);
}

}  // namespace detail

// Exact binomial tail of the sample mean of n Bernoulli(p) draws.
inline OracleEstimate binomial_exact_tail(long long n, double p, double z,
                                          Direction dir) {
    if (n < 1 || n > 100000)
        throw std::invalid_argument("binomial_exact_tail: requires 1 <= n <= 1e5");
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("binomial_exact_tail: requires p in (0, 1)");
    const double nz = static_cast<double>(n) * z;
    long long k_lo = 0;
    long long k_hi = n;
    if (dir == Direction::upper_tail) {
        k_lo = std::max<long long>(0, static_cast<long long>(ceil_eps(nz)));
        if (k_lo > n) return detail::make_exact(0.0, "empty upper range");
    } else {
        k_hi = std::min<long long>(n, static_cast<long long>(floor_eps(nz)));
        if (k_hi < 0) return detail::make_exact(0.0, "empty lower range");
    }
    const double ln_p = std::log(p);
    const double ln_q = std::log1p(-p);
    const double ln_n_fact = log_gamma(static_cast<double>(n) + 1.0);
    const double log_tail = detail::log_range_sum(k_lo, k_hi, [&](long long k) {
        const double kd = static_cast<double>(k);
        return ln_n_fact - log_gamma(kd + 1.0) -
               log_gamma(static_cast<double>(n - k) + 1.0) + kd * ln_p +
               (static_cast<double>(n) - kd) * ln_q;
    });
    return detail::make_exact(std::exp(log_tail),
                              "summed " + std::to_string(k_hi - k_lo + 1) + " terms");
}

// Exact tail of a single hypergeometric draw: Pr{X >= r} or Pr{X <= r}.
inline OracleEstimate hypergeom_exact_tail(const HypergeomParams& par, long long r,
                                           Direction dir) {
    if (par.N > 10000)
        throw std::invalid_argument("hypergeom_exact_tail: requires N <= 1e4");
    const long long support_lo = std::max<long long>(0, par.n - par.B());
    const long long support_hi = std::min(par.n, par.R);
    long long k_lo = support_lo;
    long long k_hi = support_hi;
    if (dir == Direction::upper_tail) {
        k_lo = std::max(k_lo, r);
        if (k_lo > k_hi) return detail::make_exact(0.0, "empty upper range");
    } else {
        k_hi = std::min(k_hi, r);
        if (k_hi < k_lo) return detail::make_exact(0.0, "empty lower range");
    }
    const double log_tail = detail::log_range_sum(k_lo, k_hi, [&](long long k) {
        return log_density(par, static_cast<double>(k));
    });
    return detail::make_exact(std::exp(log_tail),
                              "summed " + std::to_string(k_hi - k_lo + 1) + " terms");
}

// Tail of the mean of n generalized Poisson draws.  The sum of n iid draws
// with rate lambda is again generalized Poisson with rate n*lambda and the
// same dispersion, so the tail reduces to a univariate lattice sum.  Upper
// tails use the complement of a finite lower sum and are exact up to floating
// point; truncation slack is folded into the bracket.
inline OracleEstimate gen_poisson_sum_tail(long long n, const GenPoissonParams& par,
                                           double z, Direction dir) {
    if (n < 1) throw std::invalid_argument("gen_poisson_sum_tail: requires n >= 1");
    const double total_rate = static_cast<double>(n) * par.lambda;
    if (!(total_rate <= 10000.0))
        throw std::invalid_argument("gen_poisson_sum_tail: requires n*lambda <= 1e4");
    const GenPoissonParams sum_par(total_rate, par.alpha);
    const double nz = static_cast<double>(n) * z;
    const long long t_up = static_cast<long long>(ceil_eps(nz));
    const long long t_lo = static_cast<long long>(floor_eps(nz));

    constexpr long long kMaxTerms = 10000000;
    double cum = 0.0;
    double below_upper = 0.0;   // sum over y < t_up
    double upto_lower = 0.0;    // sum over y <= t_lo
    bool below_upper_known = t_up <= 0;
    bool upto_lower_known = t_lo < 0;
    long long terms = 0;
    long long y = 0;
    for (; terms < kMaxTerms; ++y, ++terms) {
        cum += std::exp(log_density(sum_par, static_cast<double>(y)));
        if (y == t_up - 1) {
            below_upper = cum;
            below_upper_known = true;
        }
        if (y == t_lo) {
            upto_lower = cum;
            upto_lower_known = true;
        }
        if (cum >= 1.0 - 1e-13) break;
    }
    const double fp_slack = static_cast<double>(terms + 1) * 3e-16;
    const double unexplored = std::max(0.0, 1.0 - cum);

    OracleEstimate out;
    out.kind = OracleKind::truncated;
    out.detail = "summed " + std::to_string(terms + 1) +
                 " terms, residual mass <= " + std::to_string(unexplored + fp_slack);
    if (dir == Direction::upper_tail) {
        if (below_upper_known) {
            out.estimate = std::min(1.0, std::max(0.0, 1.0 - below_upper));
            out.lower = std::max(0.0, out.estimate - fp_slack);
            out.upper = std::min(1.0, out.estimate + fp_slack);
        } else {
            // Threshold lies beyond the summed range: the event is contained
            // in the unexplored remainder.
            out.lower = 0.0;
            out.upper = std::min(1.0, unexplored + fp_slack);
            out.estimate = out.upper;
        }
    } else {
        if (upto_lower_known) {
            out.estimate = std::min(1.0, std::max(0.0, upto_lower));
            out.lower = std::max(0.0, out.estimate - fp_slack);
            out.upper = std::min(1.0, out.estimate + fp_slack);
        } else {
            // Event contains everything summed so far.
            out.lower = std::max(0.0, cum - fp_slack);
            out.upper = 1.0;
            out.estimate = out.lower;
        }
    }
    return out;
}

// Exact tail of the mean of n Gamma(k, theta) draws via the regularized
// incomplete gamma function: the sum is Gamma(n k, theta).
inline OracleEstimate gamma_sum_tail_exact(long long n, const GammaParams& par,
                                           double z, Direction dir) {
    if (n < 1) throw std::invalid_argument("gamma_sum_tail_exact: requires n >= 1");
    if (!(z >= 0.0)) throw std::invalid_argument("gamma_sum_tail_exact: requires z >= 0");
    const double shape = static_cast<double>(n) * par.k;
    const double x = static_cast<double>(n) * z / par.theta;
    const double tail = dir == Direction::upper_tail ? reg_gamma_upper(shape, x)
                                                     : reg_gamma_lower(shape, x);
    return detail::make_exact(tail, "regularized incomplete gamma, shape " +
                                        std::to_string(shape));
}

// Exact tail of the mean of n iid Uniform[0,1] draws via the piecewise
// polynomial CDF of their sum.  The alternating series is summed in long
// double with compensation; n is capped where the alternation is still
// well conditioned.
inline OracleEstimate irwin_hall_tail(long long n, double z, Direction dir) {
    if (n < 1 || n > 15)
        throw std::invalid_argument("irwin_hall_tail: requires 1 <= n <= 15");
    if (!(z >= 0.0) || !(z <= 1.0))
        throw std::invalid_argument("irwin_hall_tail: requires z in [0, 1]");
    const long double s = static_cast<long double>(n) * static_cast<long double>(z);
    long double n_fact = 1.0L;
    for (long long i = 2; i <= n; ++i) n_fact *= static_cast<long double>(i);
    const long long j_max = static_cast<long long>(std::floor(static_cast<double>(s)));
    long double sum = 0.0L;
    long double comp = 0.0L;
    long double binom = 1.0L;  // C(n, j), updated incrementally
    for (long long j = 0; j <= std::min(j_max, n); ++j) {
        const long double term = (j % 2 == 0 ? 1.0L : -1.0L) * binom *
                                 std::pow(s - static_cast<long double>(j),
                                          static_cast<long double>(n));
        const long double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        binom *= static_cast<long double>(n - j) / static_cast<long double>(j + 1);
    }
    const long double cdf = (sum + comp) / n_fact;
    const double below = std::min(1.0, std::max(0.0, static_cast<double>(cdf)));
    const double tail = dir == Direction::upper_tail ? 1.0 - below : below;
    return detail::make_exact(tail, "piecewise polynomial CDF of the uniform sum");
}

namespace detail {

// Componentwise event check on components 1..kappa with lattice slop.
inline bool orthant_event(const std::vector<double>& x, const std::vector<double>& z,
                          Direction dir) {
    for (std::size_t i = 1; i < z.size(); ++i) {
        if (dir == Direction::upper_tail) {
            if (!(x[i] >= z[i] - 1e-9)) return false;
        } else {
            if (!(x[i] <= z[i] + 1e-9)) return false;
        }
    }
    return true;
}

template <class Par>
OracleEstimate enumerate_tail_impl(const Par& par, long long n,
                                   const std::vector<double>& z, Direction dir) {
    const std::size_t parts = static_cast<std::size_t>(par.kappa()) + 1;
    if (z.size() != parts)
        throw std::invalid_argument("enumerate_tail: z must have kappa+1 components");
    const double count = n_compositions(n, parts);
    if (!(count <= 1e7))
        throw std::invalid_argument("enumerate_tail: composition count exceeds 1e7");
    KahanSum acc;
    std::vector<double> buf(parts);
    for_each_composition(n, parts, buf, 0, [&](const std::vector<double>& x) {
        if (orthant_event(x, z, dir)) acc.add(std::exp(log_density(par, x)));
    });
    return make_exact(acc.value(), "enumerated " +
                                       std::to_string(static_cast<long long>(count)) +
                                       " support points");
}

}  // namespace detail

// Exact orthant tail for one multivariate hypergeometric draw: the event
// compares components 1..kappa against z, leaving the slack component free.
inline OracleEstimate enumerate_tail(const MultiHyperParams& par,
                                     const std::vector<double>& z, Direction dir) {
    return detail::enumerate_tail_impl(par, par.n, z, dir);
}

// Exact orthant tail for one multinomial draw.
inline OracleEstimate enumerate_tail(const MultinomialParams& par,
                                     const std::vector<double>& z, Direction dir) {
    return detail::enumerate_tail_impl(par, par.n, z, dir);
}

// Exact tail for a single inverse hypergeometric draw with one tracked
// category.  The support of X_1 is finite (mass vanishes once x_1 exceeds
// C_1), so the tail is a short exact sum.
inline OracleEstimate inv_hypergeom_exact_tail(const InvHyperParams& par,
                                               const std::vector<double>& z,
                                               Direction dir) {
    if (par.kappa() != 1)
        throw std::invalid_argument("inv_hypergeom_exact_tail: requires kappa == 1");
    if (z.size() != 2 || std::llround(z[0]) != par.gamma)
        throw std::invalid_argument(
            "inv_hypergeom_exact_tail: z must be (gamma, z1)");
    const long long x_max = static_cast<long long>(std::floor(par.C[1])) + 1;
    double acc = 0.0;
    long long terms = 0;
    for (long long x1 = 0; x1 <= x_max; ++x1) {
        const std::vector<double> x = {static_cast<double>(par.gamma),
                                       static_cast<double>(x1)};
        const bool in_event = dir == Direction::upper_tail
                                  ? static_cast<double>(x1) >= z[1] - 1e-9
                                  : static_cast<double>(x1) <= z[1] + 1e-9;
        if (!in_event) continue;
        const double lp = log_density(par, x);
        if (lp == kNegInf) continue;
        acc += std::exp(lp);
        ++terms;
    }
    return detail::make_exact(acc, "summed " + std::to_string(terms) + " terms");
}

// Exact tail for one negative multinomial draw with a single tracked
// category (a negative binomial count).  Upper tails use the complement of a
// finite sum, so no truncation slack is incurred.
inline OracleEstimate neg_multinomial_exact_tail(const NegMultinomialParams& par,
                                                 const std::vector<double>& z,
                                                 Direction dir) {
    if (par.kappa() != 1)
        throw std::invalid_argument("neg_multinomial_exact_tail: requires kappa == 1");
    if (z.size() != 2 || std::llround(z[0]) != par.gamma)
        throw std::invalid_argument(
            "neg_multinomial_exact_tail: z must be (gamma, z1)");
    const auto pmf = [&](long long x1) {
        return std::exp(log_density(
            par, std::vector<double>{static_cast<double>(par.gamma),
                                     static_cast<double>(x1)}));
    };
    if (dir == Direction::upper_tail) {
        const long long t = static_cast<long long>(ceil_eps(z[1]));
        double below = 0.0;
        for (long long x1 = 0; x1 < t; ++x1) below += pmf(x1);
        return detail::make_exact(1.0 - below, "complement of " +
                                                   std::to_string(std::max<long long>(t, 0)) +
                                                   " terms");
    }
    const long long t = static_cast<long long>(floor_eps(z[1]));
    double acc = 0.0;
    for (long long x1 = 0; x1 <= t; ++x1) acc += pmf(x1);
    return detail::make_exact(acc, "summed " + std::to_string(std::max<long long>(t + 1, 0)) +
                                       " terms");
}

// Exact CDF tail of a Beta(a, b) variable with integer shape parameters,
// via the finite binomial-sum identity for the regularized incomplete beta.
inline OracleEstimate beta_exact_tail(double a, double b, double x, Direction dir) {
    if (!(a >= 1.0) || !(b >= 1.0) || !detail::near_integer(a) ||
        !detail::near_integer(b))
        throw std::invalid_argument("beta_exact_tail: requires integer a, b >= 1");
    if (!(x >= 0.0) || !(x <= 1.0))
        throw std::invalid_argument("beta_exact_tail: requires x in [0, 1]");
    const long long ai = std::llround(a);
    const long long mi = std::llround(a + b) - 1;
    double cdf = 0.0;
    if (x >= 1.0) {
        cdf = 1.0;
    } else if (x > 0.0) {
        const double lx = std::log(x);
        const double l1x = std::log1p(-x);
        const double ln_m_fact = log_gamma(static_cast<double>(mi) + 1.0);
        const double log_cdf = detail::log_range_sum(ai, mi, [&](long long j) {
            const double jd = static_cast<double>(j);
            return ln_m_fact - log_gamma(jd + 1.0) -
                   log_gamma(static_cast<double>(mi - j) + 1.0) + jd * lx +
                   static_cast<double>(mi - j) * l1x;
        });
        cdf = std::exp(log_cdf);
    }
    const double tail = dir == Direction::upper_tail ? 1.0 - cdf : cdf;
    return detail::make_exact(tail, "binomial-sum incomplete beta");
}

namespace detail {

inline void require_point_matches_family(const FamilyParams& fam, const Point& z,
                                         const char* who) {
    std::visit(
        [&](const auto& f, const auto& zz) {
            using F = std::decay_t<decltype(f)>;
            using P = std::decay_t<decltype(zz)>;
            if constexpr (!std::is_same_v<P, typename expected_point<F>::type>)
                throw std::invalid_argument(std::string(who) +
                                            ": point type does not match family");
        },
        fam, z);
}

}  // namespace detail

// Seeded Monte Carlo estimate of Pr{mean of n draws is in the tail at z},
// with a Wilson score bracket at three standard errors.  The result is a
// deterministic function of (seed, workers): worker w consumes its own
// counter-based stream, and the sample count is split as evenly as possible
// with the remainder going to the lowest-numbered workers.
inline OracleEstimate mc_tail(const FamilyParams& fam, long long n, const Point& z,
                              Direction dir, long long samples, std::uint64_t seed,
                              int workers = 1) {
    if (samples < 1000)
        throw std::invalid_argument("mc_tail: requires samples >= 1000");
    if (n < 1) throw std::invalid_argument("mc_tail: requires n >= 1");
    if (workers < 1) throw std::invalid_argument("mc_tail: requires workers >= 1");
    detail::require_point_matches_family(fam, z, "mc_tail");

    long long hits = 0;
    const double nd = static_cast<double>(n);
    for (int w = 0; w < workers; ++w) {
        RngState rng(seed, static_cast<std::uint64_t>(w));
        const long long quota =
            samples / workers + (w < static_cast<int>(samples % workers) ? 1 : 0);
        if (std::holds_alternative<double>(z)) {
            const double zt = std::get<double>(z);
            for (long long s = 0; s < quota; ++s) {
                double sum = 0.0;
                for (long long j = 0; j < n; ++j)
                    sum += std::get<double>(draw_sample(fam, rng));
                const bool hit = dir == Direction::upper_tail
                                     ? sum >= nd * zt - 1e-9
                                     : sum <= nd * zt + 1e-9;
                hits += hit ? 1 : 0;
            }
        } else if (std::holds_alternative<std::vector<double>>(z)) {
            const auto& zt = std::get<std::vector<double>>(z);
            std::vector<double> sum(zt.size());
            for (long long s = 0; s < quota; ++s) {
                std::fill(sum.begin(), sum.end(), 0.0);
                for (long long j = 0; j < n; ++j) {
                    const auto x = std::get<std::vector<double>>(draw_sample(fam, rng));
                    if (x.size() != sum.size())
                        throw std::invalid_argument("mc_tail: z has wrong dimension");
                    for (std::size_t i = 0; i < x.size(); ++i) sum[i] += x[i];
                }
                bool hit = true;
                for (std::size_t i = 1; i < zt.size() && hit; ++i) {
                    hit = dir == Direction::upper_tail ? sum[i] >= nd * zt[i] - 1e-9
                                                       : sum[i] <= nd * zt[i] + 1e-9;
                }
                hits += hit ? 1 : 0;
            }
        } else {
            const auto& zt = std::get<Eigen::MatrixXd>(z);
            for (long long s = 0; s < quota; ++s) {
                Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(zt.rows(), zt.cols());
                for (long long j = 0; j < n; ++j)
                    mean += std::get<Eigen::MatrixXd>(draw_sample(fam, rng));
                mean /= nd;
                const bool hit = dir == Direction::upper_tail ? is_spd(mean - zt)
                                                              : is_spd(zt - mean);
                hits += hit ? 1 : 0;
            }
        }
    }

    const double m = static_cast<double>(samples);
    const double phat = static_cast<double>(hits) / m;
    const double zc = 3.0;
    const double denom = 1.0 + zc * zc / m;
    const double center = (phat + zc * zc / (2.0 * m)) / denom;
    const double half =
        zc * std::sqrt(phat * (1.0 - phat) / m + zc * zc / (4.0 * m * m)) / denom;
    OracleEstimate out;
    out.estimate = phat;
    out.lower = std::max(0.0, center - half);
    out.upper = std::min(1.0, center + half);
    out.kind = OracleKind::monte_carlo;
    out.detail = "hits " + std::to_string(hits) + " of " + std::to_string(samples) +
                 ", workers " + std::to_string(workers) + ", wilson z=3";
    return out;
}

// One row of a large-deviation rate comparison: the per-sample exponent of
// the bound never undercuts the empirical exponent of the exact tail.
struct RatePoint {
    long long n = 0;
    double log_tail_over_n = 0.0;
    double rho_value = 0.0;
    double gap = 0.0;
};

// Core form: compares a fixed per-sample exponent rho_value against exact
// tails supplied by a sampler-free handle.  Throws if any gap is negative
// beyond floating-point noise, since that would contradict the bound.
inline std::vector<RatePoint> rate_convergence_check(
    double rho_value, const std::function<double(long long)>& exact_tail,
    const std::vector<long long>& n_list) {
    std::vector<RatePoint> out;
    out.reserve(n_list.size());
    for (long long n : n_list) {
        if (n < 1)
            throw std::invalid_argument("rate_convergence_check: requires n >= 1");
        const double tail = exact_tail(n);
        if (!(tail >= 0.0) || !(tail <= 1.0))
            throw std::runtime_error("rate_convergence_check: tail outside [0, 1]");
        RatePoint pt;
        pt.n = n;
        pt.log_tail_over_n = std::log(tail) / static_cast<double>(n);
        pt.rho_value = rho_value;
        pt.gap = rho_value - pt.log_tail_over_n;
        if (pt.gap < -1e-9)
            throw std::runtime_error(
                "rate_convergence_check: exact tail exceeds the bound");
        out.push_back(pt);
    }
    return out;
}

// Convenience form for a one-parameter exponential family: the exponent is
// the optimized per-sample log bound at z under the true parameter theta.
inline std::vector<RatePoint> rate_convergence_check(
    const ExpFamily1D& fam, double theta,
    const std::function<double(long long)>& exact_tail, double z,
    const std::vector<long long>& n_list) {
    const double vartheta = mom_param(fam, z);
    return rate_convergence_check(rho(fam, z, theta, vartheta), exact_tail, n_list);
}

}  // namespace lrb
