// Shared machinery for likelihood-ratio tail bounds: the one-parameter
// exponential-family description, the per-sample log ratio rho, moment
// matching of the tilt parameter, the normal-approximation sharpening
// factor, and a grid infimum fallback.
#ifndef LRB_LR_CORE_HPP
#define LRB_LR_CORE_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lrb/numerics.hpp"

namespace lrb {

// Which tail of the sample mean an event or bound refers to; for vector and
// matrix families this is the componentwise or definite partial order.
enum class Direction { upper_tail, lower_tail };

inline const char* to_string(Direction d) {
    return d == Direction::upper_tail ? "upper" : "lower";
}

enum class BoundMethod { closed_form, mom, mle, grid };

inline const char* to_string(BoundMethod m) {
    switch (m) {
        case BoundMethod::closed_form: return "closed_form";
        case BoundMethod::mom: return "mom";
        case BoundMethod::mle: return "mle";
        case BoundMethod::grid: return "grid";
    }
    return "?";
}

// Result of a bound computation. The bound itself is exp(log_bound); it is
// kept in log form so extreme tails do not underflow.
struct BoundReport {
    double log_bound = 0.0;
    std::vector<double> vartheta_star;  // optimizer(s); empty when not applicable
    BoundMethod method = BoundMethod::closed_form;
    double sharpening_factor = 1.0;  // in (0,1]; 1 when unsharpened
    bool valid = true;               // false when the z-vs-mean precondition fails
    std::string notes;

    double bound() const { return std::exp(log_bound); }
    double bound_clamped() const { return std::min(1.0, bound()); }
};

// One-parameter exponential family in natural form: density proportional to
// exp(eta(theta) u(x) - zeta(theta)) against a fixed carrier. mean_of_u is
// the mean map theta -> E_theta[u(X)]. The domain (theta_lo, theta_hi) is
// open; endpoints may be infinite.
struct ExpFamily1D {
    std::function<double(double)> eta;
    std::function<double(double)> zeta;
    std::function<double(double)> mean_of_u;
    double theta_lo = 0.0;
    double theta_hi = 1.0;
    std::string u_description;
};

// Per-sample log likelihood-ratio exponent at the matched point:
// [eta(theta) - eta(vartheta)] z - zeta(theta) + zeta(vartheta).
inline double rho(const ExpFamily1D& fam, double z, double theta, double vartheta) {
    if (!(theta > fam.theta_lo && theta < fam.theta_hi))
        throw std::domain_error("rho: theta outside the family domain");
    if (!(vartheta > fam.theta_lo && vartheta < fam.theta_hi))
        throw std::domain_error("rho: vartheta outside the family domain");
    return (fam.eta(theta) - fam.eta(vartheta)) * z - fam.zeta(theta) + fam.zeta(vartheta);
}

namespace detail {

// Probe points marching from the interior of (lo, hi) toward both ends,
// in increasing order. Handles infinite endpoints.
inline std::vector<double> domain_probes(double lo, double hi) {
    std::vector<double> down, up;
    const bool lo_inf = std::isinf(lo), hi_inf = std::isinf(hi);
    double anchor;
    if (lo_inf && hi_inf)
        anchor = 0.0;
    else if (lo_inf)
        anchor = hi - 1.0;
    else if (hi_inf)
        anchor = lo + 1.0;
    else
        anchor = 0.5 * (lo + hi);
    // Toward the lower end.
    if (lo_inf) {
        for (double step = 1.0; step <= 1e18; step *= 4.0) down.push_back(anchor - step);
    } else {
        for (double f = 0.25; f > 1e-13; f *= 0.0625) down.push_back(lo + (anchor - lo) * f);
    }
    // Toward the upper end.
    if (hi_inf) {
        for (double step = 1.0; step <= 1e18; step *= 4.0) up.push_back(anchor + step);
    } else {
        for (double f = 0.25; f > 1e-13; f *= 0.0625) up.push_back(hi - (hi - anchor) * f);
    }
    std::vector<double> probes(down.rbegin(), down.rend());
    probes.push_back(anchor);
    probes.insert(probes.end(), up.begin(), up.end());
    return probes;
}

}  // namespace detail

// Moment matching: the vartheta with mean_of_u(vartheta) = z, located by
// expanding a bracket through the domain and polishing with the bracketed
// root finder. The mean map of an exponential family is monotone, so the
// first sign change brackets the root.
inline double mom_param(const ExpFamily1D& fam, double z) {
    auto g = [&](double t) { return fam.mean_of_u(t) - z; };
    const auto probes = detail::domain_probes(fam.theta_lo, fam.theta_hi);
    double prev_t = probes.front();
    double prev_g = g(prev_t);
    double root = std::numeric_limits<double>::quiet_NaN();
    if (prev_g == 0.0) root = prev_t;
    for (std::size_t i = 1; std::isnan(root) && i < probes.size(); ++i) {
        const double t = probes[i];
        const double gt = g(t);
        if (gt == 0.0) {
            root = t;
            break;
        }
        if (std::isfinite(prev_g) && std::isfinite(gt) && prev_g * gt < 0.0) {
            RootFindConfig cfg;
            cfg.rel_tol = 1e-15;
            cfg.abs_tol = 1e-300;
            cfg.max_iter = 500;
            root = (prev_t < t) ? find_root_bracketed(g, prev_t, t, cfg)
                                : find_root_bracketed(g, t, prev_t, cfg);
            break;
        }
        prev_t = t;
        prev_g = gt;
    }
    if (std::isnan(root))
        throw std::domain_error("mom_param: z outside the range of the mean map");
    if (!(std::fabs(fam.mean_of_u(root) - z) <= 1e-10 * std::max(1.0, std::fabs(z))))
        throw std::runtime_error("mom_param: root polish failed to reach tolerance");
    return root;
}

// Sharpening factor 1/2 + min{1/2, C * moment_ratio / sqrt(n)} in (1/2, 1].
// moment_ratio is the centered third absolute moment over the centered
// second moment to the power 3/2; C defaults to the 0.4785 constant.
inline double berry_esseen_factor(long long n, double moment_ratio, double C = 0.4785) {
    if (n < 1) throw std::domain_error("berry_esseen_factor: requires n >= 1");
    if (!(moment_ratio > 0.0)) throw std::domain_error("berry_esseen_factor: requires ratio > 0");
    if (!(C > 0.0 && C <= 0.5)) throw std::domain_error("berry_esseen_factor: requires 0 < C <= 0.5");
    return 0.5 + std::min(0.5, C * moment_ratio / std::sqrt(static_cast<double>(n)));
}

// Infimum of a positive bounding function over a parameter interval, run in
// the log domain. Used where no closed-form optimizer is available.
inline BoundReport lr_infimum(const std::function<double(double)>& Lambda, double theta_lo,
                              double theta_hi) {
    auto f = [&](double t) { return std::log(Lambda(t)); };
    const ScalarMin m = minimize_scalar(f, theta_lo, theta_hi);
    BoundReport rep;
    rep.log_bound = m.min_value;
    rep.vartheta_star = {m.argmin};
    rep.method = BoundMethod::grid;
    return rep;
}

// ---------------------------------------------------------------------------
// Shipped exponential families (u(x) = x throughout).
// ---------------------------------------------------------------------------

inline ExpFamily1D bernoulli_family() {
    ExpFamily1D f;
    f.eta = [](double p) { return std::log(p / (1.0 - p)); };
    f.zeta = [](double p) { return -std::log1p(-p); };
    f.mean_of_u = [](double p) { return p; };
    f.theta_lo = 0.0;
    f.theta_hi = 1.0;
    f.u_description = "identity on {0,1}";
    return f;
}

inline ExpFamily1D poisson_family() {
    ExpFamily1D f;
    f.eta = [](double lam) { return std::log(lam); };
    f.zeta = [](double lam) { return lam; };
    f.mean_of_u = [](double lam) { return lam; };
    f.theta_lo = 0.0;
    f.theta_hi = std::numeric_limits<double>::infinity();
    f.u_description = "identity on counts";
    return f;
}

// Gamma with fixed shape k, parameterized by the scale.
inline ExpFamily1D gamma_family(double k) {
    if (!(k > 0.0)) throw std::domain_error("gamma_family: requires k > 0");
    ExpFamily1D f;
    f.eta = [](double th) { return -1.0 / th; };
    f.zeta = [k](double th) { return k * std::log(th); };
    f.mean_of_u = [k](double th) { return k * th; };
    f.theta_lo = 0.0;
    f.theta_hi = std::numeric_limits<double>::infinity();
    f.u_description = "identity, shape fixed";
    return f;
}

// Exponential tilt of the uniform density on [0,1]: density proportional to
// e^{vartheta x}. zeta(t) = ln((e^t - 1)/t), mean 1 + 1/(e^t - 1) - 1/t.
inline ExpFamily1D uniform_tilt_family() {
    ExpFamily1D f;
    f.eta = [](double t) { return t; };
    f.zeta = [](double t) {
        if (t == 0.0) return 0.0;
        return std::log(std::expm1(t) / t);
    };
    f.mean_of_u = [](double t) {
        if (t == 0.0) return 0.5;
        return 1.0 + 1.0 / std::expm1(t) - 1.0 / t;
    };
    f.theta_lo = -700.0;
    f.theta_hi = 700.0;
    f.u_description = "identity on [0,1], exponential tilt";
    return f;
}

}  // namespace lrb

#endif  // LRB_LR_CORE_HPP
