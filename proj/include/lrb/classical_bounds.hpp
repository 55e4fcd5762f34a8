// Moment and moment-generating-function tail bounds used as baselines:
// Chebyshev, Markov, Cantelli, and the Chernoff infimum. Moments are
// caller-supplied; nothing here integrates a density.
#ifndef LRB_CLASSICAL_BOUNDS_HPP
#define LRB_CLASSICAL_BOUNDS_HPP

#include <cmath>
#include <functional>
#include <stdexcept>

#include "lrb/lr_core.hpp"

namespace lrb {

// Pr{|X - mu| >= eps} <= E|X - mu|^s / eps^s.
inline double chebyshev_bound(double central_abs_moment, double s, double eps) {
    if (!(central_abs_moment > 0.0) || !(s > 0.0) || !(eps > 0.0))
        throw std::domain_error("chebyshev_bound: requires positive arguments");
    return central_abs_moment / std::pow(eps, s);
}

// Pr{X >= gamma} <= E[X^s] / gamma^s for nonnegative X.
inline double markov_bound(double raw_moment, double s, double gamma) {
    if (!(raw_moment > 0.0) || !(s > 0.0) || !(gamma > 0.0))
        throw std::domain_error("markov_bound: requires positive arguments");
    return raw_moment / std::pow(gamma, s);
}

// Pr{X - mu >= eps} <= sigma^2 / (sigma^2 + eps^2).
inline double cantelli_bound(double variance, double eps) {
    if (!(variance > 0.0) || !(eps > 0.0))
        throw std::domain_error("cantelli_bound: requires positive arguments");
    return variance / (variance + eps * eps);
}

// inf_{s in [s_lo, s_hi]} exp(log_mgf(s) - gamma s), minimized in the log
// domain; the report records the minimizing s.
inline BoundReport chernoff_bound(const std::function<double(double)>& log_mgf, double gamma,
                                  double s_lo, double s_hi) {
    if (!(s_lo >= 0.0) || !(s_lo < s_hi))
        throw std::domain_error("chernoff_bound: requires 0 <= s_lo < s_hi");
    auto f = [&](double s) { return log_mgf(s) - gamma * s; };
    const ScalarMin m = minimize_scalar(f, s_lo, s_hi);
    BoundReport rep;
    rep.log_bound = m.min_value;
    rep.vartheta_star = {m.argmin};
    rep.method = BoundMethod::grid;
    return rep;
}

}  // namespace lrb

#endif  // LRB_CLASSICAL_BOUNDS_HPP
