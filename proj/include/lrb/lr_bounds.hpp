// Closed-form likelihood-ratio tail bounds for sample means of the cataloged
// families. Every operation returns a BoundReport in log domain. Direction
// preconditions (z on the wrong side of the mean) yield valid=false with
// bound 1 rather than an exception, so grid sweeps stay total.
#ifndef LRB_LR_BOUNDS_HPP
#define LRB_LR_BOUNDS_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lrb/distributions.hpp"
#include "lrb/lr_core.hpp"

namespace lrb {

namespace detail {

inline BoundReport invalid_direction_report(const std::string& what) {
    BoundReport rep;
    rep.log_bound = 0.0;
    rep.valid = false;
    rep.notes = what;
    return rep;
}

// Componentwise partial order on components 1..kappa (component 0 is pinned
// by the family's constraint and never compared).
inline bool satisfies_order(const std::vector<double>& z, const std::vector<double>& mu,
                            Direction dir) {
    for (std::size_t i = 1; i < z.size(); ++i) {
        if (dir == Direction::upper_tail && z[i] < mu[i]) return false;
        if (dir == Direction::lower_tail && z[i] > mu[i]) return false;
    }
    return true;
}

inline void require_count_vector(const std::vector<double>& z, std::size_t dim,
                                 const char* where) {
    if (z.size() != dim) throw std::invalid_argument(std::string(where) + ": dimension mismatch");
    for (double v : z)
        if (!near_integer(v) || v < -0.5)
            throw std::invalid_argument(std::string(where) + ": z must be nonnegative integers");
}

// x ln(a/x) with the x = 0 limit taken as 0.
inline double xlog_ratio(double a, double x) { return x == 0.0 ? 0.0 : x * std::log(a / x); }

// log of prod_i binom(C_i, z_i) / binom(Chat_i, z_i); requires positive sign.
inline double log_binom_ratio_product(const std::vector<double>& C,
                                      const std::vector<double>& Chat,
                                      const std::vector<double>& z, const char* where) {
    SignedLogValue num{+1, 0.0}, den{+1, 0.0};
    for (std::size_t i = 0; i < C.size(); ++i) {
        const long long k = static_cast<long long>(std::llround(z[i]));
        num = num * signed_log_gen_binom(C[i], k);
        den = den * signed_log_gen_binom(Chat[i], k);
    }
    if (den.sign == 0) throw std::domain_error(std::string(where) + ": zero denominator");
    const SignedLogValue r = num / den;
    if (r.sign <= 0) throw std::domain_error(std::string(where) + ": nonpositive bound ratio");
    return r.log_mag;
}

}  // namespace detail

// Tail of a coin's sample mean: Pr{mean >= z} (or <=) bounded by
// M(z,p)^n = [(p/z)^z ((1-p)/(1-z))^{1-z}]^n, optionally multiplied by the
// normal-approximation factor 1/2 + min{1/2, C (z^2+(1-z)^2)/sqrt(n z(1-z))}.
inline BoundReport bernoulli_bound(long long n, const BernoulliParams& par, double z,
                                   Direction dir, bool sharpen) {
    if (n < 1) throw std::invalid_argument("bernoulli_bound: requires n >= 1");
    if (!(z > 0.0 && z < 1.0)) throw std::invalid_argument("bernoulli_bound: requires z in (0,1)");
    if (dir == Direction::upper_tail ? z < par.p : z > par.p)
        return detail::invalid_direction_report("z on the wrong side of the mean");
    BoundReport rep;
    rep.method = BoundMethod::closed_form;
    if (sharpen) {
        const double ratio = (z * z + (1.0 - z) * (1.0 - z)) / std::sqrt(z * (1.0 - z));
        rep.sharpening_factor = berry_esseen_factor(n, ratio);
    }
    const double logM = z * std::log(par.p / z) + (1.0 - z) * std::log((1.0 - par.p) / (1.0 - z));
    rep.log_bound = static_cast<double>(n) * logM + std::log(rep.sharpening_factor);
    rep.vartheta_star = {z};
    if (z == par.p) rep.notes = "trivial at mean";
    return rep;
}

// Tail of a hypergeometric count: Pr{X >= r} (or <=) bounded by
// C(R,r) C(B,b) / (C(Rhat,r) C(Bhat,b)) with Rhat = min{N, floor((N+1)r/n)}.
inline BoundReport hypergeom_bound(const HypergeomParams& par, long long r, Direction dir) {
    const long long b = par.n - r;
    if (r < 0 || r > par.n || r > par.R || b > par.B())
        throw std::invalid_argument("hypergeom_bound: infeasible (r, b)");
    const double mu = family_mean(par);
    if (dir == Direction::upper_tail ? static_cast<double>(r) < mu : static_cast<double>(r) > mu)
        return detail::invalid_direction_report("r on the wrong side of the mean");
    const long long Rhat = std::min(par.N, (par.N + 1) * r / par.n);
    const long long Bhat = par.N - Rhat;
    const SignedLogValue num =
        signed_log_gen_binom(static_cast<double>(par.R), r) *
        signed_log_gen_binom(static_cast<double>(par.B()), b);
    const SignedLogValue den =
        signed_log_gen_binom(static_cast<double>(Rhat), r) *
        signed_log_gen_binom(static_cast<double>(Bhat), b);
    if (den.sign == 0) throw std::domain_error("hypergeom_bound: degenerate tilted population");
    BoundReport rep;
    rep.log_bound = (num / den).log_mag;
    rep.vartheta_star = {static_cast<double>(Rhat)};
    rep.method = BoundMethod::closed_form;
    if (static_cast<double>(r) == mu) rep.notes = "trivial at mean";
    return rep;
}

// Tail of the generalized Poisson sample mean. The mom variant tilts the
// rate to z(1-alpha); the mle variant tilts to
// nu = [(1-alpha)z + sqrt((1-alpha)^2 z^2 + 4 z alpha / n)] / 2.
inline BoundReport gen_poisson_bound(long long n, const GenPoissonParams& par, double z,
                                     Direction dir, BoundMethod method) {
    if (n < 1) throw std::invalid_argument("gen_poisson_bound: requires n >= 1");
    if (!(z > 0.0)) throw std::invalid_argument("gen_poisson_bound: requires z > 0");
    if (method != BoundMethod::mom && method != BoundMethod::mle)
        throw std::invalid_argument("gen_poisson_bound: method must be mom or mle");
    const double lam = par.lambda, al = par.alpha;
    BoundReport rep;
    rep.method = method;
    if (method == BoundMethod::mom) {
        const double mean = lam / (1.0 - al);
        if (dir == Direction::upper_tail ? z < mean : z > mean)
            return detail::invalid_direction_report("z on the wrong side of the mean");
        const double log_pref = std::log(lam) - std::log(1.0 - al) - std::log(lam + z * al);
        const double log_bracket = z * std::log(lam / z + al) + (1.0 - al) * z - lam;
        rep.log_bound = log_pref + static_cast<double>(n) * log_bracket;
        rep.vartheta_star = {z * (1.0 - al)};
        if (z == mean) rep.notes = "trivial at mean";
    } else {
        const double threshold = lam / (1.0 - al + al / (static_cast<double>(n) * lam));
        if (dir == Direction::upper_tail ? z < threshold : z > threshold)
            return detail::invalid_direction_report("z on the wrong side of the mle threshold");
        const double oz = (1.0 - al) * z;
        const double nu = 0.5 * (oz + std::sqrt(oz * oz + 4.0 * z * al / static_cast<double>(n)));
        const double log_pref =
            std::log(lam) + std::log(nu + z * al) - std::log(nu) - std::log(lam + z * al);
        const double log_bracket = z * (std::log(lam + z * al) - std::log(nu + z * al)) + nu - lam;
        rep.log_bound = log_pref + static_cast<double>(n) * log_bracket;
        rep.vartheta_star = {nu};
    }
    return rep;
}

// Poisson sample-mean tail with the normal-approximation factor:
// (1/2 + min{1/2, C (3 + 1/z)^{3/4} / sqrt(n)}) [lambda^z e^{z - lambda} / z^z]^n.
inline BoundReport poisson_sharp_bound(long long n, double lambda, double z, Direction dir) {
    if (n < 1) throw std::invalid_argument("poisson_sharp_bound: requires n >= 1");
    if (!(lambda > 0.0) || !(z > 0.0))
        throw std::invalid_argument("poisson_sharp_bound: requires lambda > 0 and z > 0");
    if (dir == Direction::upper_tail ? z < lambda : z > lambda)
        return detail::invalid_direction_report("z on the wrong side of the mean");
    BoundReport rep;
    rep.sharpening_factor = berry_esseen_factor(n, std::pow(3.0 + 1.0 / z, 0.75));
    rep.log_bound = static_cast<double>(n) * (z * std::log(lambda) + z - z * std::log(z) - lambda) +
                    std::log(rep.sharpening_factor);
    rep.vartheta_star = {z};
    rep.method = BoundMethod::closed_form;
    if (z == lambda) rep.notes = "trivial at mean";
    return rep;
}

// Gamma sample-mean tail in terms of rho_ratio = z / (k theta):
// (factor) [rho e^{1 - rho}]^{k n}, factor = 1/2 + min{1/2, C (3 + 6/k)^{3/4}/sqrt(n)}
// when sharpened.
inline BoundReport gamma_bound(long long n, const GammaParams& par, double rho_ratio,
                               Direction dir, bool sharpen) {
    if (n < 1) throw std::invalid_argument("gamma_bound: requires n >= 1");
    if (!(rho_ratio > 0.0)) throw std::invalid_argument("gamma_bound: requires rho_ratio > 0");
    if (dir == Direction::upper_tail ? rho_ratio < 1.0 : rho_ratio > 1.0)
        return detail::invalid_direction_report("rho_ratio on the wrong side of 1");
    BoundReport rep;
    if (sharpen)
        rep.sharpening_factor = berry_esseen_factor(n, std::pow(3.0 + 6.0 / par.k, 0.75));
    rep.log_bound =
        par.k * static_cast<double>(n) * (std::log(rho_ratio) + 1.0 - rho_ratio) +
        std::log(rep.sharpening_factor);
    rep.vartheta_star = {rho_ratio * par.theta};
    rep.method = BoundMethod::closed_form;
    if (rho_ratio == 1.0) rep.notes = "trivial at mean";
    return rep;
}

// Upper tail of the mean of n standard uniforms:
// Pr{mean >= z} <= ((e^nu - 1)/(nu e^{z nu}))^n where nu solves
// z = 1 + 1/(e^nu - 1) - 1/nu.
inline BoundReport uniform_mean_upper_bound(long long n, double z) {
    if (n < 1) throw std::invalid_argument("uniform_mean_upper_bound: requires n >= 1");
    if (!(z >= 0.5 && z < 1.0))
        throw std::domain_error("uniform_mean_upper_bound: requires z in [0.5, 1)");
    BoundReport rep;
    rep.method = BoundMethod::mom;
    if (z == 0.5) {
        rep.log_bound = 0.0;
        rep.vartheta_star = {0.0};
        rep.notes = "boundary: nu -> 0";
        return rep;
    }
    const ExpFamily1D fam = uniform_tilt_family();
    auto g = [&](double t) { return fam.mean_of_u(t) - z; };
    const double nu = find_root_bracketed(g, 1e-8, 700.0);
    // ln((e^nu - 1)/nu) - z nu, rearranged to avoid overflow for large nu.
    const double per_sample = nu + std::log1p(-std::exp(-nu)) - std::log(nu) - z * nu;
    rep.log_bound = static_cast<double>(n) * per_sample;
    rep.vartheta_star = {nu};
    return rep;
}

// Tail of a multivariate hypergeometric count vector under the componentwise
// order: prod_i C(C_i, z_i) / C(Chat_i, z_i) with Chat_i = N z_i / n.
inline BoundReport multi_hypergeom_bound(const MultiHyperParams& par,
                                         const std::vector<double>& z, Direction dir) {
    detail::require_count_vector(z, par.C.size(), "multi_hypergeom_bound");
    long long sum = 0;
    for (double v : z) sum += static_cast<long long>(std::llround(v));
    if (sum != par.n) throw std::invalid_argument("multi_hypergeom_bound: z must sum to n");
    if (log_density(par, z) == kNegInf)
        throw std::domain_error("multi_hypergeom_bound: z has zero mass");
    const std::vector<double> mu = family_mean(par);
    if (!detail::satisfies_order(z, mu, dir))
        return detail::invalid_direction_report("z does not satisfy the componentwise order");
    const double N = par.total();
    std::vector<double> Chat(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) Chat[i] = N * z[i] / static_cast<double>(par.n);
    BoundReport rep;
    rep.log_bound = detail::log_binom_ratio_product(par.C, Chat, z, "multi_hypergeom_bound");
    rep.vartheta_star = Chat;
    rep.method = BoundMethod::closed_form;
    return rep;
}

// Stirling-form relaxation of multi_hypergeom_bound, valid when
// C_i - z_i >= 1 and Chat_i - z_i >= 1 for all i (positive populations only).
inline BoundReport multi_hypergeom_stirling_bound(const MultiHyperParams& par,
                                                  const std::vector<double>& z, Direction dir) {
    detail::require_count_vector(z, par.C.size(), "multi_hypergeom_stirling_bound");
    long long sum = 0;
    for (double v : z) sum += static_cast<long long>(std::llround(v));
    if (sum != par.n)
        throw std::invalid_argument("multi_hypergeom_stirling_bound: z must sum to n");
    const double N = par.total();
    if (!(N > 0.0))
        return detail::invalid_direction_report("requires a positive total population");
    const double nd = static_cast<double>(par.n);
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!(par.C[i] - z[i] >= 1.0) || !(N * z[i] / nd - z[i] >= 1.0))
            return detail::invalid_direction_report("slack preconditions C_i - z_i >= 1 fail");
    }
    const std::vector<double> mu = family_mean(par);
    if (!detail::satisfies_order(z, mu, dir))
        return detail::invalid_direction_report("z does not satisfy the componentwise order");
    const double kp1 = static_cast<double>(z.size());
    double lg = nd * std::log(nd / N);
    for (std::size_t i = 0; i < z.size(); ++i) lg += detail::xlog_ratio(par.C[i], z[i]);
    lg += kp1 * (2.0 - std::log(2.0 * M_PI));
    lg += (N - nd + 0.5 * kp1) * std::log((N - nd) / N);
    for (std::size_t i = 0; i < z.size(); ++i)
        lg += (par.C[i] - z[i] + 0.5) * std::log(par.C[i] / (par.C[i] - z[i]));
    BoundReport rep;
    rep.log_bound = lg;
    std::vector<double> Chat(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) Chat[i] = N * z[i] / nd;
    rep.vartheta_star = Chat;
    rep.method = BoundMethod::closed_form;
    const double lhs =
        detail::log_binom_ratio_product(par.C, Chat, z, "multi_hypergeom_stirling_bound");
    rep.notes = "log gap over binomial-ratio form: " + std::to_string(lg - lhs);
    return rep;
}

// Tail of a multinomial count vector: prod_i (mu_i / z_i)^{z_i}, mu_i = n p_i,
// with the 0^0 = 1 convention.
inline BoundReport multinomial_bound(const MultinomialParams& par, const std::vector<double>& z,
                                     Direction dir) {
    detail::require_count_vector(z, par.p.size(), "multinomial_bound");
    long long sum = 0;
    for (double v : z) sum += static_cast<long long>(std::llround(v));
    if (sum != par.n) throw std::invalid_argument("multinomial_bound: z must sum to n");
    const std::vector<double> mu = family_mean(par);
    if (!detail::satisfies_order(z, mu, dir))
        return detail::invalid_direction_report("z does not satisfy the componentwise order");
    BoundReport rep;
    rep.log_bound = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) rep.log_bound += detail::xlog_ratio(mu[i], z[i]);
    rep.vartheta_star.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        rep.vartheta_star[i] = z[i] / static_cast<double>(par.n);
    rep.method = BoundMethod::closed_form;
    return rep;
}

// Tail of an inverse hypergeometric count vector (z_0 pinned to gamma):
// prod_i C(C_i, z_i) / C(Chat_i, z_i) with Chat_i = N z_i / n, n = sum z_i,
// direction taken against mu_hat_i = n C_i / N.
inline BoundReport inv_hypergeom_bound(const InvHyperParams& par, const std::vector<double>& z,
                                       Direction dir) {
    detail::require_count_vector(z, par.C.size(), "inv_hypergeom_bound");
    if (static_cast<long long>(std::llround(z[0])) != par.gamma)
        throw std::invalid_argument("inv_hypergeom_bound: z_0 must equal gamma");
    if (log_density(par, z) == kNegInf)
        throw std::domain_error("inv_hypergeom_bound: z has zero mass");
    double nd = 0.0;
    for (double v : z) nd += v;
    const double N = par.total();
    std::vector<double> mu_hat(z.size()), Chat(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        mu_hat[i] = nd * par.C[i] / N;
        Chat[i] = N * z[i] / nd;
    }
    if (!detail::satisfies_order(z, mu_hat, dir))
        return detail::invalid_direction_report("z does not satisfy the componentwise order");
    BoundReport rep;
    rep.log_bound = detail::log_binom_ratio_product(par.C, Chat, z, "inv_hypergeom_bound");
    rep.vartheta_star = Chat;
    rep.method = BoundMethod::closed_form;
    return rep;
}

// Tail of a negative multinomial count vector (z_0 pinned to gamma):
// prod_i (mu_hat_i / z_i)^{z_i} with mu_hat_i = n p_i, n = sum z_i.
inline BoundReport neg_multinomial_bound(const NegMultinomialParams& par,
                                         const std::vector<double>& z, Direction dir) {
    detail::require_count_vector(z, par.p.size(), "neg_multinomial_bound");
    if (static_cast<long long>(std::llround(z[0])) != par.gamma)
        throw std::invalid_argument("neg_multinomial_bound: z_0 must equal gamma");
    double nd = 0.0;
    for (double v : z) nd += v;
    std::vector<double> mu_hat(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) mu_hat[i] = nd * par.p[i];
    if (!detail::satisfies_order(z, mu_hat, dir))
        return detail::invalid_direction_report("z does not satisfy the componentwise order");
    BoundReport rep;
    rep.log_bound = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        rep.log_bound += detail::xlog_ratio(mu_hat[i], z[i]);
    rep.vartheta_star.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) rep.vartheta_star[i] = z[i] / nd;
    rep.method = BoundMethod::closed_form;
    return rep;
}

// Lower-orthant tail of the mean of n Dirichlet draws at a simplex point z
// with z_i <= mu_i on components 1..kappa:
// [B(alpha_hat)/B(alpha) prod_{i>=1} z_i^{alpha_i - alpha_hat_i}]^n,
// alpha_hat_i = alpha_0 z_i / z_0. Only the lower direction is available.
inline BoundReport dirichlet_bound(long long n, const DirichletParams& par,
                                   const std::vector<double>& z) {
    if (n < 1) throw std::invalid_argument("dirichlet_bound: requires n >= 1");
    if (z.size() != par.alpha.size())
        throw std::invalid_argument("dirichlet_bound: dimension mismatch");
    double s = 0.0;
    for (double v : z) {
        if (!(v > 0.0)) throw std::invalid_argument("dirichlet_bound: z must be positive");
        s += v;
    }
    if (std::fabs(s - 1.0) > 1e-9)
        throw std::invalid_argument("dirichlet_bound: z off the simplex");
    const std::vector<double> mu = family_mean(par);
    if (!detail::satisfies_order(z, mu, Direction::lower_tail))
        return detail::invalid_direction_report("z does not satisfy the componentwise order");
    std::vector<double> ah(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) ah[i] = par.alpha[0] * z[i] / z[0];
    auto log_beta = [](const std::vector<double>& a) {
        double t = 0.0, tot = 0.0;
        for (double v : a) {
            t += log_gamma(v);
            tot += v;
        }
        return t - log_gamma(tot);
    };
    double per_sample = log_beta(ah) - log_beta(par.alpha);
    for (std::size_t i = 1; i < z.size(); ++i)
        per_sample += (par.alpha[i] - ah[i]) * std::log(z[i]);
    BoundReport rep;
    rep.log_bound = static_cast<double>(n) * per_sample;
    rep.vartheta_star = ah;
    rep.method = BoundMethod::closed_form;
    return rep;
}

// Tail of the mean of n matrix gamma draws under the positive-definite
// (Loewner) order against mu = alpha beta Sigma:
// [ (e/(alpha beta))^{p alpha} (|z|/|Sigma|)^{alpha} e^{-tr(Sigma^{-1} z)/beta} ]^n.
inline BoundReport matrix_gamma_bound(long long n, const MatrixGammaParams& par,
                                      const Eigen::MatrixXd& z, Direction dir) {
    if (n < 1) throw std::invalid_argument("matrix_gamma_bound: requires n >= 1");
    const int p = par.p();
    if (z.rows() != p || z.cols() != p)
        throw std::invalid_argument("matrix_gamma_bound: dimension mismatch");
    if (!is_spd(z))
        throw std::invalid_argument("matrix_gamma_bound: z must be symmetric positive-definite");
    const Eigen::MatrixXd mu = family_mean(par);
    const Eigen::MatrixXd diff = z - mu;
    const double scale = std::max(1.0, mu.cwiseAbs().maxCoeff());
    const bool at_mean = diff.cwiseAbs().maxCoeff() <= 1e-12 * scale;
    if (!at_mean) {
        const bool ok = (dir == Direction::upper_tail) ? is_spd(diff) : is_spd(Eigen::MatrixXd(-diff));
        if (!ok)
            return detail::invalid_direction_report("z - mean is not definite in the requested direction");
    }
    Eigen::LLT<Eigen::MatrixXd> lz(z), ls(par.Sigma);
    const double logdet_z = 2.0 * lz.matrixL().toDenseMatrix().diagonal().array().log().sum();
    const double logdet_s = 2.0 * ls.matrixL().toDenseMatrix().diagonal().array().log().sum();
    const double tr = ls.solve(z).trace();
    const double pd = static_cast<double>(p);
    const double per_sample = pd * par.alpha * (1.0 - std::log(par.alpha * par.beta)) +
                              par.alpha * (logdet_z - logdet_s) - tr / par.beta;
    BoundReport rep;
    rep.log_bound = static_cast<double>(n) * per_sample;
    const Eigen::MatrixXd sigma_hat = z / (par.alpha * par.beta);
    rep.vartheta_star.assign(sigma_hat.data(), sigma_hat.data() + sigma_hat.size());
    rep.method = BoundMethod::closed_form;
    if (at_mean) rep.notes = "trivial at mean";
    return rep;
}

}  // namespace lrb

#endif  // LRB_LR_BOUNDS_HPP
