#include "clamped/tone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "roots.hpp"

namespace clamped {

using std::numbers::pi;

namespace {

double base_sq(int n) { return 0.25 * (n - 1.0) * (n - 1.0); }

HypValue branch(const SphereParams& sp, double sign, double t, double omt, double lambda,
                const SeriesConfig& cfg) {
    double mu = lambda * lambda / sp.kappa;
    return hyp_eval({base_sq(sp.n) + sign * mu, 0.5 * sp.n}, t, omt, cfg);
}

// x cot(x theta) and x coth(x theta), continuous through x = 0
double xcot(double x, double theta) {
    double y = x * theta;
    if (std::fabs(y) < 1e-5) return (1.0 - y * y / 3.0) / theta;
    return x / std::tan(y);
}
double xcoth(double x, double theta) {
    double y = x * theta;
    if (std::fabs(y) < 1e-5) return (1.0 + y * y / 3.0) / theta;
    return x / std::tanh(y);
}

void check_t(double t, double omt) {
    if (!(t > 0.0 && omt > 0.0)) throw domain_error("t must lie in (0, 1)");
}

struct KParts {
    double value;
    HypValue plus;
};

KParts k_series_parts(const SphereParams& sp, double t, double omt, double lambda, const SeriesConfig& cfg) {
    HypValue m = branch(sp, -1.0, t, omt, lambda, cfg);
    HypValue p = branch(sp, +1.0, t, omt, lambda, cfg);
    return {m.dt / m.value - p.dt / p.value, p};
}

// K without the pole-proximity check, for root finders that step over poles.
double k_raw(const SphereParams& sp, double t, double omt, double lambda, const SeriesConfig& cfg) {
    if (sp.n == 3) return K_closed3(sp.kappa, t, omt, lambda);
    return k_series_parts(sp, t, omt, lambda, cfg).value;
}

// F_+ sign and log-derivative magnitudes for the residual
double k_scale(const SphereParams& sp, double t, double omt, double lambda, const SeriesConfig& cfg) {
    HypValue m = branch(sp, -1.0, t, omt, lambda, cfg);
    HypValue p = branch(sp, +1.0, t, omt, lambda, cfg);
    return std::fabs(m.dt / m.value) + std::fabs(p.dt / p.value);
}

}  // namespace

LambdaSquares LambdaSquares::make(const SphereParams& sp, double lambda) {
    sp.validate();
    double mu = lambda * lambda / sp.kappa;
    return {base_sq(sp.n) + mu, base_sq(sp.n) - mu};
}

double K_closed3(double kappa, double t, double omt, double lambda) {
    check_t(t, omt);
    double theta = 2.0 * std::atan2(std::sqrt(t), std::sqrt(omt));
    double mu = lambda * lambda / kappa;
    double lp = std::sqrt(1.0 + mu);
    double minus = mu >= 1.0 ? xcoth(std::sqrt(mu - 1.0), theta) : xcot(std::sqrt(1.0 - mu), theta);
    return (minus - xcot(lp, theta)) / std::sqrt(t * omt);
}

double K_series(const SphereParams& sp, double t, double omt, double lambda, const SeriesConfig& cfg) {
    sp.validate();
    check_t(t, omt);
    KParts k = k_series_parts(sp, t, omt, lambda, cfg);
    if (std::fabs(k.plus.value) < 1e-12 * k.plus.scale)
        throw pole_error("K: lambda is at a pole (F_+ vanishes) at lambda = " + std::to_string(lambda));
    return k.value;
}

double K(const SphereParams& sp, double t, double omt, double lambda, const SeriesConfig& cfg) {
    sp.validate();
    check_t(t, omt);
    if (sp.n == 3) {
        double theta = 2.0 * std::atan2(std::sqrt(t), std::sqrt(omt));
        double x = std::sqrt(1.0 + lambda * lambda / sp.kappa) * theta / pi;
        if (std::fabs(x - std::round(x)) < 1e-12 * std::max(1.0, x))
            throw pole_error("K: lambda is at a pole of the n = 3 closed form");
        return K_closed3(sp.kappa, t, omt, lambda);
    }
    return K_series(sp, t, omt, lambda, cfg);
}

double K(const SphereParams& sp, double t, double lambda, const SeriesConfig& cfg) {
    return K(sp, t, 1.0 - t, lambda, cfg);
}

std::vector<double> pole_ladder(const SphereParams& sp, double t, double omt, int count,
                                const SeriesConfig& cfg) {
    sp.validate();
    check_t(t, omt);
    if (count < 1) throw domain_error("pole index must be positive");
    std::vector<double> out;
    const double theta = 2.0 * std::atan2(std::sqrt(t), std::sqrt(omt));
    if (sp.n == 3) {
        for (int m = 1; m <= count; ++m) {
            double q = m * pi / theta;
            out.push_back(std::sqrt(sp.kappa * (q * q - 1.0)));
        }
        return out;
    }
    const double sk = sp.sqrt_kappa();
    auto f = [&](double lam) { return branch(sp, +1.0, t, omt, lam, cfg).value; };
    // F_+ equals (1-t)^(n/2-1) > 0 at lambda = 0; start below the first pole.
    // When that value drowns in the size of the series terms the poles near 0
    // cannot be located in double precision.
    const double lo = 1e-13 * sk;
    HypValue v_lo = branch(sp, +1.0, t, omt, lo, cfg);
    const double f_lo = v_lo.value;
    if (!(f_lo > 1e-12 * v_lo.scale))
        throw convergence_error("pole_f: F_+ near lambda = 0 below double-precision resolution at t = " +
                                detail::fmt_bracket(t, omt));
    const double hi = sk * (40.0 * std::sqrt(double(sp.n)) + 4.0 * (sp.n + 10.0) * count / theta);
    double a = lo, fa = f_lo;
    while (static_cast<int>(out.size()) < count) {
        if (a > hi)
            throw convergence_error("pole_f: scan window " + detail::fmt_bracket(lo, hi) +
                                    " exhausted before pole " + std::to_string(out.size() + 1));
        double b = a * 1.01, fb = f(b);
        if (fa != 0.0 && std::signbit(fa) != std::signbit(fb))
            out.push_back(detail::solve_bracketed(f, a, b, fa, fb, 52));
        else if (fa == 0.0)
            out.push_back(a);
        a = b;
        fa = fb;
    }
    return out;
}

double pole_f(const SphereParams& sp, int m, double t, const SeriesConfig& cfg) {
    return pole_ladder(sp, t, 1.0 - t, m, cfg).back();
}

ToneSolution tone_at_alpha(const SphereParams& sp, double alpha, double alpha_c, const SeriesConfig& cfg) {
    sp.validate();
    check_t(alpha, alpha_c);
    std::vector<double> poles = pole_ladder(sp, alpha, alpha_c, 2, cfg);
    const double f1 = poles[0], f2 = poles[1];
    auto k = [&](double lam) { return k_raw(sp, alpha, alpha_c, lam, cfg); };

    double lo = f1 * (1.0 + 1e-8), hi = f2 * (1.0 - 1e-8);
    double k_lo = k(lo), k_hi = k(hi);
    if (!(k_lo < 0.0 && k_hi > 0.0)) {
        // near-degenerate pole: 512-point scan for the first - to + crossing
        const int N = 512;
        const double ratio = std::pow(hi / lo, 1.0 / N);
        bool found = false;
        double a = lo, ka = k_lo;
        for (int i = 1; i <= N && !found; ++i) {
            double b = lo * std::pow(ratio, i), kb = k(b);
            if (ka < 0.0 && kb >= 0.0) {
                lo = a, hi = b, k_lo = ka, k_hi = kb;
                found = true;
            }
            a = b;
            ka = kb;
        }
        if (!found)
            throw convergence_error("cap tone: no sign change of K on " + detail::fmt_bracket(f1, f2));
    }
    double lam = detail::solve_bracketed(k, lo, hi, k_lo, k_hi, 50);
    // lambda^2/kappa must stay visible next to (n-1)^2/4 in the parameters of F_+
    const double base = std::max(0.25 * (sp.n - 1) * (sp.n - 1), 0.25);
    if (!(lam * lam / sp.kappa > 1e-12 * base))
        throw convergence_error("cap tone: tone below double-precision resolution at alpha = " +
                                detail::fmt_bracket(alpha, alpha_c));
    double residual = std::fabs(k(lam)) / k_scale(sp, alpha, alpha_c, lam, cfg);
    // a sign change across a pole, or K evaluated with too few correct digits
    if (!(residual <= 1e-6))
        throw convergence_error("cap tone: residual " + std::to_string(residual) + " at alpha = " +
                                detail::fmt_bracket(alpha, alpha_c));
    double l2 = lam * lam;
    return {lam, l2 * l2, f1, f2, residual};
}

ToneSolution cap_tone(const SphereParams& sp, const CapSpec& cap, const SeriesConfig& cfg) {
    return tone_at_alpha(sp, cap.alpha, cap.alpha_c, cfg);
}

double small_cap_estimate(const SphereParams& sp, double L) {
    sp.validate();
    if (!(L > 0.0)) throw domain_error("small_cap_estimate: L must be positive");
    return cross_product_zero(0.5 * sp.n - 1.0) / L;
}

double large_cap_gap(const SphereParams& sp) {
    sp.validate();
    if (sp.n >= 4) return 0.0;
    double mu = gap_mu(sp.n);
    return mu * mu * sp.kappa * sp.kappa;
}

double w_n(int n) {
    if (n < 2) throw domain_error("w_n: n must be at least 2");
    if (n <= 3) return 1.0;
    double nu = 0.5 * n - 1.0;
    double q = bessel_first_zero(nu) / cross_product_zero(nu);
    return std::pow(2.0, 4.0 / n) * q * q * q * q;
}

double avr_lower_bound(int n, double avr, double volume) {
    if (n < 2) throw domain_error("avr_lower_bound: n must be at least 2");
    if (!(avr > 0.0 && avr <= 1.0)) throw domain_error("avr_lower_bound: ratio must lie in (0, 1]");
    if (!(volume > 0.0)) throw domain_error("avr_lower_bound: volume must be positive");
    double L = std::pow(volume / unit_ball_volume(n), 1.0 / n);
    double h = cross_product_zero(0.5 * n - 1.0) / L;
    return std::pow(avr, 4.0 / n) * w_n(n) * h * h * h * h;
}

CapProfile::CapProfile(const SphereParams& sp, const CapSpec& cap, const ToneSolution& tone,
                       const SeriesConfig& cfg)
    : sp_(sp), lambda_(tone.lambda), theta_max_(sp.sqrt_kappa() * cap.L), cfg_(cfg) {
    sp.validate();
    HypValue p = branch(sp, +1.0, cap.alpha, cap.alpha_c, lambda_, cfg);
    HypValue m = branch(sp, -1.0, cap.alpha, cap.alpha_c, lambda_, cfg);
    ratio_ = p.value / m.value;
    const int N = 1024;
    double best = 0.0;
    for (int i = 0; i < N; ++i) {
        double v = raw(theta_max_ * i / N);
        if (std::fabs(v) > std::fabs(best)) best = v;
    }
    norm_ = best;
}

double CapProfile::raw(double theta) const {
    double h = 0.5 * theta;
    double s = std::sin(h), c = std::cos(h);
    double t = s * s, omt = c * c;
    double fp = 1.0, fm = 1.0;
    if (t > 0.0) {
        fp = branch(sp_, +1.0, t, omt, lambda_, cfg_).value;
        fm = branch(sp_, -1.0, t, omt, lambda_, cfg_).value;
    }
    return std::pow(c, 2.0 - sp_.n) * (fp - ratio_ * fm);
}

double CapProfile::operator()(double theta) const {
    if (!(theta >= 0.0 && theta <= theta_max_)) throw domain_error("profile angle outside the cap");
    return raw(theta) / norm_;
}

double cap_eigenprofile(const SphereParams& sp, const CapSpec& cap, const ToneSolution& tone,
                        double theta, const SeriesConfig& cfg) {
    return CapProfile(sp, cap, tone, cfg)(theta);
}

}  // namespace clamped
