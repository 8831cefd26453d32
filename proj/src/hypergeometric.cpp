#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "clamped/specfun.hpp"

namespace clamped {

void SeriesConfig::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-6)) throw domain_error("rel_tol must lie in (0, 1e-6]");
    if (max_terms < 64) throw domain_error("max_terms must be at least 64");
}

namespace {

constexpr double kContinueFrom = 0.9;

void check_params(const HypParams& p, double t) {
    if (!(p.c > 0.0)) throw domain_error("hypergeometric: c must be positive");
    if (!(t >= 0.0 && t < 1.0)) throw domain_error("hypergeometric: t must lie in [0, 1)");
}

struct SeriesSum {
    double value = 1.0;
    double dt = 0.0;
    double abs_sum = 1.0;
};

// sum_m b_m t^m with b_0 = 1, b_{m+1} = b_m ((m + shift)^2 - L2) / ((m+1)(m+c)).
// shift = 1/2 is the defining series, shift = c - 1/2 the Euler-Pfaff partner.
SeriesSum power_series(double shift, double L2, double c, double t, const SeriesConfig& cfg) {
    SeriesSum s;
    double b = 1.0, tm = 1.0;  // b_m, t^m
    int quiet = 0;
    for (int m = 0; m < cfg.max_terms; ++m) {
        double num = (m + shift) * (m + shift) - L2;
        double ratio = num / ((m + 1.0) * (m + c));
        double b1 = b * ratio;
        double dterm = b1 * (m + 1.0) * tm;  // d/dt of b_{m+1} t^{m+1}
        tm *= t;
        double term = b1 * tm;
        s.value += term;
        s.dt += dterm;
        s.abs_sum += std::fabs(term);
        b = b1;
        bool small = std::fabs(term) <= cfg.rel_tol * std::fabs(s.value) ||
                     std::fabs(term) <= 1e-3 * cfg.rel_tol * s.abs_sum;
        bool small_d = std::fabs(dterm) <= cfg.rel_tol * std::fabs(s.dt) ||
                       std::fabs(dterm) <= 1e-3 * cfg.rel_tol * s.abs_sum;
        bool decaying = std::fabs(ratio) * t < 1.0 || b1 == 0.0;
        if (small && small_d && decaying) {
            if (++quiet >= 3) return s;
        } else {
            quiet = 0;
        }
    }
    throw convergence_error("hypergeometric series did not settle within max_terms at t = " +
                            std::to_string(t) + " (t too close to 1 for the requested tolerance)");
}

HypValue direct_form(const HypParams& p, double t, const SeriesConfig& cfg) {
    SeriesSum s = power_series(0.5, p.lambda_sq, p.c, t, cfg);
    return {s.value, s.dt, s.abs_sum};
}

HypValue pfaff_form(const HypParams& p, double t, const SeriesConfig& cfg) {
    SeriesSum g = power_series(p.c - 0.5, p.lambda_sq, p.c, t, cfg);
    double omt = 1.0 - t;
    double pre = std::pow(omt, p.c - 1.0);
    return {pre * g.value, pre * (g.dt - (p.c - 1.0) * g.value / omt), pre * g.abs_sum};
}

// E = dF/dnu-type companion: with b_m the coefficients for Lambda^2 = (c-1/2)^2 + nu
// and b0_m those for nu = 0, e_m = (b_m - b0_m)/nu obeys
//   e_{m+1} = (q_m e_m - b_m) / d_m,  q_m = (m+1/2)^2 - (c-1/2)^2,  d_m = (m+1)(m+c).
SeriesSum shifted_difference_series(double c, double nu, double t, const SeriesConfig& cfg) {
    SeriesSum s;
    s.value = 0.0;
    s.abs_sum = 0.0;
    double b = 1.0, e = 0.0, tm = 1.0;
    int quiet = 0;
    for (int m = 0; m < cfg.max_terms; ++m) {
        double q = (m + 0.5) * (m + 0.5) - (c - 0.5) * (c - 0.5);
        double d = (m + 1.0) * (m + c);
        double e1 = (q * e - b) / d;
        double b1 = b * (q - nu) / d;
        double dterm = e1 * (m + 1.0) * tm;
        tm *= t;
        double term = e1 * tm;
        s.value += term;
        s.dt += dterm;
        s.abs_sum += std::fabs(term);
        b = b1;
        e = e1;
        bool small = std::fabs(term) <= cfg.rel_tol * std::fabs(s.value) &&
                     std::fabs(dterm) <= cfg.rel_tol * std::fabs(s.dt);
        bool decaying = std::fabs((q - nu) / d) * t < 1.0 && std::fabs(q / d) * t < 1.0;
        if (small && decaying) {
            if (++quiet >= 3) return s;
        } else {
            quiet = 0;
        }
    }
    throw convergence_error("difference series did not settle within max_terms");
}

using State = std::array<double, 2>;

// Oscillatory case Lambda^2 > 0 large: the power series cancels badly once
// Lambda^2 t is large.  Continue from the clean series at t0 = min(t, 1/Lambda^2)
// in theta with t = sin^2(theta/2), where
//   F'' + ((2c - 2) + cos theta)/sin theta F' + (Lambda^2 - 1/4) F = 0.
HypValue theta_continuation(const HypParams& p, double t, double one_minus_t, const SeriesConfig& cfg) {
    const double c = p.c, L2 = p.lambda_sq, lam = std::sqrt(L2);
    const double t0 = std::min(t, 1.0 / L2);
    HypValue h0 = direct_form(p, t0, cfg);
    const double th0 = 2.0 * std::asin(std::sqrt(t0));
    const double th1 = 2.0 * std::atan2(std::sqrt(t), std::sqrt(one_minus_t));
    // state in units of the local amplitude
    const double g0 = 0.5 * std::sin(th0) * h0.dt;
    const double amp = std::max(std::fabs(h0.value), std::fabs(g0) / lam);
    State x{h0.value / amp, g0 / amp};
    const double k = L2 - 0.25, cc = 2.0 * c - 2.0;
    auto rhs = [k, cc](const State& y, State& dy, double th) {
        dy[0] = y[1];
        dy[1] = -(cc + std::cos(th)) / std::sin(th) * y[1] - k * y[0];
    };
    namespace odeint = boost::numeric::odeint;
    const double tol = std::max(cfg.rel_tol, 1e-14);
    auto stepper = odeint::make_controlled(1e-3 * tol, tol, odeint::runge_kutta_fehlberg78<State>());
    odeint::integrate_adaptive(stepper, rhs, x, th0, th1, 0.1 / lam);
    const double value = amp * x[0];
    const double dt = amp * x[1] * 2.0 / std::sin(th1);
    return {value, dt, amp * std::hypot(x[0], x[1] / lam)};
}

// Series, switched to the theta continuation when it has lost more than three digits.
HypValue robust_eval(const HypParams& p, double t, double one_minus_t, const SeriesConfig& cfg) {
    HypValue h = hyp_series(p, t, HypForm::automatic, cfg);
    if (p.lambda_sq > 4.0 && h.scale > 1e3 * std::fabs(h.value) && p.lambda_sq * t > 1.0)
        return theta_continuation(p, t, one_minus_t, cfg);
    return h;
}

}  // namespace

HypValue hyp_series(const HypParams& p, double t, HypForm form, const SeriesConfig& cfg) {
    check_params(p, t);
    if (t > 0.999 && p.c <= 1.0)
        throw convergence_error("hypergeometric series refused for t > 0.999 with c - a - b <= 0");
    switch (form) {
        case HypForm::direct: return direct_form(p, t, cfg);
        case HypForm::pfaff: return pfaff_form(p, t, cfg);
        case HypForm::automatic: break;
    }
    HypValue d{}, e{};
    bool have_d = false;
    try {
        d = direct_form(p, t, cfg);
        have_d = true;
        if (d.scale <= 16.0 * std::fabs(d.value)) return d;
    } catch (const convergence_error&) {
    }
    try {
        e = pfaff_form(p, t, cfg);
    } catch (const convergence_error&) {
        if (have_d) return d;
        throw;
    }
    if (!have_d || e.scale < d.scale) return e;
    return d;
}

double hyp_v(const HypParams& p, double t, const SeriesConfig& cfg) {
    return hyp_series(p, t, HypForm::automatic, cfg).value;
}

double hyp_v_dt(const HypParams& p, double t, const SeriesConfig& cfg) {
    return hyp_series(p, t, HypForm::automatic, cfg).dt;
}

HypValue hyp_eval(const HypParams& p, double t, double one_minus_t, const SeriesConfig& cfg) {
    if (!(p.c > 0.0)) throw domain_error("hypergeometric: c must be positive");
    if (!(t >= 0.0) || !(one_minus_t > 0.0)) throw domain_error("hypergeometric: t must lie in [0, 1)");
    if (t <= kContinueFrom) return robust_eval(p, t, one_minus_t, cfg);

    // Split F = (1-t)^(c-1) + nu E with nu = Lambda^2 - (c-1/2)^2.  The first
    // part is the exact nu = 0 solution; E solves
    //   t(1-t) E'' + (c - 2t) E' - ab E = -(1-t)^(c-1),
    // so F keeps full relative accuracy even when the two parts nearly cancel.
    const double c = p.c;
    const double nu = p.lambda_sq - (c - 0.5) * (c - 0.5);
    const double f0 = std::pow(one_minus_t, c - 1.0);
    const double f0_dt = -(c - 1.0) * std::pow(one_minus_t, c - 2.0);
    if (nu == 0.0) return {f0, f0_dt, f0};

    const double t0 = kContinueFrom;
    SeriesSum e = shifted_difference_series(c, nu, t0, cfg);
    if (!(e.abs_sum <= 1e4 * std::fabs(e.value))) {
        HypValue h = robust_eval(p, t0, 1.0 - t0, cfg);
        double g0 = std::pow(1.0 - t0, c - 1.0);
        e.value = (h.value - g0) / nu;
        e.dt = (h.dt + (c - 1.0) * std::pow(1.0 - t0, c - 2.0)) / nu;
    }

    // state (E, q) with q = dE/ds = (1-t) E', s = -ln(1-t)
    const double ab = 0.25 - p.lambda_sq;
    auto rhs = [ab, c](const State& x, State& dxds, double s) {
        double omt = std::exp(-s);
        double tt = -std::expm1(-s);
        dxds[0] = x[1];
        dxds[1] = (ab * omt * x[0] - (c - tt) * x[1] - std::pow(omt, c)) / tt;
    };
    namespace odeint = boost::numeric::odeint;
    State x{e.value, (1.0 - t0) * e.dt};
    const double s0 = -std::log1p(-t0), s1 = -std::log(one_minus_t);
    const double tol = std::max(cfg.rel_tol, 1e-14);
    auto stepper = odeint::make_controlled(1e-300, tol, odeint::runge_kutta_fehlberg78<State>());
    odeint::integrate_adaptive(stepper, rhs, x, s0, s1, 0.01);
    double value = f0 + nu * x[0];
    double dt = f0_dt + nu * x[1] / one_minus_t;
    return {value, dt, std::fabs(f0) + std::fabs(nu * x[0])};
}

double ferrers_p(double mu_order, double lambda_sq, double x, const SeriesConfig& cfg) {
    if (!(x > -1.0 && x < 1.0)) throw domain_error("ferrers_p: |x| must be below 1");
    if (mu_order > 0.0) throw domain_error("ferrers_p: order must be non-positive");
    const double c = 1.0 - mu_order;
    const double t = 0.5 * (1.0 - x);
    HypValue h = hyp_eval({lambda_sq, c}, t, 0.5 * (1.0 + x), cfg);
    double pre = std::pow((1.0 + x) / (1.0 - x), 0.5 * mu_order) / std::tgamma(c);
    return pre * h.value;
}

int klein_zero_count(int n, double mu, const SeriesConfig& cfg) {
    if (n < 2) throw domain_error("klein_zero_count: n must be at least 2");
    if (!(mu > 0.0)) throw domain_error("klein_zero_count: mu must be positive");
    const HypParams p{0.25 * (n - 1.0) * (n - 1.0) + mu, 0.5 * n};
    const int steps = 1 << 14;
    const double h = 1.0 / steps;
    auto v = [&](int k) { return hyp_eval(p, k * h, (steps - k) * h, cfg).value; };
    int count = 0;
    double prev = 1.0;  // value at t = 0
    for (int k = 1; k < steps; ++k) {
        double cur = v(k);
        if (cur == 0.0) {
            ++count;
            // step over the exact zero and resume from the next sample
            if (++k < steps) prev = v(k);
            continue;
        }
        if (std::signbit(cur) != std::signbit(prev)) ++count;
        prev = cur;
    }
    return count;
}

}  // namespace clamped
