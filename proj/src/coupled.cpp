#include "clamped/coupled.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "clamped/parallel.hpp"
#include "roots.hpp"

namespace clamped {

using std::numbers::pi;

namespace {

double weight(int n, double t) { return std::pow(t * (1.0 - t), 0.5 * n); }

double k_or_pole(const SphereParams& sp, double t, double lambda, const SeriesConfig& cfg) {
    return sp.n == 3 ? K_closed3(sp.kappa, t, 1.0 - t, lambda) : K_series(sp, t, 1.0 - t, lambda, cfg);
}

double s_raw(const SphereParams& sp, double a, double b, double lambda, const SeriesConfig& cfg) {
    double v = weight(sp.n, b) * k_or_pole(sp, b, lambda, cfg);
    if (a > 0.0) v += weight(sp.n, a) * k_or_pole(sp, a, lambda, cfg);
    return v;
}

void check_alpha(double a) {
    if (!(a > 0.0 && a < 1.0)) throw domain_error("cap parameter must lie in (0, 1)");
}

}  // namespace

unsigned default_threads() {
    if (const char* env = std::getenv("CLAMPED_TONES_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

double S(const SphereParams& sp, double alpha, double beta, double lambda, const SeriesConfig& cfg) {
    sp.validate();
    check_alpha(alpha);
    check_alpha(beta);
    return weight(sp.n, alpha) * K(sp, alpha, lambda, cfg) + weight(sp.n, beta) * K(sp, beta, lambda, cfg);
}

double beta_of_alpha(const SphereParams& sp, double L, double alpha) {
    CapSpec cap = CapSpec::make(sp, L);
    const double a0 = alpha_of_L(sp, cap.L0);
    if (!(alpha >= 0.0 && alpha <= a0 * (1.0 + 1e-12)))
        throw domain_error("beta_of_alpha: alpha must lie in [0, alpha_{L0}]");
    if (alpha == 0.0) return cap.alpha;
    if (sp.n == 2) return cap.alpha - alpha;
    const double target = volume_fraction_of_alpha(sp.n, cap.alpha) - volume_fraction_of_alpha(sp.n, alpha);
    auto f = [&](double b) { return volume_fraction_of_alpha(sp.n, b) - target; };
    double lo = std::min(a0, alpha), hi = cap.alpha;
    double f_lo = f(lo), f_hi = f(hi);
    if (f_lo >= 0.0) return lo;
    if (f_hi <= 0.0) return hi;
    return detail::solve_bracketed(f, lo, hi, f_lo, f_hi, 52);
}

CapPair make_pair(const SphereParams& sp, double L, double alpha) {
    return {alpha, beta_of_alpha(sp, L, alpha), L};
}

ToneSolution coupled_tone(const SphereParams& sp, const CapPair& pair, const SeriesConfig& cfg) {
    sp.validate();
    double a = std::min(pair.alpha, pair.beta), b = std::max(pair.alpha, pair.beta);
    check_alpha(b);
    if (!(a >= 0.0)) throw domain_error("cap parameter must be non-negative");
    if (a == 0.0) return tone_at_alpha(sp, b, 1.0 - b, cfg);

    std::vector<double> pb = pole_ladder(sp, b, 1.0 - b, 2, cfg);
    double fa = pole_ladder(sp, a, 1.0 - a, 1, cfg)[0];
    double lo = pb[0], hi = std::min(fa, pb[1]);
    if (a == b || !(hi > lo * (1.0 + 1e-12))) {
        double l2 = lo * lo;
        return {lo, l2 * l2, lo, lo, 0.0};
    }
    auto s = [&](double lam) { return s_raw(sp, a, b, lam, cfg); };
    double x0 = lo * (1.0 + 1e-8), x1 = hi * (1.0 - 1e-8);
    double s0 = s(x0), s1 = s(x1);
    if (!(s0 < 0.0 && s1 > 0.0)) {
        const int N = 512;
        const double ratio = std::pow(x1 / x0, 1.0 / N);
        double u = x0, su = s0;
        bool found = false;
        for (int i = 1; i <= N && !found; ++i) {
            double v = x0 * std::pow(ratio, i), sv = s(v);
            if (su < 0.0 && sv >= 0.0) {
                x0 = u, x1 = v, s0 = su, s1 = sv;
                found = true;
            }
            u = v;
            su = sv;
        }
        if (!found) throw convergence_error("coupled tone: no sign change on " + detail::fmt_bracket(lo, hi));
    }
    double lam = detail::solve_bracketed(s, x0, x1, s0, s1, 50);
    double scale = weight(sp.n, a) * std::fabs(k_or_pole(sp, a, lam, cfg)) +
                   weight(sp.n, b) * std::fabs(k_or_pole(sp, b, lam, cfg));
    double l2 = lam * lam;
    return {lam, l2 * l2, lo, hi, scale > 0.0 ? std::fabs(s(lam)) / scale : 0.0};
}

GateReport rayleigh_gate(const SphereParams& sp, double L, const SeriesConfig& cfg) {
    sp.validate();
    if (!(L > 0.0 && L < sp.diameter())) throw domain_error("gate: L must lie in (0, pi/sqrt(kappa))");
    CapSpec cap = CapSpec::make(sp, L);
    double h = 0.5 * sp.sqrt_kappa() * cap.L0;
    double s = std::sin(h), c = std::cos(h);
    double left = pole_ladder(sp, s * s, c * c, 1, cfg)[0];
    double right = cap_tone(sp, cap, cfg).lambda;
    return {L, cap.L0, left, right, left >= right};
}

RayleighThreshold scan_threshold(int n, double kappa, int grid_size, const SeriesConfig& cfg, unsigned threads) {
    SphereParams sp{n, kappa};
    sp.validate();
    if (grid_size < 64) throw domain_error("scan_threshold: grid_size must be at least 64");
    if (threads == 0) threads = default_threads();
    const double D = sp.diameter();
    auto L_at = [&](std::size_t k) { return D * double(k + 1) / (grid_size + 1); };
    auto margin = [&](double L) { return rayleigh_gate(sp, L, cfg).margin(); };
    // points where the cap tone is below double-precision resolution are skipped
    auto guarded = [&](std::size_t k) {
        try {
            return margin(L_at(k));
        } catch (const pole_error&) {
            throw;
        } catch (const convergence_error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    std::vector<double> m = parallel_map<double>(grid_size, threads, guarded);

    RayleighThreshold out{n, 0.0, 0.0, {}, 0};
    std::vector<int> ok;
    for (int k = 0; k < grid_size; ++k) {
        if (std::isnan(m[k])) ++out.unresolved;
        else ok.push_back(k);
    }
    if (ok.empty()) throw convergence_error("scan_threshold: no resolvable grid point");
    int last_entry = -1;
    for (std::size_t j = 0; j + 1 < ok.size(); ++j) {
        int a = ok[j], b = ok[j + 1];
        if (std::signbit(m[a]) == std::signbit(m[b])) continue;
        out.crossings.push_back(detail::solve_bracketed(margin, L_at(a), L_at(b), m[a], m[b], 44));
        if (m[a] < 0.0) last_entry = static_cast<int>(out.crossings.size()) - 1;
    }
    if (m[ok.back()] < 0.0) {
        out.L_n = D;
        out.v_n = 1.0;
    } else if (last_entry >= 0) {
        // sup of {margin < 0}: the last crossing that enters the positive side
        out.L_n = out.crossings[last_entry];
        out.v_n = cap_volume_fraction(sp, out.L_n);
    }
    return out;
}

double separation_p(double x) {
    if (!(x > 0.0 && x < 0.5 * pi)) throw domain_error("separation_p: x must lie in (0, pi/2)");
    // P is decreasing in y, positive at 0 and negative at pi
    const double lhs = 2.0 * (2.0 * x - std::sin(2.0 * x));
    auto P = [&](double y) { return lhs - 2.0 * y + std::sin(2.0 * y); };
    return detail::solve_bracketed(P, 0.0, pi, P(0.0), P(pi), 52);
}

namespace {

double Q(double x, double y) {
    double a = std::sqrt(pi * pi - 2.0 * x * x);
    double b = std::sqrt(pi * pi / (x * x) - 2.0);
    return a / std::tanh(y * b) - pi / std::tan(pi * y / x);
}

}  // namespace

double separation_q(double x) {
    if (!(x > 0.0 && x < 0.5 * pi)) throw domain_error("separation_q: x must lie in (0, pi/2)");
    // Q jumps from +inf to -inf across y/x in N; its zeros are upward crossings.
    // Q -> 0+ as y -> 0 through cancelling 1/y terms, so the scan starts at y = x/1000.
    auto f = [x](double y) { return Q(x, y); };
    const int per = 4000;
    for (int m = 0; m < 8; ++m) {
        double a = x * (m + (m == 0 ? 1e-3 : 1e-9)), fa = f(a);
        for (int i = 1; i <= per; ++i) {
            double b = x * (m + (i == per ? 1.0 - 1e-9 : double(i) / per)), fb = f(b);
            if (fa < 0.0 && fb >= 0.0) return detail::solve_bracketed(f, a, b, fa, fb, 52);
            a = b;
            fa = fb;
        }
    }
    throw convergence_error("separation_q: no zero for y < 8x");
}

SeparationCertificate n3_separation_certificate(int grid_size) {
    if (grid_size < 16) throw domain_error("separation certificate needs at least 16 grid points");
    const double c1 = std::cbrt(2.0);
    auto g1 = [&](double x) { return Q(x, c1 * x); };
    double x1 = detail::solve_bracketed(g1, 0.3, 1.2, 52);
    const double slope = separation_p(x1) / x1;
    auto g2 = [&](double x) { return separation_q(x) - slope * x; };
    double x2 = detail::solve_bracketed(g2, x1 * 1.01, 0.5 * pi * (1.0 - 1e-6), 48);
    SeparationCertificate out{grid_size, x1, x2, 1e300, true};
    for (int k = 1; k <= grid_size; ++k) {
        double x = 0.5 * pi * k / (grid_size + 1);
        double gap = separation_p(x) - separation_q(x);
        out.min_gap = std::min(out.min_gap, gap);
        if (!(gap > 0.0)) out.holds = false;
    }
    return out;
}

double n2_gate_margin(double kappa, int grid_size, const SeriesConfig& cfg, unsigned threads) {
    SphereParams sp{2, kappa};
    sp.validate();
    if (grid_size < 2) throw domain_error("n2_gate_margin: grid_size must be at least 2");
    if (threads == 0) threads = default_threads();
    const double t0 = 1e-3, t1 = 1.0 - 1e-3;
    auto vals = parallel_map<double>(grid_size, threads, [&](std::size_t k) {
        double t = t0 + (t1 - t0) * double(k) / (grid_size - 1);
        double left = pole_ladder(sp, 0.5 * t, 1.0 - 0.5 * t, 1, cfg)[0];
        double right = tone_at_alpha(sp, t, 1.0 - t, cfg).lambda;
        return (left - right) / sp.sqrt_kappa();
    });
    return *std::min_element(vals.begin(), vals.end());
}

std::vector<double> gate_ratio_probe(const SphereParams& sp, int grid_size, const SeriesConfig& cfg) {
    sp.validate();
    std::vector<double> out;
    for (int k = 1; k <= grid_size; ++k)
        out.push_back(rayleigh_gate(sp, sp.diameter() * k / (grid_size + 1), cfg).ratio());
    return out;
}

}  // namespace clamped
