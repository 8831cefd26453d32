#include <cmath>
#include <numbers>

#include "clamped/tone.hpp"
#include "roots.hpp"

namespace clamped {

using std::numbers::pi;

namespace {

double g2(double mu) {
    double a = std::sqrt(0.25 + mu);
    double re = mu <= 0.25 ? digamma(std::sqrt(0.25 - mu) + 0.5)
                           : digamma_line(0.5, std::sqrt(mu - 0.25)).first;
    return 0.5 * pi * std::tan(pi * a) - digamma(a + 0.5) + re;
}

double g3(double mu) {
    double b = std::sqrt(mu - 1.0);
    double y = pi * b;
    double left = y < 1e-6 ? (1.0 + y * y / 3.0) / pi : b / std::tanh(y);
    double c = std::sqrt(mu + 1.0);
    return left - c / std::tan(pi * c);
}

}  // namespace

double gap_equation(int n, double mu) {
    if (n == 2) {
        if (!(mu > 0.0)) throw domain_error("gap equation (n = 2) requires mu > 0");
        return g2(mu);
    }
    if (n == 3) {
        if (!(mu >= 1.0)) throw domain_error("gap equation (n = 3) requires mu > 1");
        return g3(mu);
    }
    throw domain_error("gap equation is defined for n = 2 and n = 3 only");
}

double gap_mu(int n) {
    // Both equations run from -infinity to +infinity between their first two
    // poles (mu = 0 and 2 for n = 2, mu = 1 side and 3 for n = 3), so the
    // first sign change on that interval is the smallest zero.
    double lo, hi;
    if (n == 2) {
        lo = 1e-9, hi = 2.0 - 1e-9;
    } else if (n == 3) {
        lo = 1.0 + 1e-12, hi = 3.0 - 1e-9;
    } else {
        throw domain_error("gap_mu is defined for n = 2 and n = 3 only");
    }
    auto f = [n](double mu) { return gap_equation(n, mu); };
    auto br = detail::scan_linear(f, lo, hi, 1e-3);
    if (!br) throw convergence_error("gap_mu: no sign change on " + detail::fmt_bracket(lo, hi));
    return detail::solve_bracketed(f, br->lo, br->hi, br->f_lo, br->f_hi, 52);
}

}  // namespace clamped
