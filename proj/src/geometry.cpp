#include "clamped/geometry.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "roots.hpp"

namespace clamped {

using std::numbers::pi;

void SphereParams::validate() const {
    if (n < 2) throw domain_error("dimension n must be at least 2");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw domain_error("curvature kappa must be positive");
}

double SphereParams::sqrt_kappa() const { return std::sqrt(kappa); }
double SphereParams::diameter() const { return pi / std::sqrt(kappa); }

CapSpec CapSpec::make(const SphereParams& sp, double L) {
    sp.validate();
    if (!(L > 0.0 && L < sp.diameter()))
        throw domain_error("cap radius L must lie in (0, pi/sqrt(kappa))");
    double half = 0.5 * sp.sqrt_kappa() * L;
    double s = std::sin(half), c = std::cos(half);
    return {L, s * s, c * c, half_cap_radius(sp, L)};
}

void BeltSpec::validate(double kappa) const {
    if (!(kappa > 0.0)) throw domain_error("curvature kappa must be positive");
    if (!(r > 0.0 && r < R && R < pi / std::sqrt(kappa)))
        throw domain_error("belt radii must satisfy 0 < r < R < pi/sqrt(kappa)");
}

double unit_ball_volume(int n) { return std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0); }

double sphere_volume(const SphereParams& sp) {
    sp.validate();
    return (sp.n + 1.0) * unit_ball_volume(sp.n + 1) * std::pow(sp.kappa, -0.5 * sp.n);
}

double volume_fraction_of_alpha(int n, double alpha) {
    if (n == 2) return alpha;
    double a = 0.5 * n;
    return alpha <= 0.5 ? boost::math::ibeta(a, a, alpha) : boost::math::ibetac(a, a, 1.0 - alpha);
}

double cap_volume_fraction(const SphereParams& sp, double L) {
    sp.validate();
    if (!(L > 0.0 && L <= sp.diameter())) throw domain_error("cap radius L must lie in (0, pi/sqrt(kappa)]");
    double theta = sp.sqrt_kappa() * L;
    double half = 0.5 * theta;
    double s = std::sin(half), c = std::cos(half);
    if (sp.n == 2) return s * s;
    // the n = 3 closed form cancels badly for small caps
    if (sp.n == 3 && theta >= 0.1) return (theta - 0.5 * std::sin(2.0 * theta)) / pi;
    double a = 0.5 * sp.n;
    return s * s <= 0.5 ? boost::math::ibeta(a, a, s * s) : boost::math::ibetac(a, a, c * c);
}

double cap_volume(const SphereParams& sp, double L) {
    return sphere_volume(sp) * cap_volume_fraction(sp, L);
}

double alpha_of_L(const SphereParams& sp, double L) {
    sp.validate();
    if (!(L > 0.0 && L <= sp.diameter())) throw domain_error("alpha_of_L: L must lie in (0, pi/sqrt(kappa)]");
    double s = std::sin(0.5 * sp.sqrt_kappa() * L);
    return s * s;
}

double L_of_alpha(const SphereParams& sp, double alpha) {
    sp.validate();
    if (!(alpha > 0.0 && alpha <= 1.0)) throw domain_error("L_of_alpha: alpha must lie in (0, 1]");
    return 2.0 * std::asin(std::sqrt(alpha)) / sp.sqrt_kappa();
}

double half_cap_radius(const SphereParams& sp, double L) {
    double target = 0.5 * cap_volume_fraction(sp, L);
    if (L >= sp.diameter()) return 0.5 * sp.diameter();
    if (sp.n == 2) return L_of_alpha(sp, target);
    auto f = [&](double x) { return cap_volume_fraction(sp, x) - target; };
    double hi = std::min(L, 0.501 * sp.diameter());
    double lo = hi * 1e-3;
    while (f(lo) > 0.0) lo *= 1e-3;
    return detail::solve_bracketed(f, lo, hi, 52);
}

}  // namespace clamped
