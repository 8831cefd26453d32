#include <cmath>

#include "clamped/specfun.hpp"
#include "roots.hpp"

namespace clamped {

double bessel_first_zero(double nu) {
    if (!(nu >= 0.0)) throw domain_error("bessel_first_zero: nu must be non-negative");
    auto f = [nu](double x) { return bessel_j(nu, x); };
    // J_nu > 0 below its first zero, which exceeds nu
    auto br = detail::scan_linear(f, std::max(1e-3, nu), 50.0 + 2.0 * nu, 0.05);
    if (!br) throw convergence_error("bessel_first_zero: no sign change on (0, 50)");
    return detail::solve_bracketed(f, br->lo, br->hi, br->f_lo, br->f_hi, 52);
}

double cross_product_zero(double nu) {
    if (!(nu >= 0.0)) throw domain_error("cross_product_zero: nu must be non-negative");
    // J_{nu+1}/J_nu + I_{nu+1}/I_nu = 0, cleared of the J_nu denominator
    auto f = [nu](double x) {
        return bessel_j(nu + 1.0, x) * bessel_i(nu, x) + bessel_j(nu, x) * bessel_i(nu + 1.0, x);
    };
    auto br = detail::scan_linear(f, std::max(1e-3, nu), 60.0 + 2.0 * nu, 0.05);
    if (!br) throw convergence_error("cross_product_zero: no sign change found");
    return detail::solve_bracketed(f, br->lo, br->hi, br->f_lo, br->f_hi, 52);
}

}  // namespace clamped
