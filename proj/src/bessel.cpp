#include <cmath>
#include <numbers>

#include "clamped/specfun.hpp"

namespace clamped {
namespace {

using ld = long double;
constexpr ld kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr ld kPi = 3.141592653589793238462643383279502884L;

// Above this argument the power series for J, Y loses too many digits and the
// Hankel expansion takes over (for moderate order).
constexpr double kHankelFrom = 17.0;
constexpr double kKAsymptoticFrom = 10.5;

bool use_hankel(double nu, double x) { return x >= kHankelFrom && x >= 2.0 * nu * nu + 10.0; }

// P and Q of the Hankel expansion; returns false if the series did not settle.
void hankel_pq(double nu, double x, ld& P, ld& Q) {
    const ld mu = 4.0L * nu * nu;
    P = 1.0L;
    Q = 0.0L;
    ld a = 1.0L;  // a_k(nu) / x^k
    ld prev = 1e300L;
    for (int k = 1; k < 60; ++k) {
        ld odd = 2.0L * k - 1.0L;
        a *= (mu - odd * odd) / (k * 8.0L * x);
        ld mag = std::fabs(a);
        if (mag > prev) break;
        prev = mag;
        // k odd contributes to Q with signs +,-,+..., k even to P with -,+,...
        if (k % 2 == 1)
            Q += ((k / 2) % 2 == 0 ? a : -a);
        else
            P += ((k / 2) % 2 == 1 ? -a : a);
        if (mag < 1e-21L) break;
    }
}

void hankel_jy(double nu, double x, double* j, double* y) {
    ld P, Q;
    hankel_pq(nu, x, P, Q);
    ld chi = x - (0.5L * nu + 0.25L) * kPi;
    ld amp = std::sqrt(2.0L / (kPi * x));
    if (j) *j = double(amp * (P * std::cos(chi) - Q * std::sin(chi)));
    if (y) *y = double(amp * (P * std::sin(chi) + Q * std::cos(chi)));
}

ld leading(double nu, double x) {
    return std::exp(ld(nu) * std::log(ld(x) / 2.0L) - std::lgamma(ld(nu) + 1.0L));
}

ld j_series(double nu, double x) {
    const ld q = ld(x) * ld(x) / 4.0L;
    ld term = leading(nu, x), sum = term;
    for (int m = 0; m < 2000; ++m) {
        term *= -q / ((m + 1.0L) * (m + 1.0L + nu));
        sum += term;
        if (m > x && std::fabs(term) <= 1e-21L * std::fabs(sum)) break;
    }
    return sum;
}

void check_nonneg(double nu, double x, const char* who) {
    if (!(x >= 0.0) || !(nu >= 0.0) || !std::isfinite(x))
        throw domain_error(std::string(who) + ": requires nu >= 0 and x >= 0");
}

}  // namespace

double bessel_j(double nu, double x) {
    check_nonneg(nu, x, "bessel_j");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (use_hankel(nu, x)) {
        double j;
        hankel_jy(nu, x, &j, nullptr);
        return j;
    }
    if (x >= kHankelFrom && nu <= x) {
        // forward recurrence from the fractional order, stable while the order stays below x
        const double f = nu - std::floor(nu);
        const int steps = static_cast<int>(std::floor(nu));
        double j0, j1;
        hankel_jy(f, x, &j0, nullptr);
        if (steps == 0) return j0;
        hankel_jy(f + 1.0, x, &j1, nullptr);
        ld a = j0, b = j1;
        for (int k = 1; k < steps; ++k) {
            ld c = 2.0L * (f + k) / x * b - a;
            a = b;
            b = c;
        }
        return double(b);
    }
    return double(j_series(nu, x));
}

double bessel_i(double nu, double x) {
    check_nonneg(nu, x, "bessel_i");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const ld q = ld(x) * ld(x) / 4.0L;
    ld term = leading(nu, x), sum = term;
    for (int m = 0; m < 100000; ++m) {
        term *= q / ((m + 1.0L) * (m + 1.0L + nu));
        sum += term;
        if (term <= 1e-21L * sum) break;
    }
    return double(sum);
}

double bessel_y_int(int n, double x) {
    if (n != 0 && n != 1) throw domain_error("bessel_y_int: order must be 0 or 1");
    if (!(x > 0.0) || !std::isfinite(x)) throw domain_error("bessel_y_int: requires x > 0");
    if (x >= kHankelFrom) {
        double y;
        hankel_jy(n, x, nullptr, &y);
        return y;
    }
    const ld h = ld(x) / 2.0L, q = h * h;
    // finite part: -(x/2)^(-n)/pi * sum_{m<n} (n-m-1)!/m! (x/2)^(2m); for n = 1 it is -1/(pi h)
    ld finite = (n == 1) ? -1.0L / (kPi * h) : 0.0L;
    ld jn = 0.0L, rest = 0.0L;
    ld coef = (n == 1) ? h : 1.0L;  // (x/2)^n (-1)^m q^m / (m! (n+m)!)
    ld psi_a = -kEulerGamma;                           // Psi(m+1)
    ld psi_b = -kEulerGamma + (n == 1 ? 1.0L : 0.0L);  // Psi(n+m+1)
    for (int m = 0; m < 2000; ++m) {
        jn += coef;
        rest += coef * (psi_a + psi_b);
        ld next = -coef * q / ((m + 1.0L) * (m + 1.0L + n));
        psi_a += 1.0L / (m + 1.0L);
        psi_b += 1.0L / (m + 1.0L + n);
        coef = next;
        if (m > x && std::fabs(coef) <= 1e-22L * std::fabs(jn)) break;
    }
    return double(finite + 2.0L / kPi * jn * std::log(h) - rest / kPi);
}

double bessel_k_int(int n, double x) {
    if (n != 0 && n != 1) throw domain_error("bessel_k_int: order must be 0 or 1");
    if (!(x > 0.0) || !std::isfinite(x)) throw domain_error("bessel_k_int: requires x > 0");
    if (x >= kKAsymptoticFrom) {
        const ld mu = 4.0L * n * n;
        ld a = 1.0L, sum = 1.0L, prev = 1e300L;
        for (int k = 1; k < 80; ++k) {
            ld odd = 2.0L * k - 1.0L;
            a *= (mu - odd * odd) / (k * 8.0L * x);
            ld mag = std::fabs(a);
            if (mag > prev) break;
            prev = mag;
            sum += a;
            if (mag < 1e-21L) break;
        }
        return double(std::sqrt(kPi / (2.0L * x)) * std::exp(-ld(x)) * sum);
    }
    const ld h = ld(x) / 2.0L, q = h * h;
    ld finite = (n == 1) ? 0.5L / h : 0.0L;
    ld in = 0.0L, rest = 0.0L;
    ld coef = (n == 1) ? h : 1.0L;  // (x/2)^n q^m / (m! (n+m)!)
    ld psi_a = -kEulerGamma;
    ld psi_b = -kEulerGamma + (n == 1 ? 1.0L : 0.0L);
    for (int m = 0; m < 2000; ++m) {
        in += coef;
        rest += coef * (psi_a + psi_b);
        coef *= q / ((m + 1.0L) * (m + 1.0L + n));
        psi_a += 1.0L / (m + 1.0L);
        psi_b += 1.0L / (m + 1.0L + n);
        if (coef <= 1e-22L * in) break;
    }
    const ld sgn = (n == 1) ? -1.0L : 1.0L;  // (-1)^n
    return double(finite - sgn * std::log(h) * in + sgn * 0.5L * rest);
}

}  // namespace clamped
