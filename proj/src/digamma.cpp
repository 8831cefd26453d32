#include <cmath>
#include <complex>
#include <numbers>

#include "clamped/specfun.hpp"

namespace clamped {
namespace {

// B_2k / (2k) for k = 1..7
constexpr double kBernoulliOver2k[] = {
    1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};

template <class T>
T asymptotic_tail(T x) {
    T inv2 = T(1) / (x * x);
    T pw = inv2;
    T s = T(0);
    for (double b : kBernoulliOver2k) {
        s += b * pw;
        pw *= inv2;
    }
    return std::log(x) - T(0.5) / x - s;
}

}  // namespace

double digamma_real(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw domain_error("digamma_real: argument must be positive");
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    return shift + asymptotic_tail(x);
}

double digamma(double x) {
    if (x > 0.0) return digamma_real(x);
    double fl = std::floor(x);
    if (x == fl) throw domain_error("digamma: pole at non-positive integer");
    // Psi(x) = Psi(1-x) - pi cot(pi x); cot is periodic so reduce first
    double frac = x - fl;
    return digamma_real(1.0 - x) - std::numbers::pi / std::tan(std::numbers::pi * frac);
}

std::pair<double, double> digamma_line(double x, double y) {
    if (y == 0.0) return {digamma(x), 0.0};
    std::complex<double> z(x, y), shift(0.0, 0.0);
    while (z.real() < 10.0 && std::abs(z) < 20.0) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    std::complex<double> v = shift + asymptotic_tail(z);
    return {v.real(), v.imag()};
}

}  // namespace clamped
