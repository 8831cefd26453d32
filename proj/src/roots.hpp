#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "clamped/errors.hpp"

namespace clamped::detail {

struct Bracket {
    double lo, hi;
    double f_lo, f_hi;
};

inline std::string fmt_bracket(double lo, double hi) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.12g, %.12g]", lo, hi);
    return buf;
}

// Root of f inside a sign-changing bracket, to `bits` bits of relative precision.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, double f_lo, double f_hi, int bits = 50) {
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::signbit(f_lo) == std::signbit(f_hi))
        throw convergence_error("no sign change on bracket " + fmt_bracket(lo, hi));
    std::uintmax_t iters = 400;
    auto r = boost::math::tools::toms748_solve(
        f, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(bits), iters);
    if (iters >= 400)
        throw convergence_error("root refinement stalled on " + fmt_bracket(lo, hi));
    return 0.5 * (r.first + r.second);
}

template <class F>
double solve_bracketed(F&& f, double lo, double hi, int bits = 50) {
    return solve_bracketed(f, lo, hi, f(lo), f(hi), bits);
}

// First sign change of f on the arithmetic grid lo, lo+step, ... <= hi.
template <class F>
std::optional<Bracket> scan_linear(F&& f, double lo, double hi, double step) {
    double a = lo, fa = f(a);
    for (double b = lo + step; b <= hi + 0.5 * step; b += step) {
        double fb = f(b);
        if (fa == 0.0 || std::signbit(fa) != std::signbit(fb)) return Bracket{a, b, fa, fb};
        a = b;
        fa = fb;
    }
    return std::nullopt;
}

// First sign change of f on the geometric grid lo, lo*ratio, ... <= hi.
template <class F>
std::optional<Bracket> scan_geometric(F&& f, double lo, double hi, double ratio) {
    double a = lo, fa = f(a);
    while (a < hi) {
        double b = a * ratio;
        double fb = f(b);
        if (fa == 0.0 || std::signbit(fa) != std::signbit(fb)) return Bracket{a, b, fa, fb};
        a = b;
        fa = fb;
    }
    return std::nullopt;
}

}  // namespace clamped::detail
