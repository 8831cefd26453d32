#include "clamped/belt.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "roots.hpp"

namespace clamped {

using std::numbers::pi;

namespace {

enum class Second { none, raw, hat };

// Keeps z off the half-integers where the series coefficients vanish and the
// digamma factors blow up; the product has a finite limit.
double nudge(double z) {
    double k = std::round(z - 0.5);
    double tol = 1e-9 * std::max(1.0, z);
    if (k >= 0.0 && std::fabs(z - 0.5 - k) < tol) return 0.5 + k + 2.0 * tol;
    return z;
}

// order 0: P and Q, order 1: F and H.  Returns the hypergeometric solution in
// `first` and, unless second == none, the logarithmic partner in `second`.
struct Series {
    ValueSlope first;
    ValueSlope second;
};

Series basis(double z_sq, double theta, int order, Second second) {
    if (!(theta > 0.0 && theta < pi)) throw domain_error("belt basis: theta must lie in (0, pi)");
    const double h = 0.5 * theta;
    const double sh = std::sin(h), ch = std::cos(h);
    const double s = sh * sh;
    const double ds = sh * ch;  // ds/dtheta
    const double a0 = 0.5 + order;
    const bool real = z_sq >= 0.0;
    const double z = real ? nudge(std::sqrt(z_sq)) : 0.0;
    const double y = real ? 0.0 : std::sqrt(-z_sq);
    const double zz = real ? z * z : z_sq;

    // psi_plus(m) = Psi(a0 + z + m), walked upward
    double psi_p = real ? digamma(a0 + z) : 0.0;
    double re_line = real ? 0.0 : digamma_line(a0, y).first;
    double psi1 = digamma_real(1.0);  // Psi(1 + m)
    double psi2 = psi1 + 1.0;         // Psi(2 + m)

    double c = 1.0, sm = 1.0, dsm = 0.0;  // coefficient, s^m, d(s^m)/dtheta
    double v = 0.0, dv = 0.0, w = 0.0, dw = 0.0, abs_v = 0.0, abs_w = 0.0;
    int quiet = 0;
    for (int m = 0; m < 200000; ++m) {
        double term = c * sm, dterm = c * dsm;
        v += term;
        dv += dterm;
        abs_v += std::fabs(term);
        if (second != Second::none) {
            double d;
            if (real) {
                double minus = second == Second::hat ? digamma(z + 1.0 - a0 - m) : digamma(a0 - z + m);
                d = psi_p + minus;
            } else {
                d = 2.0 * re_line;
            }
            d -= order == 0 ? 2.0 * psi1 : psi1 + psi2;
            w += term * d;
            dw += dterm * d;
            abs_w += std::fabs(term * d);
        }
        double q = ((m + a0) * (m + a0) - zz) / ((m + 1.0) * (m + 1.0 + order));
        bool small = std::fabs(term) <= 1e-17 * abs_v && std::fabs(dterm) <= 1e-17 * std::fabs(dv) + 1e-300 &&
                     (second == Second::none || std::fabs(term) * (std::fabs(psi_p) + std::fabs(psi1) + 10.0) <= 1e-17 * abs_w);
        if (small && std::fabs(q) * s < 1.0) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
        if (m == 199999) throw convergence_error("belt series did not settle (theta too close to pi)");
        dsm = (m + 1.0) * sm * ds;
        sm *= s;
        c *= q;
        if (real) {
            psi_p += 1.0 / (a0 + z + m);
        } else {
            double x = a0 + m;
            re_line += x / (x * x + y * y);
        }
        psi1 += 1.0 / (m + 1.0);
        psi2 += 1.0 / (m + 2.0);
    }
    Series out{{v, dv}, {0.0, 0.0}};
    if (second != Second::none) {
        double ls = std::log(s);
        double value = w + v * ls;
        double slope = dw + dv * ls + v * (ch / sh);
        if (order == 1) {
            double g = 1.0 / (0.25 - zz);
            value += g / s;
            slope -= g * ds / (s * s);
        }
        out.second = {value, slope};
    }
    return out;
}

}  // namespace

ValueSlope belt_P(double z_sq, double theta) { return basis(z_sq, theta, 0, Second::none).first; }
ValueSlope belt_F(double z_sq, double theta) { return basis(z_sq, theta, 1, Second::none).first; }
ValueSlope belt_Q(double z_sq, double theta) { return basis(z_sq, theta, 0, Second::raw).second; }
ValueSlope belt_H(double z_sq, double theta) { return basis(z_sq, theta, 1, Second::raw).second; }
ValueSlope belt_Q_hat(double z_sq, double theta) { return basis(z_sq, theta, 0, Second::hat).second; }
ValueSlope belt_H_hat(double z_sq, double theta) { return basis(z_sq, theta, 1, Second::hat).second; }

ValueSlope tilde(const ValueSlope& f, double theta) {
    double sn = std::sin(theta), cs = std::cos(theta);
    return {f.value * sn, f.slope * sn + f.value * cs};
}

double gamma_sq(double kappa, double lambda, int sign) { return 0.25 + sign * lambda * lambda / kappa; }

const char* to_string(Regime r) {
    switch (r) {
        case Regime::FixedSign: return "FixedSign";
        case Regime::SignChanging: return "SignChanging";
        case Regime::Indeterminate: return "Indeterminate";
    }
    return "?";
}

namespace {

// The four basis functions of the given kind at theta, in column order.
std::array<ValueSlope, 4> belt_columns(double kappa, double lambda, BeltKind kind, double theta) {
    std::array<ValueSlope, 4> out;
    for (int b = 0; b < 2; ++b) {
        double zsq = gamma_sq(kappa, lambda, b == 0 ? +1 : -1);
        Series sr = basis(zsq, theta, kind == BeltKind::sign_preserving ? 0 : 1, Second::hat);
        if (kind == BeltKind::sign_changing) {
            sr.first = tilde(sr.first, theta);
            sr.second = tilde(sr.second, theta);
        }
        out[2 * b] = sr.first;
        out[2 * b + 1] = sr.second;
    }
    return out;
}

void fill_rows(Eigen::Matrix4d& m, int row, const std::array<ValueSlope, 4>& cols) {
    for (int j = 0; j < 4; ++j) {
        m(row, j) = cols[j].value;
        m(row + 1, j) = cols[j].slope;
    }
}

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw domain_error("lambda must be positive");
}

// J, Y, I, K of order 0 or 1 and their x-derivatives, at lambda x, d/dx.
std::array<ValueSlope, 4> euclid_columns(double lambda, double x, BeltKind kind) {
    double t = lambda * x;
    if (!(t > 1e-8)) throw domain_error("euclid determinant: lambda r below 1e-8");
    double j0 = bessel_j(0, t), j1 = bessel_j(1, t);
    double y0 = bessel_y_int(0, t), y1 = bessel_y_int(1, t);
    double i0 = bessel_i(0, t), i1 = bessel_i(1, t);
    double k0 = bessel_k_int(0, t), k1 = bessel_k_int(1, t);
    if (kind == BeltKind::sign_preserving)
        return {{{j0, -lambda * j1}, {y0, -lambda * y1}, {i0, lambda * i1}, {k0, -lambda * k1}}};
    return {{{j1, lambda * (j0 - j1 / t)},
             {y1, lambda * (y0 - y1 / t)},
             {i1, lambda * (i0 - i1 / t)},
             {k1, -lambda * (k0 + k1 / t)}}};
}

// First sign change of det(matrix(lambda)) on a geometric grid.  Grid points
// where the determinant is at rounding level (tiny lambda, where the +/-
// columns nearly coincide) carry no sign information and are skipped.
double smallest_root(const std::function<Eigen::Matrix4d(double)>& matrix, double width, const char* what) {
    const double lo = 1e-3 * pi / width;
    const double hi = 1e4 * pi / width;
    auto det = [&](double lam) { return equilibrate(matrix(lam)).matrix.determinant(); };
    double a = 0.0, fa = 0.0;
    bool have = false;
    for (double b = lo; b <= hi; b *= 1.01) {
        double fb = det(b);
        // entries are at most 1 after equilibration, so rounding noise in the
        // determinant stays far below this floor
        if (!(std::fabs(fb) > 1e-13)) continue;
        if (have && std::signbit(fa) != std::signbit(fb)) return detail::solve_bracketed(det, a, b, fa, fb, 50);
        a = b, fa = fb, have = true;
    }
    throw convergence_error(std::string(what) + ": no sign change on " + detail::fmt_bracket(lo, hi));
}

}  // namespace

Eigen::Matrix4d belt_matrix(double kappa, const BeltSpec& belt, double lambda, BeltKind kind) {
    belt.validate(kappa);
    check_lambda(lambda);
    const double sk = std::sqrt(kappa);
    Eigen::Matrix4d m;
    fill_rows(m, 0, belt_columns(kappa, lambda, kind, sk * belt.r));
    fill_rows(m, 2, belt_columns(kappa, lambda, kind, sk * belt.R));
    return m;
}

Eigen::Matrix4d euclid_matrix(double r, double R, double lambda, BeltKind kind) {
    if (!(r > 0.0 && r < R)) throw domain_error("annulus radii must satisfy 0 < r < R");
    check_lambda(lambda);
    Eigen::Matrix4d m;
    fill_rows(m, 0, euclid_columns(lambda, r, kind));
    fill_rows(m, 2, euclid_columns(lambda, R, kind));
    return m;
}

Eigen::Vector4d column_scales(const Eigen::Matrix4d& m) {
    Eigen::Vector4d s = m.cwiseAbs().colwise().maxCoeff().transpose();
    for (int j = 0; j < 4; ++j)
        if (!(s(j) > 0.0) || !std::isfinite(s(j))) throw convergence_error("boundary matrix column is zero or not finite");
    return s;
}

Eigen::Matrix4d normalize_columns(const Eigen::Matrix4d& m) {
    return m * column_scales(m).cwiseInverse().asDiagonal();
}

Equilibrated equilibrate(const Eigen::Matrix4d& m) {
    Equilibrated e{m, Eigen::Vector4d::Ones(), Eigen::Vector4d::Ones()};
    for (int pass = 0; pass < 3; ++pass) {
        Eigen::Vector4d r = e.matrix.cwiseAbs().rowwise().maxCoeff();
        for (int i = 0; i < 4; ++i)
            if (!(r(i) > 0.0) || !std::isfinite(r(i))) throw convergence_error("boundary matrix row is zero or not finite");
        e.matrix = r.cwiseInverse().asDiagonal() * e.matrix;
        e.row_scale = e.row_scale.cwiseProduct(r);
        Eigen::Vector4d c = column_scales(e.matrix);
        e.matrix = e.matrix * c.cwiseInverse().asDiagonal();
        e.col_scale = e.col_scale.cwiseProduct(c);
    }
    return e;
}

double reciprocal_condition(const Eigen::Matrix4d& m) {
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(equilibrate(m).matrix);
    return svd.singularValues()(3) / svd.singularValues()(0);
}

double det_sp(double kappa, const BeltSpec& belt, double lambda) {
    return equilibrate(belt_matrix(kappa, belt, lambda, BeltKind::sign_preserving)).matrix.determinant();
}
double det_sc(double kappa, const BeltSpec& belt, double lambda) {
    return equilibrate(belt_matrix(kappa, belt, lambda, BeltKind::sign_changing)).matrix.determinant();
}
double det_sp_euclid(double r, double R, double lambda) {
    return equilibrate(euclid_matrix(r, R, lambda, BeltKind::sign_preserving)).matrix.determinant();
}
double det_sc_euclid(double r, double R, double lambda) {
    return equilibrate(euclid_matrix(r, R, lambda, BeltKind::sign_changing)).matrix.determinant();
}

double belt_tone(double kappa, const BeltSpec& belt, BeltKind kind) {
    belt.validate(kappa);
    auto m = [&](double lam) { return belt_matrix(kappa, belt, lam, kind); };
    return smallest_root(m, belt.R - belt.r, "belt tone");
}

double euclid_tone(double r, double R, BeltKind kind) {
    if (!(r > 0.0 && r < R)) throw domain_error("annulus radii must satisfy 0 < r < R");
    auto m = [&](double lam) { return euclid_matrix(r, R, lam, kind); };
    return smallest_root(m, R - r, "annulus tone");
}

BeltSolution belt_tones(double kappa, const BeltSpec& belt) {
    double sp = belt_tone(kappa, belt, BeltKind::sign_preserving);
    double sc = belt_tone(kappa, belt, BeltKind::sign_changing);
    Regime regime = Regime::Indeterminate;
    if (std::fabs(sp - sc) > 1e-10 * std::max(sp, sc)) regime = sp < sc ? Regime::FixedSign : Regime::SignChanging;
    return {sp, sc, regime};
}

CdsResult cds_constant() {
    // lambda_SP - lambda_SC changes sign from - to + as R/r crosses the constant
    auto g = [](double log_c) {
        double r = std::exp(-log_c);
        return euclid_tone(r, 1.0, BeltKind::sign_preserving) - euclid_tone(r, 1.0, BeltKind::sign_changing);
    };
    double c = std::exp(detail::solve_bracketed(g, std::log(600.0), std::log(900.0), 46));
    double lam = euclid_tone(1.0 / c, 1.0, BeltKind::sign_preserving);
    return {c, lam / c, lam};
}

BeltProfile::BeltProfile(double kappa, const BeltSpec& belt, BeltKind kind)
    : kappa_(kappa), kind_(kind), lambda_(belt_tone(kappa, belt, kind)),
      theta_r_(std::sqrt(kappa) * belt.r), theta_R_(std::sqrt(kappa) * belt.R) {
    Equilibrated e = equilibrate(belt_matrix(kappa, belt, lambda_, kind));
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(e.matrix, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv(2) > 1e-6 * sv(0)) || !(sv(3) < 1e-6 * sv(0)))
        throw convergence_error("belt profile: boundary matrix nullspace is not one-dimensional");
    coef_ = svd.matrixV().col(3).cwiseQuotient(e.col_scale);
    const int N = 1024;
    double best = 0.0;
    for (int i = 0; i <= N; ++i) {
        double v = raw(theta_r_ + (theta_R_ - theta_r_) * i / N).value;
        if (std::fabs(v) > std::fabs(best)) best = v;
    }
    norm_ = best;
}

ValueSlope BeltProfile::raw(double theta) const {
    auto cols = belt_columns(kappa_, lambda_, kind_, theta);
    ValueSlope out{0.0, 0.0};
    for (int j = 0; j < 4; ++j) {
        out.value += coef_(j) * cols[j].value;
        out.slope += coef_(j) * cols[j].slope;
    }
    return out;
}

double BeltProfile::radial(double theta) const {
    if (!(theta >= theta_r_ && theta <= theta_R_)) throw domain_error("profile angle outside the belt");
    return raw(theta).value / norm_;
}

double BeltProfile::radial_slope(double theta) const {
    if (!(theta >= theta_r_ && theta <= theta_R_)) throw domain_error("profile angle outside the belt");
    return raw(theta).slope / norm_;
}

double BeltProfile::operator()(double theta, double xi) const {
    double v = radial(theta);
    return kind_ == BeltKind::sign_changing ? v * std::sin(xi) : v;
}

double belt_eigenprofile(double kappa, const BeltSpec& belt, BeltKind kind, double theta, double xi) {
    return BeltProfile(kappa, belt, kind)(theta, xi);
}

}  // namespace clamped
