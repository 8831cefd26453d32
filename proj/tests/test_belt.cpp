#include <doctest.h>

#include <cmath>
#include <numbers>

#include "clamped/belt.hpp"

using namespace clamped;
using std::numbers::pi;

namespace {

using Basis = ValueSlope (*)(double, double);

// w'' + cot(theta) w' + (z^2 - 1/4 - order^2 / sin^2(theta)) w at theta, by central
// differences, relative to the size of the regular solution of the same order
double legendre_residual(Basis f, double zsq, double theta, int order) {
    auto w = [&](Basis g, double th) {
        ValueSlope v = g(zsq, th);
        return order == 0 ? v.value : tilde(v, th).value;
    };
    const double h = 1e-4;
    double w0 = w(f, theta), wp = w(f, theta + h), wm = w(f, theta - h);
    double d1 = (wp - wm) / (2.0 * h), d2 = (wp - 2.0 * w0 + wm) / (h * h);
    double s = std::sin(theta);
    double res = d2 + std::cos(theta) / s * d1 + (zsq - 0.25 - order * order / (s * s)) * w0;
    double reg = std::fabs(w(order == 0 ? belt_P : belt_F, theta)) * (1.0 + std::fabs(zsq));
    return std::fabs(res) / std::max({std::fabs(d2), reg, 1.0});
}

// Belt matrix with slope rows in d/dx and columns divided by their flat-limit constants
Eigen::Matrix4d flat_rescaled(double kappa, const BeltSpec& b, double lam, BeltKind kind) {
    Eigen::Matrix4d m = belt_matrix(kappa, b, lam, kind);
    double sk = std::sqrt(kappa);
    m.row(1) *= sk;
    m.row(3) *= sk;
    Eigen::Vector4d c;
    if (kind == BeltKind::sign_preserving) c << 1.0, pi, 1.0, -2.0;
    else c << 2.0 / lam, 2.0 * pi / lam, 2.0 / lam, 4.0 / lam;
    if (kind == BeltKind::sign_changing) c *= sk;
    return m * c.cwiseInverse().asDiagonal();
}

}  // namespace

TEST_CASE("basis functions at the pole") {
    for (double zsq : {0.25 + 40.0, 0.25 - 40.0, 3.0}) {
        CHECK(belt_P(zsq, 1e-8).value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(belt_F(zsq, 1e-8).value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(belt_Q(zsq, 1e-6).value < belt_Q(zsq, 1e-3).value);
        CHECK(belt_Q(zsq, 1e-12).value < -10.0);
    }
}

TEST_CASE("basis functions solve the factor equations") {
    for (double lam : {0.7, 2.3, 5.0})
        for (int sign : {1, -1}) {
            double zsq = gamma_sq(1.0, lam, sign);
            for (double th : {0.2, 0.9, 1.7, 2.6}) {
                CHECK(legendre_residual(belt_P, zsq, th, 0) < 1e-5);
                CHECK(legendre_residual(belt_Q, zsq, th, 0) < 1e-5);
                CHECK(legendre_residual(belt_Q_hat, zsq, th, 0) < 1e-5);
                CHECK(legendre_residual(belt_F, zsq, th, 1) < 1e-5);
                CHECK(legendre_residual(belt_H, zsq, th, 1) < 1e-5);
                CHECK(legendre_residual(belt_H_hat, zsq, th, 1) < 1e-5);
            }
        }
}

TEST_CASE("Wronskians of the belt basis") {
    // sin(theta) W(P, Q) = 2 and sin(theta) W(F~, H~) = 8 / (z^2 - 1/4) for every theta
    for (double lam : {0.7, 2.3, 5.0})
        for (int sign : {1, -1}) {
            double zsq = gamma_sq(1.0, lam, sign);
            for (double th : {0.1, 0.6, 1.2, 1.7, 2.3}) {
                ValueSlope P = belt_P(zsq, th), Q = belt_Q(zsq, th);
                ValueSlope F = tilde(belt_F(zsq, th), th), H = tilde(belt_H(zsq, th), th);
                CHECK((P.value * Q.slope - P.slope * Q.value) * std::sin(th) == doctest::Approx(2.0).epsilon(1e-7));
                CHECK((F.value * H.slope - F.slope * H.value) * std::sin(th) == doctest::Approx(8.0 / (zsq - 0.25)).epsilon(1e-7));
            }
        }
}

TEST_CASE("slopes agree with finite differences") {
    const double h = 1e-6;
    for (Basis f : {belt_P, belt_Q, belt_Q_hat, belt_F, belt_H, belt_H_hat})
        for (double zsq : {gamma_sq(1.0, 1.9, 1), gamma_sq(1.0, 1.9, -1)})
            for (double th : {0.3, 1.2, 2.4}) {
                double fd = (f(zsq, th + h).value - f(zsq, th - h).value) / (2.0 * h);
                CHECK(f(zsq, th).slope == doctest::Approx(fd).epsilon(1e-6));
                ValueSlope t = tilde(f(zsq, th), th);
                double tfd = (tilde(f(zsq, th + h), th + h).value - tilde(f(zsq, th - h), th - h).value) / (2.0 * h);
                CHECK(t.slope == doctest::Approx(tfd).epsilon(1e-6));
            }
}

TEST_CASE("hat partners differ by a multiple of the regular solution") {
    double zsq = gamma_sq(1.0, 2.2, 1);
    double th1 = 0.7, th2 = 1.9;
    double c1 = (belt_Q_hat(zsq, th1).value - belt_Q(zsq, th1).value) / belt_P(zsq, th1).value;
    double c2 = (belt_Q_hat(zsq, th2).value - belt_Q(zsq, th2).value) / belt_P(zsq, th2).value;
    CHECK(c1 == doctest::Approx(c2).epsilon(1e-10));
    double zm = gamma_sq(1.0, 2.2, -1);
    CHECK(belt_Q_hat(zm, th1).value == doctest::Approx(belt_Q(zm, th1).value).epsilon(1e-14));
    CHECK(belt_H_hat(zm, th1).value == doctest::Approx(belt_H(zm, th1).value).epsilon(1e-14));
}

TEST_CASE("flat limits of the basis") {
    const double kappa = 1e-6, lam = 2.0, sk = std::sqrt(kappa);
    for (double rho : {0.3, 1.0, 2.5}) {
        double th = sk * rho, x = lam * rho;
        double zp = gamma_sq(kappa, lam, 1), zm = gamma_sq(kappa, lam, -1);
        CHECK(belt_P(zp, th).value == doctest::Approx(std::cyl_bessel_j(0, x)).epsilon(1e-3));
        CHECK(belt_P(zm, th).value == doctest::Approx(std::cyl_bessel_i(0, x)).epsilon(1e-3));
        CHECK(belt_Q_hat(zp, th).value == doctest::Approx(pi * std::cyl_neumann(0, x)).epsilon(1e-3));
        CHECK(belt_Q_hat(zm, th).value == doctest::Approx(-2.0 * std::cyl_bessel_k(0, x)).epsilon(1e-3));
        CHECK(tilde(belt_F(zp, th), th).value / sk == doctest::Approx(2.0 / lam * std::cyl_bessel_j(1, x)).epsilon(1e-3));
        CHECK(tilde(belt_F(zm, th), th).value / sk == doctest::Approx(2.0 / lam * std::cyl_bessel_i(1, x)).epsilon(1e-3));
        CHECK(tilde(belt_H_hat(zp, th), th).value / sk == doctest::Approx(2.0 * pi / lam * std::cyl_neumann(1, x)).epsilon(1e-3));
        CHECK(tilde(belt_H_hat(zm, th), th).value / sk == doctest::Approx(4.0 / lam * std::cyl_bessel_k(1, x)).epsilon(1e-3));
    }
}

TEST_CASE("flat-limit determinant agreement") {
    const double kappa = 1e-6;
    BeltSpec b{0.5, 2.0};
    for (BeltKind kind : {BeltKind::sign_preserving, BeltKind::sign_changing})
        for (double lam : {0.5, 1.3, 2.9, 4.4, 7.0}) {
            Eigen::Matrix4d e = euclid_matrix(b.r, b.R, lam, kind);
            Eigen::Vector4d s = column_scales(e);
            double db = (flat_rescaled(kappa, b, lam, kind) * s.cwiseInverse().asDiagonal()).determinant();
            double de = normalize_columns(e).determinant();
            CHECK(db == doctest::Approx(de).epsilon(1e-3));
        }
}

TEST_CASE("equilibration keeps sign and zeros") {
    BeltSpec b{0.5, 2.0};
    for (double lam : {0.8, 3.0, 6.5}) {
        Eigen::Matrix4d m = belt_matrix(1e-2, b, lam, BeltKind::sign_preserving);
        Equilibrated e = equilibrate(m);
        CHECK(e.matrix.cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-14));
        for (int i = 0; i < 4; ++i) {
            CHECK(e.row_scale(i) > 0.0);
            CHECK(e.col_scale(i) > 0.0);
        }
        Eigen::Matrix4d back = e.row_scale.asDiagonal() * e.matrix * e.col_scale.asDiagonal();
        CHECK((back - m).norm() <= 1e-12 * m.norm());
        CHECK(std::signbit(e.matrix.determinant()) == std::signbit(m.determinant()));
        Eigen::Matrix4d n = normalize_columns(m);
        CHECK(n.cwiseAbs().colwise().maxCoeff().minCoeff() == doctest::Approx(1.0).epsilon(1e-15));
    }
    // multiplying a basis column by a constant leaves the determinant unchanged after scaling
    Eigen::Matrix4d m = belt_matrix(1e-2, b, 2.0, BeltKind::sign_changing);
    Eigen::Matrix4d m2 = m;
    m2.col(1) *= 37.0;
    CHECK(normalize_columns(m2).determinant() == doctest::Approx(normalize_columns(m).determinant()).epsilon(1e-12));
}

TEST_CASE("belt tones bracket determinant sign changes") {
    BeltSpec b{0.5, 2.0};
    for (BeltKind kind : {BeltKind::sign_preserving, BeltKind::sign_changing}) {
        double lam = belt_tone(1e-2, b, kind);
        auto det = [&](double l) { return kind == BeltKind::sign_preserving ? det_sp(1e-2, b, l) : det_sc(1e-2, b, l); };
        CHECK(det(lam * (1.0 - 1e-6)) * det(lam * (1.0 + 1e-6)) < 0.0);
    }
}

TEST_CASE("belt tones converge to the annulus tones") {
    BeltSpec b{0.5, 2.0};
    for (BeltKind kind : {BeltKind::sign_preserving, BeltKind::sign_changing}) {
        double t2 = belt_tone(1e-2, b, kind), t4 = belt_tone(1e-4, b, kind), t6 = belt_tone(1e-6, b, kind);
        double e = euclid_tone(b.r, b.R, kind);
        CHECK(std::fabs(t2 - t4) < 1e-2);
        CHECK(std::fabs(t4 - t6) < 1e-2);
        CHECK(std::fabs(t6 - e) < std::fabs(t2 - e) + 1e-12);
        CHECK(t6 == doctest::Approx(e).epsilon(1e-3));
    }
}

TEST_CASE("annulus tones scale with the radii") {
    for (BeltKind kind : {BeltKind::sign_preserving, BeltKind::sign_changing}) {
        double a = euclid_tone(0.5, 2.0, kind);
        CHECK(euclid_tone(1.5, 6.0, kind) == doctest::Approx(a / 3.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(euclid_tone(2.0, 1.0, BeltKind::sign_preserving), domain_error);
}

TEST_CASE("annulus ordering around the critical ratio") {
    for (double c : {600.0, 700.0})
        CHECK(euclid_tone(1.0 / c, 1.0, BeltKind::sign_preserving) < euclid_tone(1.0 / c, 1.0, BeltKind::sign_changing));
    for (double c : {800.0, 900.0})
        CHECK(euclid_tone(1.0 / c, 1.0, BeltKind::sign_preserving) > euclid_tone(1.0 / c, 1.0, BeltKind::sign_changing));
}

TEST_CASE("regimes") {
    const double R = 1.0, kappa = 1e-4 * pi * pi / (R * R);
    BeltSolution narrow = belt_tones(kappa, {R / 100.0, R});
    CHECK(narrow.regime == Regime::FixedSign);
    CHECK(narrow.lambda_sp > 0.0);
    BeltSolution wide = belt_tones(kappa, {R / 1000.0, R});
    CHECK(wide.regime == Regime::SignChanging);
    CHECK(std::string(to_string(wide.regime)) == "SignChanging");
    // almost punctured
    for (double k : {1e-2, 1.0}) CHECK(belt_tones(k, {1e-5, 1.0}).regime == Regime::SignChanging);
}

TEST_CASE("belt eigenprofiles are clamped") {
    BeltSpec b{0.5, 2.0};
    const double kappa = 0.1;
    for (BeltKind kind : {BeltKind::sign_preserving, BeltKind::sign_changing}) {
        BeltProfile p(kappa, b, kind);
        CHECK(std::fabs(p.radial(p.theta_min())) < 1e-6);
        CHECK(std::fabs(p.radial(p.theta_max())) < 1e-6);
        double span = p.theta_max() - p.theta_min();
        CHECK(std::fabs(p.radial_slope(p.theta_min())) * span < 1e-6);
        CHECK(std::fabs(p.radial_slope(p.theta_max())) * span < 1e-6);
        double top = 0.0;
        bool fixed = true;
        for (int i = 1; i < 1000; ++i) {
            double v = p.radial(p.theta_min() + span * i / 1000.0);
            top = std::max(top, std::fabs(v));
            fixed = fixed && v > 0.0;
        }
        CHECK(top == doctest::Approx(1.0).epsilon(1e-3));
        if (kind == BeltKind::sign_preserving) CHECK(fixed);
        double th = p.theta_min() + 0.37 * span;
        for (double xi : {0.3, 1.1, 2.5})
            CHECK(p(th, xi + pi) == doctest::Approx(kind == BeltKind::sign_changing ? -p(th, xi) : p(th, xi)).epsilon(1e-12));
        if (kind == BeltKind::sign_changing) CHECK(p(th, 0.0) == 0.0);
        CHECK_THROWS_AS(p.radial(0.5 * p.theta_min()), domain_error);
    }
}
