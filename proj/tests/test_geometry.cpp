#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "clamped/geometry.hpp"

using namespace clamped;
using std::numbers::pi;

namespace {

// V(C(L)) = n omega_n kappa^(-n/2) int_0^{sqrt(kappa) L} sin^(n-1)(s) ds
double cap_volume_quadrature(int n, double kappa, double L) {
    auto f = [n](double s) { return std::pow(std::sin(s), n - 1); };
    double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::sqrt(kappa) * L, 15, 1e-14);
    return n * unit_ball_volume(n) * std::pow(kappa, -0.5 * n) * I;
}

}  // namespace

TEST_CASE("cap volumes") {
    CHECK(cap_volume({2, 1.0}, pi) == doctest::Approx(4.0 * pi).epsilon(1e-14));
    for (double kappa : {0.3, 1.0, 4.0}) {
        SphereParams sp{2, kappa};
        for (double q : {0.1, 0.5, 0.9}) {
            double L = q * sp.diameter();
            CHECK(cap_volume(sp, L) == doctest::Approx(4.0 * pi / kappa * alpha_of_L(sp, L)).epsilon(1e-13));
        }
    }
    // n = 3, kappa = 1: V = 2 pi (L - sin(2L)/2)
    for (double L : {0.2, 1.0, 2.5, pi}) {
        double expect = 2.0 * pi * (L - 0.5 * std::sin(2.0 * L));
        CHECK(cap_volume({3, 1.0}, L) == doctest::Approx(expect).epsilon(1e-13));
    }
    for (int n = 4; n <= 7; ++n)
        for (double kappa : {1.0, 2.5}) {
            SphereParams sp{n, kappa};
            for (double q : {0.05, 0.3, 0.5, 0.77, 1.0}) {
                double L = q * sp.diameter();
                CHECK(cap_volume(sp, L) == doctest::Approx(cap_volume_quadrature(n, kappa, L)).epsilon(1e-8));
            }
            CHECK(cap_volume(sp, sp.diameter()) == doctest::Approx(sphere_volume(sp)).epsilon(1e-12));
        }
    CHECK_THROWS_AS(cap_volume({2, 1.0}, 0.0), domain_error);
    CHECK_THROWS_AS(cap_volume({2, 1.0}, 3.2), domain_error);
    CHECK_THROWS_AS(cap_volume({1, 1.0}, 1.0), domain_error);
    CHECK_THROWS_AS(cap_volume({2, -1.0}, 1.0), domain_error);
}

TEST_CASE("cap volume is increasing") {
    for (int n : {2, 3, 4, 7, 20}) {
        SphereParams sp{n, 1.0};
        double prev = 0.0;
        for (int k = 1; k <= 200; ++k) {
            double v = cap_volume(sp, pi * k / 200.0);
            // for n = 20 the increments near L = pi fall below double resolution
            if (n <= 7) CHECK(v > prev);
            else CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("alpha parameterization") {
    SphereParams sp{3, 1.0};
    CHECK(alpha_of_L(sp, pi) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(alpha_of_L(sp, 0.5 * pi) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(alpha_of_L(sp, 0.4) == doctest::Approx(0.0394695).epsilon(1e-6));
    for (double kappa : {0.01, 1.0, 9.0}) {
        SphereParams s{4, kappa};
        for (double q : {1e-6, 0.01, 0.3, 0.5, 0.9, 0.999}) {
            double L = q * s.diameter();
            CHECK(L_of_alpha(s, alpha_of_L(s, L)) == doctest::Approx(L).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(L_of_alpha(sp, 1.5), domain_error);
    CHECK_THROWS_AS(alpha_of_L(sp, -0.1), domain_error);
}

TEST_CASE("half-cap radius") {
    for (int n : {2, 3, 4, 5, 10}) {
        for (double kappa : {1.0, 3.0}) {
            SphereParams sp{n, kappa};
            double prev = 0.0;
            for (int k = 1; k < 64; ++k) {
                double L = sp.diameter() * k / 64.0;
                double L0 = half_cap_radius(sp, L);
                CHECK(2.0 * cap_volume(sp, L0) == doctest::Approx(cap_volume(sp, L)).epsilon(1e-12));
                CHECK(L0 < L);
                CHECK(L0 > prev);
                CHECK(L0 < 0.5 * sp.diameter());
                prev = L0;
            }
            CHECK(half_cap_radius(sp, sp.diameter()) == doctest::Approx(0.5 * sp.diameter()).epsilon(1e-12));
        }
    }
    SphereParams s2{2, 1.0};
    for (double L : {0.1, 1.0, 2.0, 3.0})
        CHECK(alpha_of_L(s2, half_cap_radius(s2, L)) == doctest::Approx(0.5 * alpha_of_L(s2, L)).epsilon(1e-12));
    // n = 3, L = 2: 2 (2 L0 - sin 2 L0) = 2 L - sin 2 L
    double L0 = half_cap_radius({3, 1.0}, 2.0);
    CHECK(2.0 * (2.0 * L0 - std::sin(2.0 * L0)) == doctest::Approx(4.0 - std::sin(4.0)).epsilon(1e-12));
}

TEST_CASE("half-cap radius for small caps") {
    for (int n : {2, 3, 4, 7}) {
        double L = 1e-3;
        double L0 = half_cap_radius({n, 1.0}, L);
        CHECK(L / (std::pow(2.0, 1.0 / n) * L0) == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("cap records") {
    SphereParams sp{4, 2.0};
    CapSpec c = CapSpec::make(sp, 1.1);
    CHECK(c.alpha + c.alpha_c == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.L0 == doctest::Approx(half_cap_radius(sp, 1.1)).epsilon(1e-15));
    CHECK_THROWS_AS(CapSpec::make(sp, sp.diameter()), domain_error);
}

TEST_CASE("belt parameters") {
    CHECK_NOTHROW((BeltSpec{0.1, 0.5}.validate(1.0)));
    CHECK_THROWS_AS((BeltSpec{0.5, 0.1}.validate(1.0)), domain_error);
    CHECK_THROWS_AS((BeltSpec{0.0, 0.1}.validate(1.0)), domain_error);
    CHECK_THROWS_AS((BeltSpec{0.1, 3.2}.validate(1.0)), domain_error);
}
