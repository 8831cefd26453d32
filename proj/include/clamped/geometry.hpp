#pragma once

#include "clamped/errors.hpp"

namespace clamped {

struct SphereParams {
    int n;
    double kappa;

    void validate() const;
    double sqrt_kappa() const;
    // pi / sqrt(kappa), the radius of the whole sphere as a cap
    double diameter() const;
};

struct CapSpec {
    double L;
    double alpha;     // sin^2(sqrt(kappa) L / 2)
    double alpha_c;   // 1 - alpha = cos^2(sqrt(kappa) L / 2), kept separately near L -> pi
    double L0;        // half-cap radius

    static CapSpec make(const SphereParams& sp, double L);
};

struct BeltSpec {
    double r;
    double R;

    void validate(double kappa) const;
};

double unit_ball_volume(int n);
double sphere_volume(const SphereParams& sp);
double cap_volume(const SphereParams& sp, double L);
// V(C(L)) / V(sphere), the regularized symmetric incomplete beta at alpha_L
double cap_volume_fraction(const SphereParams& sp, double L);
double volume_fraction_of_alpha(int n, double alpha);

double alpha_of_L(const SphereParams& sp, double L);
double L_of_alpha(const SphereParams& sp, double alpha);

double half_cap_radius(const SphereParams& sp, double L);

}  // namespace clamped
