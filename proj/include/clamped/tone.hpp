#pragma once

#include <vector>

#include "clamped/geometry.hpp"
#include "clamped/specfun.hpp"

namespace clamped {

struct LambdaSquares {
    double lam_plus_sq;
    double lam_minus_sq;

    static LambdaSquares make(const SphereParams& sp, double lambda);
};

struct ToneSolution {
    double lambda;
    double Lambda;  // lambda^4
    double bracket_lo;
    double bracket_hi;
    double residual;
};

// Cross-product function F'_-/F_- - F'_+/F_+ (t-derivatives).  Uses the
// closed form when n = 3.  Throws pole_error near a zero of F_+.
double K(const SphereParams& sp, double t, double lambda, const SeriesConfig& cfg = {});
// As K, with 1 - t supplied separately (accurate near t = 1).
double K(const SphereParams& sp, double t, double one_minus_t, double lambda, const SeriesConfig& cfg);
// Always the hypergeometric path, also for n = 3.
double K_series(const SphereParams& sp, double t, double one_minus_t, double lambda,
                const SeriesConfig& cfg = {});
// n = 3 closed form.
double K_closed3(double kappa, double t, double one_minus_t, double lambda);

// m-th positive zero of lambda -> F_+(t, lambda).
double pole_f(const SphereParams& sp, int m, double t, const SeriesConfig& cfg = {});
// The first `count` zeros, with 1 - t supplied separately.
std::vector<double> pole_ladder(const SphereParams& sp, double t, double one_minus_t, int count,
                                const SeriesConfig& cfg = {});

// First positive zero of K(alpha, .), i.e. lambda(0, alpha).
ToneSolution tone_at_alpha(const SphereParams& sp, double alpha, double alpha_c,
                           const SeriesConfig& cfg = {});
ToneSolution cap_tone(const SphereParams& sp, const CapSpec& cap, const SeriesConfig& cfg = {});

double small_cap_estimate(const SphereParams& sp, double L);
double gap_mu(int n);
// Residual of the transcendental equation defining gap_mu(n) at mu.
double gap_equation(int n, double mu);
double large_cap_gap(const SphereParams& sp);
double w_n(int n);
double avr_lower_bound(int n, double avr, double volume);

// Radial profile of the first clamped eigenfunction on a cap, normalized so
// that its maximum over the cap is 1.
class CapProfile {
public:
    CapProfile(const SphereParams& sp, const CapSpec& cap, const ToneSolution& tone,
               const SeriesConfig& cfg = {});
    double operator()(double theta) const;
    double theta_max() const { return theta_max_; }

private:
    double raw(double theta) const;

    SphereParams sp_;
    double lambda_;
    double ratio_;      // F_+(alpha) / F_-(alpha)
    double theta_max_;  // sqrt(kappa) L
    double norm_ = 1.0;
    SeriesConfig cfg_;
};

double cap_eigenprofile(const SphereParams& sp, const CapSpec& cap, const ToneSolution& tone,
                        double theta, const SeriesConfig& cfg = {});

}  // namespace clamped
