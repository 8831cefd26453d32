#pragma once

#include <utility>

#include "clamped/errors.hpp"

namespace clamped {

struct SeriesConfig {
    double rel_tol = 1e-14;
    int max_terms = 20000;

    // Throws domain_error unless rel_tol in (0, 1e-6] and max_terms >= 64.
    void validate() const;
};

// 2F1(1/2 - Lambda, 1/2 + Lambda; c; t) with Lambda^2 = lambda_sq.
// lambda_sq < 0 encodes a purely imaginary Lambda; a*b = 1/4 - lambda_sq stays real.
struct HypParams {
    double lambda_sq;
    double c;
};

// Value and t-derivative of a hypergeometric evaluation.  `scale` is the
// magnitude of the largest contributions (sum of |terms| times prefactor), used
// to judge how close `value` is to a zero.
struct HypValue {
    double value;
    double dt;
    double scale;
};

enum class HypForm { automatic, direct, pfaff };

double digamma_real(double x);
// Any real argument that is not a non-positive integer (reflection below 1/2).
double digamma(double x);
// (Re, Im) of Psi(x + iy).
std::pair<double, double> digamma_line(double x, double y);

double bessel_j(double nu, double x);
double bessel_i(double nu, double x);
double bessel_y_int(int n, double x);
double bessel_k_int(int n, double x);

// First positive zero of J_nu.
double bessel_first_zero(double nu);
// First positive zero of J'_nu I_nu - J_nu I'_nu.
double cross_product_zero(double nu);

// Plain power series on (0,1).  Throws convergence_error when the series does
// not settle within max_terms, and for t > 0.999 when c <= 1.
double hyp_v(const HypParams& p, double t, const SeriesConfig& cfg = {});
double hyp_v_dt(const HypParams& p, double t, const SeriesConfig& cfg = {});

// Series in a chosen form.  `direct` sums the defining series, `pfaff` sums
// (1-t)^(c-1) 2F1(c-a, c-b; c; t); `automatic` keeps whichever cancels less.
HypValue hyp_series(const HypParams& p, double t, HypForm form, const SeriesConfig& cfg = {});

// Evaluation usable up to t -> 1.  Beyond t = 0.9 the hypergeometric ODE is
// continued in s = -ln(1-t) from series data at t = 0.9.  `one_minus_t`
// carries 1-t without cancellation (pass 1-t if it is not known better).
HypValue hyp_eval(const HypParams& p, double t, double one_minus_t, const SeriesConfig& cfg = {});

// Ferrers function P^mu_nu(x) with nu(nu+1) = lambda_sq - 1/4, mu <= 0.
double ferrers_p(double mu_order, double lambda_sq, double x, const SeriesConfig& cfg = {});

// Number of zeros of t -> 2F1 with Lambda^2 = (n-1)^2/4 + mu, c = n/2 on (0,1).
int klein_zero_count(int n, double mu, const SeriesConfig& cfg = {});

}  // namespace clamped
