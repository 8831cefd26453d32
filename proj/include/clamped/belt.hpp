#pragma once

#include <Eigen/Dense>

#include "clamped/geometry.hpp"
#include "clamped/specfun.hpp"

namespace clamped {

struct ValueSlope {
    double value;
    double slope;  // d/dtheta
};

// Belt basis functions of z with z^2 = z_sq real (z_sq < 0: purely imaginary z).
// P, F are the hypergeometric solutions; Q, H the logarithmic partners.
ValueSlope belt_P(double z_sq, double theta);
ValueSlope belt_Q(double z_sq, double theta);
ValueSlope belt_F(double z_sq, double theta);
ValueSlope belt_H(double z_sq, double theta);
// For real z these differ from Q, H by pi tan(pi z) times P, F, which removes the
// digamma poles at half-integer z and leaves every determinant unchanged.
// For imaginary z they coincide with Q, H.
ValueSlope belt_Q_hat(double z_sq, double theta);
ValueSlope belt_H_hat(double z_sq, double theta);
// f(theta) sin(theta) and its theta-derivative.
ValueSlope tilde(const ValueSlope& f, double theta);

// z^2 = 1/4 +- lambda^2/kappa
double gamma_sq(double kappa, double lambda, int sign);

enum class BeltKind { sign_preserving, sign_changing };
enum class Regime { FixedSign, SignChanging, Indeterminate };

const char* to_string(Regime r);

// Boundary matrices: rows (value, d/dtheta) at sqrt(kappa) r and sqrt(kappa) R.
Eigen::Matrix4d belt_matrix(double kappa, const BeltSpec& belt, double lambda, BeltKind kind);
// Rows (value, d/dx) at r and R of J, Y, I, K of order 0 (sign preserving) or 1.
Eigen::Matrix4d euclid_matrix(double r, double R, double lambda, BeltKind kind);
// Each column divided by its largest absolute entry.
Eigen::Matrix4d normalize_columns(const Eigen::Matrix4d& m);
Eigen::Vector4d column_scales(const Eigen::Matrix4d& m);

// diag(1/row_scale) * m * diag(1/col_scale) with unit max in every row and column.
struct Equilibrated {
    Eigen::Matrix4d matrix;
    Eigen::Vector4d row_scale;
    Eigen::Vector4d col_scale;
};
// Alternating row and column normalization.  Only positive factors are
// applied, so the sign and the zeros in lambda of the determinant are kept.
Equilibrated equilibrate(const Eigen::Matrix4d& m);
double reciprocal_condition(const Eigen::Matrix4d& m);

// Determinants of the equilibrated boundary matrices.
double det_sp(double kappa, const BeltSpec& belt, double lambda);
double det_sc(double kappa, const BeltSpec& belt, double lambda);
double det_sp_euclid(double r, double R, double lambda);
double det_sc_euclid(double r, double R, double lambda);

struct BeltSolution {
    double lambda_sp;
    double lambda_sc;
    Regime regime;
};

double belt_tone(double kappa, const BeltSpec& belt, BeltKind kind);
double euclid_tone(double r, double R, BeltKind kind);
BeltSolution belt_tones(double kappa, const BeltSpec& belt);

struct CdsResult {
    double c_cds;
    double lambda1_c;
    double lambda2_c;
};

CdsResult cds_constant();

// First eigenfunction of the belt for the given kind, normalized so that the
// radial factor has maximum 1.  The sign-changing field is radial(theta) sin(xi).
class BeltProfile {
public:
    BeltProfile(double kappa, const BeltSpec& belt, BeltKind kind);
    double radial(double theta) const;
    double radial_slope(double theta) const;
    double operator()(double theta, double xi) const;
    double lambda() const { return lambda_; }
    double theta_min() const { return theta_r_; }
    double theta_max() const { return theta_R_; }

private:
    ValueSlope raw(double theta) const;

    double kappa_;
    BeltKind kind_;
    double lambda_;
    double theta_r_, theta_R_;
    Eigen::Vector4d coef_;
    double norm_ = 1.0;
};

double belt_eigenprofile(double kappa, const BeltSpec& belt, BeltKind kind, double theta, double xi);

}  // namespace clamped
