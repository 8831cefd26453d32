#pragma once

#include <vector>

#include "clamped/geometry.hpp"
#include "clamped/specfun.hpp"
#include "clamped/tone.hpp"

namespace clamped {

// Two caps with parameters alpha <= beta whose volumes add up to that of C(L).
struct CapPair {
    double alpha;
    double beta;
    double L;
};

struct GateReport {
    double L;
    double L0;
    double f_left;     // first pole at alpha_{L0}
    double lam_right;  // cap tone at alpha_L
    bool holds;        // f_left >= lam_right

    double margin() const { return f_left - lam_right; }
    double ratio() const { return f_left / lam_right; }
};

struct RayleighThreshold {
    int n;
    double L_n;  // sup of the set where the gate fails; 0 if it never fails
    double v_n;  // volume fraction of C(L_n)
    std::vector<double> crossings;  // every sign change of the gate margin found
    int unresolved = 0;             // grid points whose cap tone is below double resolution
};

double S(const SphereParams& sp, double alpha, double beta, double lambda, const SeriesConfig& cfg = {});

// beta in [alpha_{L0}, alpha_L] with V(C(a)) + V(C(b)) = V(C(L)).
double beta_of_alpha(const SphereParams& sp, double L, double alpha);
CapPair make_pair(const SphereParams& sp, double L, double alpha);

ToneSolution coupled_tone(const SphereParams& sp, const CapPair& pair, const SeriesConfig& cfg = {});

GateReport rayleigh_gate(const SphereParams& sp, double L, const SeriesConfig& cfg = {});

// Grid scan of the gate margin over L_k = (pi/sqrt(kappa)) k/(grid_size+1)
// followed by bisection.  threads = 0 uses the hardware concurrency.
RayleighThreshold scan_threshold(int n, double kappa, int grid_size, const SeriesConfig& cfg = {},
                                 unsigned threads = 0);

struct SeparationCertificate {
    int grid_size;
    double x1;       // zero of x -> Q(x, 2^(1/3) x)
    double x2;       // intersection of q with the line through (0,0), (x1, p(x1))
    double min_gap;  // min over the grid of p(x) - q(x)
    bool holds;      // p > q at every grid point
};

// n = 3: implicit curves P(x, p(x)) = 0 and the smallest Q(x, q(x)) = 0.
double separation_p(double x);
double separation_q(double x);
SeparationCertificate n3_separation_certificate(int grid_size);

// min over t in [1e-3, 1 - 1e-3] of (f_1(t/2) - lambda(0, t)) / sqrt(kappa), n = 2.
double n2_gate_margin(double kappa, int grid_size, const SeriesConfig& cfg = {}, unsigned threads = 0);

// f_1(alpha_{L0}) / lambda(0, alpha_L) on an L-grid; the values, in order.
std::vector<double> gate_ratio_probe(const SphereParams& sp, int grid_size, const SeriesConfig& cfg = {});

// Worker count from CLAMPED_TONES_THREADS, else the hardware concurrency.
unsigned default_threads();

}  // namespace clamped
