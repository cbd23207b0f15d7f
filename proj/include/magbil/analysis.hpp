#pragma once

#include <string>
#include <vector>

#include "magbil/dynamics.hpp"
#include "magbil/quadrature.hpp"

namespace magbil {

/// K + beta^2, the curvature felt by Jacobi fields along magnetic geodesics.
struct EffectiveCurvature {
    enum class Regime { positive, zero, negative };

    double value = 0.0;
    Regime regime = Regime::zero;

    static EffectiveCurvature of(int curvature_sign, double beta);
};

/// Logarithmic derivative Y'/Y of the Jacobi field with effective curvature
/// K + beta^2 and initial conditions Y(0)=0, Y'(0)=1:
///   w cot(w t)   for K + beta^2 = w^2 > 0   (domain 0 < t < pi/w),
///   1/t          for K + beta^2 = 0,
///   w coth(w t)  for K + beta^2 = -w^2 < 0.
double jacobi_ratio(int curvature_sign, double beta, double t);

/// Right-hand side of the magnetic mirror relation: 2 (k - beta cos phi) / sin phi.
double mirror_rhs(double k, double beta, double phi);

/// Mirror relation residual on a circular table, where symmetry puts both
/// focusing distances at half the chord: 2 (Y'/Y)(l/2) - rhs. Zero for the
/// exact map.
double mirror_residual_circle(const BilliardSystem& sys, double phi);
double mirror_residual_circle(Surface s, double rho_circle, double beta, double phi);

/// Tensor Gauss-Legendre grid over [0,P) x (0,pi); the sin(phi) factor of the
/// invariant measure is applied by the integrators, so total measure is 2P.
struct PhaseQuadrature {
    int nodes_x = 256;
    int nodes_phi = 256;

    PhaseQuadrature(int nx, int nphi);

    PhaseQuadrature doubled() const { return {2 * nodes_x, 2 * nodes_phi}; }
};

/// int l(x,phi) dmu over the phase cylinder; equals 2 pi A for every table
/// and every admissible field strength.
double santalo_integral(const BilliardSystem& sys, const PhaseQuadrature& quad);

/// Inner integrand of the collision-averaged chord bound, including the
/// sin(phi) measure factor. Requires k - beta cos phi > 0; the inverse
/// hyperbolic branch additionally needs its argument below 1, which fails
/// exactly when a hyperbolic table dips below horocycle convexity (k < 1).
double inner_integrand(int curvature_sign, double beta, double k, double phi);

/// Gauss-Legendre integral of inner_integrand over phi in (0, pi). Equals
/// circle_gap_closed_form(K, k) independently of beta.
double inner_integral(int curvature_sign, double beta, double k, int nodes = 256);

/// 2 pi A_c / P_c for the circle of geodesic curvature k:
///   pi / k                       (K = 0)
///   2 pi (sqrt(k^2 + 1) - k)     (K = +1)
///   2 pi (k - sqrt(k^2 - 1))     (K = -1, k > 1)
double circle_gap_closed_form(int curvature_sign, double k);

struct CircleGeometry {
    double k = 0.0;
    double rho = 0.0;
    double perimeter = 0.0;
    double area = 0.0;
};

CircleGeometry circle_geometry_from_radius(int curvature_sign, double rho);
CircleGeometry circle_geometry_from_curvature(int curvature_sign, double k);

/// P^2 - 4 pi A + K A^2; nonnegative for valid convex tables, zero exactly
/// for circles.
double isoperimetric_defect(int curvature_sign, double perimeter, double area);

struct DefectReport {
    double santalo_lhs = 0.0;
    double gap_integral = 0.0;
    double rigidity_defect = 0.0; ///< santalo_lhs - gap_integral
    double isoperimetric_defect = 0.0;
    EffectiveCurvature effective;
    double k_min = 0.0;
    bool horocycle_violated = false;
    std::string verdict;
};

/// H = int l dmu - int_0^P I(x) dx with I from inner_integral at the table's
/// curvature. H >= 0 is consistent with total integrability; H < 0 excludes
/// it. A hyperbolic table with beta < 1 and min k < 1 is reported as excluded
/// outright (horocycle convexity), without evaluating the integrals.
DefectReport rigidity_defect(const BilliardSystem& sys, const PhaseQuadrature& quad,
                             double zero_tolerance = 1e-5);

struct BetaSweepReport {
    std::vector<double> betas;
    std::vector<double> values;
    double max_pairwise_deviation = 0.0;
    double closed_form_deviation = 0.0;
};

/// inner_integral across a list of field strengths at fixed k; the spread and
/// the distance to the closed form witness the beta-independence of I(x).
BetaSweepReport beta_independence_sweep(int curvature_sign, double k,
                                        const std::vector<double>& betas, int nodes = 256);

} // namespace magbil
