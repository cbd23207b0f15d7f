#pragma once

#include <vector>

#include "magbil/geometry.hpp"

namespace magbil {

/// Boundary curve encoded as a geodesic polar radius profile about a center
/// frame: rho(theta) = c0 + sum_n (cos_coeffs[n-1] cos n theta
///                               + sin_coeffs[n-1] sin n theta).
struct PolarProfile {
    TangentVector center;
    double c0 = 1.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    double rho(double theta) const;
    double drho(double theta) const;
    double ddrho(double theta) const;

    bool is_circle() const { return cos_coeffs.empty() && sin_coeffs.empty(); }

    /// rho > 0 everywhere (4096 samples); on the sphere additionally
    /// max rho < pi/2. Throws std::invalid_argument on violation.
    void validate(Surface s) const;

    /// Default center frame of the model (origin, x-direction).
    static TangentVector default_center(Surface s);
};

/// Boundary-collision coordinates: arclength x in [0,P) and inward angle
/// phi in (0,pi), measured from the positive (counterclockwise) tangent.
struct PhasePoint {
    double x = 0.0;
    double phi = 0.0;
};

/// Immutable convex table. Build through build_table(); queries are pure.
class Table {
public:
    const Surface& surface() const { return surface_; }
    const PolarProfile& profile() const { return profile_; }

    double perimeter() const { return perimeter_; }
    double area() const { return area_; }
    double k_min() const { return k_min_; }
    double k_max() const { return k_max_; }
    double gauss_bonnet_residual() const { return gauss_bonnet_residual_; }
    int resolution() const { return static_cast<int>(theta_grid_.size()) - 1; }

    /// k_min - beta; dynamics requires this to be positive.
    double assumption_margin(double beta) const { return k_min_ - beta; }

    SurfacePoint point_at(double x) const;
    /// Unit tangent in the counterclockwise (domain-on-the-left) direction.
    TangentVector tangent_at(double x) const;
    double curvature_at(double x) const;

    /// rho(theta(p)) - r(p): positive inside, zero on the curve, negative
    /// outside; continuous along any trajectory in the chart.
    double inside_value(const SurfacePoint& p) const;

    /// Arclength of the boundary point with polar angle theta.
    double arclength_at_theta(double theta) const;
    /// Inverse of arclength_at_theta on [0,P).
    double theta_at_arclength(double x) const;

    double curvature_at_theta(double theta) const;
    TangentVector frame_at_theta(double theta) const;

    PhasePoint normalize(PhasePoint p) const;

private:
    friend Table build_table(Surface, const PolarProfile&, int);

    double speed_at_theta(double theta) const;
    double partial_arclength(double theta_lo, double theta_hi) const;

    Surface surface_;
    PolarProfile profile_;
    Vec3 e1_, e2_; // center frame completed with the +90 degree direction
    double perimeter_ = 0.0;
    double area_ = 0.0;
    double k_min_ = 0.0;
    double k_max_ = 0.0;
    double gauss_bonnet_residual_ = 0.0;
    std::vector<double> theta_grid_;  // uniform, size resolution+1, closes at 2pi
    std::vector<double> arclength_;   // cumulative arclength at theta_grid_
};

/// Builds the arclength table by per-panel Gauss quadrature, computes P, A,
/// k(x), and verifies convexity and the Gauss-Bonnet identity
/// |K A + int k dx - 2pi| < 1e-8. resolution = number of theta panels.
Table build_table(Surface surface, const PolarProfile& profile, int resolution = 2048);

/// Circle of geodesic radius rho about the default center.
Table make_circle_table(Surface surface, double rho, int resolution = 1024);

} // namespace magbil
