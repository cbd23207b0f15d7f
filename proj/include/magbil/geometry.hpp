#pragma once

#include <Eigen/Dense>

#include "magbil/errors.hpp"

namespace magbil {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// One of the three constant-curvature models, normalized to |K| = 1:
///   K = +1  unit sphere in Euclidean 3-space,
///   K = -1  upper hyperboloid <p,p> = -1 in Minkowski space diag(1,1,-1),
///   K =  0  plane embedded as the affine slice z = 1.
struct Surface {
    int curvature_sign = 0;

    static constexpr Surface plane() { return {0}; }
    static constexpr Surface sphere() { return {+1}; }
    static constexpr Surface hyperbolic() { return {-1}; }

    bool operator==(const Surface&) const = default;
};

struct SurfacePoint {
    Vec3 coords;
};

/// Unit-speed state: a base point on the surface and a unit tangent there.
struct TangentVector {
    SurfacePoint base;
    Vec3 dir;
};

struct MagneticContext {
    Surface surface;
    double beta = 0.0; // geodesic curvature of trajectories, >= 0
};

/// Infinitesimal isometry xi whose one-parameter group carries the magnetic
/// trajectory: xi p = v, xi v = beta n - K p, xi n = -beta v. Satisfies
/// xi^3 + (K + beta^2) xi = 0.
struct FlowGenerator {
    Mat3 matrix;
};

/// Bilinear form of the model applied to ambient vectors
/// (Euclidean for K >= 0, Minkowski diag(1,1,-1) for K = -1).
double model_dot(Surface s, const Vec3& a, const Vec3& b);

/// v rotated by +90 degrees in the oriented tangent plane at p.
Vec3 tangent_rot90(Surface s, const Vec3& p, const Vec3& v);

/// Throws invalid_state_error unless base lies on the surface and dir is a
/// unit tangent there, within tol.
void validate_state(Surface s, const TangentVector& state, double tol = 1e-12);

/// Pull a drifted (point, direction) pair back onto the constraint set.
TangentVector reproject(Surface s, TangentVector state);

FlowGenerator make_generator(const TangentVector& state, const MagneticContext& ctx);

/// exp(t*xi) in closed form, using xi^3 = -lambda * xi with lambda = K + beta^2.
Mat3 flow_exponential(const Mat3& xi, double lambda, double t);

/// Matrix of the generator in the moving basis (p, v, n); constant along the
/// orbit and obeying the same characteristic identity.
Mat3 frame_generator(int curvature_sign, double beta);

/// Transport the state along its magnetic geodesic for (signed) arclength t.
TangentVector flow(const TangentVector& state, const MagneticContext& ctx, double t);

/// Fixed-step RK4 integration of p' = v, v' = beta n(p,v) - K p with per-step
/// reprojection. Cross-check for flow(); agrees to O(step^4).
TangentVector flow_ode_oracle(const TangentVector& state, const MagneticContext& ctx,
                              double t, int steps);

struct PolarCoords {
    double r = 0.0;
    double theta = 0.0;
};

/// Point at geodesic distance r from center.base in direction theta
/// (measured from center.dir). K=+1 requires r < pi.
SurfacePoint geodesic_polar_to_point(Surface s, const TangentVector& center,
                                     double r, double theta);

/// Inverse of geodesic_polar_to_point on its chart.
PolarCoords point_to_geodesic_polar(Surface s, const TangentVector& center,
                                    const SurfacePoint& p);

} // namespace magbil
