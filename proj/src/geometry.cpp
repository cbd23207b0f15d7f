#include "magbil/geometry.hpp"

#include <cmath>
#include <limits>

namespace magbil {

namespace {

const Vec3 kMinkowskiDiag(1.0, 1.0, -1.0);

Vec3 minkowski_apply(const Vec3& a) { return a.cwiseProduct(kMinkowskiDiag); }

} // namespace

double model_dot(Surface s, const Vec3& a, const Vec3& b) {
    if (s.curvature_sign < 0) return a.x() * b.x() + a.y() * b.y() - a.z() * b.z();
    return a.dot(b);
}

Vec3 tangent_rot90(Surface s, const Vec3& p, const Vec3& v) {
    switch (s.curvature_sign) {
        case +1: return p.cross(v);
        case -1: return minkowski_apply(p.cross(v));
        default: return Vec3(-v.y(), v.x(), 0.0);
    }
}

void validate_state(Surface s, const TangentVector& state, double tol) {
    const Vec3& p = state.base.coords;
    const Vec3& v = state.dir;
    // Minkowski residuals are conditioned at the squared Euclidean magnitude,
    // so far-out hyperboloid states are judged relatively.
    const double scale = std::max({1.0, p.squaredNorm(), v.squaredNorm()});
    switch (s.curvature_sign) {
        case +1:
            if (std::abs(p.dot(p) - 1.0) > tol)
                throw invalid_state_error("point not on the unit sphere");
            if (std::abs(p.dot(v)) > tol)
                throw invalid_state_error("direction not tangent to the sphere");
            break;
        case -1:
            if (std::abs(model_dot(s, p, p) + 1.0) > tol * scale || p.z() <= 0.0)
                throw invalid_state_error("point not on the upper hyperboloid");
            if (std::abs(model_dot(s, p, v)) > tol * scale)
                throw invalid_state_error("direction not tangent to the hyperboloid");
            break;
        default:
            if (std::abs(p.z() - 1.0) > tol)
                throw invalid_state_error("plane point must have z = 1");
            if (std::abs(v.z()) > tol)
                throw invalid_state_error("plane direction must have z = 0");
            break;
    }
    if (std::abs(model_dot(s, v, v) - 1.0) > tol * scale)
        throw invalid_state_error("direction not unit speed");
}

TangentVector reproject(Surface s, TangentVector state) {
    Vec3& p = state.base.coords;
    Vec3& v = state.dir;
    switch (s.curvature_sign) {
        case +1:
            p.normalize();
            v -= p.dot(v) * p;
            v.normalize();
            break;
        case -1: {
            // pin to the hyperboloid by recomputing z from x, y; unlike a
            // Minkowski-norm rescaling this has no cancellation and stays
            // exact for far-out states
            p.z() = std::sqrt(1.0 + p.x() * p.x() + p.y() * p.y());
            v.z() = (p.x() * v.x() + p.y() * v.y()) / p.z(); // <p,v> = 0
            const double nv2 = model_dot(s, v, v);
            // the computed defect is itself noisy at ~|v|^2 eps; rescaling on
            // noise would inject |v|^3 eps errors, so only correct real drift
            const double noise =
                8.0 * std::numeric_limits<double>::epsilon() * v.squaredNorm();
            if (std::abs(nv2 - 1.0) > noise) v /= std::sqrt(nv2);
            break;
        }
        default:
            p.z() = 1.0;
            v.z() = 0.0;
            v /= std::hypot(v.x(), v.y());
            break;
    }
    return state;
}

FlowGenerator make_generator(const TangentVector& state, const MagneticContext& ctx) {
    validate_state(ctx.surface, state);
    const Vec3& p = state.base.coords;
    const Vec3& v = state.dir;
    const double beta = ctx.beta;
    const Surface s = ctx.surface;
    const Vec3 n = tangent_rot90(s, p, v);

    Mat3 xi;
    switch (s.curvature_sign) {
        case +1:
            xi = v * p.transpose() + (beta * n - p) * v.transpose() - beta * v * n.transpose();
            break;
        case -1: {
            // dual rows w.r.t. the Minkowski form; <p,p> = -1 flips the p row
            const Vec3 jp = minkowski_apply(p), jv = minkowski_apply(v), jn = minkowski_apply(n);
            xi = v * (-jp).transpose() + (beta * n + p) * jv.transpose() - beta * v * jn.transpose();
            break;
        }
        default:
            // affine rotation about the Larmor center, in homogeneous form
            xi << 0.0, -beta, v.x() + beta * p.y(),
                  beta, 0.0, v.y() - beta * p.x(),
                  0.0, 0.0, 0.0;
            break;
    }
    return {xi};
}

Mat3 flow_exponential(const Mat3& xi, double lambda, double t) {
    double s, c;
    if (lambda > 1e-14) {
        const double w = std::sqrt(lambda);
        s = std::sin(w * t) / w;
        const double sh = std::sin(0.5 * w * t);
        c = 2.0 * sh * sh / lambda;
    } else if (lambda < -1e-14) {
        const double w = std::sqrt(-lambda);
        s = std::sinh(w * t) / w;
        const double sh = std::sinh(0.5 * w * t);
        c = -2.0 * sh * sh / lambda;
    } else {
        s = t;
        c = 0.5 * t * t;
    }
    return Mat3::Identity() + s * xi + c * (xi * xi);
}

Mat3 frame_generator(int curvature_sign, double beta) {
    // matrix of xi in the moving basis (p, v, n); constant along the orbit
    Mat3 xi;
    xi << 0.0, -static_cast<double>(curvature_sign), 0.0,
          1.0, 0.0, -beta,
          0.0, beta, 0.0;
    return xi;
}

TangentVector flow(const TangentVector& state, const MagneticContext& ctx, double t) {
    validate_state(ctx.surface, state);
    const Vec3& p = state.base.coords;
    const Vec3& v = state.dir;
    const Vec3 n = tangent_rot90(ctx.surface, p, v);
    const double lambda = ctx.surface.curvature_sign + ctx.beta * ctx.beta;
    // exponentiate in the frame: stays well conditioned far from the origin,
    // where ambient generator entries grow quadratically in the coordinates
    const Mat3 e = flow_exponential(frame_generator(ctx.surface.curvature_sign, ctx.beta),
                                    lambda, t);
    TangentVector out{{e(0, 0) * p + e(1, 0) * v + e(2, 0) * n},
                      e(0, 1) * p + e(1, 1) * v + e(2, 1) * n};
    return reproject(ctx.surface, out);
}

TangentVector flow_ode_oracle(const TangentVector& state, const MagneticContext& ctx,
                              double t, int steps) {
    if (steps < 1) throw std::invalid_argument("flow_ode_oracle: steps must be >= 1");
    validate_state(ctx.surface, state);
    const Surface s = ctx.surface;
    const double kappa = s.curvature_sign;
    const double beta = ctx.beta;

    auto accel = [&](const Vec3& p, const Vec3& v) -> Vec3 {
        return beta * tangent_rot90(s, p, v) - kappa * p;
    };

    const double h = t / steps;
    Vec3 p = state.base.coords, v = state.dir;
    for (int i = 0; i < steps; ++i) {
        const Vec3 k1p = v, k1v = accel(p, v);
        const Vec3 k2p = v + 0.5 * h * k1v, k2v = accel(p + 0.5 * h * k1p, v + 0.5 * h * k1v);
        const Vec3 k3p = v + 0.5 * h * k2v, k3v = accel(p + 0.5 * h * k2p, v + 0.5 * h * k2v);
        const Vec3 k4p = v + h * k3v, k4v = accel(p + h * k3p, v + h * k3v);
        p += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        TangentVector st = reproject(s, {{p}, v});
        p = st.base.coords;
        v = st.dir;
    }
    return {{p}, v};
}

namespace {

// radial profile functions C_K, S_K with C'' = -K C, S'' = -K S
void radial_cs(int k_sign, double r, double& c, double& s) {
    if (k_sign > 0) {
        c = std::cos(r);
        s = std::sin(r);
    } else if (k_sign < 0) {
        c = std::cosh(r);
        s = std::sinh(r);
    } else {
        c = 1.0;
        s = r;
    }
}

} // namespace

SurfacePoint geodesic_polar_to_point(Surface s, const TangentVector& center,
                                     double r, double theta) {
    if (r < 0.0) throw std::invalid_argument("geodesic polar radius must be >= 0");
    if (s.curvature_sign > 0 && r >= std::acos(-1.0))
        throw out_of_chart_error("geodesic polar radius exceeds injectivity radius pi");
    const Vec3& p = center.base.coords;
    const Vec3& e1 = center.dir;
    const Vec3 e2 = tangent_rot90(s, p, e1);
    const Vec3 u = std::cos(theta) * e1 + std::sin(theta) * e2;
    double c, sr;
    radial_cs(s.curvature_sign, r, c, sr);
    return {c * p + sr * u};
}

PolarCoords point_to_geodesic_polar(Surface s, const TangentVector& center,
                                    const SurfacePoint& pt) {
    const Vec3& c = center.base.coords;
    const Vec3& e1 = center.dir;
    const Vec3 e2 = tangent_rot90(s, c, e1);
    const Vec3& p = pt.coords;

    double r;
    Vec3 u; // tangential component at the center, not normalized
    switch (s.curvature_sign) {
        case +1: {
            const double d = std::clamp(p.dot(c), -1.0, 1.0);
            r = std::acos(d);
            u = p - d * c;
            if (u.norm() < 1e-13 && r > 1.0)
                throw out_of_chart_error("point is antipodal to the chart center");
            break;
        }
        case -1: {
            const double d = model_dot(s, p, c); // <= -1
            r = std::acosh(std::max(1.0, -d));
            u = p + d * c;
            break;
        }
        default:
            u = p - c;
            r = std::hypot(u.x(), u.y());
            break;
    }
    const double theta = (r == 0.0)
        ? 0.0
        : std::atan2(model_dot(s, u, e2), model_dot(s, u, e1));
    return {r, theta};
}

} // namespace magbil
