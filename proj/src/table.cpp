#include "magbil/table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "magbil/quadrature.hpp"

namespace magbil {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGaussBonnetTol = 1e-8;

// 8-point Gauss-Legendre on [0,1]; used per theta panel.
struct PanelRule {
    static const PanelRule& instance() {
        static const PanelRule rule;
        return rule;
    }
    double node[8], weight[8];

private:
    PanelRule() {
        const GaussLegendre gl(8, 0.0, 1.0);
        std::copy(gl.nodes.begin(), gl.nodes.end(), node);
        std::copy(gl.weights.begin(), gl.weights.end(), weight);
    }
};

// Fourier sum and its first two theta-derivatives via the rotation recurrence.
void fourier_eval(double c0, const std::vector<double>& ac, const std::vector<double>& bs,
                  double theta, double& f, double& df, double& ddf) {
    f = c0;
    df = 0.0;
    ddf = 0.0;
    const std::size_t nmax = std::max(ac.size(), bs.size());
    if (nmax == 0) return;
    const double ct = std::cos(theta), st = std::sin(theta);
    double cn = 1.0, sn = 0.0; // cos(n theta), sin(n theta) starting at n=0
    for (std::size_t n = 1; n <= nmax; ++n) {
        const double c_next = cn * ct - sn * st;
        const double s_next = sn * ct + cn * st;
        cn = c_next;
        sn = s_next;
        const double a = n <= ac.size() ? ac[n - 1] : 0.0;
        const double b = n <= bs.size() ? bs[n - 1] : 0.0;
        f += a * cn + b * sn;
        df += static_cast<double>(n) * (-a * sn + b * cn);
        ddf -= static_cast<double>(n * n) * (a * cn + b * sn);
    }
}

struct CurvePoint {
    Vec3 gamma, dgamma, ddgamma;
    double speed;
};

} // namespace

double PolarProfile::rho(double theta) const {
    double f, df, ddf;
    fourier_eval(c0, cos_coeffs, sin_coeffs, theta, f, df, ddf);
    return f;
}

double PolarProfile::drho(double theta) const {
    double f, df, ddf;
    fourier_eval(c0, cos_coeffs, sin_coeffs, theta, f, df, ddf);
    return df;
}

double PolarProfile::ddrho(double theta) const {
    double f, df, ddf;
    fourier_eval(c0, cos_coeffs, sin_coeffs, theta, f, df, ddf);
    return ddf;
}

void PolarProfile::validate(Surface s) const {
    constexpr int kSamples = 4096;
    double rho_max = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double r = rho(kTwoPi * i / kSamples);
        if (!(r > 0.0))
            throw std::invalid_argument("polar profile: rho(theta) must be positive");
        rho_max = std::max(rho_max, r);
    }
    if (s.curvature_sign > 0 && rho_max >= 0.5 * std::numbers::pi)
        throw std::invalid_argument("polar profile: sphere tables must stay inside a hemisphere "
                                    "(max rho < pi/2)");
}

TangentVector PolarProfile::default_center(Surface) {
    return {{Vec3(0.0, 0.0, 1.0)}, Vec3(1.0, 0.0, 0.0)};
}

namespace {

// gamma(theta) = C_K(rho) e0 + S_K(rho) (cos theta e1 + sin theta e2) and its
// exact theta-derivatives, using C'' = -K C, S'' = -K S.
CurvePoint curve_point(Surface s, const PolarProfile& prof, const Vec3& e0, const Vec3& e1,
                       const Vec3& e2, double theta) {
    double r, dr, ddr;
    fourier_eval(prof.c0, prof.cos_coeffs, prof.sin_coeffs, theta, r, dr, ddr);

    double c, sr, dc, dsr;
    const int k = s.curvature_sign;
    if (k > 0) {
        c = std::cos(r); sr = std::sin(r); dc = -sr; dsr = c;
    } else if (k < 0) {
        c = std::cosh(r); sr = std::sinh(r); dc = sr; dsr = c;
    } else {
        c = 1.0; sr = r; dc = 0.0; dsr = 1.0;
    }

    const double ct = std::cos(theta), st = std::sin(theta);
    const Vec3 u = ct * e1 + st * e2;
    const Vec3 du = -st * e1 + ct * e2;

    CurvePoint out;
    out.gamma = c * e0 + sr * u;
    out.dgamma = dc * dr * e0 + dsr * dr * u + sr * du;
    out.ddgamma = (-k * c * dr * dr + dc * ddr) * e0 + (-k * sr * dr * dr + dsr * ddr) * u +
                  2.0 * dsr * dr * du - sr * u;
    out.speed = std::sqrt(model_dot(s, out.dgamma, out.dgamma));
    return out;
}

// det(gamma, gamma', gamma'') over the cubed model speed; the Euclidean
// triple product is the right numerator in all three models
double geodesic_curvature(const CurvePoint& cp) {
    const double det = cp.gamma.dot(cp.dgamma.cross(cp.ddgamma));
    return det / (cp.speed * cp.speed * cp.speed);
}

// geodesic disk area element integrated radially: int_0^rho S_K(r) dr
double radial_area(Surface s, double rho) {
    if (s.curvature_sign > 0) return 1.0 - std::cos(rho);
    if (s.curvature_sign < 0) return std::cosh(rho) - 1.0;
    return 0.5 * rho * rho;
}

} // namespace

Table build_table(Surface surface, const PolarProfile& profile, int resolution) {
    if (resolution < 256) throw std::invalid_argument("build_table: resolution must be >= 256");
    profile.validate(surface);
    validate_state(surface, profile.center);

    Table t;
    t.surface_ = surface;
    t.profile_ = profile;
    t.e1_ = profile.center.dir;
    t.e2_ = tangent_rot90(surface, profile.center.base.coords, profile.center.dir);

    const Vec3& e0 = profile.center.base.coords;
    const PanelRule& rule = PanelRule::instance();
    const double h = kTwoPi / resolution;

    t.theta_grid_.resize(resolution + 1);
    t.arclength_.resize(resolution + 1);
    t.theta_grid_[0] = 0.0;
    t.arclength_[0] = 0.0;

    double area = 0.0;
    double total_turn = 0.0; // int k ds
    double k_min = std::numeric_limits<double>::infinity();
    double k_max = -k_min;

    for (int i = 0; i < resolution; ++i) {
        const double th0 = h * i;
        double ds = 0.0, da = 0.0, dturn = 0.0;
        for (int q = 0; q < 8; ++q) {
            const double th = th0 + h * rule.node[q];
            const CurvePoint cp = curve_point(surface, profile, e0, t.e1_, t.e2_, th);
            const double k = geodesic_curvature(cp);
            if (!(k > 0.0))
                throw convexity_error("profile has non-positive geodesic curvature at theta = " +
                                      std::to_string(th));
            const double w = h * rule.weight[q];
            ds += w * cp.speed;
            da += w * radial_area(surface, profile.rho(th));
            dturn += w * k * cp.speed;
            k_min = std::min(k_min, k);
            k_max = std::max(k_max, k);
        }
        t.theta_grid_[i + 1] = h * (i + 1);
        t.arclength_[i + 1] = t.arclength_[i] + ds;
        area += da;
        total_turn += dturn;
    }

    t.perimeter_ = t.arclength_.back();
    t.area_ = area;
    t.gauss_bonnet_residual_ =
        surface.curvature_sign * area + total_turn - kTwoPi;
    if (std::abs(t.gauss_bonnet_residual_) > kGaussBonnetTol)
        throw resolution_error("Gauss-Bonnet residual " +
                               std::to_string(t.gauss_bonnet_residual_) +
                               " above tolerance; increase resolution");

    // refine curvature extrema on a denser grid than the panel nodes
    const int dense = std::max(1 << 14, 4 * resolution);
    for (int i = 0; i < dense; ++i) {
        const double th = kTwoPi * i / dense;
        const double k = t.curvature_at_theta(th);
        if (!(k > 0.0)) throw convexity_error("profile has non-positive geodesic curvature");
        k_min = std::min(k_min, k);
        k_max = std::max(k_max, k);
    }
    t.k_min_ = k_min;
    t.k_max_ = k_max;
    return t;
}

Table make_circle_table(Surface surface, double rho, int resolution) {
    PolarProfile prof;
    prof.center = PolarProfile::default_center(surface);
    prof.c0 = rho;
    return build_table(surface, prof, resolution);
}

double Table::speed_at_theta(double theta) const {
    return curve_point(surface_, profile_, profile_.center.base.coords, e1_, e2_, theta).speed;
}

double Table::partial_arclength(double theta_lo, double theta_hi) const {
    const PanelRule& rule = PanelRule::instance();
    const double len = theta_hi - theta_lo;
    double s = 0.0;
    for (int q = 0; q < 8; ++q)
        s += len * rule.weight[q] * speed_at_theta(theta_lo + len * rule.node[q]);
    return s;
}

double Table::arclength_at_theta(double theta) const {
    double th = std::fmod(theta, kTwoPi);
    if (th < 0.0) th += kTwoPi;
    const double h = kTwoPi / resolution();
    const int panel = std::min(static_cast<int>(th / h), resolution() - 1);
    return arclength_[panel] + partial_arclength(theta_grid_[panel], th);
}

double Table::theta_at_arclength(double x) const {
    double xw = std::fmod(x, perimeter_);
    if (xw < 0.0) xw += perimeter_;
    const auto it = std::upper_bound(arclength_.begin(), arclength_.end(), xw);
    const int panel = std::clamp(static_cast<int>(it - arclength_.begin()) - 1, 0,
                                 resolution() - 1);
    const double h = kTwoPi / resolution();
    // linear seed, then Newton on s(theta) - x with s' = speed
    double theta = theta_grid_[panel] +
                   h * (xw - arclength_[panel]) /
                       (arclength_[panel + 1] - arclength_[panel]);
    for (int iter = 0; iter < 4; ++iter) {
        const double res = arclength_[panel] + partial_arclength(theta_grid_[panel], theta) - xw;
        theta -= res / speed_at_theta(theta);
    }
    return theta;
}

TangentVector Table::frame_at_theta(double theta) const {
    const CurvePoint cp =
        curve_point(surface_, profile_, profile_.center.base.coords, e1_, e2_, theta);
    return {{cp.gamma}, cp.dgamma / cp.speed};
}

double Table::curvature_at_theta(double theta) const {
    return geodesic_curvature(
        curve_point(surface_, profile_, profile_.center.base.coords, e1_, e2_, theta));
}

SurfacePoint Table::point_at(double x) const {
    return frame_at_theta(theta_at_arclength(x)).base;
}

TangentVector Table::tangent_at(double x) const {
    return frame_at_theta(theta_at_arclength(x));
}

double Table::curvature_at(double x) const {
    return curvature_at_theta(theta_at_arclength(x));
}

double Table::inside_value(const SurfacePoint& p) const {
    const PolarCoords pc = point_to_geodesic_polar(surface_, profile_.center, p);
    return profile_.rho(pc.theta) - pc.r;
}

PhasePoint Table::normalize(PhasePoint p) const {
    p.x = std::fmod(p.x, perimeter_);
    if (p.x < 0.0) p.x += perimeter_;
    if (!(p.phi > 0.0 && p.phi < std::numbers::pi))
        throw std::invalid_argument("phase point: phi must lie in (0, pi)");
    return p;
}

} // namespace magbil
