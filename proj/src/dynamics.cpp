#include "magbil/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace magbil {

namespace {

constexpr double kBisectionTol = 1e-12;
constexpr double kStepSafety = 0.5;
constexpr double kPhiClamp = 1e-9;

} // namespace

BilliardSystem::BilliardSystem(Table table, MagneticContext ctx)
    : table_(std::move(table)), ctx_(ctx) {
    if (ctx_.beta < 0.0)
        throw std::invalid_argument("magnetic field strength must be >= 0");
    if (table_.surface().curvature_sign != ctx_.surface.curvature_sign)
        throw std::invalid_argument("table and context surfaces differ");
    if (!(table_.assumption_margin(ctx_.beta) > 0.0))
        throw std::invalid_argument(
            "geometric assumption violated: beta = " + std::to_string(ctx_.beta) +
            " must be smaller than min k = " + std::to_string(table_.k_min()));
}

ChordResult billiard_step(const BilliardSystem& sys, PhasePoint p) {
    const Table& table = sys.table();
    const Surface s = table.surface();
    p = table.normalize(p);

    // launch state: rotate the boundary tangent inward by phi
    const double theta0 = table.theta_at_arclength(p.x);
    const TangentVector frame = table.frame_at_theta(theta0);
    const Vec3 n_in = tangent_rot90(s, frame.base.coords, frame.dir);
    TangentVector launch{frame.base,
                         std::cos(p.phi) * frame.dir + std::sin(p.phi) * n_in};
    launch = reproject(s, launch);

    const double lambda = s.curvature_sign + sys.beta() * sys.beta();
    const Vec3 p0 = launch.base.coords;
    const Vec3 v0 = launch.dir;
    const Vec3 n0 = tangent_rot90(s, p0, v0);
    const Mat3 xi_frame = frame_generator(s.curvature_sign, sys.beta());
    const auto value_at = [&](double t) {
        const Mat3 e = flow_exponential(xi_frame, lambda, t);
        return table.inside_value({e(0, 0) * p0 + e(1, 0) * v0 + e(2, 0) * n0});
    };

    const double perim = table.perimeter();
    const double step = std::min(0.05, perim / 64.0) * kStepSafety;

    // lift off the boundary: the chord interior is strictly inside, so some
    // dyadic fraction of the step must give a positive value
    double t_lo = step;
    while (value_at(t_lo) <= 0.0) {
        t_lo *= 0.5;
        if (t_lo < kBisectionTol)
            throw chord_search_error("chord search: failed to leave the boundary at x = " +
                                     std::to_string(p.x) + ", phi = " + std::to_string(p.phi));
    }

    // march until the trajectory pokes outside
    const double t_max =
        4.0 * perim + (lambda > 0.0 ? 2.0 * std::numbers::pi / std::sqrt(lambda) : 4.0 * perim);
    double t_hi = t_lo;
    do {
        t_hi += step;
        if (t_hi > t_max)
            throw chord_search_error("chord search: no boundary return before t = " +
                                     std::to_string(t_max));
    } while (value_at(t_hi) > 0.0);
    t_lo = t_hi - step;

    while (t_hi - t_lo > kBisectionTol) {
        const double mid = 0.5 * (t_lo + t_hi);
        (value_at(mid) > 0.0 ? t_lo : t_hi) = mid;
    }
    const double chord = 0.5 * (t_lo + t_hi);

    const TangentVector arrival = flow(launch, sys.context(), chord);

    // exit coordinates from the polar angle of the arrival point
    const PolarCoords pc = point_to_geodesic_polar(s, table.profile().center, arrival.base);
    const double x_next = table.arclength_at_theta(pc.theta);
    const TangentVector frame_next = table.frame_at_theta(pc.theta);
    const Vec3 n_next = tangent_rot90(s, frame_next.base.coords, frame_next.dir);

    // elastic reflection: flip the normal component
    const double vn = model_dot(s, arrival.dir, n_next);
    const Vec3 v_reflected = arrival.dir - 2.0 * vn * n_next;
    const double phi_next =
        std::atan2(model_dot(s, v_reflected, n_next), model_dot(s, v_reflected, frame_next.dir));
    if (!(phi_next > kPhiClamp && phi_next < std::numbers::pi - kPhiClamp))
        throw chord_search_error("chord search: reflected angle " + std::to_string(phi_next) +
                                 " outside the admissible band");

    ChordResult out;
    out.next = table.normalize({x_next, phi_next});
    out.length = chord;
    out.exit_state = launch;
    out.entry_state = arrival;
    return out;
}

std::vector<OrbitSample> orbit(const BilliardSystem& sys, PhasePoint p0, long n) {
    if (n < 0) throw std::invalid_argument("orbit: n must be >= 0");
    std::vector<OrbitSample> samples;
    samples.reserve(static_cast<std::size_t>(n));
    PhasePoint p = sys.table().normalize(p0);
    for (long i = 0; i < n; ++i) {
        try {
            const ChordResult step = billiard_step(sys, p);
            p = step.next;
            samples.push_back({p, step.length});
        } catch (const chord_search_error& e) {
            throw chord_search_error(std::string(e.what()) + " (orbit step " +
                                         std::to_string(i) + ")",
                                     i);
        }
    }
    return samples;
}

Eigen::Matrix2d map_jacobian(const BilliardSystem& sys, PhasePoint p, double h) {
    const double perim = sys.table().perimeter();
    if (!(p.phi - h > 0.0 && p.phi + h < std::numbers::pi))
        throw std::invalid_argument("map_jacobian: phi neighborhood leaves (0, pi)");

    const auto wrap = [perim](double d) {
        d = std::fmod(d, perim);
        if (d > 0.5 * perim) d -= perim;
        if (d < -0.5 * perim) d += perim;
        return d;
    };

    const ChordResult xp = billiard_step(sys, {p.x + h, p.phi});
    const ChordResult xm = billiard_step(sys, {p.x - h, p.phi});
    const ChordResult pp = billiard_step(sys, {p.x, p.phi + h});
    const ChordResult pm = billiard_step(sys, {p.x, p.phi - h});

    Eigen::Matrix2d j;
    j(0, 0) = wrap(xp.next.x - xm.next.x) / (2.0 * h);
    j(0, 1) = wrap(pp.next.x - pm.next.x) / (2.0 * h);
    j(1, 0) = (xp.next.phi - xm.next.phi) / (2.0 * h);
    j(1, 1) = (pp.next.phi - pm.next.phi) / (2.0 * h);
    return j;
}

double symplectic_determinant(const BilliardSystem& sys, PhasePoint p, double h) {
    const Eigen::Matrix2d j = map_jacobian(sys, p, h);
    const double phi_next = billiard_step(sys, p).next.phi;
    // d(cos phi) = -sin phi d phi on each side of the map
    return j.determinant() * std::sin(phi_next) / std::sin(p.phi);
}

double twist_derivative(const BilliardSystem& sys, PhasePoint p, double h) {
    return map_jacobian(sys, p, h)(0, 1);
}

PhasePortrait phase_portrait(const BilliardSystem& sys, const std::vector<PhasePoint>& grid,
                             long iterations) {
    PhasePortrait portrait;
    for (std::size_t seed = 0; seed < grid.size(); ++seed) {
        try {
            PhasePoint p = sys.table().normalize(grid[seed]);
            portrait.points.push_back({seed, p.x, std::cos(p.phi)});
            for (long i = 0; i < iterations; ++i) {
                p = billiard_step(sys, p).next;
                portrait.points.push_back({seed, p.x, std::cos(p.phi)});
            }
        } catch (const std::exception& e) {
            portrait.errors.emplace_back(seed, e.what());
        }
    }
    return portrait;
}

} // namespace magbil
