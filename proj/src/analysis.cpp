#include "magbil/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace magbil {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRegimeTol = 1e-14;
constexpr double kNearZeroGuard = 1e-8;

} // namespace

EffectiveCurvature EffectiveCurvature::of(int curvature_sign, double beta) {
    EffectiveCurvature e;
    e.value = curvature_sign + beta * beta;
    e.regime = std::abs(e.value) < kRegimeTol ? Regime::zero
               : e.value > 0.0               ? Regime::positive
                                             : Regime::negative;
    return e;
}

double jacobi_ratio(int curvature_sign, double beta, double t) {
    if (!(t > 0.0)) throw std::domain_error("jacobi_ratio: t must be positive");
    const EffectiveCurvature eff = EffectiveCurvature::of(curvature_sign, beta);
    switch (eff.regime) {
        case EffectiveCurvature::Regime::positive: {
            const double w = std::sqrt(eff.value);
            if (t >= kPi / w)
                throw std::domain_error("jacobi_ratio: t at or beyond the first conjugate time");
            return w * std::cos(w * t) / std::sin(w * t);
        }
        case EffectiveCurvature::Regime::negative: {
            const double w = std::sqrt(-eff.value);
            return w * std::cosh(w * t) / std::sinh(w * t);
        }
        default:
            return 1.0 / t;
    }
}

double mirror_rhs(double k, double beta, double phi) {
    return 2.0 * (k - beta * std::cos(phi)) / std::sin(phi);
}

double mirror_residual_circle(const BilliardSystem& sys, double phi) {
    if (!sys.table().profile().is_circle())
        throw std::invalid_argument("mirror_residual_circle requires a circular table");
    const ChordResult chord = billiard_step(sys, {0.0, phi});
    const double k = sys.table().k_min(); // constant on a circle
    const int sign = sys.table().surface().curvature_sign;
    return 2.0 * jacobi_ratio(sign, sys.beta(), 0.5 * chord.length) -
           mirror_rhs(k, sys.beta(), phi);
}

double mirror_residual_circle(Surface s, double rho_circle, double beta, double phi) {
    BilliardSystem sys(make_circle_table(s, rho_circle), {s, beta});
    return mirror_residual_circle(sys, phi);
}

PhaseQuadrature::PhaseQuadrature(int nx, int nphi) : nodes_x(nx), nodes_phi(nphi) {
    if (nx < 32 || nphi < 32)
        throw std::invalid_argument("phase quadrature needs at least 32 nodes per axis");
}

double santalo_integral(const BilliardSystem& sys, const PhaseQuadrature& quad) {
    const Table& table = sys.table();
    const GaussLegendre gx(quad.nodes_x, 0.0, table.perimeter());
    const GaussLegendre gphi(quad.nodes_phi, 0.0, kPi);

    std::vector<double> terms;
    terms.reserve(gx.size() * gphi.size());
    for (std::size_t i = 0; i < gx.size(); ++i) {
        for (std::size_t j = 0; j < gphi.size(); ++j) {
            const double phi = gphi.nodes[j];
            try {
                const double l = billiard_step(sys, {gx.nodes[i], phi}).length;
                terms.push_back(gx.weights[i] * gphi.weights[j] * std::sin(phi) * l);
            } catch (const chord_search_error& e) {
                throw chord_search_error(std::string(e.what()) + " (quadrature node x = " +
                                         std::to_string(gx.nodes[i]) +
                                         ", phi = " + std::to_string(phi) + ")");
            }
        }
    }
    return pairwise_sum(terms);
}

double inner_integrand(int curvature_sign, double beta, double k, double phi) {
    const double denom = k - beta * std::cos(phi);
    if (!(denom > 0.0))
        throw std::domain_error("inner_integrand: requires k - beta cos phi > 0");
    const double sphi = std::sin(phi);
    const EffectiveCurvature eff = EffectiveCurvature::of(curvature_sign, beta);
    switch (eff.regime) {
        case EffectiveCurvature::Regime::positive: {
            const double w = std::sqrt(eff.value);
            return (2.0 / w) * std::atan(w * sphi / denom) * sphi;
        }
        case EffectiveCurvature::Regime::negative: {
            const double w = std::sqrt(-eff.value);
            const double arg = w * sphi / denom;
            if (arg >= 1.0)
                throw std::domain_error(
                    "inner_integrand: inverse hyperbolic argument >= 1 "
                    "(horocycle convexity k >= 1 violated)");
            return (2.0 / w) * std::atanh(arg) * sphi;
        }
        default:
            return 2.0 * sphi / denom * sphi;
    }
}

namespace {

double inner_integral_branch(int curvature_sign, double beta, double k, int nodes) {
    const GaussLegendre g(nodes, 0.0, kPi);
    return g.integrate([&](double phi) { return inner_integrand(curvature_sign, beta, k, phi); });
}

} // namespace

double inner_integral(int curvature_sign, double beta, double k, int nodes) {
    if (!(k > beta))
        throw std::domain_error("inner_integral: requires beta < k");
    const double value = inner_integral_branch(curvature_sign, beta, k, nodes);

    // near the parabolic regime, guard against cancellation by comparing with
    // the rational limit integrand evaluated at the parabolic field strength
    const EffectiveCurvature eff = EffectiveCurvature::of(curvature_sign, beta);
    if (eff.regime != EffectiveCurvature::Regime::zero &&
        std::abs(eff.value) < kNearZeroGuard) {
        const double beta0 = std::sqrt(std::max(0.0, -static_cast<double>(curvature_sign)));
        const double limit = inner_integral_branch(curvature_sign, beta0, k, nodes);
        if (std::abs(value - limit) > 1e-5 * std::max(1.0, std::abs(limit)))
            throw std::runtime_error("inner_integral: near-parabolic evaluation inconsistent "
                                     "with the limit branch");
    }
    return value;
}

double circle_gap_closed_form(int curvature_sign, double k) {
    switch (curvature_sign) {
        case +1:
            if (!(k > 0.0)) throw std::domain_error("circle curvature must be positive");
            return 2.0 * kPi * (std::sqrt(k * k + 1.0) - k);
        case -1:
            if (!(k > 1.0))
                throw std::domain_error("no hyperbolic circle with curvature k <= 1");
            return 2.0 * kPi * (k - std::sqrt(k * k - 1.0));
        default:
            if (!(k > 0.0)) throw std::domain_error("circle curvature must be positive");
            return kPi / k;
    }
}

CircleGeometry circle_geometry_from_radius(int curvature_sign, double rho) {
    if (!(rho > 0.0)) throw std::domain_error("circle radius must be positive");
    CircleGeometry c;
    c.rho = rho;
    switch (curvature_sign) {
        case +1:
            if (rho >= 0.5 * kPi)
                throw std::domain_error("spherical circle must have rho < pi/2 to be convex");
            c.k = std::cos(rho) / std::sin(rho);
            c.perimeter = 2.0 * kPi * std::sin(rho);
            c.area = 2.0 * kPi * (1.0 - std::cos(rho));
            break;
        case -1:
            c.k = std::cosh(rho) / std::sinh(rho);
            c.perimeter = 2.0 * kPi * std::sinh(rho);
            c.area = 2.0 * kPi * (std::cosh(rho) - 1.0);
            break;
        default:
            c.k = 1.0 / rho;
            c.perimeter = 2.0 * kPi * rho;
            c.area = kPi * rho * rho;
            break;
    }
    return c;
}

CircleGeometry circle_geometry_from_curvature(int curvature_sign, double k) {
    double rho;
    switch (curvature_sign) {
        case +1:
            if (!(k > 0.0)) throw std::domain_error("circle curvature must be positive");
            rho = std::atan2(1.0, k);
            break;
        case -1:
            if (!(k > 1.0))
                throw std::domain_error("no hyperbolic circle with curvature k <= 1");
            rho = std::atanh(1.0 / k);
            break;
        default:
            if (!(k > 0.0)) throw std::domain_error("circle curvature must be positive");
            rho = 1.0 / k;
            break;
    }
    return circle_geometry_from_radius(curvature_sign, rho);
}

double isoperimetric_defect(int curvature_sign, double perimeter, double area) {
    if (!(perimeter > 0.0 && area > 0.0))
        throw std::domain_error("isoperimetric defect needs P > 0 and A > 0");
    return perimeter * perimeter - 4.0 * kPi * area + curvature_sign * area * area;
}

DefectReport rigidity_defect(const BilliardSystem& sys, const PhaseQuadrature& quad,
                             double zero_tolerance) {
    const Table& table = sys.table();
    const int sign = table.surface().curvature_sign;

    DefectReport report;
    report.effective = EffectiveCurvature::of(sign, sys.beta());
    report.k_min = table.k_min();
    report.isoperimetric_defect = isoperimetric_defect(sign, table.perimeter(), table.area());

    if (sign < 0 && sys.beta() < 1.0 && table.k_min() < 1.0) {
        report.horocycle_violated = true;
        report.santalo_lhs = std::numeric_limits<double>::quiet_NaN();
        report.gap_integral = std::numeric_limits<double>::quiet_NaN();
        report.rigidity_defect = std::numeric_limits<double>::quiet_NaN();
        report.verdict = "total integrability excluded (horocycle convexity requires k >= 1, "
                         "min k = " + std::to_string(table.k_min()) + ")";
        return report;
    }

    report.santalo_lhs = santalo_integral(sys, quad);

    const GaussLegendre gx(quad.nodes_x, 0.0, table.perimeter());
    report.gap_integral = gx.integrate([&](double x) {
        return inner_integral(sign, sys.beta(), table.curvature_at(x), quad.nodes_phi);
    });

    report.rigidity_defect = report.santalo_lhs - report.gap_integral;
    const double scale = 2.0 * kPi * table.area();
    if (std::abs(report.rigidity_defect) <= zero_tolerance * scale)
        report.verdict = "consistent with total integrability (H = 0 within tolerance)";
    else if (report.rigidity_defect > 0.0)
        report.verdict = "consistent with total integrability (H > 0)";
    else
        report.verdict = "total integrability excluded (H < 0)";
    return report;
}

BetaSweepReport beta_independence_sweep(int curvature_sign, double k,
                                        const std::vector<double>& betas, int nodes) {
    BetaSweepReport report;
    report.betas = betas;
    report.values.reserve(betas.size());
    for (double beta : betas) {
        if (beta < 0.0) throw std::domain_error("beta must be >= 0");
        report.values.push_back(inner_integral(curvature_sign, beta, k, nodes));
    }
    for (std::size_t i = 0; i < report.values.size(); ++i)
        for (std::size_t j = i + 1; j < report.values.size(); ++j)
            report.max_pairwise_deviation = std::max(
                report.max_pairwise_deviation, std::abs(report.values[i] - report.values[j]));
    const double closed = circle_gap_closed_form(curvature_sign, k);
    for (double v : report.values)
        report.closed_form_deviation =
            std::max(report.closed_form_deviation, std::abs(v - closed));
    return report;
}

} // namespace magbil
