// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Covers the full table matrix on all three surfaces at the tolerances the
// checks are specified with; runtime is a few minutes single-threaded.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "magbil/analysis.hpp"

using namespace magbil;

namespace {

constexpr double kPi = std::numbers::pi;

int g_criteria_failed = 0;

void criterion(int id, bool ok, const std::string& text) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, text.c_str());
    if (!ok) ++g_criteria_failed;
}

void detail(bool ok, const std::string& text) {
    std::printf("        %s %s\n", ok ? "ok  " : "FAIL", text.c_str());
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

struct TableCase {
    std::string name;
    Surface surface;
    Table table;
    bool is_circle;
};

std::vector<TableCase> build_matrix() {
    auto polar = [](Surface s, double c0, std::vector<double> cos_coeffs) {
        PolarProfile prof;
        prof.center = PolarProfile::default_center(s);
        prof.c0 = c0;
        prof.cos_coeffs = std::move(cos_coeffs);
        return prof;
    };
    std::vector<TableCase> matrix;
    matrix.push_back({"plane disk rho=1", Surface::plane(),
                      make_circle_table(Surface::plane(), 1.0), true});
    matrix.push_back({"plane polar 1+0.1cos2t", Surface::plane(),
                      build_table(Surface::plane(), polar(Surface::plane(), 1.0, {0.0, 0.1}), 1024),
                      false});
    matrix.push_back({"sphere circle rho=pi/4", Surface::sphere(),
                      make_circle_table(Surface::sphere(), kPi / 4), true});
    matrix.push_back({"sphere circle rho=0.6", Surface::sphere(),
                      make_circle_table(Surface::sphere(), 0.6), true});
    matrix.push_back({"sphere polar 0.6+0.03cos3t", Surface::sphere(),
                      build_table(Surface::sphere(),
                                  polar(Surface::sphere(), 0.6, {0.0, 0.0, 0.03}), 1024),
                      false});
    matrix.push_back({"hyperbolic circle rho=0.6", Surface::hyperbolic(),
                      make_circle_table(Surface::hyperbolic(), 0.6), true});
    matrix.push_back({"hyperbolic polar 0.8+0.05cos2t", Surface::hyperbolic(),
                      build_table(Surface::hyperbolic(),
                                  polar(Surface::hyperbolic(), 0.8, {0.0, 0.05}), 1024),
                      false});
    return matrix;
}

std::vector<double> santalo_betas(const TableCase& tc) {
    std::vector<double> betas = {0.0, 0.3 * tc.table.k_min()};
    if (tc.surface.curvature_sign < 0 && tc.is_circle) {
        betas.push_back(1.0); // horocycle regime
        betas.push_back(1.5); // geodesic-circle regime
    }
    return betas;
}

// 1. Santalo identity at 256x256 for every (table, beta) pair.
void criterion_santalo(const std::vector<TableCase>& matrix) {
    bool ok = true;
    for (const TableCase& tc : matrix) {
        for (double beta : santalo_betas(tc)) {
            const BilliardSystem sys(tc.table, {tc.surface, beta});
            const double lhs = santalo_integral(sys, {256, 256});
            const double rhs = 2.0 * kPi * tc.table.area();
            const double rel = std::abs(lhs - rhs) / rhs;
            const bool case_ok = rel < 1e-5;
            ok = ok && case_ok;
            detail(case_ok, fmt("santalo %s beta=%.4f rel=%.3e", tc.name.c_str(), beta, rel));
        }
    }
    criterion(1, ok, "Santalo identity |int l dmu - 2 pi A| / (2 pi A) < 1e-5 at 256x256");
}

// 2. Inner integral independent of beta across regimes.
void criterion_beta_independence() {
    struct Case {
        int sign;
        double k;
    };
    const Case cases[] = {{0, 1.0}, {0, 2.0}, {1, 1.0}, {1, 1.5}, {-1, 1.5}, {-1, 2.0}};
    bool ok = true;
    for (const Case& c : cases) {
        std::vector<double> betas;
        if (c.sign < 0) {
            for (double b : {0.0, 0.5, 1.0, 1.4, 1.5})
                if (b < 0.95 * c.k) betas.push_back(b);
        } else {
            betas = {0.0, 0.3 * c.k, 0.6 * c.k, 0.9 * c.k};
        }
        const BetaSweepReport sweep = beta_independence_sweep(c.sign, c.k, betas, 512);
        const bool case_ok = sweep.max_pairwise_deviation < 1e-8;
        ok = ok && case_ok;
        detail(case_ok, fmt("K=%+d k=%.2f: max deviation %.3e over %zu betas", c.sign, c.k,
                            sweep.max_pairwise_deviation, betas.size()));
    }
    criterion(2, ok, "inner integral deviation across beta sweeps < 1e-8 (regimes crossed)");
}

// 3. Quadrature vs closed forms over log-spaced curvatures.
void criterion_closed_forms() {
    bool ok = true;
    for (int sign : {0, 1, -1}) {
        double worst_quad = 0.0, worst_circle = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double k = sign < 0 ? 1.05 * std::pow(50.0 / 1.05, i / 19.0)
                                      : 0.05 * std::pow(50.0 / 0.05, i / 19.0);
            const double gap = circle_gap_closed_form(sign, k);
            worst_quad = std::max(worst_quad, std::abs(inner_integral(sign, 0.0, k, 512) - gap));
            const CircleGeometry c = circle_geometry_from_curvature(sign, k);
            worst_circle =
                std::max(worst_circle, std::abs(2.0 * kPi * c.area / c.perimeter - gap));
        }
        const bool case_ok = worst_quad < 1e-10 && worst_circle < 1e-12;
        ok = ok && case_ok;
        detail(case_ok, fmt("K=%+d: |integral - closed form| max %.3e, |2piA/P - closed form| "
                            "max %.3e",
                            sign, worst_quad, worst_circle));
    }
    criterion(3, ok, "closed-form consistency: quadrature < 1e-10, circle identity < 1e-12");
}

// 4. Mirror equality on circles with both focusing distances at l/2.
void criterion_mirror() {
    struct Case {
        Surface s;
        double rho;
        std::vector<double> betas;
    };
    const Case cases[] = {
        {Surface::plane(), 1.0, {0.0, 0.5}},
        {Surface::sphere(), kPi / 4, {0.0, 0.3}},
        {Surface::sphere(), 0.6, {0.0, 0.4}},
        {Surface::hyperbolic(), 0.6, {0.0, 0.5, 1.0, 1.5}},
    };
    bool ok = true;
    for (const Case& c : cases) {
        for (double beta : c.betas) {
            const BilliardSystem sys(make_circle_table(c.s, c.rho), {c.s, beta});
            double worst = 0.0;
            for (int i = 0; i < 64; ++i)
                worst = std::max(worst,
                                 std::abs(mirror_residual_circle(sys, kPi * (i + 0.5) / 64.0)));
            const bool case_ok = worst < 1e-8;
            ok = ok && case_ok;
            detail(case_ok, fmt("K=%+d rho=%.4f beta=%.2f: max |residual| = %.3e",
                                c.s.curvature_sign, c.rho, beta, worst));
        }
    }
    criterion(4, ok, "mirror equality on circles: residual < 1e-8 over 64 angles, all regimes");
}

// 5. Rigidity defect: zero on circles, strictly negative off them.
void criterion_rigidity(const std::vector<TableCase>& matrix) {
    bool ok = true;
    for (const TableCase& tc : matrix) {
        const double scale = 2.0 * kPi * tc.table.area();
        if (tc.is_circle) {
            for (double beta : santalo_betas(tc)) {
                const BilliardSystem sys(tc.table, {tc.surface, beta});
                const DefectReport r = rigidity_defect(sys, {256, 256});
                const bool case_ok = std::abs(r.rigidity_defect) < 1e-5 * scale;
                ok = ok && case_ok;
                detail(case_ok, fmt("%s beta=%.4f: |H| = %.3e (tol %.3e)", tc.name.c_str(), beta,
                                    std::abs(r.rigidity_defect), 1e-5 * scale));
            }
        } else {
            const double beta = tc.surface.curvature_sign > 0 ? 0.2 : 0.3;
            const BilliardSystem sys(tc.table, {tc.surface, beta});
            const DefectReport coarse = rigidity_defect(sys, {128, 128});
            const DefectReport fine = rigidity_defect(sys, {256, 256});
            const double uncertainty =
                std::abs(fine.rigidity_defect - coarse.rigidity_defect);
            const bool case_ok = fine.rigidity_defect < 0.0 &&
                                 std::abs(fine.rigidity_defect) > 10.0 * uncertainty;
            ok = ok && case_ok;
            detail(case_ok, fmt("%s beta=%.2f: H = %.6f, doubling uncertainty %.3e",
                                tc.name.c_str(), beta, fine.rigidity_defect, uncertainty));
        }
    }
    criterion(5, ok, "rigidity defect: |H| < 1e-5 * 2piA on circles, H < 0 (10x resolved) off");
}

// 6. Isoperimetric defect signs.
void criterion_isoperimetric(const std::vector<TableCase>& matrix) {
    bool ok = true;
    for (const TableCase& tc : matrix) {
        const double defect =
            isoperimetric_defect(tc.surface.curvature_sign, tc.table.perimeter(), tc.table.area());
        const bool case_ok = tc.is_circle ? std::abs(defect) < 1e-8 : defect > 1e-6;
        ok = ok && case_ok;
        detail(case_ok, fmt("%s: defect = %.3e (%s)", tc.name.c_str(), defect,
                            tc.is_circle ? "circle, expect 0" : "expect > 0"));
    }
    criterion(6, ok, "isoperimetric defect: 0 within 1e-8 on circles, strictly positive off");
}

// 7. Symplecticity and twist at seeded random phase points.
void criterion_symplectic(const std::vector<TableCase>& matrix) {
    bool ok = true;
    std::mt19937 rng(987654321u);
    for (const TableCase& tc : matrix) {
        for (double beta : santalo_betas(tc)) {
            const BilliardSystem sys(tc.table, {tc.surface, beta});
            std::uniform_real_distribution<double> ux(0.0, tc.table.perimeter());
            std::uniform_real_distribution<double> uphi(0.02, kPi - 0.02);
            double worst_det = 0.0, min_twist = std::numeric_limits<double>::infinity();
            for (int i = 0; i < 100; ++i) {
                const PhasePoint p{ux(rng), uphi(rng)};
                worst_det =
                    std::max(worst_det, std::abs(symplectic_determinant(sys, p) - 1.0));
                min_twist = std::min(min_twist, twist_derivative(sys, p));
            }
            const bool case_ok = worst_det < 1e-5 && min_twist > 0.0;
            ok = ok && case_ok;
            detail(case_ok, fmt("%s beta=%.4f: max |det-1| = %.3e, min twist = %.3e",
                                tc.name.c_str(), beta, worst_det, min_twist));
        }
    }
    criterion(7, ok, "symplecticity |det - 1| < 1e-5 and twist > 0 at 100 seeded points/case");
}

// 8. The angle is an invariant on circular tables over 1000 iterations.
void criterion_integrability(const std::vector<TableCase>& matrix) {
    bool ok = true;
    for (const TableCase& tc : matrix) {
        if (!tc.is_circle) continue;
        std::vector<double> betas = {0.0, 0.3 * tc.table.k_min(), 0.7 * tc.table.k_min()};
        if (tc.surface.curvature_sign < 0) {
            betas.push_back(1.0);
            betas.push_back(1.5);
        }
        for (double beta : betas) {
            const BilliardSystem sys(tc.table, {tc.surface, beta});
            const double phi0 = 1.1;
            PhasePoint p{0.2, phi0};
            double worst = 0.0;
            for (int i = 0; i < 1000; ++i) {
                p = billiard_step(sys, p).next;
                worst = std::max(worst, std::abs(p.phi - phi0));
            }
            const bool case_ok = worst < 1e-6;
            ok = ok && case_ok;
            detail(case_ok, fmt("%s beta=%.4f: max |phi_n - phi_0| = %.3e", tc.name.c_str(),
                                beta, worst));
        }
    }
    criterion(8, ok, "circle integrability witness: |phi_n - phi_0| < 1e-6 over 1000 steps");
}

// 9. Closed-form flow against the RK4 oracle; generator identity.
void criterion_flow_oracle() {
    std::mt19937 rng(24680);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> ut(-3.0, 3.0);

    auto random_state = [&](Surface s) -> TangentVector {
        switch (s.curvature_sign) {
            case +1: {
                Vec3 p(u(rng), u(rng), u(rng));
                while (p.norm() < 1e-3) p = Vec3(u(rng), u(rng), u(rng));
                p.normalize();
                Vec3 v(u(rng), u(rng), u(rng));
                v -= p.dot(v) * p;
                v.normalize();
                return {{p}, v};
            }
            case -1: {
                const double x = u(rng), y = u(rng);
                const Vec3 p(x, y, std::sqrt(1.0 + x * x + y * y));
                const double a = kPi * u(rng);
                Vec3 v(std::cos(a), std::sin(a), 0.0);
                v += (p.x() * v.x() + p.y() * v.y() - p.z() * v.z()) * p;
                return {{p}, v / std::sqrt(v.x() * v.x() + v.y() * v.y() - v.z() * v.z())};
            }
            default: {
                const double a = kPi * u(rng);
                return {{Vec3(2 * u(rng), 2 * u(rng), 1.0)},
                        Vec3(std::cos(a), std::sin(a), 0.0)};
            }
        }
    };

    bool ok = true;
    for (Surface s : {Surface::plane(), Surface::sphere(), Surface::hyperbolic()}) {
        for (double beta : {0.0, 0.5, 1.0, 1.5}) {
            const MagneticContext ctx{s, beta};
            const double lambda = s.curvature_sign + beta * beta;
            double worst_flow = 0.0, worst_gen = 0.0;
            for (int i = 0; i < 100; ++i) {
                const TangentVector st = random_state(s);
                const Mat3 xi = make_generator(st, ctx).matrix;
                worst_gen =
                    std::max(worst_gen, (xi * xi * xi + lambda * xi).cwiseAbs().maxCoeff());
                const double t = ut(rng);
                const int steps = std::max(10, static_cast<int>(1000.0 * std::abs(t)));
                const TangentVector a = flow(st, ctx, t);
                const TangentVector b = flow_ode_oracle(st, ctx, t, steps);
                worst_flow = std::max(worst_flow,
                                      std::max((a.base.coords - b.base.coords).cwiseAbs().maxCoeff(),
                                               (a.dir - b.dir).cwiseAbs().maxCoeff()));
            }
            const bool case_ok = worst_flow < 1e-8 && worst_gen < 1e-10;
            ok = ok && case_ok;
            detail(case_ok, fmt("K=%+d beta=%.1f: flow vs RK4 %.3e, generator identity %.3e",
                                s.curvature_sign, beta, worst_flow, worst_gen));
        }
    }
    criterion(9, ok, "flow vs RK4 oracle < 1e-8 and generator identity < 1e-10, 100 states/case");
}

// 10. Gauss-Bonnet on every built table; horocycle verdict raised.
void criterion_gauss_bonnet(const std::vector<TableCase>& matrix) {
    bool ok = true;
    for (const TableCase& tc : matrix) {
        const double res = std::abs(tc.table.gauss_bonnet_residual());
        const bool case_ok = res < 1e-8;
        ok = ok && case_ok;
        detail(case_ok, fmt("%s: |K A + int k dx - 2 pi| = %.3e", tc.name.c_str(), res));
    }
    {
        PolarProfile prof;
        prof.center = PolarProfile::default_center(Surface::hyperbolic());
        prof.c0 = 1.5;
        prof.cos_coeffs = {0.0, 0.3};
        const Table shallow = build_table(Surface::hyperbolic(), prof, 1024);
        const BilliardSystem sys(shallow, {Surface::hyperbolic(), 0.5});
        const DefectReport r = rigidity_defect(sys, {64, 64});
        const bool case_ok = shallow.k_min() < 1.0 && shallow.k_min() > 0.5 &&
                             r.horocycle_violated &&
                             r.verdict.find("horocycle") != std::string::npos;
        ok = ok && case_ok;
        detail(case_ok, fmt("hyperbolic 1.5+0.3cos2t beta=0.5: k_min=%.4f, verdict: %s",
                            shallow.k_min(), r.verdict.c_str()));
    }
    criterion(10, ok, "Gauss-Bonnet residual < 1e-8 everywhere; horocycle verdict raised");
}

} // namespace

int main() {
    std::printf("magbil acceptance suite\n");
    const std::vector<TableCase> matrix = build_matrix();

    criterion_santalo(matrix);
    criterion_beta_independence();
    criterion_closed_forms();
    criterion_mirror();
    criterion_rigidity(matrix);
    criterion_isoperimetric(matrix);
    criterion_symplectic(matrix);
    criterion_integrability(matrix);
    criterion_flow_oracle();
    criterion_gauss_bonnet(matrix);

    std::printf("ACCEPTANCE: %d/10 criteria passed\n", 10 - g_criteria_failed);
    return g_criteria_failed == 0 ? 0 : 1;
}
