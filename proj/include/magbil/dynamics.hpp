#pragma once

#include <string>
#include <vector>

#include "magbil/table.hpp"

namespace magbil {

/// Table + field. Construction enforces the geometric assumption
/// beta < min k, which keeps the billiard map well defined.
class BilliardSystem {
public:
    BilliardSystem(Table table, MagneticContext ctx);

    const Table& table() const { return table_; }
    const MagneticContext& context() const { return ctx_; }
    double beta() const { return ctx_.beta; }

private:
    Table table_;
    MagneticContext ctx_;
};

/// One application of the billiard map: the magnetic geodesic chord from one
/// boundary collision to the next.
struct ChordResult {
    PhasePoint next;
    double length = 0.0;       ///< arclength of the magnetic geodesic segment
    TangentVector exit_state;  ///< launch state leaving the boundary at x
    TangentVector entry_state; ///< arrival state at x', before reflection
};

/// Launches from (x, phi), finds the first boundary return by bracketing the
/// sign change of inside_value along the closed-form flow and bisecting to
/// |t| tolerance 1e-12, then reflects elastically.
ChordResult billiard_step(const BilliardSystem& sys, PhasePoint p);

struct OrbitSample {
    PhasePoint point;
    double chord_length = 0.0;
};

/// n successive applications of billiard_step. Chord failures are rethrown
/// with the failing step index attached.
std::vector<OrbitSample> orbit(const BilliardSystem& sys, PhasePoint p0, long n);

/// Central finite differences of (x', phi') with respect to (x, phi);
/// x' differences are unwrapped modulo the perimeter.
Eigen::Matrix2d map_jacobian(const BilliardSystem& sys, PhasePoint p, double h = 1e-5);

/// Determinant of the map differential in (x, cos phi) coordinates; the
/// invariant form dx ^ d(cos phi) makes this 1 for the exact map.
double symplectic_determinant(const BilliardSystem& sys, PhasePoint p, double h = 1e-5);

/// d x' / d phi; positive for a twist map.
double twist_derivative(const BilliardSystem& sys, PhasePoint p, double h = 1e-5);

struct PortraitPoint {
    std::size_t seed = 0;
    double x = 0.0;
    double cos_phi = 0.0;
};

struct PhasePortrait {
    std::vector<PortraitPoint> points;
    /// (seed index, message) for seeds whose orbit failed; other seeds are
    /// unaffected.
    std::vector<std::pair<std::size_t, std::string>> errors;
};

PhasePortrait phase_portrait(const BilliardSystem& sys, const std::vector<PhasePoint>& grid,
                             long iterations);

} // namespace magbil
