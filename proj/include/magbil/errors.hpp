#pragma once

#include <stdexcept>
#include <string>

namespace magbil {

/// A point/velocity pair violates its model constraints (off-surface,
/// non-tangent, non-unit).
struct invalid_state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A point falls outside the geodesic polar chart of a frame
/// (antipodal on the sphere, r >= pi, ...).
struct out_of_chart_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A boundary profile has non-positive geodesic curvature somewhere.
struct convexity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A built table fails its consistency checks at the requested resolution.
struct resolution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The first-return search along a magnetic geodesic failed to bracket or
/// refine the boundary crossing. Never silently recovered from.
struct chord_search_error : std::runtime_error {
    explicit chord_search_error(const std::string& what, long orbit_index = -1)
        : std::runtime_error(what), orbit_index(orbit_index) {}

    /// Index of the failing step when raised from an orbit computation.
    long orbit_index = -1;
};

} // namespace magbil
