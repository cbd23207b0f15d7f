#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "magbil/dynamics.hpp"

namespace magbil {

/// Outcome of one named verification check.
struct VerificationReport {
    std::string check;
    nlohmann::json inputs;
    nlohmann::json computed;
    nlohmann::json reference;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string verdict; // "pass" | "fail" | "skip"
    std::string note;
    double wall_time_s = 0.0;

    bool passed() const { return verdict == "pass"; }
    bool failed() const { return verdict == "fail"; }
};

nlohmann::json to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::json& j);

void write_reports(const std::string& path, const std::vector<VerificationReport>& reports);
std::vector<VerificationReport> read_reports(const std::string& path);

/// 17-significant-digit decimal rendering; doubles survive a round trip.
std::string format_double(double v);

/// CSV rows of an orbit: step,x,phi,cos_phi,l with '\n' line endings.
void write_orbit_csv(std::ostream& out, const std::vector<OrbitSample>& samples);

/// CSV rows of a portrait: seed_id,x,cos_phi.
void write_portrait_csv(std::ostream& out, const PhasePortrait& portrait);

/// Fixed 800x400 scatter of (x, cos phi), one point group per seed.
void write_portrait_svg(std::ostream& out, const PhasePortrait& portrait, double perimeter);

} // namespace magbil
