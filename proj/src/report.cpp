#include "magbil/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace magbil {

using nlohmann::json;

json to_json(const VerificationReport& r) {
    return json{{"check", r.check},       {"inputs", r.inputs},
                {"computed", r.computed}, {"reference", r.reference},
                {"residual", r.residual}, {"tolerance", r.tolerance},
                {"verdict", r.verdict},   {"note", r.note},
                {"wall_time_s", r.wall_time_s}};
}

VerificationReport report_from_json(const json& j) {
    VerificationReport r;
    r.check = j.at("check").get<std::string>();
    r.inputs = j.at("inputs");
    r.computed = j.at("computed");
    r.reference = j.at("reference");
    r.residual = j.at("residual").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.verdict = j.at("verdict").get<std::string>();
    r.note = j.at("note").get<std::string>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    return r;
}

void write_reports(const std::string& path, const std::vector<VerificationReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report file " + path);
    out << arr.dump(2) << "\n";
}

std::vector<VerificationReport> read_reports(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read report file " + path);
    json arr = json::parse(in);
    std::vector<VerificationReport> out;
    for (const auto& j : arr) out.push_back(report_from_json(j));
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_orbit_csv(std::ostream& out, const std::vector<OrbitSample>& samples) {
    out << "step,x,phi,cos_phi,l\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        out << (i + 1) << ',' << format_double(s.point.x) << ',' << format_double(s.point.phi)
            << ',' << format_double(std::cos(s.point.phi)) << ','
            << format_double(s.chord_length) << '\n';
    }
}

void write_portrait_csv(std::ostream& out, const PhasePortrait& portrait) {
    out << "seed_id,x,cos_phi\n";
    for (const auto& p : portrait.points)
        out << p.seed << ',' << format_double(p.x) << ',' << format_double(p.cos_phi) << '\n';
}

void write_portrait_svg(std::ostream& out, const PhasePortrait& portrait, double perimeter) {
    static const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3",
                                     "#937860", "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd"};
    constexpr int kWidth = 800, kHeight = 400;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\">\n";
    out << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\" stroke=\"#333333\"/>\n";

    std::size_t begin = 0;
    while (begin < portrait.points.size()) {
        std::size_t end = begin;
        const std::size_t seed = portrait.points[begin].seed;
        while (end < portrait.points.size() && portrait.points[end].seed == seed) ++end;
        out << "  <g fill=\"" << kPalette[seed % 10] << "\">\n";
        for (std::size_t i = begin; i < end; ++i) {
            const double px = portrait.points[i].x / perimeter * kWidth;
            const double py = (1.0 - portrait.points[i].cos_phi) * 0.5 * kHeight;
            char buf[96];
            std::snprintf(buf, sizeof(buf), "    <circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.5\"/>\n",
                          px, py);
            out << buf;
        }
        out << "  </g>\n";
        begin = end;
    }
    out << "</svg>\n";
}

} // namespace magbil
