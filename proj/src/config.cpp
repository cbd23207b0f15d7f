#include "magbil/config.hpp"

#include <fstream>

#include <json.hpp>

namespace magbil {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw config_error("config: " + where + " must be a number");
    return j.get<double>();
}

std::vector<double> number_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw config_error("config: " + where + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(require_number(v, where + "[]"));
    return out;
}

Surface parse_surface(const json& j) {
    const std::string name = j.is_string() ? j.get<std::string>() : "";
    if (name == "plane") return Surface::plane();
    if (name == "sphere") return Surface::sphere();
    if (name == "hyperbolic") return Surface::hyperbolic();
    throw config_error("config: surface must be one of \"plane\", \"sphere\", \"hyperbolic\"");
}

TableSpec parse_table(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw config_error("config: table must be an object with a \"type\" field");
    TableSpec spec;
    const std::string type = j["type"].is_string() ? j["type"].get<std::string>() : "";
    if (type == "circle") {
        spec.kind = TableSpec::Kind::circle;
        if (!j.contains("rho")) throw config_error("config: table.rho is required for circles");
        spec.rho = require_number(j["rho"], "table.rho");
        if (!(spec.rho > 0.0)) throw config_error("config: table.rho must be > 0");
    } else if (type == "polar") {
        spec.kind = TableSpec::Kind::polar;
        if (!j.contains("c0")) throw config_error("config: table.c0 is required for polar tables");
        spec.c0 = require_number(j["c0"], "table.c0");
        if (j.contains("cos")) spec.cos_coeffs = number_list(j["cos"], "table.cos");
        if (j.contains("sin")) spec.sin_coeffs = number_list(j["sin"], "table.sin");
    } else {
        throw config_error("config: table.type must be \"circle\" or \"polar\"");
    }
    return spec;
}

} // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config: JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config: top level must be an object");

    RunConfig cfg;
    if (j.contains("schema")) {
        if (!j["schema"].is_number_integer() || j["schema"].get<int>() != 1)
            throw config_error("config: schema must be the integer 1");
    }
    if (!j.contains("surface")) throw config_error("config: surface is required");
    cfg.surface = parse_surface(j["surface"]);
    if (!j.contains("table")) throw config_error("config: table is required");
    cfg.table = parse_table(j["table"]);

    if (j.contains("beta")) {
        cfg.beta = require_number(j["beta"], "beta");
        if (cfg.beta < 0.0) throw config_error("config: beta must be >= 0");
    }
    if (j.contains("resolution")) {
        if (!j["resolution"].is_number_integer())
            throw config_error("config: resolution must be an integer");
        cfg.resolution = j["resolution"].get<int>();
        if (cfg.resolution < 256) throw config_error("config: resolution must be >= 256");
    }
    if (j.contains("quadrature")) {
        const auto& q = j["quadrature"];
        if (!q.is_object()) throw config_error("config: quadrature must be an object");
        if (q.contains("nx")) cfg.quad_nx = static_cast<int>(require_number(q["nx"], "quadrature.nx"));
        if (q.contains("nphi"))
            cfg.quad_nphi = static_cast<int>(require_number(q["nphi"], "quadrature.nphi"));
        if (cfg.quad_nx < 32 || cfg.quad_nphi < 32)
            throw config_error("config: quadrature nodes must be >= 32");
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (!t.is_object()) throw config_error("config: tolerances must be an object");
        auto pick = [&](const char* name, double& slot) {
            if (t.contains(name)) {
                slot = require_number(t[name], std::string("tolerances.") + name);
                if (!(slot > 0.0))
                    throw config_error(std::string("config: tolerances.") + name +
                                       " must be > 0");
            }
        };
        pick("santalo", cfg.tolerances.santalo);
        pick("mirror", cfg.tolerances.mirror);
        pick("beta_independence", cfg.tolerances.beta_independence);
        pick("defect", cfg.tolerances.defect);
        pick("symplectic", cfg.tolerances.symplectic);
        pick("gauss_bonnet", cfg.tolerances.gauss_bonnet);
        pick("isoperimetric", cfg.tolerances.isoperimetric);
    }
    if (j.contains("output")) {
        if (!j["output"].is_string()) throw config_error("config: output must be a string");
        cfg.output = j["output"].get<std::string>();
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

PolarProfile RunConfig::profile() const {
    PolarProfile prof;
    prof.center = PolarProfile::default_center(surface);
    if (table.kind == TableSpec::Kind::circle) {
        prof.c0 = table.rho;
    } else {
        prof.c0 = table.c0;
        prof.cos_coeffs = table.cos_coeffs;
        prof.sin_coeffs = table.sin_coeffs;
    }
    return prof;
}

Table RunConfig::build() const { return build_table(surface, profile(), resolution); }

} // namespace magbil
