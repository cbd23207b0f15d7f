#pragma once

#include <string>
#include <vector>

#include "magbil/dynamics.hpp"

namespace magbil {

/// Configuration file problem; message names the offending field.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TableSpec {
    enum class Kind { circle, polar };
    Kind kind = Kind::circle;
    double rho = 1.0;                // circle
    double c0 = 1.0;                 // polar
    std::vector<double> cos_coeffs;  // polar
    std::vector<double> sin_coeffs;  // polar
};

struct Tolerances {
    double santalo = 1e-5;
    double mirror = 1e-8;
    double beta_independence = 1e-8;
    double defect = 1e-5;
    double symplectic = 1e-5;
    double gauss_bonnet = 1e-8;
    double isoperimetric = 1e-8;
};

/// Parsed run configuration (JSON, schema version 1).
struct RunConfig {
    int schema = 1;
    Surface surface = Surface::plane();
    TableSpec table;
    double beta = 0.0;
    int resolution = 2048;
    int quad_nx = 256;
    int quad_nphi = 256;
    Tolerances tolerances;
    std::string output = ".";

    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_file(const std::string& path);

    PolarProfile profile() const;
    Table build() const;
    MagneticContext context() const { return {surface, beta}; }
};

} // namespace magbil
