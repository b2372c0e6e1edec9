#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "phonon/condensate.hpp"
#include "phonon/rates.hpp"

namespace phonon {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Species { rb, yb, custom };

/// Inputs of the benchmark scenarios. Densities are carried in the
/// experimental literature's cm^-3 convention.
struct ScenarioConfig {
    Species species = Species::rb;
    double custom_mass = 0.0;      // kg
    double custom_a_s = 0.0;       // m
    double custom_d_cgs = 0.0;     // cm^6/s
    double density_cgs = 1e14;     // cm^-3
    double temperature = 0.0;      // K
    double length = 200e-6;        // m
    double aspect_ratio = 1.0 / 3.0;
    int mode_index = 1;
    std::vector<double> squeezing_list{1.0, 2.0, 5.0};
    double drive_time = 10.0;      // s
    double reference_mass = 0.2;   // kg
    double reference_time = 10.0;  // s
    std::string output_path;

    void validate() const;
    CondensateSpec condensate() const;
    std::string species_name() const;
};

/// Parses flat key=value lines ('#' starts a comment) into `config`.
void load_config_file(const std::string& path, ScenarioConfig& config);
void apply_config_line(const std::string& line, ScenarioConfig& config);

struct RateRow {
    double density_cgs = 0.0;
    std::string species;
    double gamma = 0.0;          // s^-1
    double inverse_gamma = 0.0;  // s
};

/// Three-body rate table; uses the config density when `densities_cgs` is
/// empty.
std::vector<RateRow> scenario_rates(const ScenarioConfig& config,
                                    const std::vector<double>& densities_cgs = {});

struct DampingRow {
    int n = 0;
    double gamma_minus = 0.0;
    double gamma_plus = 0.0;
    double gamma_3b = 0.0;
    double gamma_landau = 0.0;
    double gamma_beliaev = 0.0;
    std::string error;  // non-empty when a quadrature failed; values are NaN
};

/// Per-harmonic channel decomposition (combined three-body + Landau +
/// Beliaev rates) for n = 1..n_max on the configured condensate.
std::vector<DampingRow> scenario_damping_curves(const ScenarioConfig& config, int n_max);

struct GravityResult {
    std::vector<double> squeezing;                 // r values
    std::vector<double> detectable_mass_ideal;     // kg
    std::vector<double> detectable_mass_decohered; // kg
    std::vector<double> enhancement_factor;
    double gamma_plus_mode = 0.0;  // s^-1
};

/// Gravity-sensing example: the coupling is calibrated so the reference
/// mass produces unit displacement after the reference time; the minimum
/// detectable mass then scales as e^{-r}, degraded by
/// sqrt(1 + e^{2r} gamma_+ t) under decoherence.
GravityResult scenario_gravity(const ScenarioConfig& config);

/// CSV with one header row, comma separators, floats in scientific
/// notation with six significant digits.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
std::string format_number(double value);

/// Parses a CSV emitted by write_csv back into cells.
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

/// Entry point behind the phonon-metrology binary. Returns 0 on success,
/// 2 on configuration/usage errors, 3 on numerical errors.
int cli_main(int argc, const char* const* argv);

} // namespace phonon
