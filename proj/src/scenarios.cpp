#include "phonon/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "phonon/dynamics.hpp"
#include "phonon/errors.hpp"
#include "phonon/gaussian.hpp"
#include "phonon/metrology.hpp"

namespace phonon {

namespace {
constexpr double pi = 3.14159265358979323846;

double parse_double(const std::string& value, const std::string& key) {
    try {
        size_t used = 0;
        const double d = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: cannot parse number '" + value + "' for key " + key);
    }
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// Eigenvalue of the rotating-wave covariance flow,
// lambda' = -gamma_- lambda + gamma_+, including the gamma_- = 0 limit.
double lambda_rwa(double lambda0, double gamma_minus, double gamma_plus, double t) {
    if (gamma_minus == 0.0) return lambda0 + gamma_plus * t;
    const double s = gamma_plus / gamma_minus;
    return std::exp(-gamma_minus * t) * (lambda0 - s) + s;
}

} // namespace

void ScenarioConfig::validate() const {
    if (!(density_cgs > 0.0) || !(length > 0.0) || !(aspect_ratio > 0.0) ||
        temperature < 0.0 || !(drive_time > 0.0) || !(reference_mass > 0.0) ||
        !(reference_time > 0.0))
        throw ConfigError("scenario config: physical fields must be positive");
    if (mode_index < 1) throw ConfigError("scenario config: mode_index must be >= 1");
    for (double r : squeezing_list)
        if (r < 0.0) throw ConfigError("scenario config: squeezing must be >= 0");
    if (species == Species::custom &&
        (!(custom_mass > 0.0) || !(custom_a_s > 0.0) || custom_d_cgs < 0.0))
        throw ConfigError("scenario config: custom species needs mass, a_s and d3");
}

CondensateSpec ScenarioConfig::condensate() const {
    validate();
    switch (species) {
        case Species::rb:
            return rubidium_spec(density_cgs, temperature, length, aspect_ratio);
        case Species::yb:
            return ytterbium_spec(density_cgs, temperature, length, aspect_ratio);
        case Species::custom: {
            CondensateSpec s;
            s.atom_mass = custom_mass;
            s.scattering_length = custom_a_s;
            s.density = density_cgs * 1e6;
            s.three_body_d_cgs = custom_d_cgs;
            s.temperature = temperature;
            s.length = length;
            s.aspect_ratio = aspect_ratio;
            s.validate();
            return s;
        }
    }
    throw ConfigError("scenario config: unknown species");
}

std::string ScenarioConfig::species_name() const {
    switch (species) {
        case Species::rb: return "rb";
        case Species::yb: return "yb";
        case Species::custom: return "custom";
    }
    return "?";
}

void apply_config_line(const std::string& raw, ScenarioConfig& config) {
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) return;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
        throw ConfigError("config: expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "species") {
        if (value == "rb") config.species = Species::rb;
        else if (value == "yb") config.species = Species::yb;
        else if (value == "custom") config.species = Species::custom;
        else throw ConfigError("config: species must be rb, yb or custom");
    } else if (key == "density") {
        config.density_cgs = parse_double(value, key);
    } else if (key == "temperature") {
        config.temperature = parse_double(value, key);
    } else if (key == "length") {
        config.length = parse_double(value, key);
    } else if (key == "aspect_ratio") {
        config.aspect_ratio = parse_double(value, key);
    } else if (key == "mode_index") {
        config.mode_index = static_cast<int>(parse_double(value, key));
    } else if (key == "squeezing_list") {
        config.squeezing_list.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ','))
            config.squeezing_list.push_back(parse_double(trim(item), key));
    } else if (key == "drive_time") {
        config.drive_time = parse_double(value, key);
    } else if (key == "reference_mass") {
        config.reference_mass = parse_double(value, key);
    } else if (key == "reference_time") {
        config.reference_time = parse_double(value, key);
    } else if (key == "output_path") {
        config.output_path = value;
    } else if (key == "mass") {
        config.custom_mass = parse_double(value, key);
    } else if (key == "a_s") {
        config.custom_a_s = parse_double(value, key);
    } else if (key == "d3") {
        config.custom_d_cgs = parse_double(value, key);
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

void load_config_file(const std::string& path, ScenarioConfig& config) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::string line;
    while (std::getline(in, line)) apply_config_line(line, config);
}

std::vector<RateRow> scenario_rates(const ScenarioConfig& config,
                                    const std::vector<double>& densities_cgs) {
    config.validate();
    std::vector<double> densities =
        densities_cgs.empty() ? std::vector<double>{config.density_cgs} : densities_cgs;
    std::vector<RateRow> rows;
    for (double rho : densities) {
        ScenarioConfig c = config;
        c.density_cgs = rho;
        const CondensateSpec spec = c.condensate();
        RateRow row;
        row.density_cgs = rho;
        row.species = config.species_name();
        row.gamma = three_body_gamma(spec.three_body_d_cgs, rho);
        row.inverse_gamma = row.gamma > 0.0 ? 1.0 / row.gamma
                                            : std::numeric_limits<double>::infinity();
        rows.push_back(row);
    }
    return rows;
}

std::vector<DampingRow> scenario_damping_curves(const ScenarioConfig& config, int n_max) {
    if (n_max < 1) throw ConfigError("scenario damping: nmax must be >= 1");
    const CondensateSpec spec = config.condensate();
    const double g3b = three_body_gamma(spec.three_body_d_cgs, spec.density_cgs());
    std::vector<DampingRow> rows;
    rows.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        DampingRow row;
        row.n = n;
        row.gamma_3b = g3b;
        try {
            const ModeSpec mode = mode_spec(n, spec);
            row.gamma_landau =
                spec.temperature > 0.0 ? landau_rate_full(mode.wavenumber, spec) : 0.0;
            row.gamma_beliaev = beliaev_rate(mode.wavenumber, spec);
            const double nbar = spec.temperature > 0.0
                                    ? thermal_occupation(mode.frequency, spec.temperature)
                                    : 0.0;
            const DampingBudget budget = combined_rates(
                g3b, mode.alpha, mode.beta, row.gamma_landau, row.gamma_beliaev, nbar);
            row.gamma_minus = budget.combined.gamma_minus;
            row.gamma_plus = budget.combined.gamma_plus;
        } catch (const NumericalError& err) {
            row.error = err.what();
            row.gamma_minus = row.gamma_plus = row.gamma_landau = row.gamma_beliaev =
                std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(row);
    }
    return rows;
}

GravityResult scenario_gravity(const ScenarioConfig& config) {
    const CondensateSpec spec = config.condensate();
    const double g3b = three_body_gamma(spec.three_body_d_cgs, spec.density_cgs());
    const ModeSpec mode = mode_spec(config.mode_index, spec);
    const double g_landau =
        spec.temperature > 0.0 ? landau_rate_full(mode.wavenumber, spec) : 0.0;
    const double g_beliaev = beliaev_rate(mode.wavenumber, spec);
    const double nbar = spec.temperature > 0.0
                            ? thermal_occupation(mode.frequency, spec.temperature)
                            : 0.0;
    const DampingBudget budget =
        combined_rates(g3b, mode.alpha, mode.beta, g_landau, g_beliaev, nbar);
    const double gamma_plus = budget.combined.gamma_plus;

    GravityResult out;
    out.squeezing = config.squeezing_list;
    out.gamma_plus_mode = gamma_plus;
    const double t = config.drive_time;
    for (double r : config.squeezing_list) {
        // Unit displacement from the reference mass after the reference time
        // fixes the coupling; displacement grows linearly with mass and time.
        const double ideal =
            config.reference_mass * (config.reference_time / t) * std::exp(-r);
        const double degradation = std::sqrt(1.0 + std::exp(2.0 * r) * gamma_plus * t);
        out.detectable_mass_ideal.push_back(ideal);
        out.detectable_mass_decohered.push_back(ideal * degradation);
        out.enhancement_factor.push_back(std::exp(r) / degradation);
    }
    return out;
}

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.5e", value);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    for (size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows)
        for (size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
}

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

namespace {

void emit(const ScenarioConfig& config, const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows) {
    if (config.output_path.empty()) {
        write_csv(std::cout, header, rows);
        return;
    }
    std::ofstream out(config.output_path);
    if (!out) throw ConfigError("cannot open output path " + config.output_path);
    write_csv(out, header, rows);
}

struct QfiOptions {
    std::string scheme = "rotation";
    double r = 1.0;
    double theta = 0.0;
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    double t = 0.0;
    double mu = 1.0;
    double phi = pi / 4.0;
    double t_max = 0.0;
    int t_samples = 0;
};

SchemeResult qfi_at(const QfiOptions& opt, double t) {
    const double lm = lambda_rwa(std::exp(-2.0 * opt.r), opt.gamma_minus, opt.gamma_plus, t);
    const double lp = lambda_rwa(std::exp(2.0 * opt.r), opt.gamma_minus, opt.gamma_plus, t);
    if (opt.scheme == "rotation") return qfi_rotation(lm, lp);
    if (opt.scheme == "displacement-amplitude")
        return qfi_displacement(lm, opt.mu, DisplacementMode::amplitude);
    if (opt.scheme == "displacement-phase")
        return qfi_displacement(lm, opt.mu, DisplacementMode::phase);
    if (opt.scheme == "squeezing") return qfi_squeezing(lm, lp, opt.phi);
    if (opt.scheme == "continuous-squeezing")
        return qfi_continuous_squeezing(lm, lp, opt.phi, t);
    throw ConfigError("qfi: unknown scheme " + opt.scheme);
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"phonon-metrology: three-body-loss decoherence budgets and "
                 "quantum-enhanced sensing bounds for BEC phonon modes"};
    app.require_subcommand(1);

    ScenarioConfig config;
    std::string config_path;
    std::string out_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "flat key=value config file");
        cmd->add_option("--out", out_path, "output CSV path (default: stdout)");
    };

    // rates
    auto* rates_cmd = app.add_subcommand(
        "rates", "three-body rate table; CSV columns: density,species,gamma,inverse_gamma");
    std::string species_flag = "rb";
    std::vector<double> density_flags;
    double mass_flag = 0.0, as_flag = 0.0, d3_flag = 0.0;
    rates_cmd->add_option("--species", species_flag, "rb|yb|custom");
    rates_cmd->add_option("--density", density_flags, "density in cm^-3 (repeatable)");
    rates_cmd->add_option("--mass", mass_flag, "custom species mass in kg");
    rates_cmd->add_option("--as", as_flag, "custom species scattering length in m");
    rates_cmd->add_option("--d3", d3_flag, "custom species three-body D in cm^6/s");
    add_common(rates_cmd);

    // evolve
    auto* evolve_cmd = app.add_subcommand(
        "evolve", "squeezed-state decay under the rotating-wave channel; CSV columns: "
                  "time,lambda_minus,lambda_plus,purity,x_variance");
    double ev_r = 1.0, ev_theta = 0.0, ev_gp = 0.2, ev_gm = 0.2, ev_t = 1.0;
    int ev_steps = 20;
    evolve_cmd->add_option("--r", ev_r, "initial squeezing");
    evolve_cmd->add_option("--theta", ev_theta, "squeezing angle");
    evolve_cmd->add_option("--gamma-plus", ev_gp, "noise rate (1/s)");
    evolve_cmd->add_option("--gamma-minus", ev_gm, "decay rate (1/s), must be > 0");
    evolve_cmd->add_option("--t", ev_t, "final time (s)");
    evolve_cmd->add_option("--steps", ev_steps, "number of output samples");
    add_common(evolve_cmd);

    // qfi
    auto* qfi_cmd = app.add_subcommand(
        "qfi", "scheme QFI and Cramer-Rao bound; with --t-samples emits CSV columns: "
               "time,qfi,delta_theta");
    QfiOptions qfi_opt;
    qfi_cmd->add_option("--scheme", qfi_opt.scheme,
                        "rotation|displacement-amplitude|displacement-phase|squeezing|"
                        "continuous-squeezing");
    qfi_cmd->add_option("--r", qfi_opt.r, "initial squeezing");
    qfi_cmd->add_option("--gamma-plus", qfi_opt.gamma_plus, "noise rate (1/s)");
    qfi_cmd->add_option("--gamma-minus", qfi_opt.gamma_minus, "decay rate (1/s)");
    qfi_cmd->add_option("--t", qfi_opt.t, "evolution time (s)");
    qfi_cmd->add_option("--mu", qfi_opt.mu, "displacement amplitude (phase scheme)");
    qfi_cmd->add_option("--phi", qfi_opt.phi, "signal squeezing angle");
    qfi_cmd->add_option("--t-max", qfi_opt.t_max, "sweep end time for the delta(t) curve");
    qfi_cmd->add_option("--t-samples", qfi_opt.t_samples, "sweep sample count");
    add_common(qfi_cmd);

    // scenario gravity / damping
    auto* scenario_cmd = app.add_subcommand("scenario", "benchmark scenarios");
    scenario_cmd->require_subcommand(1);
    auto* gravity_cmd = scenario_cmd->add_subcommand(
        "gravity", "oscillating-source detectable mass vs squeezing; CSV columns: "
                   "r,ideal_mass_kg,decohered_mass_kg,enhancement,gamma_plus");
    std::string g_species = "yb";
    double g_density = 1e13, g_length = 300e-6, g_aspect = 1.0, g_time = 10.0;
    int g_mode = 10;
    std::string g_rlist;
    gravity_cmd->add_option("--species", g_species, "rb|yb|custom");
    gravity_cmd->add_option("--density", g_density, "density in cm^-3");
    gravity_cmd->add_option("--length", g_length, "BEC length in m");
    gravity_cmd->add_option("--aspect", g_aspect, "aspect ratio");
    gravity_cmd->add_option("--mode", g_mode, "harmonic index of the driven mode");
    gravity_cmd->add_option("--t", g_time, "drive time (s)");
    gravity_cmd->add_option("--r-list", g_rlist, "comma-separated squeezing values");
    add_common(gravity_cmd);

    auto* damping_cmd = scenario_cmd->add_subcommand(
        "damping", "per-harmonic damping constants; CSV columns: "
                   "n,gamma_minus,gamma_plus,gamma_3b,gamma_landau,gamma_beliaev");
    int d_nmax = 30;
    std::string d_species = "rb";
    double d_density = 1e13, d_temperature = 200e-12, d_length = 200e-6;
    damping_cmd->add_option("--nmax", d_nmax, "largest harmonic index");
    damping_cmd->add_option("--species", d_species, "rb|yb|custom");
    damping_cmd->add_option("--density", d_density, "density in cm^-3");
    damping_cmd->add_option("--temperature", d_temperature, "temperature in K");
    damping_cmd->add_option("--length", d_length, "BEC length in m");
    add_common(damping_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto species_from = [](const std::string& name) {
        if (name == "rb") return Species::rb;
        if (name == "yb") return Species::yb;
        if (name == "custom") return Species::custom;
        throw ConfigError("unknown species " + name);
    };

    if (!config_path.empty()) load_config_file(config_path, config);
    if (!out_path.empty()) config.output_path = out_path;

    if (rates_cmd->parsed()) {
        config.species = species_from(species_flag);
        if (config.species == Species::custom) {
            config.custom_mass = mass_flag;
            config.custom_a_s = as_flag;
            config.custom_d_cgs = d3_flag;
        }
        if (!density_flags.empty()) config.density_cgs = density_flags.front();
        const std::vector<RateRow> rows = scenario_rates(config, density_flags);
        std::vector<std::vector<std::string>> cells;
        for (const RateRow& row : rows)
            cells.push_back({format_number(row.density_cgs), row.species,
                             format_number(row.gamma), format_number(row.inverse_gamma)});
        emit(config, {"density", "species", "gamma", "inverse_gamma"}, cells);
        return 0;
    }

    if (evolve_cmd->parsed()) {
        if (ev_steps < 1) throw ConfigError("evolve: --steps must be >= 1");
        const RateMatrices rates =
            RateMatrices::from_channels({ChannelRates::from_uv(0.5 * (ev_gp + ev_gm),
                                                               0.5 * (ev_gp - ev_gm))});
        const GaussianState initial =
            apply_unitary(vacuum_state(1), squeeze_matrix(ev_r, ev_theta));
        std::vector<std::vector<std::string>> cells;
        for (int i = 0; i <= ev_steps; ++i) {
            const double ti = ev_t * i / ev_steps;
            const GaussianState st = evolve_rwa(initial, rates, ti);
            const auto [lm, lp] = eigen_spectrum(st, 0);
            cells.push_back({format_number(ti), format_number(lm), format_number(lp),
                             format_number(purity(st)),
                             format_number(quadrature_variance(st, 0))});
        }
        emit(config, {"time", "lambda_minus", "lambda_plus", "purity", "x_variance"},
             cells);
        return 0;
    }

    if (qfi_cmd->parsed()) {
        if (qfi_opt.t_samples > 0) {
            if (!(qfi_opt.t_max > 0.0))
                throw ConfigError("qfi: sweep needs --t-max > 0");
            std::vector<std::vector<std::string>> cells;
            for (int i = 1; i <= qfi_opt.t_samples; ++i) {
                const double ti = qfi_opt.t_max * i / qfi_opt.t_samples;
                const SchemeResult res = qfi_at(qfi_opt, ti);
                cells.push_back({format_number(ti), format_number(res.qfi),
                                 format_number(res.delta_theta)});
            }
            emit(config, {"time", "qfi", "delta_theta"}, cells);
        } else {
            const SchemeResult res = qfi_at(qfi_opt, qfi_opt.t);
            std::ostream* out = &std::cout;
            std::ofstream file;
            if (!config.output_path.empty()) {
                file.open(config.output_path);
                if (!file) throw ConfigError("cannot open " + config.output_path);
                out = &file;
            }
            *out << "scheme = " << qfi_opt.scheme << "\n"
                 << "F = " << format_number(res.qfi) << "\n"
                 << "delta_theta = " << format_number(res.delta_theta) << "\n";
        }
        return 0;
    }

    if (gravity_cmd->parsed()) {
        config.species = species_from(g_species);
        config.density_cgs = g_density;
        config.length = g_length;
        config.aspect_ratio = g_aspect;
        config.mode_index = g_mode;
        config.drive_time = g_time;
        if (!g_rlist.empty()) {
            config.squeezing_list.clear();
            std::stringstream ss(g_rlist);
            std::string item;
            while (std::getline(ss, item, ','))
                config.squeezing_list.push_back(parse_double(trim(item), "r-list"));
        }
        const GravityResult res = scenario_gravity(config);
        std::vector<std::vector<std::string>> cells;
        for (size_t i = 0; i < res.squeezing.size(); ++i)
            cells.push_back({format_number(res.squeezing[i]),
                             format_number(res.detectable_mass_ideal[i]),
                             format_number(res.detectable_mass_decohered[i]),
                             format_number(res.enhancement_factor[i]),
                             format_number(res.gamma_plus_mode)});
        emit(config, {"r", "ideal_mass_kg", "decohered_mass_kg", "enhancement",
                      "gamma_plus"}, cells);
        return 0;
    }

    if (damping_cmd->parsed()) {
        config.species = species_from(d_species);
        config.density_cgs = d_density;
        config.temperature = d_temperature;
        config.length = d_length;
        const std::vector<DampingRow> rows = scenario_damping_curves(config, d_nmax);
        std::vector<std::vector<std::string>> cells;
        for (const DampingRow& row : rows)
            cells.push_back({std::to_string(row.n), format_number(row.gamma_minus),
                             format_number(row.gamma_plus), format_number(row.gamma_3b),
                             format_number(row.gamma_landau),
                             format_number(row.gamma_beliaev)});
        emit(config, {"n", "gamma_minus", "gamma_plus", "gamma_3b", "gamma_landau",
                      "gamma_beliaev"}, cells);
        return 0;
    }

    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    try {
        return run_cli(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace phonon
