#include "phonon/condensate.hpp"

#include <cmath>
#include <tuple>

#include "phonon/constants.hpp"
#include "phonon/errors.hpp"

namespace phonon {

namespace {
constexpr double pi = 3.14159265358979323846;
}

double CondensateSpec::three_body_d_si() const {
    return three_body_d_cgs * constants::cm6_to_m6;
}

double CondensateSpec::density_cgs() const {
    return density / constants::per_cm3_to_per_m3;
}

void CondensateSpec::validate() const {
    if (!(atom_mass > 0.0) || !(scattering_length > 0.0) || !(density > 0.0) ||
        !(length > 0.0) || !(aspect_ratio > 0.0))
        throw InvalidArgument("CondensateSpec: physical fields must be strictly positive");
    if (three_body_d_cgs < 0.0 || temperature < 0.0)
        throw InvalidArgument("CondensateSpec: D and temperature must be non-negative");
}

CondensateSpec rubidium_spec(double density_cgs, double temperature, double length,
                             double aspect_ratio) {
    CondensateSpec s;
    s.atom_mass = 1.44316e-25;
    s.scattering_length = 98.0 * constants::bohr_radius;
    s.density = density_cgs * constants::per_cm3_to_per_m3;
    s.three_body_d_cgs = 5.8e-30;
    s.temperature = temperature;
    s.length = length;
    s.aspect_ratio = aspect_ratio;
    s.validate();
    return s;
}

CondensateSpec ytterbium_spec(double density_cgs, double temperature, double length,
                              double aspect_ratio) {
    CondensateSpec s;
    s.atom_mass = 2.78839e-25;
    s.scattering_length = 250.0 * constants::bohr_radius;
    s.density = density_cgs * constants::per_cm3_to_per_m3;
    s.three_body_d_cgs = 4e-30;
    s.temperature = temperature;
    s.length = length;
    s.aspect_ratio = aspect_ratio;
    s.validate();
    return s;
}

double healing_length(const CondensateSpec& spec) {
    spec.validate();
    return 1.0 / std::sqrt(8.0 * pi * spec.scattering_length * spec.density);
}

double sound_speed(const CondensateSpec& spec) {
    return constants::hbar / (std::sqrt(2.0) * spec.atom_mass * healing_length(spec));
}

double dispersion(double k, const CondensateSpec& spec) {
    if (k < 0.0) throw InvalidArgument("dispersion: k must be >= 0");
    const double xi = healing_length(spec);
    return sound_speed(spec) * k * std::sqrt(1.0 + 0.5 * xi * xi * k * k);
}

std::pair<double, double> bogoliubov_coefficients(double k, const CondensateSpec& spec) {
    if (!(k > 0.0))
        throw InvalidArgument("bogoliubov_coefficients: k must be > 0 (sigma diverges at k = 0)");
    const double xi = healing_length(spec);
    const double sigma = std::pow(1.0 + 2.0 / (xi * xi * k * k), 0.25);
    return {0.5 * (1.0 / sigma + sigma), 0.5 * (1.0 / sigma - sigma)};
}

ModeSpec mode_spec(int n, const CondensateSpec& spec) {
    if (n < 1) throw InvalidArgument("mode_spec: harmonic index must be >= 1");
    ModeSpec m;
    m.wavenumber = n * pi / spec.length;
    m.frequency = dispersion(m.wavenumber, spec);
    std::tie(m.alpha, m.beta) = bogoliubov_coefficients(m.wavenumber, spec);
    return m;
}

double condensate_density_decay(double rho0, double d_si, double t) {
    if (!(rho0 > 0.0) || d_si < 0.0 || t < 0.0)
        throw InvalidArgument("condensate_density_decay: rho0 > 0, D >= 0, t >= 0 required");
    return rho0 / std::sqrt(1.0 + 2.0 * d_si * rho0 * rho0 * t);
}

} // namespace phonon
