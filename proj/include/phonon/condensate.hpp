#pragma once

#include <utility>

namespace phonon {

/// Physical description of a homogeneous condensate. All lengths/masses in
/// SI; the three-body constant is carried in the experimental literature's
/// cm^6/s convention and converted at use sites.
struct CondensateSpec {
    double atom_mass = 0.0;          // kg
    double scattering_length = 0.0;  // m
    double density = 0.0;            // m^-3
    double three_body_d_cgs = 0.0;   // cm^6 s^-1
    double temperature = 0.0;        // K
    double length = 0.0;             // m, elongated box size L
    double aspect_ratio = 1.0;

    double three_body_d_si() const;  // m^6 s^-1
    double density_cgs() const;      // cm^-3
    void validate() const;
};

/// One standing-wave mode labeled by harmonic index n, k = n pi / L.
struct ModeSpec {
    double wavenumber = 0.0;  // m^-1
    double frequency = 0.0;   // rad s^-1
    double alpha = 0.0;
    double beta = 0.0;
};

/// Rb-87: m = 1.44316e-25 kg, a_s = 98 a0, D = 5.8e-30 cm^6/s.
CondensateSpec rubidium_spec(double density_cgs, double temperature = 0.0,
                             double length = 200e-6, double aspect_ratio = 1.0 / 3.0);

/// Yb-168: m = 2.78839e-25 kg, a_s = 250 a0, D = 4e-30 cm^6/s.
CondensateSpec ytterbium_spec(double density_cgs, double temperature = 0.0,
                              double length = 300e-6, double aspect_ratio = 1.0);

/// xi = 1 / sqrt(8 pi a_s rho).
double healing_length(const CondensateSpec& spec);

/// c_s = hbar / (sqrt(2) m xi).
double sound_speed(const CondensateSpec& spec);

/// Bogoliubov dispersion omega_k = c_s |k| sqrt(1 + xi^2 k^2 / 2).
double dispersion(double k, const CondensateSpec& spec);

/// (alpha_k, beta_k) with sigma = (1 + 2/(xi^2 k^2))^{1/4},
/// alpha = (1/sigma + sigma)/2, beta = (1/sigma - sigma)/2.
std::pair<double, double> bogoliubov_coefficients(double k, const CondensateSpec& spec);

/// Standing-wave mode n with k = n pi / L.
ModeSpec mode_spec(int n, const CondensateSpec& spec);

/// Closed-form solution of d rho/dt = -D rho^3:
/// rho(t) = rho0 / sqrt(1 + 2 D rho0^2 t). SI units.
double condensate_density_decay(double rho0, double d_si, double t);

} // namespace phonon
