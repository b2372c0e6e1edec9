#pragma once

#include "phonon/condensate.hpp"

namespace phonon {

/// Cooling/heating Lindblad rates of one mode and their combinations
/// gamma_minus = gamma_u - gamma_v (decay), gamma_plus = gamma_u + gamma_v
/// (noise).
struct ChannelRates {
    double gamma_u = 0.0;      // s^-1, jump b
    double gamma_v = 0.0;      // s^-1, jump b^dag
    double gamma_minus = 0.0;  // s^-1
    double gamma_plus = 0.0;   // s^-1

    static ChannelRates from_uv(double gamma_u, double gamma_v);
    void validate() const;
};

/// Per-channel contributions at one mode plus the combined rates.
struct DampingBudget {
    double gamma_3b = 0.0;       // s^-1
    double gamma_landau = 0.0;   // s^-1
    double gamma_beliaev = 0.0;  // s^-1
    double thermal_occupation = 0.0;
    ChannelRates combined;
};

/// gamma = 3 D rho^2 with D in cm^6/s and rho in cm^-3.
double three_body_gamma(double d_cgs, double rho_cgs);

/// gamma_u = alpha^2 gamma, gamma_v = beta^2 gamma. Requires the Bogoliubov
/// normalization alpha^2 - beta^2 = 1 within 1e-8.
ChannelRates loss_channel_rates(double gamma, double alpha, double beta);

/// Low-temperature Landau asymptote
/// gamma = (3 pi^3 / 40) k (kB T)^4 / (rho hbar^3 m c0^4).
/// Valid for kB T << m c0^2; returns 0 at T = 0.
double landau_rate_lowT(double k, const CondensateSpec& spec);

/// Full finite-temperature Landau damping constant,
/// gamma = (2 sqrt(pi) hbar k a_s^2 rho / m) * F_La, with F_La evaluated by
/// adaptive quadrature to quad_tol relative accuracy.
double landau_rate_full(double k, const CondensateSpec& spec, double quad_tol = 1e-8);

/// Beliaev damping constant
/// gamma = gamma0 [1 + 60 Int_0^1 x^2 (x-1)^2 / (e^{a x} - 1) dx],
/// gamma0 = 3 hbar k^5 / (640 pi m rho), a = hbar omega_k / (kB T).
double beliaev_rate(double k, const CondensateSpec& spec, double quad_tol = 1e-8);

/// Bose-Einstein occupation 1/(e^{hbar omega / kB T} - 1); 0 at T = 0.
double thermal_occupation(double omega, double temperature);

/// Thermal-bath combination:
/// gamma_u = alpha^2 g3b + (nbar+1)(gL+gB), gamma_v = beta^2 g3b + nbar(gL+gB).
DampingBudget combined_rates(double gamma_3b, double alpha, double beta,
                             double gamma_landau, double gamma_beliaev, double nbar);

} // namespace phonon
