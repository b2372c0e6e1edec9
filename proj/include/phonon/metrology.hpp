#pragma once

#include <functional>

#include "phonon/gaussian.hpp"

namespace phonon {

/// Inputs of the Gaussian QFI: the covariance, its parameter derivative,
/// the displacement derivative, and the purity with its derivative.
struct QfiInput {
    CMatrix sigma;
    CMatrix sigma_prime;
    CVector d_prime;
    double purity = 1.0;
    double purity_prime = 0.0;
};

enum class Scheme {
    displacement_amplitude,
    displacement_phase,
    rotation,
    squeezing,
    continuous_squeezing,
};

enum class DisplacementMode { amplitude, phase };

struct SchemeResult {
    double qfi = 0.0;
    double delta_theta = 0.0;  // Cramer-Rao bound 1/sqrt(qfi)
    Scheme scheme = Scheme::rotation;
    double optimal_angle = 0.0;
};

/// Gaussian quantum Fisher information
///   F = Tr{(Sigma^-1 Sigma')^2} / (2 (1 + P^2))
///       + 2 P'^2 / (1 - P^4) + 2 D'^dag Sigma^-1 D'.
/// The purity term is dropped for pure states (P >= 1 - 1e-9 requires
/// |P'| < 1e-12, else SingularPurityError).
double qfi_gaussian(const QfiInput& input);

struct FiniteDifferenceQfi {
    double value = 0.0;
    double step = 0.0;  // the h actually used
};

/// Central-difference derivatives of the family at theta0 fed through
/// qfi_gaussian, with one Richardson halving. h = 0 picks the default
/// 1e-5 * max(1, |theta0|).
FiniteDifferenceQfi qfi_finite_difference(
    const std::function<GaussianState(double)>& family, double theta0, double h = 0.0);

/// Cramer-Rao bound 1/sqrt(F).
double cramer_rao(double qfi);

/// Displacement scheme: amplitude -> F = 4/lambda_-, optimal angle 0;
/// phase -> F = 4 mu^2 / lambda_-, optimal angle pi/2.
SchemeResult qfi_displacement(double lambda_minus, double amplitude_mu,
                              DisplacementMode mode);

/// Rotation scheme: F = (lambda_+ - lambda_-)^2 / (lambda_- lambda_+ + 1).
SchemeResult qfi_rotation(double lambda_minus, double lambda_plus);

/// Squeezing scheme:
/// F = [l-^2 + 6 l- l+ + l+^2 - (l- - l+)^2 cos(4 phi)] / (2 (l- l+ + 1)),
/// maximized at phi = pi/4.
SchemeResult qfi_squeezing(double lambda_minus, double lambda_plus, double phi_nu);

/// Continuous squeezing: t^2 times the instantaneous squeezing QFI.
SchemeResult qfi_continuous_squeezing(double lambda_minus, double lambda_plus,
                                      double phi, double t);

/// Displacement-scheme uncertainty growth
/// delta = e^{-r}/(sqrt(2) |D'|) sqrt(1 + e^{2r} gamma_+ t).
double sensitivity_displacement(double r, double gamma_plus, double t,
                                double d_prime_norm);

/// Rotation-scheme asymptote delta ~ e^{-2r} sqrt(2 + e^{2r} gamma_+ t),
/// valid for e^{2r} >> 1.
double sensitivity_rotation(double r, double gamma_plus, double t);

} // namespace phonon
