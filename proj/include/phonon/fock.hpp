#pragma once

#include "phonon/gaussian.hpp"

namespace phonon {

/// Single-mode Lindblad generator in a truncated number basis:
///   d rho/dt = -i[H, rho]
///              + gamma_u (b rho b^dag - {b^dag b, rho}/2)
///              + gamma_v (b^dag rho b - {b b^dag, rho}/2),
///   H = omega b^dag b - (i/2)(Xi b^dag^2 - Xi^* b^2)
///       + i delta b^dag - i delta^* b.
struct LindbladGenerator {
    double omega = 0.0;
    Complex xi{0.0, 0.0};
    Complex delta{0.0, 0.0};
    double gamma_u = 0.0;
    double gamma_v = 0.0;
    int dim = 0;

    CMatrix annihilation() const;  // b
    CMatrix creation() const;      // b^dag
    CMatrix hamiltonian() const;   // H
};

LindbladGenerator build_generator(double omega, Complex xi, Complex delta,
                                  double gamma_u, double gamma_v, int dim);

/// Truncated number-basis density matrix. Valid objects are Hermitian,
/// unit-trace, positive up to -1e-10, and keep the population of the top
/// five levels below 1e-8.
class FockDensityMatrix {
public:
    explicit FockDensityMatrix(CMatrix rho);

    int dim() const { return static_cast<int>(rho_.rows()); }
    const CMatrix& rho() const { return rho_; }

    /// Population of levels n > dim - 6.
    double tail_population() const;

private:
    CMatrix rho_;
};

FockDensityMatrix fock_vacuum(int dim);

/// Pure squeezed vacuum exp((zeta^* b^2 - zeta b^dag^2)/2)|0>,
/// zeta = r e^{2 i theta}, via matrix exponential of the generator.
/// Requires dim >= 10 + 8 e^{2r}.
FockDensityMatrix fock_squeezed_state(double r, double theta, int dim);

/// D(mu) S(zeta) |0>.
FockDensityMatrix fock_displaced_squeezed_state(double r, double theta, Complex mu,
                                                int dim);

/// Coherent state D(mu)|0>.
FockDensityMatrix fock_coherent_state(Complex mu, int dim);

/// Step bound keeping fixed-step RK4 stable on the truncated generator,
/// also capped by 0.05 / max(rates, |omega|, |Xi|).
double default_time_step(const LindbladGenerator& gen, double t);

/// Fixed-step fourth-order integration over [0, t]. The step used is
/// min(dt, stability bound). Throws TruncationError when the top-level
/// population exceeds 1e-8 (retry with a larger dim) and NumericalError on
/// trace drift beyond 1e-9.
FockDensityMatrix evolve_rho(const FockDensityMatrix& rho, const LindbladGenerator& gen,
                             double t, double dt);

struct FockMoments {
    Complex mean_b{0.0, 0.0};
    Complex mean_bb{0.0, 0.0};
    double mean_n = 0.0;
    double x_variance = 0.0;  // <X^2> - <X>^2, X = b + b^dag
    double purity = 0.0;      // Tr rho^2
};

FockMoments moments(const FockDensityMatrix& rho);

} // namespace phonon
