#pragma once

#include <vector>

#include "phonon/gaussian.hpp"
#include "phonon/rates.hpp"

namespace phonon {

/// Coefficients of a mode-diagonal bilinear Hamiltonian plus optional
/// cross-mode quadratic terms:
///   H = sum_I omega_I b_I^dag b_I
///       - (i/2) sum_I (Xi_I b_I^dag^2 - Xi_I^* b_I^2)
///       + sum_I (i delta_I b_I^dag - i delta_I^* b_I)  (+ cross terms).
/// `cross` (optional, default empty = zero) is the extra contribution to the
/// Heisenberg drift generator in the zeta basis and must carry the
/// conjugate-pair block symmetry of a Hermitian Hamiltonian.
struct BilinearHamiltonian {
    std::vector<double> omegas;     // rad s^-1
    std::vector<Complex> squeezings;  // s^-1, Xi = |Xi| e^{2i phi}
    std::vector<Complex> drives;    // s^-1
    CMatrix cross;                  // 2M x 2M or empty

    int mode_count() const { return static_cast<int>(omegas.size()); }
    void validate() const;

    /// Drift generator A of d<zeta>/dt = A <zeta> + drive: per-mode blocks
    /// [[-i omega, -Xi], [-Xi^*, i omega]] plus `cross`.
    CMatrix drift_matrix() const;
    /// Drive vector (delta_1, delta_1^*, ...).
    CVector drive_vector() const;
};

/// Per-mode decay/noise rates entering the covariance equation of motion.
/// gamma_bare holds the single rate of the non-rotating-wave pure-decay form
/// (equivalent to gamma_minus = gamma_plus = gamma).
struct RateMatrices {
    std::vector<double> gamma_minus;  // s^-1
    std::vector<double> gamma_plus;   // s^-1
    std::vector<double> gamma_bare;   // s^-1, optional bookkeeping

    static RateMatrices from_channels(const std::vector<ChannelRates>& per_mode);
    static RateMatrices bare(const std::vector<double>& gamma);
    int mode_count() const { return static_cast<int>(gamma_minus.size()); }
    void validate() const;
};

/// Closed-form rotating-wave solution:
///   D(t) = e^{-G- t/2} D(0),
///   Sigma(t) = e^{-G- t/2} (Sigma0 - Sigma_inf) e^{-G- t/2} + Sigma_inf,
/// Sigma_inf = G+ G-^{-1}. Requires gamma_minus > 0 on every mode.
GaussianState evolve_rwa(const GaussianState& state, const RateMatrices& rates, double t);

/// Fixed-step fourth-order integration of
///   dSigma/dt = A Sigma + Sigma A^dag - (G- Sigma + Sigma G-)/2 + G+,
///   dD/dt = (A - G-/2) D + drive.
GaussianState evolve_general(const GaussianState& state, const BilinearHamiltonian& h,
                             const RateMatrices& rates, double t, double dt);

/// Same with the default step dt = min(0.01/gamma_max, 0.01/|A|_max, t/100).
GaussianState evolve_general(const GaussianState& state, const BilinearHamiltonian& h,
                             const RateMatrices& rates, double t);

/// Solution of d<X^2>/dt = -gamma <X^2> + gamma:
/// x(t) = 1 + (x0 - 1) e^{-gamma t}.
double variance_pure_decay(double x0, double gamma, double t);

/// Solution of d<X^2>/dt = -(2 Xi + gamma) <X^2> + gamma:
/// x(t) = x_inf + (x0 - x_inf) e^{-(2 Xi + gamma) t}, x_inf = gamma/(2 Xi + gamma).
double variance_squeeze_decay(double x0, double xi, double gamma, double t);

/// Second-moment vector w = (<a^2>, <a^dag a>, <a^2>^*) in the squeezed
/// (atomic-operator) frame, where the jump operator is a with rate gamma.
struct SqueezedFrameState {
    Eigen::Vector3cd w;
    double omega_tilde = 0.0;
    Complex xi_tilde{0.0, 0.0};
    double gamma = 0.0;

    void validate() const;
};

struct SqueezedFrameMatrix {
    Eigen::Matrix3cd m;
    Eigen::Vector3cd eigenvalues;  // gamma and gamma +- 2 sqrt(|Xi|^2 - omega^2)
    bool unstable = false;         // any eigenvalue with negative real part
};

/// The 3x3 system matrix of w' + M w = s and its closed-form eigenvalues.
SqueezedFrameMatrix squeezed_frame_matrix(double omega_tilde, Complex xi_tilde,
                                          double gamma);

/// w(t) = w_ss + expm(-M t)(w0 - w_ss) with M w_ss = s,
/// s = -(Xi, 0, Xi^*); stepped integration when M is singular.
SqueezedFrameState evolve_squeezed_frame(const SqueezedFrameState& sf, double t);

/// Closed-form co-rotating covariance block under continuous squeezing at
/// rate Xi (phase phi) with channel rates gamma_-, gamma_+, starting from
/// the squeezed vacuum S(r) S(r):
///   Sigma(t) = Sigma_Xi + e^{-gamma_- t} S_Xi(t) (Sigma(0) - Sigma_Xi) S_Xi(t).
/// Throws UnsupportedRegime at the resonance 2 Xi = gamma_-.
Eigen::Matrix2cd continuous_squeezing_sigma(double r, double xi, double phi_xi,
                                            const ChannelRates& rates, double t);

} // namespace phonon
