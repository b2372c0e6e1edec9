#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace phonon {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Gaussian state of M phonon modes in the ladder-operator basis
/// zeta = (b_1, b_1^dag, ..., b_M, b_M^dag).
///
/// displacement D_a = <zeta_a>, covariance
/// Sigma_ab = <zeta_a zeta_b^dag + zeta_b^dag zeta_a> - 2 D_a D_b^*,
/// so the ground state has D = 0 and Sigma = identity.
///
/// Immutable value type; all operations return new states.
class GaussianState {
public:
    GaussianState(std::vector<std::string> modes, CVector displacement,
                  CMatrix covariance);

    int mode_count() const { return static_cast<int>(modes_.size()); }
    const std::vector<std::string>& modes() const { return modes_; }
    const CVector& displacement() const { return displacement_; }
    const CMatrix& covariance() const { return covariance_; }

    /// 2x2 covariance block of one mode.
    Eigen::Matrix2cd mode_block(int mode) const;

private:
    std::vector<std::string> modes_;
    CVector displacement_;
    CMatrix covariance_;
};

/// Block-diagonal symplectic transformation, one 2x2 block per mode.
/// Each block has unit determinant and preserves the ladder-basis metric
/// diag(+1, -1).
class SymplecticMatrix {
public:
    /// Identity on `mode_count` modes.
    explicit SymplecticMatrix(int mode_count);

    /// Replaces the block of one mode. Throws if the block is not
    /// symplectic (det != 1 or metric not preserved, tol 1e-12).
    void set_block(int mode, const Eigen::Matrix2cd& block);

    int mode_count() const { return mode_count_; }
    const CMatrix& matrix() const { return matrix_; }
    Eigen::Matrix2cd block(int mode) const;

private:
    int mode_count_;
    CMatrix matrix_;
};

/// Ground state |0>^M: D = 0, Sigma = identity.
GaussianState vacuum_state(int mode_count);

/// Single-mode squeezing block for zeta = r e^{2i theta}:
///   [[cosh r, -e^{2i theta} sinh r], [-e^{-2i theta} sinh r, cosh r]].
SymplecticMatrix squeeze_matrix(double r, double theta);

/// Single-mode rotation block diag(e^{-i theta}, e^{i theta}).
SymplecticMatrix rotation_matrix(double theta);

/// Sigma -> S Sigma S^dag, D -> S D.
GaussianState apply_unitary(const GaussianState& state, const SymplecticMatrix& s);

/// Adds (mu, mu^*) to one mode's displacement entries; Sigma unchanged.
GaussianState displace(const GaussianState& state, int mode, Complex mu);

/// Eigenvalues of one mode's 2x2 covariance block, sorted ascending.
std::pair<double, double> eigen_spectrum(const GaussianState& state, int mode);

/// 1/sqrt(det Sigma). Pure states give 1, mixed states less.
double purity(const GaussianState& state);

/// Centered variance of the co-rotating position quadrature
/// X = b + b^dag of one mode: (Sigma_11 + Sigma_22)/2 + Re Sigma_12.
double quadrature_variance(const GaussianState& state, int mode);

namespace detail {
/// (Sigma + Sigma^dag)/2, applied after every covariance update to
/// suppress floating-point Hermiticity drift.
CMatrix hermitize(const CMatrix& sigma);
/// Default mode labels m0, m1, ...
std::vector<std::string> default_mode_labels(int mode_count);
} // namespace detail

} // namespace phonon
