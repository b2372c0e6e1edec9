#include "phonon/gaussian.hpp"

#include <cmath>

#include "phonon/errors.hpp"

namespace phonon {

namespace detail {

CMatrix hermitize(const CMatrix& sigma) {
    return 0.5 * (sigma + sigma.adjoint());
}

std::vector<std::string> default_mode_labels(int mode_count) {
    std::vector<std::string> labels;
    labels.reserve(mode_count);
    for (int i = 0; i < mode_count; ++i) labels.push_back("m" + std::to_string(i));
    return labels;
}

namespace {

// Conjugate-pair structure induced by zeta = (b, b^dag): the even row/column
// of each mode pair is the conjugate of the odd one.
void check_pairing(const CVector& d, const CMatrix& sigma) {
    const int m = static_cast<int>(d.size()) / 2;
    const double scale = std::max(1.0, sigma.norm());
    for (int i = 0; i < m; ++i) {
        if (std::abs(d(2 * i + 1) - std::conj(d(2 * i))) > 1e-9 * std::max(1.0, d.norm()))
            throw InvalidArgument("displacement entries of mode " + std::to_string(i) +
                                  " are not a conjugate pair");
        for (int j = 0; j < m; ++j) {
            const Complex a = sigma(2 * i, 2 * j);
            const Complex b = sigma(2 * i, 2 * j + 1);
            const Complex c = sigma(2 * i + 1, 2 * j);
            const Complex e = sigma(2 * i + 1, 2 * j + 1);
            if (std::abs(e - std::conj(a)) > 1e-9 * scale ||
                std::abs(c - std::conj(b)) > 1e-9 * scale)
                throw InvalidArgument("covariance block (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") breaks conjugate-pair symmetry");
        }
    }
}

// Positive definiteness via the per-mode 2x2 trace/det test,
// tolerance 1e-9 absolute on the determinant.
void check_positive_blocks(const CMatrix& sigma) {
    const int m = static_cast<int>(sigma.rows()) / 2;
    for (int i = 0; i < m; ++i) {
        const Eigen::Matrix2cd b = sigma.block<2, 2>(2 * i, 2 * i);
        const double tr = b.trace().real();
        const double det = (b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0)).real();
        if (!(tr > 0.0) || det < -1e-9)
            throw InvalidArgument("covariance block of mode " + std::to_string(i) +
                                  " is not positive definite");
    }
}

} // namespace
} // namespace detail

GaussianState::GaussianState(std::vector<std::string> modes, CVector displacement,
                             CMatrix covariance)
    : modes_(std::move(modes)),
      displacement_(std::move(displacement)),
      covariance_(std::move(covariance)) {
    const int m = static_cast<int>(modes_.size());
    if (m < 1) throw InvalidArgument("GaussianState needs at least one mode");
    if (displacement_.size() != 2 * m)
        throw InvalidArgument("displacement length must be 2 * mode_count");
    if (covariance_.rows() != 2 * m || covariance_.cols() != 2 * m)
        throw InvalidArgument("covariance must be 2M x 2M");
    if (!displacement_.allFinite() || !covariance_.allFinite())
        throw InvalidArgument("GaussianState entries must be finite");
    const double scale = std::max(1.0, covariance_.norm());
    if ((covariance_ - covariance_.adjoint()).norm() > 1e-12 * scale)
        throw InvalidArgument("covariance is not Hermitian within 1e-12 relative norm");
    covariance_ = detail::hermitize(covariance_);
    detail::check_pairing(displacement_, covariance_);
    detail::check_positive_blocks(covariance_);
}

Eigen::Matrix2cd GaussianState::mode_block(int mode) const {
    if (mode < 0 || mode >= mode_count())
        throw InvalidArgument("mode index out of range");
    return covariance_.block<2, 2>(2 * mode, 2 * mode);
}

SymplecticMatrix::SymplecticMatrix(int mode_count) : mode_count_(mode_count) {
    if (mode_count < 1) throw InvalidArgument("SymplecticMatrix needs at least one mode");
    matrix_ = CMatrix::Identity(2 * mode_count, 2 * mode_count);
}

void SymplecticMatrix::set_block(int mode, const Eigen::Matrix2cd& block) {
    if (mode < 0 || mode >= mode_count_)
        throw InvalidArgument("mode index out of range");
    if (!block.allFinite()) throw InvalidArgument("symplectic block must be finite");
    const Complex det = block(0, 0) * block(1, 1) - block(0, 1) * block(1, 0);
    if (std::abs(det - 1.0) > 1e-12 * std::max(1.0, block.norm()))
        throw InvalidArgument("symplectic block must have unit determinant");
    Eigen::Matrix2cd eta = Eigen::Matrix2cd::Zero();
    eta(0, 0) = 1.0;
    eta(1, 1) = -1.0;
    if ((block * eta * block.adjoint() - eta).norm() > 1e-12 * std::max(1.0, block.squaredNorm()))
        throw InvalidArgument("symplectic block must preserve the diag(+1,-1) metric");
    matrix_.block<2, 2>(2 * mode, 2 * mode) = block;
}

Eigen::Matrix2cd SymplecticMatrix::block(int mode) const {
    if (mode < 0 || mode >= mode_count_)
        throw InvalidArgument("mode index out of range");
    return matrix_.block<2, 2>(2 * mode, 2 * mode);
}

GaussianState vacuum_state(int mode_count) {
    if (mode_count < 1) throw InvalidArgument("vacuum_state: mode_count must be >= 1");
    return GaussianState(detail::default_mode_labels(mode_count),
                         CVector::Zero(2 * mode_count),
                         CMatrix::Identity(2 * mode_count, 2 * mode_count));
}

SymplecticMatrix squeeze_matrix(double r, double theta) {
    if (!std::isfinite(r) || !std::isfinite(theta))
        throw InvalidArgument("squeeze_matrix: arguments must be finite");
    const Complex phase = std::exp(Complex(0.0, 2.0 * theta));
    Eigen::Matrix2cd b;
    b << std::cosh(r), -phase * std::sinh(r),
         -std::conj(phase) * std::sinh(r), std::cosh(r);
    SymplecticMatrix s(1);
    s.set_block(0, b);
    return s;
}

SymplecticMatrix rotation_matrix(double theta) {
    if (!std::isfinite(theta)) throw InvalidArgument("rotation_matrix: theta must be finite");
    Eigen::Matrix2cd b = Eigen::Matrix2cd::Zero();
    b(0, 0) = std::exp(Complex(0.0, -theta));
    b(1, 1) = std::exp(Complex(0.0, theta));
    SymplecticMatrix s(1);
    s.set_block(0, b);
    return s;
}

GaussianState apply_unitary(const GaussianState& state, const SymplecticMatrix& s) {
    if (s.mode_count() != state.mode_count())
        throw InvalidArgument("apply_unitary: mode counts do not match");
    const CMatrix& m = s.matrix();
    CMatrix sigma = detail::hermitize(m * state.covariance() * m.adjoint());
    CVector d = m * state.displacement();
    return GaussianState(state.modes(), std::move(d), std::move(sigma));
}

GaussianState displace(const GaussianState& state, int mode, Complex mu) {
    if (mode < 0 || mode >= state.mode_count())
        throw InvalidArgument("displace: mode index out of range");
    CVector d = state.displacement();
    d(2 * mode) += mu;
    d(2 * mode + 1) += std::conj(mu);
    return GaussianState(state.modes(), std::move(d), state.covariance());
}

std::pair<double, double> eigen_spectrum(const GaussianState& state, int mode) {
    const Eigen::Matrix2cd b = state.mode_block(mode);
    if ((b - b.adjoint()).norm() > 1e-10 * std::max(1.0, b.norm()))
        throw NumericalError("eigen_spectrum: mode block lost Hermiticity");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(b);
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(1);
    if (!(lo > 0.0))
        throw NumericalError("eigen_spectrum: mode block is not positive definite");
    return {lo, hi};
}

double purity(const GaussianState& state) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(state.covariance(),
                                              Eigen::EigenvaluesOnly);
    double log_det = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double lambda = es.eigenvalues()(i);
        if (!(lambda > 0.0))
            throw NumericalError("purity: covariance determinant is not positive");
        log_det += std::log(lambda);
    }
    const double p = std::exp(-0.5 * log_det);
    if (p > 1.0 + 1e-9)
        throw NumericalError("purity exceeds 1: covariance is sub-vacuum");
    return p;
}

double quadrature_variance(const GaussianState& state, int mode) {
    const Eigen::Matrix2cd b = state.mode_block(mode);
    return 0.5 * (b(0, 0).real() + b(1, 1).real()) + b(0, 1).real();
}

} // namespace phonon
