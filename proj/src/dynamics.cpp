#include "phonon/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "phonon/errors.hpp"

namespace phonon {

namespace {

void check_pair_symmetry(const CMatrix& a) {
    const int m = static_cast<int>(a.rows()) / 2;
    const double scale = std::max(1.0, a.norm());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (std::abs(a(2 * i + 1, 2 * j + 1) - std::conj(a(2 * i, 2 * j))) > 1e-10 * scale ||
                std::abs(a(2 * i + 1, 2 * j) - std::conj(a(2 * i, 2 * j + 1))) > 1e-10 * scale)
                throw InvalidArgument("cross-mode matrix breaks the conjugate-pair block symmetry");
        }
}

CVector decay_factor(const RateMatrices& rates, double t) {
    const int m = rates.mode_count();
    CVector e(2 * m);
    for (int i = 0; i < m; ++i) {
        const double f = std::exp(-0.5 * rates.gamma_minus[i] * t);
        e(2 * i) = f;
        e(2 * i + 1) = f;
    }
    return e;
}

double max_real_eigenvalue(const CMatrix& m) {
    Eigen::ComplexEigenSolver<CMatrix> es(m, false);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        worst = std::max(worst, es.eigenvalues()(i).real());
    return worst;
}

} // namespace

void BilinearHamiltonian::validate() const {
    const int m = mode_count();
    if (m < 1) throw InvalidArgument("BilinearHamiltonian needs at least one mode");
    if (static_cast<int>(squeezings.size()) != m || static_cast<int>(drives.size()) != m)
        throw InvalidArgument("BilinearHamiltonian: per-mode arrays must share one length");
    for (double w : omegas)
        if (!std::isfinite(w)) throw InvalidArgument("BilinearHamiltonian: non-finite omega");
    for (const Complex& c : squeezings)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InvalidArgument("BilinearHamiltonian: non-finite squeezing rate");
    for (const Complex& c : drives)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InvalidArgument("BilinearHamiltonian: non-finite drive");
    if (cross.size() != 0) {
        if (cross.rows() != 2 * m || cross.cols() != 2 * m)
            throw InvalidArgument("BilinearHamiltonian: cross matrix must be 2M x 2M");
        if (!cross.allFinite())
            throw InvalidArgument("BilinearHamiltonian: non-finite cross matrix");
        check_pair_symmetry(cross);
    }
}

CMatrix BilinearHamiltonian::drift_matrix() const {
    validate();
    const int m = mode_count();
    CMatrix a = CMatrix::Zero(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        a(2 * i, 2 * i) = Complex(0.0, -omegas[i]);
        a(2 * i + 1, 2 * i + 1) = Complex(0.0, omegas[i]);
        a(2 * i, 2 * i + 1) = -squeezings[i];
        a(2 * i + 1, 2 * i) = -std::conj(squeezings[i]);
    }
    if (cross.size() != 0) a += cross;
    return a;
}

CVector BilinearHamiltonian::drive_vector() const {
    const int m = mode_count();
    CVector d(2 * m);
    for (int i = 0; i < m; ++i) {
        d(2 * i) = drives[i];
        d(2 * i + 1) = std::conj(drives[i]);
    }
    return d;
}

RateMatrices RateMatrices::from_channels(const std::vector<ChannelRates>& per_mode) {
    RateMatrices r;
    for (const ChannelRates& c : per_mode) {
        c.validate();
        r.gamma_minus.push_back(c.gamma_minus);
        r.gamma_plus.push_back(c.gamma_plus);
    }
    r.validate();
    return r;
}

RateMatrices RateMatrices::bare(const std::vector<double>& gamma) {
    RateMatrices r;
    r.gamma_minus = gamma;
    r.gamma_plus = gamma;
    r.gamma_bare = gamma;
    r.validate();
    return r;
}

void RateMatrices::validate() const {
    if (gamma_minus.empty() || gamma_minus.size() != gamma_plus.size())
        throw InvalidArgument("RateMatrices: gamma_minus/gamma_plus must share one length");
    for (size_t i = 0; i < gamma_minus.size(); ++i) {
        if (!std::isfinite(gamma_minus[i]) || !std::isfinite(gamma_plus[i]))
            throw InvalidArgument("RateMatrices: rates must be finite");
        if (gamma_plus[i] < std::abs(gamma_minus[i]) - 1e-12)
            throw InvalidArgument("RateMatrices: gamma_plus must dominate |gamma_minus|");
    }
}

GaussianState evolve_rwa(const GaussianState& state, const RateMatrices& rates, double t) {
    rates.validate();
    if (rates.mode_count() != state.mode_count())
        throw InvalidArgument("evolve_rwa: mode counts do not match");
    if (t < 0.0) throw InvalidArgument("evolve_rwa: t must be >= 0");
    for (double g : rates.gamma_minus)
        if (!(g > 0.0))
            throw UnsupportedRegime(
                "evolve_rwa: gamma_minus <= 0 leaves Sigma_inf undefined; use evolve_general");

    const int m = state.mode_count();
    CVector sigma_inf(2 * m);
    for (int i = 0; i < m; ++i) {
        sigma_inf(2 * i) = rates.gamma_plus[i] / rates.gamma_minus[i];
        sigma_inf(2 * i + 1) = sigma_inf(2 * i);
    }
    const CVector e = decay_factor(rates, t);
    CMatrix sigma = state.covariance();
    sigma -= CMatrix(sigma_inf.asDiagonal());
    sigma = e.asDiagonal() * sigma * e.asDiagonal();
    sigma += CMatrix(sigma_inf.asDiagonal());
    CVector d = e.asDiagonal() * state.displacement();
    return GaussianState(state.modes(), std::move(d), detail::hermitize(sigma));
}

namespace {

struct GaussianOde {
    CMatrix a;
    CMatrix a_dag;
    CVector drive;
    CVector gm_half;  // gamma_minus / 2 per entry
    CVector gp;       // gamma_plus per entry

    void rhs(const CVector& d, const CMatrix& sigma, CVector& dd, CMatrix& ds) const {
        dd = a * d - gm_half.cwiseProduct(d) + drive;
        ds = a * sigma + sigma * a_dag;
        ds -= gm_half.asDiagonal() * sigma + sigma * gm_half.asDiagonal();
        ds += CMatrix(gp.asDiagonal());
    }
};

} // namespace

GaussianState evolve_general(const GaussianState& state, const BilinearHamiltonian& h,
                             const RateMatrices& rates, double t, double dt) {
    h.validate();
    rates.validate();
    const int m = state.mode_count();
    if (h.mode_count() != m || rates.mode_count() != m)
        throw InvalidArgument("evolve_general: mode counts do not match");
    if (t < 0.0 || !(dt > 0.0))
        throw InvalidArgument("evolve_general: t >= 0 and dt > 0 required");

    GaussianOde ode;
    ode.a = h.drift_matrix();
    ode.a_dag = ode.a.adjoint();
    ode.drive = h.drive_vector();
    ode.gm_half = CVector(2 * m);
    ode.gp = CVector(2 * m);
    for (int i = 0; i < m; ++i) {
        ode.gm_half(2 * i) = ode.gm_half(2 * i + 1) = 0.5 * rates.gamma_minus[i];
        ode.gp(2 * i) = ode.gp(2 * i + 1) = rates.gamma_plus[i];
    }

    const int steps = std::max(1, static_cast<int>(std::ceil(t / dt)));
    const double step = t / steps;
    CVector d = state.displacement();
    CMatrix sigma = state.covariance();
    CVector kd1, kd2, kd3, kd4;
    CMatrix ks1, ks2, ks3, ks4;
    for (int n = 0; n < steps; ++n) {
        ode.rhs(d, sigma, kd1, ks1);
        ode.rhs(d + 0.5 * step * kd1, sigma + 0.5 * step * ks1, kd2, ks2);
        ode.rhs(d + 0.5 * step * kd2, sigma + 0.5 * step * ks2, kd3, ks3);
        ode.rhs(d + step * kd3, sigma + step * ks3, kd4, ks4);
        d += (step / 6.0) * (kd1 + 2.0 * kd2 + 2.0 * kd3 + kd4);
        sigma += (step / 6.0) * (ks1 + 2.0 * ks2 + 2.0 * ks3 + ks4);
        sigma = detail::hermitize(sigma);
        if (!sigma.allFinite() || !d.allFinite()) {
            CMatrix drift = ode.a;
            drift -= CMatrix(ode.gm_half.asDiagonal());
            throw InstabilityError(
                "evolve_general: step produced non-finite entries (squeezing overwhelms decay)",
                max_real_eigenvalue(drift));
        }
    }
    return GaussianState(state.modes(), std::move(d), std::move(sigma));
}

GaussianState evolve_general(const GaussianState& state, const BilinearHamiltonian& h,
                             const RateMatrices& rates, double t) {
    double gamma_max = 0.0;
    for (size_t i = 0; i < rates.gamma_minus.size(); ++i)
        gamma_max = std::max({gamma_max, std::abs(rates.gamma_minus[i]),
                              std::abs(rates.gamma_plus[i])});
    const double drift_max = h.drift_matrix().cwiseAbs().maxCoeff();
    double dt = t / 100.0;
    if (gamma_max > 0.0) dt = std::min(dt, 0.01 / gamma_max);
    if (drift_max > 0.0) dt = std::min(dt, 0.01 / drift_max);
    if (!(dt > 0.0)) dt = 1.0;  // t == 0: single trivial step
    return evolve_general(state, h, rates, t, dt);
}

double variance_pure_decay(double x0, double gamma, double t) {
    if (!(x0 > 0.0) || gamma < 0.0 || t < 0.0)
        throw InvalidArgument("variance_pure_decay: x0 > 0, gamma >= 0, t >= 0 required");
    return 1.0 + (x0 - 1.0) * std::exp(-gamma * t);
}

double variance_squeeze_decay(double x0, double xi, double gamma, double t) {
    if (!(x0 > 0.0) || xi < 0.0 || gamma < 0.0 || t < 0.0)
        throw InvalidArgument("variance_squeeze_decay: x0 > 0, Xi >= 0, gamma >= 0, t >= 0");
    const double total = 2.0 * xi + gamma;
    if (total == 0.0) return x0;
    const double x_inf = gamma / total;
    return x_inf + (x0 - x_inf) * std::exp(-total * t);
}

void SqueezedFrameState::validate() const {
    if (std::abs(w(2) - std::conj(w(0))) > 1e-10 * std::max(1.0, w.norm()))
        throw InvalidArgument("SqueezedFrameState: w1 and w3 must be conjugates");
}

SqueezedFrameMatrix squeezed_frame_matrix(double omega_tilde, Complex xi_tilde,
                                          double gamma) {
    if (!std::isfinite(omega_tilde) || !std::isfinite(gamma) ||
        !std::isfinite(xi_tilde.real()) || !std::isfinite(xi_tilde.imag()))
        throw InvalidArgument("squeezed_frame_matrix: arguments must be finite");
    SqueezedFrameMatrix out;
    out.m << Complex(gamma, 2.0 * omega_tilde), 2.0 * xi_tilde, 0.0,
             std::conj(xi_tilde), gamma, xi_tilde,
             0.0, 2.0 * std::conj(xi_tilde), Complex(gamma, -2.0 * omega_tilde);
    const Complex root =
        std::sqrt(Complex(std::norm(xi_tilde) - omega_tilde * omega_tilde, 0.0));
    out.eigenvalues << Complex(gamma, 0.0), gamma + 2.0 * root, gamma - 2.0 * root;
    out.unstable = false;
    for (int i = 0; i < 3; ++i)
        if (out.eigenvalues(i).real() < 0.0) out.unstable = true;
    return out;
}

SqueezedFrameState evolve_squeezed_frame(const SqueezedFrameState& sf, double t) {
    sf.validate();
    if (t < 0.0) throw InvalidArgument("evolve_squeezed_frame: t must be >= 0");
    const SqueezedFrameMatrix sys =
        squeezed_frame_matrix(sf.omega_tilde, sf.xi_tilde, sf.gamma);
    const Eigen::Vector3cd source(-sf.xi_tilde, 0.0, -std::conj(sf.xi_tilde));

    Eigen::Vector3cd w;
    const Eigen::FullPivLU<Eigen::Matrix3cd> lu(sys.m);
    if (lu.isInvertible()) {
        const Eigen::Vector3cd w_ss = lu.solve(source);
        // expm(-M t) by eigen-decomposition, falling back to
        // scaling-and-squaring when the eigenvector basis is ill-conditioned
        // (the defective case |Xi| = |omega|).
        Eigen::Matrix3cd propagator;
        Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(sys.m);
        const Eigen::Matrix3cd v = es.eigenvectors();
        const Eigen::FullPivLU<Eigen::Matrix3cd> vlu(v);
        bool use_eigen = vlu.isInvertible();
        if (use_eigen) {
            const Eigen::Matrix3cd v_inv = vlu.inverse();
            const double cond = v.norm() * v_inv.norm();
            if (!(cond < 1e8)) {
                use_eigen = false;
            } else {
                Eigen::Vector3cd phases;
                for (int i = 0; i < 3; ++i) phases(i) = std::exp(-es.eigenvalues()(i) * t);
                propagator = v * phases.asDiagonal() * v_inv;
            }
        }
        if (!use_eigen) propagator = (-sys.m * t).exp();
        w = w_ss + propagator * (sf.w - w_ss);
    } else {
        // Singular M: no steady state; integrate w' = s - M w directly.
        const double scale = std::max({1.0, sys.m.norm()});
        const int steps = std::max(100, static_cast<int>(std::ceil(50.0 * scale * t)));
        const double dt = t / steps;
        w = sf.w;
        auto rhs = [&](const Eigen::Vector3cd& y) -> Eigen::Vector3cd {
            return source - sys.m * y;
        };
        for (int n = 0; n < steps; ++n) {
            const Eigen::Vector3cd k1 = rhs(w);
            const Eigen::Vector3cd k2 = rhs(w + 0.5 * dt * k1);
            const Eigen::Vector3cd k3 = rhs(w + 0.5 * dt * k2);
            const Eigen::Vector3cd k4 = rhs(w + dt * k3);
            w += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    if (!w.allFinite()) {
        double worst = sys.eigenvalues(0).real();
        for (int i = 1; i < 3; ++i) worst = std::min(worst, sys.eigenvalues(i).real());
        throw InstabilityError("evolve_squeezed_frame: non-finite growth", -worst);
    }
    SqueezedFrameState out = sf;
    out.w = w;
    // Enforce the conjugate pairing that exact arithmetic preserves.
    out.w(2) = std::conj(out.w(0));
    out.w(1) = Complex(out.w(1).real(), 0.0);
    return out;
}

Eigen::Matrix2cd continuous_squeezing_sigma(double r, double xi, double phi_xi,
                                            const ChannelRates& rates, double t) {
    rates.validate();
    if (t < 0.0) throw InvalidArgument("continuous_squeezing_sigma: t must be >= 0");
    const double gm = rates.gamma_minus;
    const double gp = rates.gamma_plus;
    const double denom = 4.0 * xi * xi - gm * gm;
    if (std::abs(denom) < 1e-12 * std::max({1.0, xi * xi, gm * gm}))
        throw UnsupportedRegime(
            "continuous_squeezing_sigma: resonant case 2 Xi = gamma_minus; use evolve_general");

    const Complex phase = std::exp(Complex(0.0, 2.0 * phi_xi));
    Eigen::Matrix2cd k;
    k << 0.0, -phase, -std::conj(phase), 0.0;

    Eigen::Matrix2cd sigma_xi = -(gp / denom) * (gm * Eigen::Matrix2cd::Identity() +
                                                 2.0 * xi * Eigen::Matrix2cd(k));
    Eigen::Matrix2cd s_xi = std::cosh(xi * t) * Eigen::Matrix2cd::Identity() +
                            std::sinh(xi * t) * k;
    Eigen::Matrix2cd sigma0;
    sigma0 << std::cosh(2.0 * r), -std::sinh(2.0 * r),
              -std::sinh(2.0 * r), std::cosh(2.0 * r);
    Eigen::Matrix2cd out =
        sigma_xi + std::exp(-gm * t) * (s_xi * (sigma0 - sigma_xi) * s_xi);
    return 0.5 * (out + out.adjoint());
}

} // namespace phonon
