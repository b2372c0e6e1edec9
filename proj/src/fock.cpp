#include "phonon/fock.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "phonon/errors.hpp"

namespace phonon {

namespace {

std::vector<double> sqrt_table(int dim) {
    std::vector<double> s(dim + 2);
    for (int i = 0; i < dim + 2; ++i) s[i] = std::sqrt(static_cast<double>(i));
    return s;
}

// Lindblad right-hand side as a banded stencil over rho(n, m); every term of
// -i[H, rho] and of the two dissipators touches only neighbors with
// |dn|, |dm| <= 2, so one pass over the matrix evaluates the full generator.
class StencilRhs {
public:
    explicit StencilRhs(const LindbladGenerator& gen)
        : d_(gen.dim), sq_(sqrt_table(gen.dim)), omega_(gen.omega), xi_(gen.xi),
          delta_(gen.delta), gu_(gen.gamma_u), gv_(gen.gamma_v) {}

    void operator()(const CMatrix& rho, CMatrix& out) const {
        // Raw Hamiltonian band coefficients: H(n, n-2) = dn2 sqrt(n(n-1)),
        // H(n, n+2) = up2 sqrt((n+1)(n+2)), H(n, n-1) = dn1 sqrt(n),
        // H(n, n+1) = up1 sqrt(n+1), H(n, n) = omega n.
        const Complex dn2 = Complex(0.0, -0.5) * xi_;
        const Complex up2 = Complex(0.0, 0.5) * std::conj(xi_);
        const Complex dn1 = Complex(0.0, 1.0) * delta_;
        const Complex up1 = Complex(0.0, -1.0) * std::conj(delta_);
        const bool has_drive = delta_ != Complex(0.0, 0.0);
        for (int m = 0; m < d_; ++m) {
            for (int n = 0; n < d_; ++n) {
                Complex h_rho = omega_ * double(n) * rho(n, m);
                Complex rho_h = omega_ * double(m) * rho(n, m);
                if (n >= 2) h_rho += dn2 * (sq_[n] * sq_[n - 1]) * rho(n - 2, m);
                if (n + 2 < d_) h_rho += up2 * (sq_[n + 1] * sq_[n + 2]) * rho(n + 2, m);
                if (m + 2 < d_) rho_h += dn2 * (sq_[m + 1] * sq_[m + 2]) * rho(n, m + 2);
                if (m >= 2) rho_h += up2 * (sq_[m] * sq_[m - 1]) * rho(n, m - 2);
                if (has_drive) {
                    if (n >= 1) h_rho += dn1 * sq_[n] * rho(n - 1, m);
                    if (n + 1 < d_) h_rho += up1 * sq_[n + 1] * rho(n + 1, m);
                    if (m + 1 < d_) rho_h += dn1 * sq_[m + 1] * rho(n, m + 1);
                    if (m >= 1) rho_h += up1 * sq_[m] * rho(n, m - 1);
                }
                Complex acc = Complex(0.0, -1.0) * (h_rho - rho_h);
                // gamma_u (b rho b^dag - {b^dag b, rho}/2)
                if (gu_ != 0.0) {
                    Complex t = -0.5 * (n + m) * rho(n, m);
                    if (n + 1 < d_ && m + 1 < d_)
                        t += sq_[n + 1] * sq_[m + 1] * rho(n + 1, m + 1);
                    acc += gu_ * t;
                }
                // gamma_v (b^dag rho b - {b b^dag, rho}/2); b b^dag follows the
                // truncated-ladder convention, vanishing on the top level
                if (gv_ != 0.0) {
                    const double top_n = n + 1 < d_ ? n + 1.0 : 0.0;
                    const double top_m = m + 1 < d_ ? m + 1.0 : 0.0;
                    Complex t = -0.5 * (top_n + top_m) * rho(n, m);
                    if (n >= 1 && m >= 1) t += sq_[n] * sq_[m] * rho(n - 1, m - 1);
                    acc += gv_ * t;
                }
                out(n, m) = acc;
            }
        }
    }

private:
    int d_;
    std::vector<double> sq_;
    double omega_;
    Complex xi_;
    Complex delta_;
    double gu_;
    double gv_;
};

// exp(G) v for a banded generator given as its action, by scaling and
// truncated Taylor series.
template <typename Apply>
CVector apply_exponential(const Apply& apply_g, CVector v, double norm_bound) {
    int squarings = 0;
    double scale = 1.0;
    while (norm_bound * scale > 0.5 && squarings < 60) {
        scale *= 0.5;
        ++squarings;
    }
    const long reps = 1L << squarings;
    for (long rep = 0; rep < reps; ++rep) {
        CVector term = v;
        CVector result = v;
        for (int k = 1; k <= 40; ++k) {
            term = apply_g(term) * (scale / k);
            result += term;
            if (term.norm() < 1e-18 * result.norm()) break;
        }
        v = result;
    }
    return v;
}

void check_valid(const CMatrix& rho) {
    if (!rho.allFinite()) throw NumericalError("FockDensityMatrix: non-finite entries");
    const double scale = std::max(1.0, rho.norm());
    if ((rho - rho.adjoint()).norm() > 1e-12 * scale)
        throw NumericalError("FockDensityMatrix: not Hermitian within 1e-12");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
        throw NumericalError("FockDensityMatrix: trace differs from 1 beyond 1e-10");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw NumericalError("FockDensityMatrix: negative eigenvalue beyond -1e-10");
}

} // namespace

CMatrix LindbladGenerator::annihilation() const {
    CMatrix b = CMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    return b;
}

CMatrix LindbladGenerator::creation() const { return annihilation().adjoint(); }

CMatrix LindbladGenerator::hamiltonian() const {
    const CMatrix b = annihilation();
    const CMatrix bd = b.adjoint();
    CMatrix h = omega * (bd * b);
    h += Complex(0.0, -0.5) * (xi * (bd * bd) - std::conj(xi) * (b * b));
    h += Complex(0.0, 1.0) * (delta * bd) - Complex(0.0, 1.0) * (std::conj(delta) * b);
    return h;
}

LindbladGenerator build_generator(double omega, Complex xi, Complex delta,
                                  double gamma_u, double gamma_v, int dim) {
    if (dim < 8) throw InvalidArgument("build_generator: dim must be >= 8");
    if (gamma_u < 0.0 || gamma_v < 0.0)
        throw InvalidArgument("build_generator: rates must be >= 0");
    if (!std::isfinite(omega) || !std::isfinite(std::abs(xi)) || !std::isfinite(std::abs(delta)))
        throw InvalidArgument("build_generator: parameters must be finite");
    return LindbladGenerator{omega, xi, delta, gamma_u, gamma_v, dim};
}

FockDensityMatrix::FockDensityMatrix(CMatrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 8)
        throw InvalidArgument("FockDensityMatrix: need a square matrix, dim >= 8");
    check_valid(rho_);
    if (tail_population() > 1e-8)
        throw TruncationError("FockDensityMatrix: top-level population exceeds 1e-8",
                              2 * (dim() - 1) + 1);
}

double FockDensityMatrix::tail_population() const {
    double tail = 0.0;
    for (int n = dim() - 5; n < dim(); ++n) tail += rho_(n, n).real();
    return tail;
}

FockDensityMatrix fock_vacuum(int dim) {
    CMatrix rho = CMatrix::Zero(dim, dim);
    rho(0, 0) = 1.0;
    return FockDensityMatrix(std::move(rho));
}

namespace {

CVector squeezed_coherent_vector(double r, double theta, Complex mu, int dim) {
    const std::vector<double> sq = sqrt_table(dim);
    CVector v = CVector::Zero(dim);
    v(0) = 1.0;
    if (r != 0.0) {
        const Complex zeta = r * std::exp(Complex(0.0, 2.0 * theta));
        auto gen = [&](const CVector& x) {
            CVector y = CVector::Zero(dim);
            for (int n = 0; n < dim; ++n) {
                Complex acc(0.0, 0.0);
                if (n + 2 < dim) acc += 0.5 * std::conj(zeta) * sq[n + 1] * sq[n + 2] * x(n + 2);
                if (n >= 2) acc -= 0.5 * zeta * sq[n] * sq[n - 1] * x(n - 2);
                y(n) = acc;
            }
            return y;
        };
        v = apply_exponential(gen, v, std::abs(zeta) * dim);
    }
    if (mu != Complex(0.0, 0.0)) {
        auto gen = [&](const CVector& x) {
            CVector y = CVector::Zero(dim);
            for (int n = 0; n < dim; ++n) {
                Complex acc(0.0, 0.0);
                if (n >= 1) acc += mu * sq[n] * x(n - 1);
                if (n + 1 < dim) acc -= std::conj(mu) * sq[n + 1] * x(n + 1);
                y(n) = acc;
            }
            return y;
        };
        v = apply_exponential(gen, v, 2.0 * std::abs(mu) * std::sqrt(double(dim)));
    }
    v /= v.norm();
    return v;
}

} // namespace

FockDensityMatrix fock_squeezed_state(double r, double theta, int dim) {
    return fock_displaced_squeezed_state(r, theta, Complex(0.0, 0.0), dim);
}

FockDensityMatrix fock_displaced_squeezed_state(double r, double theta, Complex mu,
                                                int dim) {
    if (r < 0.0) throw InvalidArgument("fock_squeezed_state: r must be >= 0");
    const double needed = 10.0 + 8.0 * std::exp(2.0 * r);
    if (dim < needed)
        throw TruncationError("fock_squeezed_state: dim below 10 + 8 e^{2r}",
                              static_cast<int>(std::ceil(needed)));
    const CVector v = squeezed_coherent_vector(r, theta, mu, dim);
    return FockDensityMatrix(v * v.adjoint());
}

FockDensityMatrix fock_coherent_state(Complex mu, int dim) {
    return fock_displaced_squeezed_state(0.0, 0.0, mu, dim);
}

double default_time_step(const LindbladGenerator& gen, double t) {
    const int d = gen.dim;
    const double spectral_bound = 2.0 * std::abs(gen.omega) * (d - 1) +
                                  2.0 * std::abs(gen.xi) * d +
                                  2.0 * std::abs(gen.delta) * std::sqrt(double(d)) +
                                  (gen.gamma_u + gen.gamma_v) * d + 1.0;
    const double guard =
        0.05 / std::max({gen.gamma_u, gen.gamma_v, std::abs(gen.omega), std::abs(gen.xi),
                         std::abs(gen.delta), 1e-12});
    // well inside the RK4 stability region; the margin also keeps the
    // positivity error of near-pure states below the -1e-10 validation floor
    double dt = std::min(0.9 / spectral_bound, guard);
    if (t > 0.0) dt = std::min(dt, t);
    return dt;
}

FockDensityMatrix evolve_rho(const FockDensityMatrix& rho0, const LindbladGenerator& gen,
                             double t, double dt) {
    if (gen.dim != rho0.dim())
        throw InvalidArgument("evolve_rho: generator and state dims differ");
    if (t < 0.0 || !(dt > 0.0)) throw InvalidArgument("evolve_rho: t >= 0 and dt > 0");
    const double guard =
        0.05 / std::max({gen.gamma_u, gen.gamma_v, std::abs(gen.omega), std::abs(gen.xi),
                         1e-12});
    if (dt > guard * (1.0 + 1e-12))
        throw InvalidArgument("evolve_rho: dt exceeds 0.05/max(rates, |omega|, |Xi|)");
    if (t == 0.0) return rho0;

    const double step_target = std::min(dt, default_time_step(gen, t));
    const int steps = std::max(1, static_cast<int>(std::ceil(t / step_target)));
    const double h = t / steps;

    const StencilRhs rhs(gen);
    const int d = gen.dim;
    CMatrix rho = rho0.rho();
    CMatrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
    for (int n = 0; n < steps; ++n) {
        rhs(rho, k1);
        tmp = rho + (0.5 * h) * k1;
        rhs(tmp, k2);
        tmp = rho + (0.5 * h) * k2;
        rhs(tmp, k3);
        tmp = rho + h * k3;
        rhs(tmp, k4);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (n % 32 == 31) rho = 0.5 * (rho + rho.adjoint().eval());
        if (!rho.allFinite())
            throw NumericalError("evolve_rho: non-finite entries; reduce the step");
    }
    rho = 0.5 * (rho + rho.adjoint().eval());

    const double trace = rho.trace().real();
    if (std::abs(trace - 1.0) > 1e-9)
        throw NumericalError("evolve_rho: trace drift beyond 1e-9; reduce the step");
    rho /= trace;
    return FockDensityMatrix(std::move(rho));  // re-validates incl. truncation
}

FockMoments moments(const FockDensityMatrix& state) {
    const CMatrix& rho = state.rho();
    const int d = state.dim();
    const std::vector<double> sq = sqrt_table(d);
    FockMoments m;
    for (int n = 1; n < d; ++n) m.mean_b += sq[n] * rho(n, n - 1);
    for (int n = 2; n < d; ++n) m.mean_bb += sq[n] * sq[n - 1] * rho(n, n - 2);
    for (int n = 0; n < d; ++n) m.mean_n += n * rho(n, n).real();
    const double mean_x = 2.0 * m.mean_b.real();
    const double mean_xx = 2.0 * m.mean_bb.real() + 2.0 * m.mean_n + 1.0;
    m.x_variance = mean_xx - mean_x * mean_x;
    m.purity = rho.squaredNorm();
    return m;
}

} // namespace phonon
