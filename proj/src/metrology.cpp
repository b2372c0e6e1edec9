#include "phonon/metrology.hpp"

#include <cmath>

#include "phonon/errors.hpp"

namespace phonon {

namespace {
constexpr double pi = 3.14159265358979323846;
constexpr double pure_threshold = 1e-9;
} // namespace

double qfi_gaussian(const QfiInput& input) {
    const auto n = input.sigma.rows();
    if (n == 0 || input.sigma.cols() != n)
        throw InvalidArgument("qfi_gaussian: sigma must be square");
    if (input.sigma_prime.rows() != n || input.sigma_prime.cols() != n ||
        input.d_prime.size() != n)
        throw InvalidArgument("qfi_gaussian: derivative shapes do not match sigma");
    if ((input.sigma - input.sigma.adjoint()).norm() >
        1e-10 * std::max(1.0, input.sigma.norm()))
        throw InvalidArgument("qfi_gaussian: sigma must be Hermitian");
    const double p = input.purity;
    if (!(p > 0.0) || p > 1.0 + pure_threshold)
        throw InvalidArgument("qfi_gaussian: purity must lie in (0, 1]");

    const CMatrix sigma_inv = input.sigma.inverse();
    const CMatrix ratio = sigma_inv * input.sigma_prime;
    const double trace_term =
        0.5 * (ratio * ratio).trace().real() / (1.0 + p * p);
    const double disp_term =
        2.0 * (input.d_prime.adjoint() * sigma_inv * input.d_prime)(0, 0).real();

    double purity_term = 0.0;
    if (p >= 1.0 - pure_threshold) {
        if (std::abs(input.purity_prime) >= 1e-12)
            throw SingularPurityError(
                "qfi_gaussian: purity ~ 1 with nonzero purity derivative");
        // pure state: the 2 P'^2 / (1 - P^4) term vanishes
    } else {
        purity_term = 2.0 * input.purity_prime * input.purity_prime /
                      (1.0 - std::pow(p, 4));
    }
    const double result = trace_term + purity_term + disp_term;
    if (result < -1e-12)
        throw NumericalError("qfi_gaussian: negative information; inconsistent inputs");
    return result;
}

FiniteDifferenceQfi qfi_finite_difference(
    const std::function<GaussianState(double)>& family, double theta0, double h) {
    if (h == 0.0) h = 1e-5 * std::max(1.0, std::abs(theta0));
    if (!(h > 0.0)) throw InvalidArgument("qfi_finite_difference: h must be > 0");

    const GaussianState center = family(theta0);

    auto central = [&](double step, CMatrix& sigma_prime, CVector& d_prime,
                       double& purity_prime) {
        const GaussianState hi = family(theta0 + step);
        const GaussianState lo = family(theta0 - step);
        sigma_prime = (hi.covariance() - lo.covariance()) / (2.0 * step);
        d_prime = (hi.displacement() - lo.displacement()) / (2.0 * step);
        purity_prime = (purity(hi) - purity(lo)) / (2.0 * step);
    };

    CMatrix s1, s2;
    CVector d1, d2;
    double p1 = 0.0, p2 = 0.0;
    central(h, s1, d1, p1);
    central(0.5 * h, s2, d2, p2);

    QfiInput in;
    in.sigma = center.covariance();
    // One Richardson halving on each O(h^2) central difference.
    in.sigma_prime = (4.0 * s2 - s1) / 3.0;
    in.d_prime = (4.0 * d2 - d1) / 3.0;
    in.purity = purity(center);
    in.purity_prime = (4.0 * p2 - p1) / 3.0;
    // Differences of a constant-purity family leave rounding noise that the
    // pure-state gate in qfi_gaussian would reject; snap it to zero.
    if (in.purity >= 1.0 - pure_threshold && std::abs(in.purity_prime) < 1e-6)
        in.purity_prime = 0.0;

    FiniteDifferenceQfi out;
    out.value = qfi_gaussian(in);
    out.step = h;
    return out;
}

double cramer_rao(double qfi) {
    if (!(qfi > 0.0))
        throw NoInformationError("cramer_rao: QFI must be positive");
    return 1.0 / std::sqrt(qfi);
}

SchemeResult qfi_displacement(double lambda_minus, double amplitude_mu,
                              DisplacementMode mode) {
    if (!(lambda_minus > 0.0))
        throw InvalidArgument("qfi_displacement: lambda_minus must be > 0");
    SchemeResult r;
    if (mode == DisplacementMode::amplitude) {
        r.qfi = 4.0 / lambda_minus;
        r.scheme = Scheme::displacement_amplitude;
        r.optimal_angle = 0.0;
    } else {
        if (!(amplitude_mu > 0.0))
            throw InvalidArgument("qfi_displacement: phase estimation needs mu > 0");
        r.qfi = 4.0 * amplitude_mu * amplitude_mu / lambda_minus;
        r.scheme = Scheme::displacement_phase;
        r.optimal_angle = 0.5 * pi;
    }
    r.delta_theta = cramer_rao(r.qfi);
    return r;
}

SchemeResult qfi_rotation(double lambda_minus, double lambda_plus) {
    if (!(lambda_minus > 0.0) || lambda_plus < lambda_minus)
        throw InvalidArgument("qfi_rotation: need 0 < lambda_- <= lambda_+");
    SchemeResult r;
    const double diff = lambda_plus - lambda_minus;
    r.qfi = diff * diff / (lambda_minus * lambda_plus + 1.0);
    r.delta_theta = r.qfi > 0.0 ? cramer_rao(r.qfi) : std::numeric_limits<double>::infinity();
    r.scheme = Scheme::rotation;
    return r;
}

SchemeResult qfi_squeezing(double lambda_minus, double lambda_plus, double phi_nu) {
    if (!(lambda_minus > 0.0) || !(lambda_plus > 0.0))
        throw InvalidArgument("qfi_squeezing: eigenvalues must be > 0");
    const double lm = lambda_minus, lp = lambda_plus;
    const double diff = lm - lp;
    SchemeResult r;
    r.qfi = (lm * lm + 6.0 * lm * lp + lp * lp - diff * diff * std::cos(4.0 * phi_nu)) /
            (2.0 * (lm * lp + 1.0));
    r.delta_theta = cramer_rao(r.qfi);
    r.scheme = Scheme::squeezing;
    r.optimal_angle = 0.25 * pi;
    return r;
}

SchemeResult qfi_continuous_squeezing(double lambda_minus, double lambda_plus,
                                      double phi, double t) {
    if (t < 0.0) throw InvalidArgument("qfi_continuous_squeezing: t must be >= 0");
    SchemeResult r = qfi_squeezing(lambda_minus, lambda_plus, phi);
    r.qfi *= t * t;
    r.delta_theta =
        r.qfi > 0.0 ? cramer_rao(r.qfi) : std::numeric_limits<double>::infinity();
    r.scheme = Scheme::continuous_squeezing;
    return r;
}

double sensitivity_displacement(double r, double gamma_plus, double t,
                                double d_prime_norm) {
    if (r < 0.0 || t < 0.0 || !(d_prime_norm > 0.0) || gamma_plus < 0.0)
        throw InvalidArgument("sensitivity_displacement: invalid arguments");
    return std::exp(-r) / (std::sqrt(2.0) * d_prime_norm) *
           std::sqrt(1.0 + std::exp(2.0 * r) * gamma_plus * t);
}

double sensitivity_rotation(double r, double gamma_plus, double t) {
    if (r < 0.0 || t < 0.0 || gamma_plus < 0.0)
        throw InvalidArgument("sensitivity_rotation: invalid arguments");
    return std::exp(-2.0 * r) * std::sqrt(2.0 + std::exp(2.0 * r) * gamma_plus * t);
}

} // namespace phonon
