#include "phonon/rates.hpp"

#include <cmath>

#include "phonon/constants.hpp"
#include "phonon/errors.hpp"
#include "phonon/quadrature.hpp"

namespace phonon {

namespace {
constexpr double pi = 3.14159265358979323846;

void check_rate_consistency(const ChannelRates& r) {
    const double scale = std::max(1.0, r.gamma_plus);
    if (r.gamma_u < 0.0 || r.gamma_v < 0.0)
        throw InvalidArgument("ChannelRates: gamma_u and gamma_v must be >= 0");
    if (r.gamma_plus < std::abs(r.gamma_minus) - 1e-9 * scale)
        throw InvalidArgument("ChannelRates: gamma_plus must dominate |gamma_minus|");
    if (std::abs(r.gamma_minus - (r.gamma_u - r.gamma_v)) > 1e-9 * scale ||
        std::abs(r.gamma_plus - (r.gamma_u + r.gamma_v)) > 1e-9 * scale)
        throw InvalidArgument("ChannelRates: inconsistent gamma_minus/gamma_plus");
}
} // namespace

ChannelRates ChannelRates::from_uv(double gamma_u, double gamma_v) {
    ChannelRates r;
    r.gamma_u = gamma_u;
    r.gamma_v = gamma_v;
    r.gamma_minus = gamma_u - gamma_v;
    r.gamma_plus = gamma_u + gamma_v;
    r.validate();
    return r;
}

void ChannelRates::validate() const { check_rate_consistency(*this); }

double three_body_gamma(double d_cgs, double rho_cgs) {
    if (d_cgs < 0.0 || !(rho_cgs > 0.0))
        throw InvalidArgument("three_body_gamma: D >= 0 and rho > 0 required");
    return 3.0 * d_cgs * rho_cgs * rho_cgs;
}

ChannelRates loss_channel_rates(double gamma, double alpha, double beta) {
    if (gamma < 0.0) throw InvalidArgument("loss_channel_rates: gamma must be >= 0");
    if (std::abs(alpha * alpha - beta * beta - 1.0) > 1e-8)
        throw InvalidArgument("loss_channel_rates: alpha^2 - beta^2 = 1 violated");
    ChannelRates r;
    r.gamma_u = alpha * alpha * gamma;
    r.gamma_v = beta * beta * gamma;
    r.gamma_minus = gamma;  // (alpha^2 - beta^2) gamma, exact under normalization
    r.gamma_plus = (alpha * alpha + beta * beta) * gamma;
    r.validate();
    return r;
}

double landau_rate_lowT(double k, const CondensateSpec& spec) {
    spec.validate();
    if (k < 0.0) throw InvalidArgument("landau_rate_lowT: k must be >= 0");
    if (spec.temperature == 0.0) return 0.0;
    const double c0 = sound_speed(spec);
    const double kbt = constants::k_boltzmann * spec.temperature;
    return (3.0 * pi * pi * pi / 40.0) * k * std::pow(kbt, 4) /
           (spec.density * std::pow(constants::hbar, 3) * spec.atom_mass * std::pow(c0, 4));
}

double landau_rate_full(double k, const CondensateSpec& spec, double quad_tol) {
    spec.validate();
    if (k < 0.0) throw InvalidArgument("landau_rate_full: k must be >= 0");
    if (spec.temperature == 0.0) return 0.0;
    const double c0 = sound_speed(spec);
    const double mu = spec.atom_mass * c0 * c0;  // chemical potential m c0^2
    const double eps = constants::k_boltzmann * spec.temperature / mu;

    // Integrand of F_La over x in [0, inf). The bracket
    // 1 - 1/(2u) - 1/(2u^2) is evaluated as q(2u+1) / (2u^2(u+1)) with
    // q = 4 eps^2 x^2 = u^2 - 1, which avoids cancellation at small x.
    auto integrand_x = [eps](double x) {
        if (x <= 0.0 || x > 300.0) return 0.0;
        const double q = 4.0 * eps * eps * x * x;
        const double u = std::sqrt(1.0 + q);
        const double bracket = q * (2.0 * u + 1.0) / (2.0 * u * u * (u + 1.0));
        const double sh = std::sinh(x);
        return bracket * bracket / (4.0 * sh * sh);
    };
    // Map to a finite interval with x = tan(s).
    auto integrand_s = [&integrand_x](double s) {
        const double c = std::cos(s);
        if (c < 1e-12) return 0.0;
        const double x = std::tan(s);
        if (x > 300.0) return 0.0;
        return integrand_x(x) / (c * c);
    };
    const QuadratureResult q =
        integrate_adaptive(integrand_s, 0.0, 0.5 * pi, quad_tol);
    const double f_la = 8.0 * std::sqrt(pi) * q.value;
    return 2.0 * std::sqrt(pi) * constants::hbar * k * spec.scattering_length *
           spec.scattering_length * spec.density / spec.atom_mass * f_la;
}

double beliaev_rate(double k, const CondensateSpec& spec, double quad_tol) {
    spec.validate();
    if (!(k > 0.0)) throw InvalidArgument("beliaev_rate: k must be > 0");
    const double gamma0 = 3.0 * constants::hbar * std::pow(k, 5) /
                          (640.0 * pi * spec.atom_mass * spec.density);
    if (spec.temperature == 0.0) return gamma0;
    const double a =
        constants::hbar * dispersion(k, spec) / (constants::k_boltzmann * spec.temperature);
    auto integrand = [a](double x) {
        if (x <= 0.0) return 0.0;
        const double poly = (x - 1.0) * (x - 1.0);
        if (x < 1e-6) return x * poly / a;  // series limit of x^2/(e^{ax}-1)
        if (a * x > 700.0) return 0.0;
        return x * x * poly / std::expm1(a * x);
    };
    const QuadratureResult q = integrate_adaptive(integrand, 0.0, 1.0, quad_tol);
    return gamma0 * (1.0 + 60.0 * q.value);
}

double thermal_occupation(double omega, double temperature) {
    if (!(omega > 0.0)) throw InvalidArgument("thermal_occupation: omega must be > 0");
    if (temperature < 0.0) throw InvalidArgument("thermal_occupation: T must be >= 0");
    if (temperature == 0.0) return 0.0;
    const double x = constants::hbar * omega / (constants::k_boltzmann * temperature);
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

DampingBudget combined_rates(double gamma_3b, double alpha, double beta,
                             double gamma_landau, double gamma_beliaev, double nbar) {
    if (gamma_3b < 0.0 || gamma_landau < 0.0 || gamma_beliaev < 0.0 || nbar < 0.0)
        throw InvalidArgument("combined_rates: rates and nbar must be >= 0");
    const double bath = gamma_landau + gamma_beliaev;
    DampingBudget budget;
    budget.gamma_3b = gamma_3b;
    budget.gamma_landau = gamma_landau;
    budget.gamma_beliaev = gamma_beliaev;
    budget.thermal_occupation = nbar;
    ChannelRates& c = budget.combined;
    c.gamma_u = alpha * alpha * gamma_3b + (nbar + 1.0) * bath;
    c.gamma_v = beta * beta * gamma_3b + nbar * bath;
    // gamma_minus reduces to the channel sum identically (alpha^2 - beta^2 = 1
    // and the nbar terms cancel); build it that way so it is exactly
    // independent of alpha, beta, nbar.
    c.gamma_minus = gamma_3b + bath;
    c.gamma_plus = c.gamma_u + c.gamma_v;
    c.validate();
    return budget;
}

} // namespace phonon
