#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "phonon/condensate.hpp"
#include "phonon/constants.hpp"
#include "phonon/errors.hpp"
#include "phonon/quadrature.hpp"
#include "phonon/rates.hpp"
#include "test_util.hpp"

using namespace phonon;
using doctest::Approx;

namespace {
const double kPi = 3.14159265358979323846;

CondensateSpec cold_elongated_rb() {
    // 200 pK, 1e13 cm^-3, L = 200 um elongated Rb condensate
    return rubidium_spec(1e13, 200e-12, 200e-6, 1.0 / 3.0);
}
} // namespace

TEST_CASE("adaptive quadrature against a Simpson oracle") {
    auto f = [](double x) { return std::exp(-x) * std::sin(3.0 * x); };
    const QuadratureResult q = integrate_adaptive(f, 0.0, 5.0, 1e-10);
    const double oracle = test_util::simpson(f, 0.0, 5.0, 20000);
    CHECK(test_util::rel_diff(q.value, oracle) < 1e-9);
    CHECK(q.error < 1e-9 * std::abs(q.value));

    // exact on polynomials a single panel integrates exactly
    const QuadratureResult poly =
        integrate_adaptive([](double x) { return x * x * x - 2.0 * x; }, -1.0, 3.0, 1e-12);
    CHECK(poly.value == Approx(12.0).epsilon(1e-12));

    // budget exhaustion carries the best estimate
    try {
        integrate_adaptive([](double x) { return 1.0 / std::sqrt(x + 1e-300); }, 0.0, 1.0,
                           1e-14, 0.0, 3);
        CHECK(false);
    } catch (const QuadratureError& err) {
        CHECK(err.estimate > 1.0);
        CHECK(err.error_bound > 0.0);
    }

    CHECK_THROWS_AS(integrate_adaptive([](double) { return 0.0; }, 1.0, 0.0, 1e-8),
                    InvalidArgument);
}

TEST_CASE("three-body gamma") {
    CHECK(three_body_gamma(5.8e-30, 1e14) == Approx(0.174).epsilon(1e-12));
    CHECK(three_body_gamma(4e-30, 1e14) == Approx(0.12).epsilon(1e-12));
    CHECK(three_body_gamma(5.8e-30, 1e13) == Approx(1.74e-3).epsilon(1e-12));
    // quadratic scaling
    CHECK(three_body_gamma(5.8e-30, 1e14 / std::sqrt(10.0)) ==
          Approx(0.0174).epsilon(1e-12));
    CHECK_THROWS_AS(three_body_gamma(-1.0, 1e14), InvalidArgument);
}

TEST_CASE("loss channel rates") {
    const ChannelRates free_limit = loss_channel_rates(0.7, 1.0, 0.0);
    CHECK(free_limit.gamma_plus == Approx(0.7).epsilon(1e-14));
    CHECK(free_limit.gamma_minus == Approx(0.7).epsilon(1e-14));

    // xi k = 1: gamma_+ = (sqrt(3) + 1/sqrt(3))/2 gamma
    const double s = std::pow(3.0, 0.25);
    const double alpha = 0.5 * (1.0 / s + s);
    const double beta = 0.5 * (1.0 / s - s);
    const ChannelRates mid = loss_channel_rates(1.0, alpha, beta);
    CHECK(mid.gamma_plus == Approx(1.1547005383792515).epsilon(1e-10));
    CHECK(mid.gamma_minus == Approx(1.0).epsilon(1e-14));

    // phonon limit gamma_+ ~ gamma / (sqrt(2) xi k)
    const CondensateSpec rb = rubidium_spec(1e13);
    const double xi = healing_length(rb);
    const double k = 1e-3 / xi;
    const auto [a, b] = bogoliubov_coefficients(k, rb);
    const ChannelRates ph = loss_channel_rates(1.0, a, b);
    CHECK(test_util::rel_diff(ph.gamma_plus, 1.0 / (std::sqrt(2.0) * xi * k)) < 1e-3);

    CHECK_THROWS_AS(loss_channel_rates(1.0, 1.2, 0.1), InvalidArgument);
}

TEST_CASE("Landau low-temperature asymptote") {
    const CondensateSpec spec = cold_elongated_rb();
    const double k1 = kPi / spec.length;

    CondensateSpec cold = spec;
    cold.temperature = 0.0;
    CHECK(landau_rate_lowT(k1, cold) == 0.0);

    // T^4 law
    CondensateSpec warm = spec;
    warm.temperature *= 2.0;
    CHECK(landau_rate_lowT(k1, warm) ==
          Approx(16.0 * landau_rate_lowT(k1, spec)).epsilon(1e-12));

    // reference cold elongated Rb condensate, n = 1: the reported rate is
    // ~5e-6 1/s; the asymptote evaluates slightly above twice that.
    const double low = landau_rate_lowT(k1, spec);
    CHECK(low == Approx(1.0361438414090387e-05).epsilon(1e-10));
    CHECK(low / 5e-6 > 0.5);
    CHECK(low / 5e-6 < 2.1);
}

TEST_CASE("Landau full integral") {
    const CondensateSpec spec = cold_elongated_rb();
    const double k1 = kPi / spec.length;

    CHECK(landau_rate_full(k1, spec.temperature == 0.0 ? spec : [] {
        CondensateSpec c = cold_elongated_rb();
        c.temperature = 0.0;
        return c;
    }()) == 0.0);

    // quartic suppression survives in the full integral
    CondensateSpec colder = spec;
    colder.temperature = spec.temperature / 10.0;
    const double tiny = landau_rate_full(k1, colder);
    const double full = landau_rate_full(k1, spec);
    CHECK(tiny / full ==
          Approx(1e-4).epsilon(0.05));  // (T/10)^4 up to higher-order terms

    // the full integral reproduces the asymptote at matched k_B T / mu = 0.05
    const double mu = spec.atom_mass * sound_speed(spec) * sound_speed(spec);
    CondensateSpec matched = spec;
    matched.temperature = 0.05 * mu / constants::k_boltzmann;
    const double ratio = landau_rate_full(k1, matched) / landau_rate_lowT(k1, matched);
    CHECK(ratio > 0.2);
    CHECK(ratio < 2.0);
    CHECK(ratio == Approx(0.8907).epsilon(2e-3));

    // k enters only as a prefactor
    CHECK(landau_rate_full(2.0 * k1, spec) ==
          Approx(2.0 * landau_rate_full(k1, spec)).epsilon(1e-10));

    // against an independent Simpson evaluation of F_La
    const double eps = constants::k_boltzmann * spec.temperature / mu;
    auto f_la = [eps](double x) {
        if (x <= 0.0) return 0.0;
        const double u = std::sqrt(1.0 + 4.0 * eps * eps * x * x);
        const double bracket = 1.0 - 0.5 / u - 0.5 / (u * u);
        const double sh = std::sinh(x);
        return bracket * bracket / (4.0 * sh * sh);
    };
    const double f_simpson = 8.0 * std::sqrt(kPi) * test_util::simpson(f_la, 1e-9, 60.0, 60000);
    const double prefactor = 2.0 * std::sqrt(kPi) * constants::hbar * k1 *
                             spec.scattering_length * spec.scattering_length *
                             spec.density / spec.atom_mass;
    CHECK(test_util::rel_diff(full, prefactor * f_simpson) < 1e-7);
    CHECK(full == Approx(9.032341680883491e-06).epsilon(1e-7));
}

TEST_CASE("Beliaev rate") {
    const CondensateSpec spec = cold_elongated_rb();
    const double k1 = kPi / spec.length;

    CondensateSpec cold = spec;
    cold.temperature = 0.0;
    const double gamma0 = beliaev_rate(k1, cold);
    CHECK(gamma0 == Approx(1.0426834276788154e-10).epsilon(1e-10));

    // k^5 scaling at T = 0
    CHECK(beliaev_rate(2.0 * k1, cold) == Approx(32.0 * gamma0).epsilon(1e-10));

    // thermally corrected n = 1 value; reported rate is ~1e-9 1/s
    const double warm = beliaev_rate(k1, spec);
    CHECK(warm == Approx(1.476195569889708e-09).epsilon(1e-6));
    CHECK(warm / 1e-9 > 1.0 / 3.0);
    CHECK(warm / 1e-9 < 3.0);

    // monotone growth with temperature, always above the T = 0 rate
    double prev = gamma0;
    for (double t : {50e-12, 100e-12, 200e-12, 400e-12, 800e-12}) {
        CondensateSpec c = spec;
        c.temperature = t;
        const double rate = beliaev_rate(k1, c);
        CHECK(rate >= gamma0);
        CHECK(rate > prev);
        prev = rate;
    }

    // independent Simpson check of the thermal bracket
    const double a = constants::hbar * dispersion(k1, spec) /
                     (constants::k_boltzmann * spec.temperature);
    auto integrand = [a](double x) {
        if (x <= 0.0) return 0.0;
        return x * x * (x - 1.0) * (x - 1.0) / std::expm1(a * x);
    };
    const double bracket = 1.0 + 60.0 * test_util::simpson(integrand, 1e-12, 1.0, 20000);
    CHECK(test_util::rel_diff(warm, gamma0 * bracket) < 1e-7);

    CHECK_THROWS_AS(beliaev_rate(0.0, spec), InvalidArgument);
}

TEST_CASE("quadrature-backed rates converge as the tolerance shrinks") {
    const CondensateSpec spec = cold_elongated_rb();
    const double k1 = kPi / spec.length;
    for (double tol : {1e-6, 1e-8}) {
        const double coarse = landau_rate_full(k1, spec, tol);
        const double fine = landau_rate_full(k1, spec, 0.5 * tol);
        CHECK(std::abs(coarse - fine) <= tol * std::abs(coarse));
        const double b_coarse = beliaev_rate(k1, spec, tol);
        const double b_fine = beliaev_rate(k1, spec, 0.5 * tol);
        CHECK(std::abs(b_coarse - b_fine) <= tol * std::abs(b_coarse));
    }
}

TEST_CASE("thermal occupation") {
    CHECK(thermal_occupation(1.0, 0.0) == 0.0);

    // hbar omega / kB T = ln 2 gives exactly one quantum
    const double t = 1e-9;
    const double omega = std::log(2.0) * constants::k_boltzmann * t / constants::hbar;
    CHECK(thermal_occupation(omega, t) == Approx(1.0).epsilon(1e-12));

    // Rayleigh-Jeans regime: nbar ~ 1/x - 1/2
    const double omega_rj = 0.01 * constants::k_boltzmann * t / constants::hbar;
    CHECK(test_util::rel_diff(thermal_occupation(omega_rj, t), 1.0 / 0.01 - 0.5) < 1e-3);
    CHECK(thermal_occupation(omega_rj, t) == Approx(99.50083333194443).epsilon(1e-10));

    CHECK_THROWS_AS(thermal_occupation(0.0, 1.0), InvalidArgument);
}

TEST_CASE("combined rates") {
    const double s = std::pow(3.0, 0.25);
    const double alpha = 0.5 * (1.0 / s + s);
    const double beta = 0.5 * (1.0 / s - s);

    // bath off: reduces to the pure loss channel
    const DampingBudget loss_only = combined_rates(0.4, alpha, beta, 0.0, 0.0, 2.0);
    const ChannelRates direct = loss_channel_rates(0.4, alpha, beta);
    CHECK(loss_only.combined.gamma_u == Approx(direct.gamma_u).epsilon(1e-14));
    CHECK(loss_only.combined.gamma_v == Approx(direct.gamma_v).epsilon(1e-14));
    CHECK(loss_only.combined.gamma_minus == Approx(direct.gamma_minus).epsilon(1e-14));

    // zero-temperature bath: gamma_+ = gamma_- = gamma_L + gamma_B
    const DampingBudget bath_only = combined_rates(0.0, alpha, beta, 3e-6, 2e-9, 0.0);
    CHECK(bath_only.combined.gamma_plus == Approx(3e-6 + 2e-9).epsilon(1e-14));
    CHECK(bath_only.combined.gamma_minus == Approx(3e-6 + 2e-9).epsilon(1e-14));

    // gamma_minus is exactly independent of alpha, beta and nbar
    const double g1 = combined_rates(0.4, alpha, beta, 3e-6, 2e-9, 2.7).combined.gamma_minus;
    const double g2 = combined_rates(0.4, 5.0 / 3.0, 4.0 / 3.0, 3e-6, 2e-9, 0.1)
                          .combined.gamma_minus;
    CHECK(g1 == g2);

    // gamma_plus dominates gamma_minus
    const DampingBudget b = combined_rates(0.4, alpha, beta, 3e-6, 2e-9, 2.7);
    CHECK(b.combined.gamma_plus >= b.combined.gamma_minus);

    CHECK_THROWS_AS(combined_rates(-0.1, alpha, beta, 0.0, 0.0, 0.0), InvalidArgument);
}
