// Acceptance suite: end-to-end checks of the library against its pinned
// physics targets, one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "phonon/condensate.hpp"
#include "phonon/dynamics.hpp"
#include "phonon/errors.hpp"
#include "phonon/fock.hpp"
#include "phonon/gaussian.hpp"
#include "phonon/metrology.hpp"
#include "phonon/rates.hpp"
#include "phonon/scenarios.hpp"

using namespace phonon;

namespace {

const double kPi = 3.14159265358979323846;

struct Criterion {
    int number;
    std::string label;
    double time_budget_s;
    std::function<void(std::vector<std::string>&)> body;  // push failures
};

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

// Rounds to one significant figure, the precision of the published
// estimates these checks target.
double one_sig_fig(double x) {
    const double mag = std::pow(10.0, std::floor(std::log10(std::abs(x))));
    return mag * std::round(x / mag);
}

void require(std::vector<std::string>& failures, bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
}

// ---------------------------------------------------------------------------
// 1. Rate table
void criterion_rates(std::vector<std::string>& failures) {
    const double rb14 = three_body_gamma(5.8e-30, 1e14);
    const double yb14 = three_body_gamma(4e-30, 1e14);
    require(failures, rel_diff(rb14, 0.174) < 1e-12, "gamma(Rb,1e14) != 0.174");
    require(failures, rel_diff(yb14, 0.12) < 1e-12, "gamma(Yb,1e14) != 0.12");
    require(failures, one_sig_fig(rb14) == 0.2, "Rb rate rounds away from 0.2");
    require(failures, one_sig_fig(yb14) == 0.1, "Yb rate rounds away from 0.1");

    for (double gamma : {three_body_gamma(5.8e-30, 1e13), three_body_gamma(4e-30, 1e13)}) {
        const double tau = 1.0 / gamma;
        require(failures, tau >= 500.0 && tau <= 1000.0,
                "inverse damping time at 1e13 outside [500, 1000] s");
    }
}

// ---------------------------------------------------------------------------
// 2. Gravity scenario
void criterion_gravity(std::vector<std::string>& failures) {
    ScenarioConfig config;
    config.species = Species::yb;
    config.density_cgs = 1e13;
    config.length = 300e-6;
    config.aspect_ratio = 1.0;
    config.mode_index = 10;
    config.drive_time = 10.0;
    const GravityResult res = scenario_gravity(config);

    const double spec_targets_g[3] = {73.6, 27.1, 1.35};
    const double reported_targets_g[3] = {70.0, 30.0, 1.0};
    for (int i = 0; i < 3; ++i) {
        const double r = res.squeezing[i];
        const double grams = res.detectable_mass_ideal[i] * 1000.0;
        require(failures, rel_diff(grams, 200.0 * std::exp(-r)) < 1e-12,
                "ideal mass differs from 200 e^{-r} g");
        require(failures, std::abs(grams - spec_targets_g[i]) <= 0.15 * spec_targets_g[i],
                "ideal mass beyond 15% of target");
        require(failures, one_sig_fig(grams) == reported_targets_g[i],
                "ideal mass off the reported value at one significant figure");
    }
    const double decohered_g = res.detectable_mass_decohered[2] * 1000.0;
    require(failures, decohered_g > 25.0 && decohered_g < 100.0,
            "decohered r=5 mass outside factor 2 of 50 g");
    require(failures,
            res.enhancement_factor[2] >= 2.5 && res.enhancement_factor[2] <= 5.0,
            "r=5 enhancement outside [2.5, 5]");
}

// ---------------------------------------------------------------------------
// 3. Damping curves
void criterion_damping(std::vector<std::string>& failures) {
    const CondensateSpec spec = rubidium_spec(1e13, 200e-12, 200e-6, 1.0 / 3.0);
    const double k1 = kPi / spec.length;

    const double landau = landau_rate_full(k1, spec);
    require(failures, landau / 5e-6 >= 0.5 && landau / 5e-6 <= 2.0,
            "Landau rate at n=1 outside factor 2 of 5e-6 1/s");

    CondensateSpec cold = spec;
    cold.temperature = 0.0;
    const double b1 = beliaev_rate(k1, cold);
    for (int n = 2; n <= 6; ++n) {
        const double bn = beliaev_rate(n * k1, cold);
        require(failures, rel_diff(bn, b1 * std::pow(n, 5)) < 1e-10,
                "Beliaev T=0 rate is not exactly n^5");
    }
    const double warm = beliaev_rate(k1, spec);
    require(failures, warm / 1e-9 >= 1.0 / 3.0 && warm / 1e-9 <= 3.0,
            "thermal Beliaev rate at n=1 outside factor 3 of 1e-9 1/s");

    ScenarioConfig config;
    config.species = Species::rb;
    config.density_cgs = 1e13;
    config.temperature = 200e-12;
    config.length = 200e-6;
    config.aspect_ratio = 1.0 / 3.0;
    const std::vector<DampingRow> rows = scenario_damping_curves(config, 1);
    require(failures, rows[0].gamma_plus / rows[0].gamma_minus > 5.0,
            "gamma_+/gamma_- at n=1 does not exceed 5");
}

// ---------------------------------------------------------------------------
// 4. Oracle equivalence
void criterion_oracle(std::vector<std::string>& failures) {
    std::mt19937 rng(20240508);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int worst_draw = -1;
    double worst = 0.0;

    for (int draw = 0; draw < 50; ++draw) {
        const double r = 1.5 * u01(rng);
        const double theta = kPi * u01(rng);
        const Complex mu =
            0.5 * u01(rng) * std::exp(Complex(0.0, 2.0 * kPi * u01(rng)));
        const double gu = 0.05 + 0.95 * u01(rng);
        const double gv = 0.95 * gu * u01(rng);
        const double omega = 2.0 * u01(rng);
        const double t = 0.1 + 2.9 * u01(rng);
        // cap the squeezing-driven growth so the truncated basis stays valid
        double xi_mag = 0.3 * u01(rng);
        if ((2.0 * xi_mag - (gu - gv)) * t > 0.3)
            xi_mag = std::min(0.3, 0.5 * ((gu - gv) + 0.3 / t));
        const Complex xi = xi_mag * std::exp(Complex(0.0, 2.0 * kPi * u01(rng)));

        // Fock side, doubling the basis on truncation errors
        FockMoments fock{};
        bool done = false;
        for (int dim = 61; dim <= 241 && !done; dim = 2 * (dim - 1) + 1) {
            if (dim < 10.0 + 8.0 * std::exp(2.0 * r)) continue;
            try {
                const LindbladGenerator gen =
                    build_generator(omega, xi, {0.0, 0.0}, gu, gv, dim);
                const FockDensityMatrix rho0 =
                    fock_displaced_squeezed_state(r, theta, mu, dim);
                const FockDensityMatrix rho =
                    evolve_rho(rho0, gen, t, default_time_step(gen, t));
                fock = moments(rho);
                done = true;
            } catch (const TruncationError&) {
                continue;
            }
        }
        if (!done) {
            failures.push_back("draw " + std::to_string(draw) +
                               ": truncated basis insufficient at N_max = 240");
            continue;
        }

        // Gaussian side
        BilinearHamiltonian h;
        h.omegas = {omega};
        h.squeezings = {xi};
        h.drives = {Complex(0.0, 0.0)};
        RateMatrices rates;
        rates.gamma_minus = {gu - gv};
        rates.gamma_plus = {gu + gv};
        const GaussianState g0 =
            displace(apply_unitary(vacuum_state(1), squeeze_matrix(r, theta)), 0, mu);
        const GaussianState g1 = evolve_general(g0, h, rates, t, 5e-4);

        const Complex d1 = g1.displacement()(0);
        const Complex mean_bb = 0.5 * g1.covariance()(0, 1) + d1 * d1;
        const double mean_n = 0.5 * (g1.covariance()(0, 0).real() - 1.0) + std::norm(d1);
        const double errs[5] = {std::abs(fock.mean_b - d1),
                                std::abs(fock.mean_bb - mean_bb),
                                std::abs(fock.mean_n - mean_n),
                                std::abs(fock.x_variance - quadrature_variance(g1, 0)),
                                std::abs(fock.purity - purity(g1))};
        for (double e : errs)
            if (e > worst) {
                worst = e;
                worst_draw = draw;
            }
    }
    require(failures, worst < 1e-5,
            "moment mismatch " + std::to_string(worst) + " at draw " +
                std::to_string(worst_draw) + " exceeds 1e-5");
    std::printf("    (criterion 4 worst moment deviation: %.3g)\n", worst);
}

// ---------------------------------------------------------------------------
// 5. QFI identities
void criterion_qfi(std::vector<std::string>& failures) {
    for (double r = 0.1; r <= 3.0 + 1e-12; r += 0.1) {
        const double n = std::sinh(r) * std::sinh(r);
        const double f = qfi_rotation(std::exp(-2.0 * r), std::exp(2.0 * r)).qfi;
        require(failures, rel_diff(f, 8.0 * n * (n + 1.0)) < 1e-10,
                "pure rotation QFI differs from 8 n (n+1)");
    }

    // every closed-form scheme against the finite-difference evaluation,
    // on a pure and on a decohered state
    RateMatrices rates;
    rates.gamma_minus = {0.2};
    rates.gamma_plus = {0.3};
    const GaussianState pure = apply_unitary(vacuum_state(1), squeeze_matrix(1.0, 0.0));
    const GaussianState mixed = evolve_rwa(pure, rates, 0.7);
    for (const GaussianState* state : {&pure, &mixed}) {
        const auto [lm, lp] = eigen_spectrum(*state, 0);
        const GaussianState& s = *state;

        const auto fd_rot = qfi_finite_difference(
            [&s](double th) { return apply_unitary(s, rotation_matrix(th)); }, 0.0);
        require(failures, rel_diff(fd_rot.value, qfi_rotation(lm, lp).qfi) < 1e-4,
                "rotation QFI vs finite differences");

        const auto fd_amp = qfi_finite_difference(
            [&s](double th) { return displace(s, 0, Complex(th, 0.0)); }, 0.0);
        require(failures,
                rel_diff(fd_amp.value,
                         qfi_displacement(lm, 0.0, DisplacementMode::amplitude).qfi) < 1e-4,
                "displacement-amplitude QFI vs finite differences");

        const double mu = 1.2;
        const auto fd_phase = qfi_finite_difference(
            [&s, mu](double th) {
                return displace(s, 0, mu * std::exp(Complex(0.0, kPi / 2.0 + th)));
            },
            0.0);
        require(failures,
                rel_diff(fd_phase.value,
                         qfi_displacement(lm, mu, DisplacementMode::phase).qfi) < 1e-4,
                "displacement-phase QFI vs finite differences");

        for (double phi : {kPi / 4.0, 0.3}) {
            const auto fd_sq = qfi_finite_difference(
                [&s, phi](double th) { return apply_unitary(s, squeeze_matrix(th, phi)); },
                0.0);
            require(failures, rel_diff(fd_sq.value, qfi_squeezing(lm, lp, phi).qfi) < 1e-4,
                    "squeezing QFI vs finite differences");
            const double t = 1.7;
            require(failures,
                    rel_diff(qfi_continuous_squeezing(lm, lp, phi, t).qfi,
                             t * t * fd_sq.value) < 1e-4,
                    "continuous-squeezing QFI vs t^2-scaled finite differences");
        }
    }

    // base-point independence of the rotation scheme
    const auto at0 = qfi_finite_difference(
        [&mixed](double th) { return apply_unitary(mixed, rotation_matrix(th)); }, 0.0);
    const auto at07 = qfi_finite_difference(
        [&mixed](double th) { return apply_unitary(mixed, rotation_matrix(th)); }, 0.7);
    require(failures, rel_diff(at0.value, at07.value) < 1e-6,
            "rotation QFI depends on the base point");
}

// ---------------------------------------------------------------------------
// 6. Decoherence laws
void criterion_decoherence(std::vector<std::string>& failures) {
    // short-time slope of the small eigenvalue
    {
        const double r = 1.0, gm = 0.21, gp = 0.37;
        const GaussianState s0 = apply_unitary(vacuum_state(1), squeeze_matrix(r, 0.0));
        RateMatrices rates;
        rates.gamma_minus = {gm};
        rates.gamma_plus = {gp};
        const double h = 1e-6 / gp;
        const double lam0 = eigen_spectrum(s0, 0).first;
        const double lam1 = eigen_spectrum(evolve_rwa(s0, rates, h), 0).first;
        const double lam2 = eigen_spectrum(evolve_rwa(s0, rates, 2.0 * h), 0).first;
        const double slope = (4.0 * lam1 - lam2 - 3.0 * lam0) / (2.0 * h);
        require(failures, rel_diff(slope, gp - std::exp(-2.0 * r) * gm) < 1e-4,
                "lambda_- slope differs from gamma_+ - e^{-2r} gamma_-");
    }

    // purity law within its validity window
    for (double r : {2.0, 2.5, 3.0}) {
        for (double x : {0.1, 0.5, 1.0}) {
            const double gp = 0.05;
            const double t = x * std::exp(-2.0 * r) / gp;
            RateMatrices rates;
            rates.gamma_minus = {gp};
            rates.gamma_plus = {gp};
            const GaussianState s = evolve_rwa(
                apply_unitary(vacuum_state(1), squeeze_matrix(r, 0.0)), rates, t);
            const double product =
                purity(s) * std::sqrt(1.0 + std::exp(2.0 * r) * gp * t);
            require(failures, std::abs(product - 1.0) < 0.02,
                    "P(t) sqrt(1 + e^{2r} gamma_+ t) off by more than 2%");
        }
    }

    // variance doubling time ~ x0/gamma (5% for small x0)
    for (double x0 : {0.005, 0.01, 0.02, 0.03}) {
        const double gamma = 0.7;
        // solve x(t) = 2 x0 exactly and compare with x0/gamma
        const double t_double = std::log((1.0 - x0) / (1.0 - 2.0 * x0)) / gamma;
        require(failures, rel_diff(t_double, x0 / gamma) < 0.05,
                "doubling time beyond 5% of x0/gamma");
        require(failures,
                std::abs(variance_pure_decay(x0, gamma, t_double) - 2.0 * x0) < 1e-12,
                "doubling-time inversion inconsistent with the decay law");
    }
}

// ---------------------------------------------------------------------------
// 7. Evolution invariants
void criterion_invariants(std::vector<std::string>& failures) {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int step = 0; step < 1000; ++step) {
        const double r = 1.5 * u01(rng);
        const double theta = kPi * u01(rng);
        GaussianState state =
            displace(apply_unitary(vacuum_state(1), squeeze_matrix(r, theta)), 0,
                     Complex(u01(rng) - 0.5, u01(rng) - 0.5));
        const double gm = 0.05 + 0.95 * u01(rng);
        const double gp = gm + u01(rng);
        RateMatrices rates;
        rates.gamma_minus = {gm};
        rates.gamma_plus = {gp};
        const double t1 = 2.0 * u01(rng), t2 = 2.0 * u01(rng);

        GaussianState evolved = evolve_rwa(state, rates, t1);
        if (step % 2 == 0) {
            // alternate with the general integrator (rotation + decay)
            BilinearHamiltonian h;
            h.omegas = {2.0 * u01(rng)};
            h.squeezings = {Complex(0.0, 0.0)};
            h.drives = {Complex(0.0, 0.0)};
            evolved = evolve_general(evolved, h, rates, t2, 0.01);
        } else {
            const GaussianState two_leg = evolve_rwa(evolved, rates, t2);
            const GaussianState one_leg = evolve_rwa(state, rates, t1 + t2);
            require(failures,
                    (two_leg.covariance() - one_leg.covariance()).norm() <
                        1e-10 * one_leg.covariance().norm(),
                    "semigroup violated");
            evolved = two_leg;
        }

        const CMatrix& sigma = evolved.covariance();
        require(failures, (sigma - sigma.adjoint()).norm() < 1e-12 * sigma.norm(),
                "Hermiticity lost");
        Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma, Eigen::EigenvaluesOnly);
        require(failures, es.eigenvalues().minCoeff() > 0.0, "positivity lost");
        double log_det = 0.0;
        for (int i = 0; i < es.eigenvalues().size(); ++i)
            log_det += std::log(es.eigenvalues()(i));
        require(failures, log_det > std::log(1.0 - 1e-9), "det Sigma below 1 - 1e-9");
        if (!failures.empty() && failures.size() > 20) return;  // enough detail
    }
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "three-body rate table (Rb/Yb, 1e14 and 1e13 cm^-3)", 1.0, criterion_rates},
        {2, "gravity-sensing detectable masses and enhancement", 1.0, criterion_gravity},
        {3, "Landau/Beliaev damping constants and noise ratio", 10.0, criterion_damping},
        {4, "Fock-oracle vs Gaussian moments, 50 randomized draws", 60.0,
         criterion_oracle},
        {5, "QFI closed forms vs general finite-difference QFI", 5.0, criterion_qfi},
        {6, "decoherence laws (eigenvalue slope, purity, doubling time)", 5.0,
         criterion_decoherence},
        {7, "semigroup/Hermiticity/positivity/det over 1000 steps", 10.0,
         criterion_invariants},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        std::vector<std::string> failures;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(failures);
        } catch (const std::exception& e) {
            failures.push_back(std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (elapsed > c.time_budget_s)
            failures.push_back("runtime " + std::to_string(elapsed) + " s exceeds " +
                               std::to_string(c.time_budget_s) + " s");
        if (failures.empty()) {
            std::printf("[PASS] criterion %d: %s (%.2f s)\n", c.number, c.label.c_str(),
                        elapsed);
        } else {
            ++failed;
            std::printf("[FAIL] criterion %d: %s (%.2f s)\n", c.number, c.label.c_str(),
                        elapsed);
            for (const std::string& f : failures) std::printf("       - %s\n", f.c_str());
        }
    }
    return failed;
}
