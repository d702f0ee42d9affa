#include <doctest.h>

#include "oracles.hpp"
#include "xxz/error.hpp"
#include "xxz/measures.hpp"

#include <numbers>

using namespace xxz;
using namespace xxz::testing;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix bell_state() { return ewl_initial_state({InitialCase::Case1, 1.0, kPi / 2}); }

DensityMatrix maximally_mixed() { return DensityMatrix(ComplexMatrix4::Identity() * 0.25); }

DensityMatrix product_state(const ComplexMatrix2& a, const ComplexMatrix2& b) {
    ComplexMatrix4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return DensityMatrix(m);
}

} // namespace

TEST_CASE("partial_trace of the maximally mixed and Bell states") {
    for (const DensityMatrix& rho : {maximally_mixed(), bell_state()}) {
        for (Subsystem s : {Subsystem::A, Subsystem::B}) {
            const ReducedState r = partial_trace(rho, s);
            CHECK((r.matrix() - ComplexMatrix2::Identity() * 0.5).cwiseAbs().maxCoeff() < 1e-15);
        }
    }
}

TEST_CASE("partial_trace distinguishes the subsystems") {
    ComplexMatrix2 a;
    a << 0.8, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.2;
    ComplexMatrix2 b;
    b << 0.3, 0.0, 0.0, 0.7;
    const DensityMatrix rho = product_state(a, b);
    CHECK((partial_trace(rho, Subsystem::A).matrix() - a).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((partial_trace(rho, Subsystem::B).matrix() - b).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("partial_trace of X-states is exactly diagonal") {
    Rng rng(31);
    for (int n = 0; n < 1000; ++n) {
        const DensityMatrix rho = rng.x_state();
        for (Subsystem s : {Subsystem::A, Subsystem::B}) {
            const ReducedState r = partial_trace(rho, s);
            CHECK(r(0, 1) == Complex(0.0, 0.0));
            CHECK(l1_coherence(r) == 0.0);
        }
        CHECK(correlated_coherence(rho) == l1_coherence(rho));
    }
}

TEST_CASE("l1_coherence examples") {
    ComplexMatrix4 d = ComplexMatrix4::Zero();
    d.diagonal() << 0.1, 0.2, 0.3, 0.4;
    CHECK(l1_coherence(DensityMatrix(d)) == 0.0);
    CHECK(l1_coherence(ewl_initial_state({InitialCase::Case1, 0.7, kPi / 4})) ==
          doctest::Approx(0.494974746830583).epsilon(1e-12));
    CHECK(l1_coherence(bell_state()) == doctest::Approx(1.0));
}

TEST_CASE("correlated_coherence removes local coherence") {
    ComplexMatrix2 plus;
    plus << 0.5, 0.5, 0.5, 0.5;
    ComplexMatrix2 diag;
    diag << 0.4, 0.0, 0.0, 0.6;
    CHECK(std::abs(correlated_coherence(product_state(diag, diag))) < 1e-15);
    const DensityMatrix pp = product_state(plus, plus);
    CHECK(l1_coherence(pp) == doctest::Approx(3.0));
    CHECK(correlated_coherence(pp) == doctest::Approx(1.0));
}

TEST_CASE("correlated_coherence: steady baseline, case 1") {
    const DensityMatrix rho = evolve_spectral(ewl_initial_state({InitialCase::Case1, 0.7, kPi / 4}),
                                              spectral_decomposition(baseline_params()), 0.05, 1e4 / 0.05);
    CHECK(correlated_coherence(rho) == doctest::Approx(0.095).epsilon(0.001 / 0.095));
}

TEST_CASE("correlated_coherence equals the closed-form expression") {
    Rng rng(32);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const InitialStateSpec spec = rng.ewl();
        const ModelParams m = rng.params();
        const double g = rng.uniform(0, 0.2);
        const double t = rng.uniform(0, 10);
        const DensityMatrix rho = evolve_spectral(ewl_initial_state(spec), spectral_decomposition(m), g, t);
        const double expected = reference_correlated_coherence(spec.which, spec.p, spec.theta, m, g, t);
        worst = std::max(worst, std::abs(correlated_coherence(rho) - expected));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("von_neumann_entropy examples") {
    CHECK(std::abs(von_neumann_entropy(bell_state())) < 1e-12);
    CHECK(std::abs(von_neumann_entropy(maximally_mixed()) - 2.0) < 1e-12);
    CHECK(std::abs(von_neumann_entropy(ReducedState()) - 1.0) < 1e-12);
    CHECK_THROWS_AS(ReducedState(ComplexMatrix2::Identity()), NotAState);
}

TEST_CASE("binary_entropy") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(-5e-10) == 0.0);
    CHECK(binary_entropy(1.0 + 5e-10) == 0.0);
    CHECK(binary_entropy(0.11) == doctest::Approx(0.499916).epsilon(1e-6 / 0.5));
    for (double x : {1e-6, 0.11, 0.3, 0.77, 0.999}) CHECK(std::abs(binary_entropy(x) - reference_binary_entropy(x)) < 1e-14);
    CHECK_THROWS_AS(binary_entropy(-1e-8), DomainError);
    CHECK_THROWS_AS(binary_entropy(1.0 + 1e-8), DomainError);
    CHECK_THROWS_AS(binary_entropy(std::nan("")), DomainError);
}

TEST_CASE("xstate_discord examples") {
    CHECK(std::abs(xstate_discord(maximally_mixed()).discord) < 1e-12);
    CHECK(xstate_discord(bell_state()).discord == doctest::Approx(1.0).epsilon(1e-12));
    for (InitialCase c : {InitialCase::Case1, InitialCase::Case2}) {
        const DiscordBreakdown d = xstate_discord(ewl_initial_state({c, 0.7, kPi / 4}));
        CHECK(d.discord == doctest::Approx(0.262).epsilon(0.002 / 0.262));
    }
}

TEST_CASE("xstate_discord rejects non-X states") {
    CHECK_THROWS_AS(xstate_discord(Rng(33).generic_state()), ShapeError);
}

TEST_CASE("xstate_discord breakdown invariants") {
    Rng rng(34);
    for (int n = 0; n < 1000; ++n) {
        const DensityMatrix rho = rng.x_state();
        const DiscordBreakdown d = xstate_discord(rho);
        CHECK(d.discord == std::min(d.qd1, d.qd2));
        CHECK(d.discord >= 0.0);
        CHECK(d.discord <= 1.0);
        CHECK(std::abs(d.lambda[0] + d.lambda[1] + d.lambda[2] + d.lambda[3] - 1.0) < 1e-10);
        CHECK(d.beta == doctest::Approx(rho(0, 0).real() + rho(2, 2).real()));
        const auto numeric = state_eigenvalues(rho);
        const auto mine = sorted(d.lambda);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(mine[k] - numeric[k]) < 1e-12);
        const double l1 = l1_coherence(rho);
        CHECK(l1 >= 0.0);
        CHECK(l1 <= 3.0);
    }
}

TEST_CASE("discord_bruteforce examples") {
    CHECK(std::abs(discord_bruteforce(maximally_mixed())) < 1e-9);
    CHECK(std::abs(discord_bruteforce(bell_state()) - 1.0) < 1e-6);
}

TEST_CASE("discord_bruteforce agrees with the X-state formula") {
    Rng rng(35);
    for (int n = 0; n < 150; ++n) {
        const DensityMatrix rho = rng.x_state();
        const double brute = discord_bruteforce(rho);
        const double closed = xstate_discord(rho).discord;
        CHECK(closed >= brute - 1e-9);
        CHECK(closed <= brute + 3e-3);
    }
}

TEST_CASE("discord_bruteforce is invariant under local phase rotations") {
    Rng rng(36);
    for (int n = 0; n < 20; ++n) {
        const DensityMatrix rho = rng.generic_state();
        const double phi = rng.uniform(0, 2 * kPi);
        const double psi = rng.uniform(0, 2 * kPi);
        Eigen::Vector4cd phases(1.0, std::polar(1.0, psi), std::polar(1.0, phi), std::polar(1.0, phi + psi));
        const ComplexMatrix4 u = phases.asDiagonal();
        const DensityMatrix rotated(u * rho.matrix() * u.adjoint());
        CHECK(std::abs(discord_bruteforce(rho) - discord_bruteforce(rotated)) < 1e-6);
    }
}

TEST_CASE("discord_bruteforce on generic states stays in range") {
    Rng rng(37);
    for (int n = 0; n < 20; ++n) {
        const double d = discord_bruteforce(rng.generic_state());
        CHECK(d >= -1e-9);
        CHECK(d <= 1.0 + 1e-9);
    }
}

TEST_CASE("conditional_entropy of a z measurement on a diagonal state") {
    ComplexMatrix4 m = ComplexMatrix4::Zero();
    m.diagonal() << 0.1, 0.2, 0.3, 0.4;
    const DensityMatrix rho(m);
    // B = 0 branch: A populations (0.1, 0.3)/0.4; B = 1 branch: (0.2, 0.4)/0.6.
    const double expected = 0.4 * reference_binary_entropy(0.25) + 0.6 * reference_binary_entropy(1.0 / 3.0);
    CHECK(conditional_entropy(rho, 0.0, 0.0) == doctest::Approx(expected).epsilon(1e-13));
}
