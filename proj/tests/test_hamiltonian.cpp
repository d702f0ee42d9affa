#include <doctest.h>

#include "oracles.hpp"
#include "xxz/error.hpp"
#include "xxz/hamiltonian.hpp"

#include <limits>

using namespace xxz;
using namespace xxz::testing;

TEST_CASE("build_hamiltonian: all couplings off gives the zero matrix") {
    CHECK(build_hamiltonian({0, 0, 0, 0, 0}).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("build_hamiltonian: pure ZZ coupling") {
    const ComplexMatrix4 h = build_hamiltonian({0, 1, 0, 0, 0});
    ComplexMatrix4 expected = ComplexMatrix4::Zero();
    expected.diagonal() << 1, -1, -1, 1;
    CHECK(max_abs_diff(h, expected) == 0.0);
}

TEST_CASE("build_hamiltonian: entry template") {
    const ComplexMatrix4 h = build_hamiltonian({0.5, 0.3, 0.1, 0.1, 0.5});
    CHECK(std::abs(h(0, 3) - Complex(0, -1.0)) < 1e-15);
    CHECK(std::abs(h(3, 0) - Complex(0, 1.0)) < 1e-15);
    CHECK(std::abs(h(1, 2) - Complex(1.0, 0.2)) < 1e-15);
    CHECK(std::abs(h(2, 1) - Complex(1.0, -0.2)) < 1e-15);
    CHECK(h(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(h(3, 3).real() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(h(1, 1).real() == doctest::Approx(-0.3));
    CHECK(max_abs_diff(h, h.adjoint()) < 1e-12);
}

TEST_CASE("build_hamiltonian: invalid input") {
    CHECK_THROWS_AS(build_hamiltonian({std::numeric_limits<double>::quiet_NaN(), 0, 0, 0, 0}), InvalidInput);
    CHECK_THROWS_AS(build_hamiltonian({0, std::numeric_limits<double>::infinity(), 0, 0, 0}), InvalidInput);
    CHECK_THROWS_AS(build_hamiltonian({0, 0, -0.1, 0, 0}), InvalidInput);
    CHECK_THROWS_AS(spectral_decomposition({0, 0, 0, 0, std::numeric_limits<double>::infinity()}), InvalidInput);
}

TEST_CASE("spectral_decomposition: zero Hamiltonian returns the computational basis") {
    const Spectrum s = spectral_decomposition({0, 0, 0, 0, 0});
    for (double v : s.values) CHECK(v == 0.0);
    CHECK(max_abs_diff(s.vectors, ComplexMatrix4::Identity()) == 0.0);
}

TEST_CASE("spectral_decomposition: degenerate chi = omega values") {
    const ModelParams m{0.5, 0.0, 0.1, 0.1, 0.5};
    CHECK(m.chi() == doctest::Approx(1.019803902718557).epsilon(1e-14));
    CHECK(m.omega() == doctest::Approx(1.019803902718557).epsilon(1e-14));
    const Spectrum s = spectral_decomposition(m);
    const auto numeric = numeric_eigenvalues(build_hamiltonian(m));
    const auto mine = sorted(s.values);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(mine[k] - numeric[k]) < 1e-10);
    CHECK(s.values[0] == doctest::Approx(1.019804).epsilon(1e-6));
    CHECK(s.values[3] == doctest::Approx(-1.019804).epsilon(1e-6));
}

TEST_CASE("spectral_decomposition: omega = 0 block keeps the basis vectors") {
    const ModelParams m{0, 0.3, 0.2, 0, 0};
    const Spectrum s = spectral_decomposition(m);
    CHECK(m.chi() == doctest::Approx(0.4));
    CHECK(m.omega() == 0.0);
    CHECK(s.values[0] == doctest::Approx(0.7));
    CHECK(s.values[1] == doctest::Approx(-0.3));
    CHECK(s.values[2] == doctest::Approx(-0.3));
    CHECK(s.values[3] == doctest::Approx(-0.1));
    const auto numeric = numeric_eigenvalues(build_hamiltonian(m));
    const auto mine = sorted(s.values);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(mine[k] - numeric[k]) < 1e-10);
    CHECK(std::abs(s.vectors(1, 1) - 1.0) < 1e-15);
    CHECK(std::abs(s.vectors(2, 2) - 1.0) < 1e-15);
}

TEST_CASE("spectral_decomposition: matches the analytic eigenvectors up to phase") {
    // u_1 and u_2 as printed, away from the singular branches.
    const ModelParams m{0.7, 0.2, 0.3, -0.4, 0.6};
    const Spectrum s = spectral_decomposition(m);
    const double chi = m.chi();
    const double om = m.omega();
    ComplexVector4 u1 = ComplexVector4::Zero();
    u1(0) = 1.0;
    u1(3) = Complex(0, 2 * m.Gamma_z) / (chi + 2 * m.B);
    u1 *= std::sqrt((chi + 2 * m.B) / (2 * chi));
    ComplexVector4 u2 = ComplexVector4::Zero();
    u2(1) = 1.0;
    u2(2) = Complex(2 * m.J, -2 * m.Dz) / om;
    u2 /= std::sqrt(2.0);
    CHECK(std::abs(std::abs(u1.dot(s.vector(0))) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(u2.dot(s.vector(1))) - 1.0) < 1e-12);
}

TEST_CASE("spectral_decomposition: largest component is real-positive") {
    Rng rng(7);
    for (int n = 0; n < 200; ++n) {
        const Spectrum s = spectral_decomposition(rng.params());
        for (int j = 0; j < 4; ++j) {
            const ComplexVector4 v = s.vector(j);
            // Ties within 1e-12 resolve to the first component.
            const double top = v.cwiseAbs().maxCoeff();
            int arg = 0;
            while (std::abs(v(arg)) < top * (1.0 - 1e-12)) ++arg;
            const Complex pivot = v(arg);
            CHECK(pivot.real() > 0.0);
            CHECK(std::abs(pivot.imag()) < 1e-12);
        }
    }
}

TEST_CASE("spectral_decomposition: invariants on 1000 random draws") {
    Rng rng(2024);
    double worst_orth = 0, worst_resid = 0, worst_vals = 0, worst_recon = 0, worst_block = 0;
    for (int n = 0; n < 1000; ++n) {
        const ModelParams m = rng.params();
        const ComplexMatrix4 h = build_hamiltonian(m);
        const Spectrum s = spectral_decomposition(m);

        worst_orth = std::max(worst_orth, max_abs_diff(s.vectors.adjoint() * s.vectors, ComplexMatrix4::Identity()));
        ComplexMatrix4 recon = ComplexMatrix4::Zero();
        for (int j = 0; j < 4; ++j) {
            const ComplexVector4 u = s.vector(j);
            worst_resid = std::max(worst_resid, (h * u - s.values[j] * u).norm());
            recon += s.values[j] * u * u.adjoint();
        }
        worst_recon = std::max(worst_recon, max_abs_diff(recon, h));

        const std::array<double, 4> expected{m.Jz + m.chi(), -m.Jz + m.omega(), -m.Jz - m.omega(), m.Jz - m.chi()};
        for (int j = 0; j < 4; ++j) worst_vals = std::max(worst_vals, std::abs(s.values[j] - expected[j]));
        const auto numeric = numeric_eigenvalues(h);
        const auto mine = sorted(s.values);
        for (int j = 0; j < 4; ++j) worst_vals = std::max(worst_vals, std::abs(mine[j] - numeric[j]));

        for (int j : {0, 3}) worst_block = std::max({worst_block, std::abs(s.vectors(1, j)), std::abs(s.vectors(2, j))});
        for (int j : {1, 2}) worst_block = std::max({worst_block, std::abs(s.vectors(0, j)), std::abs(s.vectors(3, j))});
    }
    CHECK(worst_orth < 1e-10);
    CHECK(worst_resid < 1e-10);
    CHECK(worst_vals < 1e-10);
    CHECK(worst_recon < 1e-10);
    CHECK(worst_block < 1e-12);
}

TEST_CASE("spectral_decomposition: near-singular limits stay orthonormal") {
    for (const ModelParams& m : {ModelParams{0.5, 0.2, 0.3, 0.1, 1e-14}, ModelParams{0.5, 0.2, 0.0, 0.1, 1e-9},
                                 ModelParams{1e-13, 0.2, 0.3, 0.0, 0.4}, ModelParams{0.0, 1.0, 0.0, 0.0, 0.0},
                                 ModelParams{-0.5, 0.2, 1e-300, -1e-300, 0.2}}) {
        const ComplexMatrix4 h = build_hamiltonian(m);
        const Spectrum s = spectral_decomposition(m);
        CHECK(s.vectors.allFinite());
        CHECK(max_abs_diff(s.vectors.adjoint() * s.vectors, ComplexMatrix4::Identity()) < 1e-10);
        for (int j = 0; j < 4; ++j) CHECK((h * s.vector(j) - s.values[j] * s.vector(j)).norm() < 1e-10);
    }
}
