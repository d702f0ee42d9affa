// measures.hpp - coherence and correlation quantifiers for two-qubit states.
//
// All entropies are in bits.

#pragma once

#include "xxz/dynamics.hpp"

#include <array>

namespace xxz {

class ReducedState {
public:
    ReducedState() : m_(ComplexMatrix2::Identity() * 0.5) {}
    // Throws NotAState unless Hermitian, unit trace and PSD within 1e-10.
    explicit ReducedState(const ComplexMatrix2& m);

    const ComplexMatrix2& matrix() const noexcept { return m_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

private:
    ComplexMatrix2 m_;
};

enum class Subsystem { A, B };

// Reduced state of the kept qubit; A is the high bit of the basis index.
ReducedState partial_trace(const DensityMatrix& rho, Subsystem keep);

double l1_coherence(const DensityMatrix& rho);
double l1_coherence(const ReducedState& rho);

// C_l1(rho) - C_l1(rho_A) - C_l1(rho_B)
double correlated_coherence(const DensityMatrix& rho);

// Throws NotAState if an eigenvalue lies below -1e-9.
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const ReducedState& rho);

// -x log2 x - (1 - x) log2 (1 - x); inputs within 1e-9 of [0, 1] are clipped,
// anything further out throws DomainError.
double binary_entropy(double x);

struct DiscordBreakdown {
    double qd1{0.0};
    double qd2{0.0};
    double discord{0.0};              // min(qd1, qd2)
    std::array<double, 4> lambda{};   // populations, see xstate_populations
    double Lambda{0.5};
    double beta{0.0};                 // rho_11 + rho_33
};

// Eigenvalues of an X-state from its two 2x2 blocks, in the order
// (inner minus, inner plus, outer minus, outer plus). Throws ShapeError on
// non-X input.
std::array<double, 4> xstate_populations(const DensityMatrix& rho);

// True when every entry off the diagonal and anti-diagonal is below tol.
bool is_x_state(const DensityMatrix& rho, double tol = 1e-10) noexcept;

// Closed-form discord min(QD1, QD2) for X-states. Lambda uses the
// modulus sum (|rho_14| + |rho_23|).
DiscordBreakdown xstate_discord(const DensityMatrix& rho);

struct MeasurementGridSpec {
    int theta_points{64};   // inclusive grid on [0, pi]
    int phi_points{128};    // grid on [0, 2 pi)
    int refine_starts{8};   // best grid points handed to the local search
    double angle_tol{1e-6};
};

// Conditional entropy sum_i p_i S(rho_A|i) after measuring qubit B along the
// Bloch direction (theta, phi).
double conditional_entropy(const DensityMatrix& rho, double theta, double phi);

// Discord by direct minimization over rank-1 projective measurements on B:
// min conditional_entropy + S(rho_B) - S(rho).
double discord_bruteforce(const DensityMatrix& rho, const MeasurementGridSpec& grid = {});

} // namespace xxz
