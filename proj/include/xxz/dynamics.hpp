// dynamics.hpp - extended Werner-like initial states and Milburn evolution.
//
// Under intrinsic decoherence the eigenbasis coherence <u_j|rho|u_k> picks up
// exp(-(gamma t / 2)(V_j - V_k)^2 - i (V_j - V_k) t). evolve_spectral applies
// that directly; the closed-form, ODE and Kraus routes exist to check it.

#pragma once

#include "xxz/hamiltonian.hpp"

#include <cstddef>

namespace xxz {

// Validated two-qubit density matrix: Hermitian and unit trace within 1e-10,
// no eigenvalue below -1e-9.
class DensityMatrix {
public:
    static constexpr double kHermitianTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kPsdTol = 1e-9;

    DensityMatrix() : m_(ComplexMatrix4::Identity() * 0.25) {}
    // Throws NotAState if the matrix fails any of the checks above.
    explicit DensityMatrix(const ComplexMatrix4& m);

    const ComplexMatrix4& matrix() const noexcept { return m_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

    double purity() const;

private:
    ComplexMatrix4 m_;
};

enum class InitialCase {
    Case1, // cos(t/2)|dd> + sin(t/2)|uu>
    Case2, // cos(t/2)|du> + sin(t/2)|ud>
};

struct InitialStateSpec {
    InitialCase which{InitialCase::Case1};
    double p{1.0};     // purity, 0 <= p <= 1
    double theta{0.0}; // Bloch angle, 0 <= theta < pi

    void validate() const;
};

struct EvolutionSpec {
    ModelParams params;
    double gamma{0.0};
    double t{0.0};

    void validate() const;
};

// p |Psi><Psi| + (1 - p)/4 I
DensityMatrix ewl_initial_state(const InitialStateSpec& spec);

DensityMatrix evolve_spectral(const DensityMatrix& rho0, const Spectrum& spectrum,
                              double gamma, double t);

// Explicit X-matrix entries for an EWL preparation. Case1 requires chi > 1e-12
// and Case2 omega > 1e-12, otherwise DegenerateLimit is thrown.
DensityMatrix evolve_closed_form(const InitialStateSpec& spec, const ModelParams& params,
                                 double gamma, double t);

struct OdeResult {
    DensityMatrix state;
    std::size_t steps{0};
    double trace_drift{0.0}; // |tr(rho) - 1| before any renormalization
    bool renormalized{false};
};

// Fixed-step classical RK4 on d rho/dt = -(gamma/2)[H,[H,rho]] - i[H,rho]
// from 0 to t. The final step is shortened when t is not a multiple of dt.
OdeResult evolve_ode_oracle(const DensityMatrix& rho0, const ComplexMatrix4& hamiltonian,
                            double gamma, double t, double dt = 1e-3);

// ceil(6 gamma t max_j V_j^2 + 20)
std::size_t default_kraus_order(const Spectrum& spectrum, double gamma, double t);

// Sum_{l=0}^{order} M_l rho0 M_l^dagger with
// M_l = sqrt((gamma t)^l / l!) H^l exp(-iHt) exp(-(gamma t / 2) H^2).
DensityMatrix kraus_evolve_oracle(const DensityMatrix& rho0, const Spectrum& spectrum,
                                  double gamma, double t, std::size_t order);

// Degeneracy threshold used by steady_state: 1e-9 (1 + max |V|).
double degeneracy_tolerance(const Spectrum& spectrum) noexcept;

// gamma > 0, t -> infinity limit: keeps only the eigenbasis coherences
// between (numerically) degenerate levels.
DensityMatrix steady_state(const DensityMatrix& rho0, const Spectrum& spectrum);

} // namespace xxz
