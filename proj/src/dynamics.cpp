#include "xxz/dynamics.hpp"

#include "xxz/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

namespace xxz {

namespace {

constexpr double kGapCutoff = 1e-12;

void require_nonneg_finite(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
        throw InvalidInput(std::string(name) + " must be finite and >= 0, got " + std::to_string(v));
    }
}

ComplexMatrix4 to_eigenbasis(const ComplexMatrix4& rho, const Spectrum& s) {
    return s.vectors.adjoint() * rho * s.vectors;
}

ComplexMatrix4 from_eigenbasis(const ComplexMatrix4& r, const Spectrum& s) {
    return s.vectors * r * s.vectors.adjoint();
}

ComplexMatrix4 milburn_rhs(const ComplexMatrix4& h, const ComplexMatrix4& rho, double gamma) {
    const ComplexMatrix4 c = h * rho - rho * h;
    const ComplexMatrix4 cc = h * c - c * h;
    return -0.5 * gamma * cc - Complex(0.0, 1.0) * c;
}

ComplexMatrix4 rk4_step(const ComplexMatrix4& h, const ComplexMatrix4& rho, double gamma, double step) {
    const ComplexMatrix4 k1 = milburn_rhs(h, rho, gamma);
    const ComplexMatrix4 k2 = milburn_rhs(h, rho + 0.5 * step * k1, gamma);
    const ComplexMatrix4 k3 = milburn_rhs(h, rho + 0.5 * step * k2, gamma);
    const ComplexMatrix4 k4 = milburn_rhs(h, rho + step * k3, gamma);
    return rho + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix4& m) : m_(m) {
    if (!m.allFinite()) throw NotAState("density matrix has non-finite entries");
    const double herm_err = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > kHermitianTol) {
        throw NotAState("density matrix is not Hermitian (deviation " + std::to_string(herm_err) + ")");
    }
    const Complex tr = m.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw NotAState("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    const ComplexMatrix4 sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix4> es(sym, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
        throw NotAState("density matrix has negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
    }
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

void InitialStateSpec::validate() const {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw InvalidInput("purity p must lie in [0, 1], got " + std::to_string(p));
    }
    if (!std::isfinite(theta) || theta < 0.0 || theta >= std::numbers::pi) {
        throw InvalidInput("Bloch angle theta must lie in [0, pi), got " + std::to_string(theta));
    }
}

void EvolutionSpec::validate() const {
    params.validate();
    require_nonneg_finite(gamma, "gamma");
    require_nonneg_finite(t, "t");
}

DensityMatrix ewl_initial_state(const InitialStateSpec& spec) {
    spec.validate();
    const double c = std::cos(0.5 * spec.theta);
    const double s = std::sin(0.5 * spec.theta);
    const double mixed = 0.25 * (1.0 - spec.p);

    ComplexMatrix4 rho = ComplexMatrix4::Identity() * mixed;
    const int lo = spec.which == InitialCase::Case1 ? 0 : 1;
    const int hi = spec.which == InitialCase::Case1 ? 3 : 2;
    rho(lo, lo) += spec.p * c * c;
    rho(hi, hi) += spec.p * s * s;
    rho(lo, hi) = spec.p * s * c;
    rho(hi, lo) = spec.p * s * c;
    return DensityMatrix(rho);
}

DensityMatrix evolve_spectral(const DensityMatrix& rho0, const Spectrum& spectrum, double gamma, double t) {
    require_nonneg_finite(gamma, "gamma");
    require_nonneg_finite(t, "t");
    ComplexMatrix4 r = to_eigenbasis(rho0.matrix(), spectrum);
    for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) {
            const double gap = spectrum.values[j] - spectrum.values[k];
            r(j, k) *= std::exp(Complex(-0.5 * gamma * t * gap * gap, -gap * t));
        }
    }
    return DensityMatrix(from_eigenbasis(r, spectrum));
}

DensityMatrix evolve_closed_form(const InitialStateSpec& spec, const ModelParams& params, double gamma, double t) {
    spec.validate();
    EvolutionSpec{params, gamma, t}.validate();

    const Complex i{0.0, 1.0};
    const double p = spec.p;
    const double ct = std::cos(spec.theta);
    const double st = std::sin(spec.theta);
    const double mixed = 0.25 * (1.0 - p);
    ComplexMatrix4 rho = ComplexMatrix4::Zero();

    if (spec.which == InitialCase::Case1) {
        const double chi = params.chi();
        if (chi < kGapCutoff) {
            throw DegenerateLimit("closed form for case 1 is singular at chi = 2 sqrt(B^2 + Gz^2) = 0; "
                                  "use the spectral engine");
        }
        const double B = params.B;
        const double G = params.Gamma_z;
        const double chi2 = chi * chi;
        const double damp = std::exp(-2.0 * gamma * t * chi2);
        const double c = std::cos(2.0 * t * chi);
        const double s = std::sin(2.0 * t * chi);

        const double osc = p * G * damp * (2.0 * ct * G * c - chi * st * s);
        const double r11 = (B * B * (2.0 * p * ct + p + 1.0) + osc + (p + 1.0) * G * G) / chi2;
        const double r44 = (B * B * (-2.0 * p * ct + p + 1.0) - osc + (p + 1.0) * G * G) / chi2;
        const Complex r14 =
            p / (2.0 * chi2) *
            (damp * (chi * st * (chi * c - 2.0 * i * B * s) + 2.0 * ct * G * (2.0 * i * B * c + chi * s)) -
             4.0 * i * B * ct * G);

        rho(0, 0) = r11;
        rho(1, 1) = mixed;
        rho(2, 2) = mixed;
        rho(3, 3) = r44;
        rho(0, 3) = r14;
        rho(3, 0) = std::conj(r14);
    } else {
        const double omega = params.omega();
        if (omega < kGapCutoff) {
            throw DegenerateLimit("closed form for case 2 is singular at omega = 2 sqrt(J^2 + Dz^2) = 0; "
                                  "use the spectral engine");
        }
        const double J = params.J;
        const double D = params.Dz;
        const double damp = std::exp(-2.0 * gamma * t * omega * omega);
        const double c = std::cos(2.0 * t * omega);
        const double s = std::sin(2.0 * t * omega);

        const double pop = p * damp * (2.0 * D * st * s + omega * ct * c) / (2.0 * omega);
        const Complex r32 = p / (omega * omega) * Complex(J, -D) *
                            (2.0 * J * st + damp * (2.0 * i * D * st * c - i * omega * ct * s));

        rho(0, 0) = mixed;
        rho(1, 1) = 0.25 * (p + 1.0) + pop;
        rho(2, 2) = 0.25 * (p + 1.0) - pop;
        rho(3, 3) = mixed;
        rho(2, 1) = r32;
        rho(1, 2) = std::conj(r32);
    }
    return DensityMatrix(rho);
}

OdeResult evolve_ode_oracle(const DensityMatrix& rho0, const ComplexMatrix4& hamiltonian, double gamma, double t,
                            double dt) {
    require_nonneg_finite(gamma, "gamma");
    require_nonneg_finite(t, "t");
    if (!std::isfinite(dt) || dt <= 0.0) throw InvalidInput("ODE step dt must be finite and > 0");

    const auto full_steps = static_cast<std::size_t>(std::floor(t / dt + 1e-9));
    const double tail = t - static_cast<double>(full_steps) * dt;

    ComplexMatrix4 rho = rho0.matrix();
    for (std::size_t n = 0; n < full_steps; ++n) rho = rk4_step(hamiltonian, rho, gamma, dt);
    std::size_t steps = full_steps;
    if (tail > 1e-12 * dt) {
        rho = rk4_step(hamiltonian, rho, gamma, tail);
        ++steps;
    }

    const Complex tr = rho.trace();
    const double drift = std::abs(tr - 1.0);
    const bool renormalize = drift > 1e-12;
    if (renormalize) rho /= tr.real();
    return OdeResult{DensityMatrix(rho), steps, drift, renormalize};
}

std::size_t default_kraus_order(const Spectrum& spectrum, double gamma, double t) {
    const double vmax = spectrum.max_abs_value();
    return static_cast<std::size_t>(std::ceil(6.0 * gamma * t * vmax * vmax + 20.0));
}

DensityMatrix kraus_evolve_oracle(const DensityMatrix& rho0, const Spectrum& spectrum, double gamma, double t,
                                  std::size_t order) {
    require_nonneg_finite(gamma, "gamma");
    require_nonneg_finite(t, "t");
    const ComplexMatrix4 r0 = to_eigenbasis(rho0.matrix(), spectrum);

    // Diagonal of M_l in the eigenbasis, advanced by sqrt(gamma t / l) V_j.
    Eigen::Vector4cd m;
    for (int j = 0; j < 4; ++j) {
        const double v = spectrum.values[j];
        m(j) = std::exp(Complex(-0.5 * gamma * t * v * v, -v * t));
    }

    ComplexMatrix4 acc = ComplexMatrix4::Zero();
    const double gt = gamma * t;
    for (std::size_t l = 0; l <= order; ++l) {
        if (l > 0) {
            const double scale = std::sqrt(gt / static_cast<double>(l));
            for (int j = 0; j < 4; ++j) m(j) *= scale * spectrum.values[j];
        }
        acc += (m * m.adjoint()).cwiseProduct(r0);
    }
    return DensityMatrix(from_eigenbasis(acc, spectrum));
}

double degeneracy_tolerance(const Spectrum& spectrum) noexcept { return 1e-9 * (1.0 + spectrum.max_abs_value()); }

DensityMatrix steady_state(const DensityMatrix& rho0, const Spectrum& spectrum) {
    const double tol = degeneracy_tolerance(spectrum);
    ComplexMatrix4 r = to_eigenbasis(rho0.matrix(), spectrum);
    for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) {
            if (std::abs(spectrum.values[j] - spectrum.values[k]) > tol) r(j, k) = 0.0;
        }
    }
    return DensityMatrix(from_eigenbasis(r, spectrum));
}

} // namespace xxz
