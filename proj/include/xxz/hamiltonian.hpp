// hamiltonian.hpp - two-qubit XXZ Hamiltonian with DM and KSEA couplings.
//
// Basis ordering throughout the library is {|dd>, |du>, |ud>, |uu>} (index 0..3),
// qubit A is the high bit. The Hamiltonian decouples into the blocks
// {|dd>,|uu>} (field + KSEA) and {|du>,|ud>} (exchange + DM).

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace xxz {

using Complex = std::complex<double>;
using ComplexMatrix4 = Eigen::Matrix4cd;
using ComplexVector4 = Eigen::Vector4cd;
using ComplexMatrix2 = Eigen::Matrix2cd;

struct ModelParams {
    double J{0.0};       // XX+YY exchange
    double Jz{0.0};      // ZZ anisotropy
    double B{0.0};       // homogeneous field along z, B >= 0
    double Dz{0.0};      // Dzyaloshinsky-Moriya strength
    double Gamma_z{0.0}; // KSEA strength

    // Gap scale of the {|dd>,|uu>} block: 2 sqrt(B^2 + Gamma_z^2).
    double chi() const noexcept;
    // Gap scale of the {|du>,|ud>} block: 2 sqrt(J^2 + Dz^2).
    double omega() const noexcept;

    // Throws InvalidInput on non-finite fields or B < 0.
    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

// Eigenpairs in the fixed order (Jz+chi, -Jz+omega, -Jz-omega, Jz-chi).
// Column j of `vectors` is the eigenvector for `values[j]`.
struct Spectrum {
    std::array<double, 4> values{};
    ComplexMatrix4 vectors{ComplexMatrix4::Identity()};

    ComplexVector4 vector(int j) const { return vectors.col(j); }
    double max_abs_value() const noexcept;
};

ComplexMatrix4 build_hamiltonian(const ModelParams& params);

// Block-wise closed-form diagonalization; see hamiltonian.cpp for the
// branch selection that keeps every degenerate limit finite.
Spectrum spectral_decomposition(const ModelParams& params);

} // namespace xxz
