#include "xxz/hamiltonian.hpp"

#include "xxz/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace xxz {

namespace {

constexpr double kOffDiagonalCutoff = 1e-12;

// Eigenpairs of the Hermitian block [[a, b], [conj(b), d]] as m +/- r.
struct BlockEigen {
    double upper;
    double lower;
    Eigen::Vector2cd upper_vec;
    Eigen::Vector2cd lower_vec;
};

// Rotate so the largest-magnitude component is real and positive. Components
// equal in magnitude to within 1e-12 resolve to the first one.
Eigen::Vector2cd fix_phase(Eigen::Vector2cd v) {
    const double m0 = std::abs(v(0));
    const double m1 = std::abs(v(1));
    const Complex pivot = (m1 > m0 * (1.0 + 1e-12)) ? v(1) : v(0);
    return v * (std::abs(pivot) / pivot);
}

BlockEigen diagonalize_block(double a, double d, Complex b) {
    const double mean = 0.5 * (a + d);
    const double half_split = 0.5 * (a - d);
    const double radius = std::hypot(half_split, std::abs(b));

    BlockEigen out{mean + radius, mean - radius, {}, {}};
    if (std::abs(b) < kOffDiagonalCutoff) {
        // The larger diagonal entry carries the upper eigenvalue.
        const bool first_upper = half_split >= 0.0;
        out.upper_vec = first_upper ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
        out.lower_vec = first_upper ? Eigen::Vector2cd(0.0, 1.0) : Eigen::Vector2cd(1.0, 0.0);
        return out;
    }

    // Each eigenvector has two algebraically equivalent forms; take the one
    // whose non-b component is r + |half_split|, which never cancels.
    Eigen::Vector2cd up;
    Eigen::Vector2cd low;
    if (half_split >= 0.0) {
        up = Eigen::Vector2cd(radius + half_split, std::conj(b));
        low = Eigen::Vector2cd(-b, radius + half_split);
    } else {
        up = Eigen::Vector2cd(b, radius - half_split);
        low = Eigen::Vector2cd(radius - half_split, -std::conj(b));
    }
    out.upper_vec = fix_phase(up.normalized());
    out.lower_vec = fix_phase(low.normalized());
    return out;
}

} // namespace

double ModelParams::chi() const noexcept { return 2.0 * std::hypot(B, Gamma_z); }

double ModelParams::omega() const noexcept { return 2.0 * std::hypot(J, Dz); }

void ModelParams::validate() const {
    const auto check = [](double v, const char* name) {
        if (!std::isfinite(v)) {
            throw InvalidInput(std::string("model parameter ") + name + " is not finite");
        }
    };
    check(J, "J");
    check(Jz, "Jz");
    check(B, "B");
    check(Dz, "Dz");
    check(Gamma_z, "Gz");
    if (B < 0.0) {
        throw InvalidInput("magnetic field B must be >= 0, got " + std::to_string(B));
    }
}

double Spectrum::max_abs_value() const noexcept {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

ComplexMatrix4 build_hamiltonian(const ModelParams& params) {
    params.validate();
    const Complex i{0.0, 1.0};
    ComplexMatrix4 h = ComplexMatrix4::Zero();
    h(0, 0) = params.Jz + 2.0 * params.B;
    h(1, 1) = -params.Jz;
    h(2, 2) = -params.Jz;
    h(3, 3) = params.Jz - 2.0 * params.B;
    h(0, 3) = -2.0 * i * params.Gamma_z;
    h(3, 0) = 2.0 * i * params.Gamma_z;
    h(1, 2) = 2.0 * params.J + 2.0 * i * params.Dz;
    h(2, 1) = 2.0 * params.J - 2.0 * i * params.Dz;
    return h;
}

Spectrum spectral_decomposition(const ModelParams& params) {
    const ComplexMatrix4 h = build_hamiltonian(params);

    // Outer block {|dd>,|uu>} -> (V1, V4); inner block {|du>,|ud>} -> (V2, V3).
    const BlockEigen outer = diagonalize_block(h(0, 0).real(), h(3, 3).real(), h(0, 3));
    const BlockEigen inner = diagonalize_block(h(1, 1).real(), h(2, 2).real(), h(1, 2));

    Spectrum s;
    s.values = {outer.upper, inner.upper, inner.lower, outer.lower};
    s.vectors = ComplexMatrix4::Zero();
    s.vectors(0, 0) = outer.upper_vec(0);
    s.vectors(3, 0) = outer.upper_vec(1);
    s.vectors(1, 1) = inner.upper_vec(0);
    s.vectors(2, 1) = inner.upper_vec(1);
    s.vectors(1, 2) = inner.lower_vec(0);
    s.vectors(2, 2) = inner.lower_vec(1);
    s.vectors(0, 3) = outer.lower_vec(0);
    s.vectors(3, 3) = outer.lower_vec(1);
    return s;
}

} // namespace xxz
