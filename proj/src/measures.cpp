#include "xxz/measures.hpp"

#include "xxz/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

namespace xxz {

namespace {

constexpr double kClipTol = 1e-9;

// Eigenvalues (lower, upper) of the Hermitian 2x2 [[a, b], [conj b, d]].
std::pair<double, double> hermitian2_eigenvalues(double a, double d, Complex b) {
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(b));
    return {mean - radius, mean + radius};
}

// -x log2 x with the PSD clipping policy.
double entropy_term(double x) {
    if (x < -kClipTol) throw NotAState("negative eigenvalue " + std::to_string(x) + " in entropy");
    if (x <= 0.0) return 0.0;
    return -x * std::log2(x);
}

// Population terms in xstate_discord are allowed to be exactly the clipped values.
double xlog2x(double x) { return -entropy_term(x); }

// p S(sigma / p) for an unnormalized 2x2 block sigma with trace p, with the
// eigenvalues floored at zero (measurement branches of valid states).
double weighted_entropy(double a, double d, Complex b) {
    const double p = a + d;
    if (p <= 1e-300) return 0.0;
    const auto [lo, hi] = hermitian2_eigenvalues(a, d, b);
    double s = 0.0;
    for (double mu : {lo, hi}) {
        if (mu > 0.0) s -= mu * std::log2(mu / p);
    }
    return s;
}

double clip_qd(double v) { return (v < 0.0 && v > -kClipTol) ? 0.0 : v; }

} // namespace

ReducedState::ReducedState(const ComplexMatrix2& m) : m_(m) {
    constexpr double tol = 1e-10;
    if (!m.allFinite()) throw NotAState("reduced state has non-finite entries");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) throw NotAState("reduced state is not Hermitian");
    if (std::abs(m.trace() - 1.0) > tol) throw NotAState("reduced state trace differs from 1");
    const auto [lo, hi] = hermitian2_eigenvalues(m(0, 0).real(), m(1, 1).real(), m(0, 1));
    (void)hi;
    if (lo < -tol) throw NotAState("reduced state has negative eigenvalue " + std::to_string(lo));
}

ReducedState partial_trace(const DensityMatrix& rho, Subsystem keep) {
    ComplexMatrix2 r = ComplexMatrix2::Zero();
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int traced = 0; traced < 2; ++traced) {
                if (keep == Subsystem::A) {
                    r(x, y) += rho(2 * x + traced, 2 * y + traced);
                } else {
                    r(x, y) += rho(2 * traced + x, 2 * traced + y);
                }
            }
        }
    }
    return ReducedState(r);
}

double l1_coherence(const DensityMatrix& rho) {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i != j) sum += std::abs(rho(i, j));
        }
    }
    return sum;
}

double l1_coherence(const ReducedState& rho) { return std::abs(rho(0, 1)) + std::abs(rho(1, 0)); }

double correlated_coherence(const DensityMatrix& rho) {
    return l1_coherence(rho) - l1_coherence(partial_trace(rho, Subsystem::A)) -
           l1_coherence(partial_trace(rho, Subsystem::B));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const ComplexMatrix4 sym = 0.5 * (rho.matrix() + rho.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix4> es(sym, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += entropy_term(es.eigenvalues()(k));
    return s;
}

double von_neumann_entropy(const ReducedState& rho) {
    const auto [lo, hi] = hermitian2_eigenvalues(rho(0, 0).real(), rho(1, 1).real(), rho(0, 1));
    return entropy_term(lo) + entropy_term(hi);
}

double binary_entropy(double x) {
    if (!(x >= -kClipTol && x <= 1.0 + kClipTol)) {
        throw DomainError("binary entropy argument " + std::to_string(x) + " outside [0, 1]");
    }
    x = std::clamp(x, 0.0, 1.0);
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

bool is_x_state(const DensityMatrix& rho, double tol) noexcept {
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j || i + j == 3) continue;
            if (std::abs(rho(i, j)) >= tol) return false;
        }
    }
    return true;
}

std::array<double, 4> xstate_populations(const DensityMatrix& rho) {
    if (!is_x_state(rho)) throw ShapeError("state is not of X form");
    const auto [l1, l2] = hermitian2_eigenvalues(rho(1, 1).real(), rho(2, 2).real(), rho(2, 1));
    const auto [l3, l4] = hermitian2_eigenvalues(rho(0, 0).real(), rho(3, 3).real(), rho(3, 0));
    return {l1, l2, l3, l4};
}

DiscordBreakdown xstate_discord(const DensityMatrix& rho) {
    DiscordBreakdown out;
    out.lambda = xstate_populations(rho);

    std::array<double, 4> diag{};
    for (int n = 0; n < 4; ++n) diag[n] = rho(n, n).real();

    double sum_lambda_log = 0.0;
    for (double l : out.lambda) sum_lambda_log += xlog2x(l);
    double diag_entropy = 0.0;
    for (double d : diag) diag_entropy += entropy_term(d);

    out.beta = diag[0] + diag[2];
    const double polar = 1.0 - 2.0 * (diag[2] + diag[3]);
    const double transverse = std::abs(rho(3, 0)) + std::abs(rho(2, 1));
    out.Lambda = 0.5 * (1.0 + std::sqrt(polar * polar + 4.0 * transverse * transverse));

    const double f_beta = binary_entropy(out.beta);
    const double d1 = binary_entropy(out.Lambda);
    const double d2 = diag_entropy - f_beta;
    out.qd1 = clip_qd(f_beta + sum_lambda_log + d1);
    out.qd2 = clip_qd(f_beta + sum_lambda_log + d2);
    out.discord = std::min(out.qd1, out.qd2);
    return out;
}

double conditional_entropy(const DensityMatrix& rho, double theta, double phi) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const Complex e = std::polar(1.0, phi);
    const std::array<std::array<Complex, 2>, 2> outcomes{{{Complex(c, 0.0), e * s}, {-std::conj(e) * s, Complex(c, 0.0)}}};

    double total = 0.0;
    for (const auto& v : outcomes) {
        // sigma(a, a') = sum_{b, b'} conj(v_b) rho(2a + b, 2a' + b') v_b'
        ComplexMatrix2 sigma = ComplexMatrix2::Zero();
        for (int a = 0; a < 2; ++a) {
            for (int ap = 0; ap < 2; ++ap) {
                Complex acc = 0.0;
                for (int b = 0; b < 2; ++b) {
                    for (int bp = 0; bp < 2; ++bp) acc += std::conj(v[b]) * rho(2 * a + b, 2 * ap + bp) * v[bp];
                }
                sigma(a, ap) = acc;
            }
        }
        total += weighted_entropy(sigma(0, 0).real(), sigma(1, 1).real(), sigma(0, 1));
    }
    return total;
}

double discord_bruteforce(const DensityMatrix& rho, const MeasurementGridSpec& grid) {
    if (grid.theta_points < 2 || grid.phi_points < 1 || grid.refine_starts < 1 || !(grid.angle_tol > 0.0)) {
        throw InvalidInput("measurement grid needs >= 2 theta points, >= 1 phi point and a positive tolerance");
    }
    const double pi = std::numbers::pi;
    const double dtheta = pi / (grid.theta_points - 1);
    const double dphi = 2.0 * pi / grid.phi_points;

    const auto idx = [&](int k, int l) { return static_cast<std::size_t>(k) * grid.phi_points + l; };
    std::vector<double> values(static_cast<std::size_t>(grid.theta_points) * grid.phi_points);
    for (int k = 0; k < grid.theta_points; ++k) {
        for (int l = 0; l < grid.phi_points; ++l) values[idx(k, l)] = conditional_entropy(rho, k * dtheta, l * dphi);
    }

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto starts = std::min<std::size_t>(static_cast<std::size_t>(grid.refine_starts), order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(starts), order.end(),
                      [&](std::size_t x, std::size_t y) { return values[x] < values[y] || (values[x] == values[y] && x < y); });

    double best = values[order[0]];
    for (std::size_t n = 0; n < starts; ++n) {
        double theta = static_cast<double>(order[n] / grid.phi_points) * dtheta;
        double phi = static_cast<double>(order[n] % grid.phi_points) * dphi;
        double f = values[order[n]];
        double st = dtheta;
        double sp = dphi;
        // Compass search; steps halve whenever no neighbour improves.
        while (std::max(st, sp) > grid.angle_tol) {
            bool moved = false;
            const std::array<std::pair<double, double>, 4> probes{
                {{std::min(theta + st, pi), phi}, {std::max(theta - st, 0.0), phi}, {theta, phi + sp}, {theta, phi - sp}}};
            for (const auto& [th, ph] : probes) {
                const double g = conditional_entropy(rho, th, ph);
                if (g < f) {
                    f = g;
                    theta = th;
                    phi = ph;
                    moved = true;
                }
            }
            if (!moved) {
                st *= 0.5;
                sp *= 0.5;
            }
        }
        best = std::min(best, f);
    }

    const ReducedState rho_b = partial_trace(rho, Subsystem::B);
    return best + von_neumann_entropy(rho_b) - von_neumann_entropy(rho);
}

} // namespace xxz
