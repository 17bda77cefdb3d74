#pragma once

// Scalar diagnostics for the constructs behind the error analysis: the
// implicit piecewise-linear interpolant, the alternating-sum representation
// of its nodal error, and the fractional energy of piecewise-linear functions.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fracdiff/kernel.hpp"

namespace fracdiff::analysis {

using TimeFunction = std::function<double(double)>;

/// Continuous piecewise-linear u_hat with u_hat(0) = v(0) and the same slab
/// integrals as v.
struct ImplicitInterpolant {
    kernel::GradedMesh mesh;
    std::vector<double> values;  // u_hat^0 .. u_hat^N
};

/// u_hat^n = 2 S_n / tau_n - u_hat^{n-1}, with S_n = slab_integrals[n-1].
[[nodiscard]] ImplicitInterpolant implicit_interpolant(const kernel::GradedMesh& mesh,
                                                       std::span<const double> slab_integrals,
                                                       double v0);

/// int_{t0}^{t1} v dt by adaptive Gauss-Kronrod to absolute 1e-12 (scaled by
/// the slab length).
[[nodiscard]] double slab_integral(const TimeFunction& v, double t0, double t1);

/// S_n for every slab of the mesh.
[[nodiscard]] std::vector<double> slab_integrals(const kernel::GradedMesh& mesh,
                                                 const TimeFunction& v);

struct PsiIdentity {
    double lhs = 0.0;  // v(t_n) - u_hat^n
    double rhs = 0.0;  // sum_j (-1)^{n+j+1} (2/tau_j) int_{I_j} (v - v_I) dt
};

[[nodiscard]] PsiIdentity psi_alternating_sum(const kernel::GradedMesh& mesh,
                                              const TimeFunction& v, std::size_t n);

/// int_0^{t_N} (I^{1-alpha} v')(t) v'(t) dt for v piecewise linear with nodal
/// values v^0..v^N, in closed form.
[[nodiscard]] double frac_energy(const kernel::GradedMesh& mesh, double alpha,
                                 std::span<const double> nodal);

struct DiagnosticResult {
    std::string name;
    double worst = 0.0;      // worst observed discrepancy (or most negative value)
    double tolerance = 0.0;
    std::size_t cases = 0;
    bool passed = false;
};

/// Randomized diagnostic suite: interpolant average preservation, the
/// alternating-sum identity, frac_energy positivity, and the Mittag-Leffler
/// erfc identity. Deterministic for a given seed.
[[nodiscard]] std::vector<DiagnosticResult> run_diagnostics(std::uint64_t seed);

}  // namespace fracdiff::analysis
