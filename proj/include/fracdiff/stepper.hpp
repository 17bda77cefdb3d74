#pragma once

// Fully discrete averaged scheme: piecewise linear in time on a graded mesh,
// P1 Galerkin in space. Each step solves one elliptic problem for the
// increment W^n = U^n - U^{n-1}.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracdiff/fem.hpp"
#include "fracdiff/kernel.hpp"

namespace fracdiff::stepper {

using fem::ScalarFunction;
using SourceFunction = std::function<double(double x, double t)>;

/// d^alpha_t u - (kappa u_x)_x = f on (0,1) x (0,T], u = 0 at x = 0, 1.
struct ProblemSpec {
    double alpha = 1.0;
    double final_time = 1.0;
    ScalarFunction kappa;     // >= kappa_min > 0
    SourceFunction source;    // empty means f = 0
    ScalarFunction u0;        // must vanish at both ends
    ScalarFunction u0_prime;  // used for the Ritz projection of u0
};

void validate(const ProblemSpec& spec);

class Trajectory {
public:
    Trajectory(kernel::GradedMesh mesh, fem::SpatialGrid grid,
               std::vector<std::vector<double>> levels);

    [[nodiscard]] const kernel::GradedMesh& mesh() const noexcept { return mesh_; }
    [[nodiscard]] const fem::SpatialGrid& grid() const noexcept { return grid_; }
    /// U^0 .. U^N, interior coefficients.
    [[nodiscard]] std::span<const std::vector<double>> levels() const noexcept { return levels_; }
    [[nodiscard]] const std::vector<double>& level(std::size_t n) const { return levels_.at(n); }

    /// Linear interpolation in time on the containing slab; DomainError
    /// outside [0, T].
    [[nodiscard]] std::vector<double> evaluate(double t) const;

private:
    kernel::GradedMesh mesh_;
    fem::SpatialGrid grid_;
    std::vector<std::vector<double>> levels_;
};

/// U^0 = R_h u0.
[[nodiscard]] std::vector<double> initial_data(const ProblemSpec& spec, const fem::FemSystem& sys);

/// <fbar_n, phi_i> with fbar_n the mean of f over (t0, t1): two-point Gauss
/// in time, spatial quadrature as in fem::load_vector.
[[nodiscard]] std::vector<double> average_load(const fem::FemSystem& sys,
                                               const SourceFunction& f, double t0, double t1);

/// Increment W^n of step n = weights.n. `increments` holds W^1..W^{n-1} and
/// `previous` is U^{n-1}. Solves
///   (Mass + tau_{n,a}/2 Stiff) W = tau_{n,a} (Fbar - Stiff U^{n-1})
///                                  - Mass sum_j tau_{n,a} b_{n,j} / (tau_n tau_j) W^j.
[[nodiscard]] std::vector<double> step(const kernel::GradedMesh& mesh,
                                       const kernel::StepWeights& weights,
                                       const fem::FemSystem& sys,
                                       std::span<const std::vector<double>> increments,
                                       std::span<const double> previous,
                                       std::span<const double> load_average);

[[nodiscard]] Trajectory run(const ProblemSpec& spec, const kernel::GradedMesh& mesh,
                             const fem::SpatialGrid& grid);

/// Same, reusing an assembled system.
[[nodiscard]] Trajectory run(const ProblemSpec& spec, const kernel::GradedMesh& mesh,
                             const fem::FemSystem& sys);

/// Relative residual of each slab equation
///   Mass (1/tau_n) int_{I_n} d^alpha U + Stiff (U^n + U^{n-1})/2 - Fbar_n,
/// with the Caputo slab integral re-evaluated from kernel quadrature, scaled
/// by |Mass||c| + |Stiff||mid| + |Fbar| (normwise backward error). Entry n-1
/// belongs to step n.
[[nodiscard]] std::vector<double> slab_residuals(const Trajectory& traj, const ProblemSpec& spec,
                                                 const fem::FemSystem& sys);

/// Discrete energy ||sqrt(kappa) grad U||^2 = U^T Stiff U.
[[nodiscard]] double stiffness_energy(const fem::FemSystem& sys, std::span<const double> coeffs);

}  // namespace fracdiff::stepper
