#pragma once

// Error norms and convergence rates. Spatial L2 norms use the two-point
// composite Gauss rule of the trajectory's grid; the discrete solution enters
// as a true P1 function evaluated at those points.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fracdiff/exact.hpp"
#include "fracdiff/fem.hpp"
#include "fracdiff/stepper.hpp"

namespace fracdiff::metrics {

/// Reference field sampled at the grid's Gauss points at time t.
using ReferenceSampler = std::function<void(double t, std::span<double> out)>;

[[nodiscard]] double l2_space_norm(const fem::SpatialGrid& grid, const fem::ScalarFunction& g);

/// Same rule applied to values already sampled at the Gauss points.
[[nodiscard]] double l2_space_norm(const fem::SpatialGrid& grid, std::span<const double> at_gauss);

/// ||u(t) - U_h(t)|| at time t.
[[nodiscard]] double l2_error_at(const stepper::Trajectory& traj, const ReferenceSampler& ref,
                                 double t);

/// max over j = 1..N, i = 1..3 of ||u - U_h|| at t_{j-1} + i tau_j / 3.
[[nodiscard]] double linf_l2_error(const stepper::Trajectory& traj, const ReferenceSampler& ref);
[[nodiscard]] double linf_l2_error(const stepper::Trajectory& traj,
                                   const exact::SeriesSolution& ref);

/// sqrt of sum over slabs of four-point Gauss in time of ||u - U_h||^2.
[[nodiscard]] double l2_l2_error(const stepper::Trajectory& traj, const ReferenceSampler& ref);
[[nodiscard]] double l2_l2_error(const stepper::Trajectory& traj,
                                 const exact::SeriesSolution& ref);

/// ||U^n_h - u(t_n)|| for n = 1..N.
[[nodiscard]] std::vector<double> nodal_errors(const stepper::Trajectory& traj,
                                               const exact::SeriesSolution& ref);

/// Sampler for a function of (x, t).
[[nodiscard]] ReferenceSampler make_sampler(const fem::SpatialGrid& grid,
                                            std::function<double(double x, double t)> u);

/// Sampler for a series solution; precomputes the modal sine table.
[[nodiscard]] ReferenceSampler make_sampler(const fem::SpatialGrid& grid,
                                            const exact::SeriesSolution& sol);

/// log2(coarse / fine). DomainError unless both are positive.
[[nodiscard]] double convergence_rate(double coarse, double fine);

struct ReportRow {
    std::size_t N = 0;
    double gamma = 1.0;
    double e_tau = 0.0;  // L-infinity(J; L2)
    double e_l2 = 0.0;   // L2(J; L2)
    std::optional<double> cr;
    std::optional<double> cr_l2;
};

/// Rows grouped by gamma in the order given; within each group the rate is
/// filled from the previous row, which must have half the N.
struct ConvergenceReport {
    std::vector<ReportRow> rows;

    void add(std::size_t N, double gamma, double e_tau, double e_l2);
};

}  // namespace fracdiff::metrics
