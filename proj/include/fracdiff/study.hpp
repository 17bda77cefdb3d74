#pragma once

// Benchmark problems, convergence sweeps and the CSV files they produce.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "fracdiff/exact.hpp"
#include "fracdiff/metrics.hpp"
#include "fracdiff/stepper.hpp"

namespace fracdiff::study {

struct StudyConfig {
    int example = 1;  // 1: u0 = x(1-x); 2: u0 = hat
    double alpha = 0.5;
    std::vector<double> gammas{1.0, 2.0, 3.0, 4.0};
    std::vector<std::size_t> Ns{8, 16, 32, 64, 128};
    std::size_t M = 2048;
    std::size_t terms = exact::kDefaultTerms;
    std::filesystem::path output_dir = ".";
    /// Worker threads for independent runs; 0 picks the hardware count.
    unsigned threads = 0;
};

/// Throws InvalidArgument naming the offending field.
void validate(const StudyConfig& cfg);

/// kappa = 1, f = 0, T = 1 and the example's initial data.
[[nodiscard]] stepper::ProblemSpec example_problem(int example, double alpha);

[[nodiscard]] exact::SeriesSolution example_reference(int example, double alpha,
                                                      std::size_t terms);

/// Runs every (gamma, N) pair; rows are grouped by gamma, N ascending.
[[nodiscard]] metrics::ConvergenceReport convergence(const StudyConfig& cfg);

/// `t,x,value` for every level t_n and node x_i including the boundary.
void write_solution_csv(const stepper::Trajectory& traj, const std::filesystem::path& path);

/// `N,gamma,E_tau,CR,E_L2,CR_L2`; rates blank where absent.
void write_table_csv(const metrics::ConvergenceReport& report, const std::filesystem::path& path);

/// `t_n,error` for n = 1..N.
void write_nodal_errors_csv(const kernel::GradedMesh& mesh, const std::vector<double>& errors,
                            const std::filesystem::path& path);

/// Shortest decimal form used in file names, e.g. 4 -> "4", 2.5 -> "2.5".
[[nodiscard]] std::string format_gamma(double gamma);

/// Solves with the first N and first gamma; returns the written path.
std::filesystem::path cmd_solve(const StudyConfig& cfg);
std::filesystem::path cmd_convergence(const StudyConfig& cfg);
/// One file per gamma at the first N.
std::vector<std::filesystem::path> cmd_nodal_errors(const StudyConfig& cfg);

}  // namespace fracdiff::study
