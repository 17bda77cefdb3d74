#include "fracdiff/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "fracdiff/error.hpp"

namespace fracdiff::stepper {

void validate(const ProblemSpec& spec) {
    if (!(spec.alpha > 0.0 && spec.alpha <= 1.0)) {
        throw InvalidArgument("alpha: fractional order must lie in (0, 1]");
    }
    if (!(spec.final_time > 0.0) || !std::isfinite(spec.final_time)) {
        throw InvalidArgument("T: final time must be positive");
    }
    if (!spec.kappa || !spec.u0 || !spec.u0_prime) {
        throw InvalidArgument("problem: kappa, u0 and u0_prime are required");
    }
    constexpr double kBoundaryTol = 1e-12;
    if (std::abs(spec.u0(0.0)) > kBoundaryTol || std::abs(spec.u0(1.0)) > kBoundaryTol) {
        throw InvalidArgument("u0: initial data must vanish at x = 0 and x = 1");
    }
}

Trajectory::Trajectory(kernel::GradedMesh mesh, fem::SpatialGrid grid,
                       std::vector<std::vector<double>> levels)
    : mesh_(std::move(mesh)), grid_(std::move(grid)), levels_(std::move(levels)) {
    if (levels_.size() != mesh_.steps() + 1) {
        throw InvalidArgument("trajectory: expected N+1 time levels");
    }
    for (const auto& u : levels_) {
        if (u.size() != grid_.interior_count()) {
            throw InvalidArgument("trajectory: level size does not match the grid");
        }
    }
}

std::vector<double> Trajectory::evaluate(double t) const {
    const std::size_t n = mesh_.slab_containing(t);
    const double t0 = mesh_.time(n - 1);
    const double theta = (t - t0) / mesh_.step(n);
    if (theta == 1.0) return levels_[n];
    if (theta == 0.0) return levels_[n - 1];
    const auto& a = levels_[n - 1];
    const auto& b = levels_[n];
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = (1.0 - theta) * a[i] + theta * b[i];
    }
    return out;
}

std::vector<double> initial_data(const ProblemSpec& spec, const fem::FemSystem& sys) {
    return fem::ritz_projection(sys, spec.u0_prime);
}

std::vector<double> average_load(const fem::FemSystem& sys, const SourceFunction& f, double t0,
                                 double t1) {
    if (!f) {
        return std::vector<double>(sys.grid.interior_count(), 0.0);
    }
    const double dt = t1 - t0;
    const double ta = t0 + fem::kGaussLo * dt;
    const double tb = t0 + fem::kGaussHi * dt;
    return fem::load_vector(sys.grid, [&](double x) { return 0.5 * (f(x, ta) + f(x, tb)); });
}

std::vector<double> step(const kernel::GradedMesh& mesh, const kernel::StepWeights& weights,
                         const fem::FemSystem& sys,
                         std::span<const std::vector<double>> increments,
                         std::span<const double> previous, std::span<const double> load_average) {
    const std::size_t n = weights.n;
    const std::size_t dim = sys.grid.interior_count();
    if (increments.size() + 1 != n || weights.b.size() + 1 != n) {
        throw InvalidArgument("step: history length does not match the step index");
    }
    if (previous.size() != dim || load_average.size() != dim) {
        throw InvalidArgument("step: vector size does not match the grid");
    }
    const double tna = weights.tau_n_alpha;
    const double tau_n = mesh.step(n);

    // History combination sum_j tau_{n,a} b_{n,j} / (tau_n tau_j) W^j, mapped
    // through the mass matrix once.
    std::vector<double> history(dim, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        const double c = tna * weights.b[j - 1] / (tau_n * mesh.step(j));
        if (c == 0.0) continue;
        const auto& w = increments[j - 1];
        for (std::size_t i = 0; i < dim; ++i) {
            history[i] += c * w[i];
        }
    }

    std::vector<double> rhs(load_average.begin(), load_average.end());
    for (double& r : rhs) r *= tna;
    sys.stiffness.apply_add(previous, -tna, rhs);
    sys.mass.apply_add(history, -1.0, rhs);

    const auto lhs = fem::combine(1.0, sys.mass, 0.5 * tna, sys.stiffness);
    return fem::solve_tridiagonal(lhs, rhs);
}

Trajectory run(const ProblemSpec& spec, const kernel::GradedMesh& mesh,
               const fem::SpatialGrid& grid) {
    validate(spec);
    return run(spec, mesh, fem::assemble(grid, spec.kappa));
}

Trajectory run(const ProblemSpec& spec, const kernel::GradedMesh& mesh, const fem::FemSystem& sys) {
    validate(spec);
    if (std::abs(mesh.final_time() - spec.final_time) > 1e-12 * spec.final_time) {
        throw InvalidArgument("T: mesh final time differs from the problem's");
    }
    const std::size_t N = mesh.steps();
    std::vector<std::vector<double>> levels;
    levels.reserve(N + 1);
    levels.push_back(initial_data(spec, sys));
    std::vector<std::vector<double>> increments;
    increments.reserve(N);
    for (std::size_t n = 1; n <= N; ++n) {
        const auto weights = kernel::step_weights(mesh, spec.alpha, n);
        const auto fbar = average_load(sys, spec.source, mesh.time(n - 1), mesh.time(n));
        auto w = step(mesh, weights, sys, increments, levels.back(), fbar);
        std::vector<double> next = levels.back();
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] += w[i];
            if (!std::isfinite(next[i])) {
                throw SingularSystem("run: non-finite solution at step " + std::to_string(n));
            }
        }
        increments.push_back(std::move(w));
        levels.push_back(std::move(next));
    }
    return Trajectory(mesh, sys.grid, std::move(levels));
}

namespace {

fem::Tridiagonal absolute(const fem::Tridiagonal& A) {
    fem::Tridiagonal B = A;
    for (auto* v : {&B.lower, &B.diag, &B.upper})
        for (double& x : *v) x = std::abs(x);
    return B;
}

}  // namespace

std::vector<double> slab_residuals(const Trajectory& traj, const ProblemSpec& spec,
                                   const fem::FemSystem& sys) {
    const auto& mesh = traj.mesh();
    const auto levels = traj.levels();
    const std::size_t N = mesh.steps();
    const std::size_t dim = sys.grid.interior_count();
    const auto abs_mass = absolute(sys.mass);
    const auto abs_stiff = absolute(sys.stiffness);

    std::vector<std::vector<double>> increments(N, std::vector<double>(dim));
    std::vector<std::vector<double>> abs_increments(N, std::vector<double>(dim));
    for (std::size_t j = 1; j <= N; ++j) {
        for (std::size_t i = 0; i < dim; ++i) {
            increments[j - 1][i] = levels[j][i] - levels[j - 1][i];
            abs_increments[j - 1][i] = std::abs(increments[j - 1][i]);
        }
    }

    std::vector<double> out(N);
    for (std::size_t n = 1; n <= N; ++n) {
        const double inv_tau = 1.0 / mesh.step(n);
        auto caputo = kernel::caputo_slab_integral(
            mesh, spec.alpha, std::span<const std::vector<double>>(increments.data(), n));
        // History weights are positive, so this bounds the terms of the sum.
        auto caputo_abs = kernel::caputo_slab_integral(
            mesh, spec.alpha, std::span<const std::vector<double>>(abs_increments.data(), n));
        for (double& c : caputo) c *= inv_tau;
        for (double& c : caputo_abs) c *= inv_tau;

        std::vector<double> mid(dim), abs_mid(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            mid[i] = 0.5 * (levels[n][i] + levels[n - 1][i]);
            abs_mid[i] = std::abs(mid[i]);
        }
        const auto time_term = sys.mass.apply(caputo);
        const auto space_term = sys.stiffness.apply(mid);
        const auto load = average_load(sys, spec.source, mesh.time(n - 1), mesh.time(n));

        // Normwise backward error: the residual against the size of the
        // terms before cancellation, |Mass||c| + |Stiff||mid| + |Fbar|.
        auto bound = abs_mass.apply(caputo_abs);
        abs_stiff.apply_add(abs_mid, 1.0, bound);
        double r_max = 0.0, b_max = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            r_max = std::max(r_max, std::abs(time_term[i] + space_term[i] - load[i]));
            b_max = std::max(b_max, bound[i] + std::abs(load[i]));
        }
        out[n - 1] = b_max > 0.0 ? r_max / b_max : 0.0;
    }
    return out;
}

double stiffness_energy(const fem::FemSystem& sys, std::span<const double> coeffs) {
    const auto su = sys.stiffness.apply(coeffs);
    double e = 0.0;
    for (std::size_t i = 0; i < su.size(); ++i) {
        e += coeffs[i] * su[i];
    }
    return e;
}

}  // namespace fracdiff::stepper
