#include "fracdiff/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>

#include "fracdiff/error.hpp"

namespace fracdiff::metrics {

double l2_space_norm(const fem::SpatialGrid& grid, std::span<const double> at_gauss) {
    if (at_gauss.size() != grid.gauss_points().size()) {
        throw InvalidArgument("l2_space_norm: expected two samples per element");
    }
    double sum = 0.0;
    for (double v : at_gauss) sum += v * v;
    return std::sqrt(0.5 * grid.width() * sum);
}

double l2_space_norm(const fem::SpatialGrid& grid, const fem::ScalarFunction& g) {
    const auto gp = grid.gauss_points();
    std::vector<double> v(gp.size());
    std::transform(gp.begin(), gp.end(), v.begin(), [&](double x) { return g(x); });
    return l2_space_norm(grid, v);
}

double l2_error_at(const stepper::Trajectory& traj, const ReferenceSampler& ref, double t) {
    const auto& grid = traj.grid();
    auto diff = fem::values_at_gauss_points(grid, traj.evaluate(t));
    std::vector<double> u(diff.size());
    ref(t, u);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= u[i];
    return l2_space_norm(grid, diff);
}

double linf_l2_error(const stepper::Trajectory& traj, const ReferenceSampler& ref) {
    const auto& mesh = traj.mesh();
    double worst = 0.0;
    for (std::size_t j = 1; j <= mesh.steps(); ++j) {
        const double t0 = mesh.time(j - 1);
        const double tau = mesh.step(j);
        for (int i = 1; i <= 3; ++i) {
            const double t = i == 3 ? mesh.time(j) : t0 + static_cast<double>(i) * tau / 3.0;
            worst = std::max(worst, l2_error_at(traj, ref, t));
        }
    }
    return worst;
}

double l2_l2_error(const stepper::Trajectory& traj, const ReferenceSampler& ref) {
    const auto& mesh = traj.mesh();
    double sum = 0.0;
    // Four-point Gauss in time. The two-point nodes sit where the slab error
    // of the averaged scheme nearly vanishes and would understate the norm.
    const auto& x = boost::math::quadrature::gauss<double, 4>::abscissa();
    const auto& w = boost::math::quadrature::gauss<double, 4>::weights();
    for (std::size_t j = 1; j <= mesh.steps(); ++j) {
        const double half = 0.5 * mesh.step(j);
        const double mid = mesh.time(j - 1) + half;
        for (std::size_t q = 0; q < x.size(); ++q) {
            const double el = l2_error_at(traj, ref, mid - half * x[q]);
            const double er = l2_error_at(traj, ref, mid + half * x[q]);
            sum += half * w[q] * (el * el + er * er);
        }
    }
    return std::sqrt(sum);
}

double linf_l2_error(const stepper::Trajectory& traj, const exact::SeriesSolution& ref) {
    return linf_l2_error(traj, make_sampler(traj.grid(), ref));
}

double l2_l2_error(const stepper::Trajectory& traj, const exact::SeriesSolution& ref) {
    return l2_l2_error(traj, make_sampler(traj.grid(), ref));
}

std::vector<double> nodal_errors(const stepper::Trajectory& traj,
                                 const exact::SeriesSolution& ref) {
    const auto sampler = make_sampler(traj.grid(), ref);
    const auto& mesh = traj.mesh();
    std::vector<double> out(mesh.steps());
    for (std::size_t n = 1; n <= mesh.steps(); ++n) {
        out[n - 1] = l2_error_at(traj, sampler, mesh.time(n));
    }
    return out;
}

ReferenceSampler make_sampler(const fem::SpatialGrid& grid,
                              std::function<double(double x, double t)> u) {
    std::vector<double> xs(grid.gauss_points().begin(), grid.gauss_points().end());
    return [xs = std::move(xs), u = std::move(u)](double t, std::span<double> out) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = u(xs[i], t);
    };
}

ReferenceSampler make_sampler(const fem::SpatialGrid& grid, const exact::SeriesSolution& sol) {
    auto owned = std::make_shared<const exact::SeriesSolution>(sol);
    auto sampler = std::make_shared<const exact::SeriesSampler>(*owned, grid.gauss_points());
    return [owned, sampler](double t, std::span<double> out) { sampler->sample(t, out); };
}

double convergence_rate(double coarse, double fine) {
    if (!(coarse > 0.0) || !(fine > 0.0)) {
        throw DomainError("convergence_rate: errors must be positive");
    }
    return std::log2(coarse / fine);
}

void ConvergenceReport::add(std::size_t N, double gamma, double e_tau, double e_l2) {
    ReportRow row{N, gamma, e_tau, e_l2, std::nullopt, std::nullopt};
    if (!rows.empty()) {
        const auto& prev = rows.back();
        if (prev.gamma == gamma) {
            if (prev.N * 2 != N) {
                throw InvalidArgument("convergence report: N must double between rows, got " +
                                      std::to_string(prev.N) + " then " + std::to_string(N));
            }
            row.cr = convergence_rate(prev.e_tau, e_tau);
            row.cr_l2 = convergence_rate(prev.e_l2, e_l2);
        }
    }
    rows.push_back(row);
}

}  // namespace fracdiff::metrics
