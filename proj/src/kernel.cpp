#include "fracdiff/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracdiff/error.hpp"

namespace fracdiff::kernel {

double omega(double mu, double t) {
    if (!(mu > 0.0)) {
        throw DomainError("omega: order mu must be positive, got " + std::to_string(mu));
    }
    if (t < 0.0 || !std::isfinite(t)) {
        throw DomainError("omega: argument must be finite and non-negative");
    }
    if (t == 0.0) {
        if (mu < 1.0) {
            throw DomainError("omega: kernel is singular at t = 0 for mu < 1");
        }
        return mu == 1.0 ? 1.0 : 0.0;
    }
    if (mu == 1.0) {
        return 1.0;
    }
    return std::pow(t, mu - 1.0) / std::tgamma(mu);
}

double omega_increment(double mu, double y, double d) {
    if (mu < 1.0) {
        throw DomainError("omega_increment: requires mu >= 1");
    }
    if (y < 0.0 || d < 0.0) {
        throw DomainError("omega_increment: arguments must be non-negative");
    }
    if (d == 0.0 || mu == 1.0) {
        return 0.0;
    }
    if (y == 0.0) {
        return omega(mu, d);
    }
    return std::pow(y, mu - 1.0) * std::expm1((mu - 1.0) * std::log1p(d / y)) / std::tgamma(mu);
}

GradedMesh::GradedMesh(double final_time, std::size_t steps, double gamma)
    : final_time_(final_time), gamma_(gamma) {
    if (!(final_time > 0.0) || !std::isfinite(final_time)) {
        throw InvalidArgument("graded_mesh: final time T must be positive");
    }
    if (steps == 0) {
        throw InvalidArgument("graded_mesh: number of steps N must be at least 1");
    }
    if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
        throw InvalidArgument("graded_mesh: grading exponent gamma must be >= 1");
    }
    base_step_ = std::pow(final_time, 1.0 / gamma) / static_cast<double>(steps);
    t_.resize(steps + 1);
    t_[0] = 0.0;
    for (std::size_t n = 1; n < steps; ++n) {
        t_[n] = std::pow(static_cast<double>(n) * base_step_, gamma);
    }
    t_[steps] = final_time;
    tau_.resize(steps);
    for (std::size_t n = 1; n <= steps; ++n) {
        tau_[n - 1] = t_[n] - t_[n - 1];
    }
}

std::size_t GradedMesh::slab_containing(double t) const {
    if (!(t >= 0.0) || t > final_time_) {
        throw DomainError("time " + std::to_string(t) + " outside [0, T]");
    }
    // First level >= t; slab index equals that level index (at least 1).
    const auto it = std::lower_bound(t_.begin() + 1, t_.end(), t);
    return static_cast<std::size_t>(it - t_.begin());
}

GradedMesh graded_mesh(double final_time, std::size_t steps, double gamma) {
    return GradedMesh(final_time, steps, gamma);
}

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw InvalidArgument("fractional order alpha must lie in (0, 1]");
    }
}

void check_step(const GradedMesh& mesh, std::size_t n) {
    if (n < 1 || n > mesh.steps()) {
        throw InvalidArgument("step index n must satisfy 1 <= n <= N");
    }
}

}  // namespace

double history_a(const GradedMesh& mesh, double alpha, std::size_t n, std::size_t j) {
    check_alpha(alpha);
    check_step(mesh, n);
    if (j < 1 || j > n) {
        throw InvalidArgument("history_a: index j must satisfy 1 <= j <= n");
    }
    const auto t = mesh.times();
    return omega_increment(3.0 - alpha, t[n - 1] - t[j - 1], mesh.step(n));
}

StepWeights step_weights(const GradedMesh& mesh, double alpha, std::size_t n) {
    check_alpha(alpha);
    check_step(mesh, n);
    StepWeights w;
    w.n = n;
    w.b.assign(n - 1, 0.0);
    if (alpha == 1.0) {
        w.tau_n_alpha = mesh.step(n);
        return w;
    }
    w.tau_n_alpha = std::tgamma(3.0 - alpha) * std::pow(mesh.step(n), alpha);

    const double mu = 3.0 - alpha;
    const auto t = mesh.times();
    const double tau_n = mesh.step(n);
    // b_{n,j} is the second difference of omega_{3-alpha} over I_j x I_n.
    // Taking the inner increment over the shorter step keeps it accurate when
    // tau_j << t_n; differencing a_{n,j} - a_{n,j+1} would cancel to zero.
    for (std::size_t j = 1; j < n; ++j) {
        const double tau_j = mesh.step(j);
        if (tau_j <= tau_n) {
            w.b[j - 1] = omega_increment(mu, t[n] - t[j], tau_j) -
                         omega_increment(mu, t[n - 1] - t[j], tau_j);
        } else {
            w.b[j - 1] = omega_increment(mu, t[n - 1] - t[j - 1], tau_n) -
                         omega_increment(mu, t[n - 1] - t[j], tau_n);
        }
    }
    return w;
}

double caputo_slab_integral(const GradedMesh& mesh, double alpha,
                            std::span<const double> increments) {
    const std::size_t n = increments.size();
    check_step(mesh, n);
    const auto weights = step_weights(mesh, alpha, n);
    const double tau_n = mesh.step(n);
    double sum = omega(3.0 - alpha, tau_n) * increments[n - 1] / tau_n;
    for (std::size_t j = 1; j < n; ++j) {
        sum += weights.b[j - 1] * increments[j - 1] / mesh.step(j);
    }
    return sum;
}

std::vector<double> caputo_slab_integral(const GradedMesh& mesh, double alpha,
                                         std::span<const std::vector<double>> increments) {
    const std::size_t n = increments.size();
    check_step(mesh, n);
    const std::size_t dim = increments[0].size();
    for (const auto& w : increments) {
        if (w.size() != dim) {
            throw InvalidArgument("caputo_slab_integral: increment vectors differ in length");
        }
    }
    const auto weights = step_weights(mesh, alpha, n);
    const double tau_n = mesh.step(n);
    const double lead = omega(3.0 - alpha, tau_n) / tau_n;
    std::vector<double> out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        out[i] = lead * increments[n - 1][i];
    }
    for (std::size_t j = 1; j < n; ++j) {
        const double c = weights.b[j - 1] / mesh.step(j);
        const auto& wj = increments[j - 1];
        for (std::size_t i = 0; i < dim; ++i) {
            out[i] += c * wj[i];
        }
    }
    return out;
}

}  // namespace fracdiff::kernel
