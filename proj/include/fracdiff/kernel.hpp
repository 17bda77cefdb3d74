#pragma once

// Fractional power kernels, graded time meshes and the history weights that
// define the averaged time discretization of the Caputo derivative.

#include <cstddef>
#include <span>
#include <vector>

namespace fracdiff::kernel {

/// Riemann-Liouville kernel omega_mu(t) = t^(mu-1) / Gamma(mu).
///
/// Defined for t > 0, and at t = 0 when mu >= 1 (omega_1(0) = 1, omega_mu(0) = 0
/// for mu > 1). Throws DomainError for the singular case t = 0, mu < 1.
[[nodiscard]] double omega(double mu, double t);

/// omega_mu(y + d) - omega_mu(y) for y >= 0, d >= 0 and mu >= 1. Evaluated as
/// y^(mu-1) expm1((mu-1) log1p(d/y)) / Gamma(mu) so that late-time differences
/// of large values keep their relative accuracy.
[[nodiscard]] double omega_increment(double mu, double y, double d);

/// Time levels t_n = (n tau)^gamma with tau = T^(1/gamma) / N.
class GradedMesh {
public:
    GradedMesh(double final_time, std::size_t steps, double gamma);

    [[nodiscard]] double final_time() const noexcept { return final_time_; }
    [[nodiscard]] std::size_t steps() const noexcept { return tau_.size(); }
    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    /// Base step tau = T^(1/gamma) / N.
    [[nodiscard]] double base_step() const noexcept { return base_step_; }

    /// t_0 .. t_N.
    [[nodiscard]] std::span<const double> times() const noexcept { return t_; }
    [[nodiscard]] double time(std::size_t n) const { return t_.at(n); }
    /// tau_n = t_n - t_{n-1}, 1-based: step(1) is the first slab.
    [[nodiscard]] double step(std::size_t n) const { return tau_.at(n - 1); }
    [[nodiscard]] std::span<const double> step_sizes() const noexcept { return tau_; }

    /// Index n of the slab (t_{n-1}, t_n] containing t; 1 for t = 0.
    [[nodiscard]] std::size_t slab_containing(double t) const;

private:
    double final_time_;
    double gamma_;
    double base_step_;
    std::vector<double> t_;
    std::vector<double> tau_;
};

[[nodiscard]] GradedMesh graded_mesh(double final_time, std::size_t steps, double gamma);

/// Weights of step n: tau_{n,alpha} = Gamma(3-alpha) tau_n^alpha and the history
/// weights b_{n,j} = a_{n,j} - a_{n,j+1}, j = 1..n-1 (stored 0-based at j-1).
struct StepWeights {
    std::size_t n = 0;
    double tau_n_alpha = 0.0;
    std::vector<double> b;
};

/// a_{n,j} = omega_{3-alpha}(t_n - t_{j-1}) - omega_{3-alpha}(t_{n-1} - t_{j-1}),
/// for 1 <= j <= n.
[[nodiscard]] double history_a(const GradedMesh& mesh, double alpha, std::size_t n, std::size_t j);

[[nodiscard]] StepWeights step_weights(const GradedMesh& mesh, double alpha, std::size_t n);

/// Integral over slab n of the Caputo derivative of a scalar continuous
/// piecewise-linear function with increments W^j = v(t_j) - v(t_{j-1}),
/// j = 1..n. `increments` must hold exactly n values.
[[nodiscard]] double caputo_slab_integral(const GradedMesh& mesh, double alpha,
                                          std::span<const double> increments);

/// Componentwise variant: increments[j-1] is the vector W^j; all vectors share
/// one length. Returns the vector of slab integrals.
[[nodiscard]] std::vector<double> caputo_slab_integral(
    const GradedMesh& mesh, double alpha, std::span<const std::vector<double>> increments);

}  // namespace fracdiff::kernel
