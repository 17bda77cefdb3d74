#pragma once

// Piecewise-linear Galerkin elements on (0,1) with homogeneous Dirichlet
// conditions. Only interior nodes 1..M-1 carry unknowns.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracdiff::fem {

using ScalarFunction = std::function<double(double)>;

class SpatialGrid {
public:
    /// Uniform grid with `intervals` subintervals on [0,1].
    explicit SpatialGrid(std::size_t intervals);

    [[nodiscard]] std::size_t intervals() const noexcept { return intervals_; }
    [[nodiscard]] std::size_t interior_count() const noexcept { return intervals_ - 1; }
    [[nodiscard]] double width() const noexcept { return h_; }
    [[nodiscard]] std::span<const double> nodes() const noexcept { return x_; }

    /// Two-point Gauss abscissae, two per element in element order.
    [[nodiscard]] std::span<const double> gauss_points() const noexcept { return gauss_; }

private:
    std::size_t intervals_;
    double h_;
    std::vector<double> x_;
    std::vector<double> gauss_;
};

/// Local coordinate of the two Gauss points on the reference element [0,1].
inline constexpr double kGaussLo = 0.21132486540518711775;  // (1 - 1/sqrt(3)) / 2
inline constexpr double kGaussHi = 0.78867513459481288225;  // (1 + 1/sqrt(3)) / 2

/// Tridiagonal matrix; lower[i] couples row i to i-1 (lower[0] unused),
/// upper[i] couples row i to i+1 (upper[n-1] unused).
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    [[nodiscard]] std::size_t size() const noexcept { return diag.size(); }
    /// y = A x
    [[nodiscard]] std::vector<double> apply(std::span<const double> x) const;
    /// y += scale * A x
    void apply_add(std::span<const double> x, double scale, std::span<double> y) const;
};

/// a*A + b*B for tridiagonals of equal size.
[[nodiscard]] Tridiagonal combine(double a, const Tridiagonal& A, double b, const Tridiagonal& B);

/// Thomas algorithm. Throws SingularSystem on a zero (or non-finite) pivot.
[[nodiscard]] std::vector<double> solve_tridiagonal(const Tridiagonal& A, std::span<const double> rhs);

struct FemSystem {
    SpatialGrid grid;
    Tridiagonal mass;       // <phi_j, phi_i>
    Tridiagonal stiffness;  // <kappa phi_j', phi_i'>
    ScalarFunction kappa;
};

/// Mass matrix exactly; stiffness with two-point Gauss on kappa per element.
/// Throws InvalidArgument when kappa <= 0 at a quadrature point.
[[nodiscard]] FemSystem assemble(const SpatialGrid& grid, ScalarFunction kappa);

/// <g, phi_i> for interior nodes, two-point Gauss per element.
[[nodiscard]] std::vector<double> load_vector(const SpatialGrid& grid, const ScalarFunction& g);

/// Ritz projection R_h w: solves stiffness * c = r with r_i = <kappa w', phi_i'>.
/// Only the derivative w' is needed (w vanishes at both ends).
[[nodiscard]] std::vector<double> ritz_projection(const FemSystem& sys,
                                                  const ScalarFunction& w_prime);

/// Value of the P1 function with interior coefficients `coeffs` (zero at the
/// boundary) at every Gauss point of the grid.
[[nodiscard]] std::vector<double> values_at_gauss_points(const SpatialGrid& grid,
                                                         std::span<const double> coeffs);

}  // namespace fracdiff::fem
