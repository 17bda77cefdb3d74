#include "fracdiff/fem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracdiff/error.hpp"

namespace fracdiff::fem {

SpatialGrid::SpatialGrid(std::size_t intervals) : intervals_(intervals) {
    if (intervals < 2) {
        throw InvalidArgument("spatial grid needs at least 2 subintervals (one interior node)");
    }
    h_ = 1.0 / static_cast<double>(intervals);
    x_.resize(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) {
        x_[i] = static_cast<double>(i) / static_cast<double>(intervals);
    }
    gauss_.resize(2 * intervals);
    for (std::size_t e = 0; e < intervals; ++e) {
        gauss_[2 * e] = x_[e] + kGaussLo * h_;
        gauss_[2 * e + 1] = x_[e] + kGaussHi * h_;
    }
}

std::vector<double> Tridiagonal::apply(std::span<const double> x) const {
    std::vector<double> y(size(), 0.0);
    apply_add(x, 1.0, y);
    return y;
}

void Tridiagonal::apply_add(std::span<const double> x, double scale, std::span<double> y) const {
    const std::size_t n = size();
    if (x.size() != n || y.size() != n) {
        throw InvalidArgument("tridiagonal product: dimension mismatch");
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += lower[i] * x[i - 1];
        if (i + 1 < n) s += upper[i] * x[i + 1];
        y[i] += scale * s;
    }
}

Tridiagonal combine(double a, const Tridiagonal& A, double b, const Tridiagonal& B) {
    if (A.size() != B.size()) {
        throw InvalidArgument("tridiagonal combine: dimension mismatch");
    }
    Tridiagonal C;
    const std::size_t n = A.size();
    C.lower.resize(n);
    C.diag.resize(n);
    C.upper.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        C.lower[i] = a * A.lower[i] + b * B.lower[i];
        C.diag[i] = a * A.diag[i] + b * B.diag[i];
        C.upper[i] = a * A.upper[i] + b * B.upper[i];
    }
    return C;
}

std::vector<double> solve_tridiagonal(const Tridiagonal& A, std::span<const double> rhs) {
    const std::size_t n = A.size();
    if (n == 0 || rhs.size() != n || A.lower.size() != n || A.upper.size() != n) {
        throw InvalidArgument("solve_tridiagonal: dimension mismatch");
    }
    std::vector<double> c(n, 0.0);
    std::vector<double> x(n, 0.0);
    double pivot = A.diag[0];
    for (std::size_t i = 0;; ++i) {
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw SingularSystem("solve_tridiagonal: zero pivot in row " + std::to_string(i));
        }
        const double prev = i > 0 ? x[i - 1] : 0.0;
        const double sub = i > 0 ? A.lower[i] : 0.0;
        x[i] = (rhs[i] - sub * prev) / pivot;
        if (i + 1 == n) break;
        c[i] = A.upper[i] / pivot;
        pivot = A.diag[i + 1] - A.lower[i + 1] * c[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= c[i] * x[i + 1];
    }
    return x;
}

FemSystem assemble(const SpatialGrid& grid, ScalarFunction kappa) {
    if (!kappa) {
        throw InvalidArgument("assemble: diffusivity kappa is empty");
    }
    const std::size_t M = grid.intervals();
    const std::size_t n = grid.interior_count();
    const double h = grid.width();
    const auto gp = grid.gauss_points();

    FemSystem sys{grid, {}, {}, kappa};
    auto& mass = sys.mass;
    auto& stiff = sys.stiffness;
    mass.lower.assign(n, h / 6.0);
    mass.upper.assign(n, h / 6.0);
    mass.diag.assign(n, 4.0 * h / 6.0);
    mass.lower[0] = 0.0;
    mass.upper[n - 1] = 0.0;

    stiff.lower.assign(n, 0.0);
    stiff.diag.assign(n, 0.0);
    stiff.upper.assign(n, 0.0);
    // Element e spans nodes e, e+1; interior index of node k is k-1.
    for (std::size_t e = 0; e < M; ++e) {
        const double k0 = kappa(gp[2 * e]);
        const double k1 = kappa(gp[2 * e + 1]);
        if (!(k0 > 0.0) || !(k1 > 0.0)) {
            throw InvalidArgument("assemble: kappa must be positive at every quadrature point");
        }
        const double ke = 0.5 * (k0 + k1) / h;  // (1/h^2) * h * mean
        if (e >= 1) stiff.diag[e - 1] += ke;
        if (e + 1 <= n) stiff.diag[e] += ke;
        if (e >= 1 && e + 1 <= n) {
            stiff.upper[e - 1] -= ke;
            stiff.lower[e] -= ke;
        }
    }
    return sys;
}

std::vector<double> load_vector(const SpatialGrid& grid, const ScalarFunction& g) {
    const std::size_t M = grid.intervals();
    const std::size_t n = grid.interior_count();
    const double h = grid.width();
    const auto gp = grid.gauss_points();
    std::vector<double> b(n, 0.0);
    for (std::size_t e = 0; e < M; ++e) {
        const double g0 = g(gp[2 * e]);
        const double g1 = g(gp[2 * e + 1]);
        // Left node e has shape 1 - xi, right node e+1 has shape xi.
        const double left = 0.5 * h * (g0 * (1.0 - kGaussLo) + g1 * (1.0 - kGaussHi));
        const double right = 0.5 * h * (g0 * kGaussLo + g1 * kGaussHi);
        if (e >= 1) b[e - 1] += left;
        if (e + 1 <= n) b[e] += right;
    }
    return b;
}

std::vector<double> ritz_projection(const FemSystem& sys, const ScalarFunction& w_prime) {
    const auto& grid = sys.grid;
    const std::size_t M = grid.intervals();
    const std::size_t n = grid.interior_count();
    const auto gp = grid.gauss_points();
    std::vector<double> r(n, 0.0);
    for (std::size_t e = 0; e < M; ++e) {
        // Element integral of kappa w' times the constant slope -+1/h.
        const double q = 0.5 * (sys.kappa(gp[2 * e]) * w_prime(gp[2 * e]) +
                                sys.kappa(gp[2 * e + 1]) * w_prime(gp[2 * e + 1]));
        if (e >= 1) r[e - 1] -= q;
        if (e + 1 <= n) r[e] += q;
    }
    return solve_tridiagonal(sys.stiffness, r);
}

std::vector<double> values_at_gauss_points(const SpatialGrid& grid,
                                           std::span<const double> coeffs) {
    const std::size_t M = grid.intervals();
    if (coeffs.size() != grid.interior_count()) {
        throw InvalidArgument("values_at_gauss_points: coefficient count mismatch");
    }
    std::vector<double> out(2 * M);
    for (std::size_t e = 0; e < M; ++e) {
        const double u0 = e >= 1 ? coeffs[e - 1] : 0.0;
        const double u1 = e + 1 < M ? coeffs[e] : 0.0;
        out[2 * e] = u0 + kGaussLo * (u1 - u0);
        out[2 * e + 1] = u0 + kGaussHi * (u1 - u0);
    }
    return out;
}

}  // namespace fracdiff::fem
