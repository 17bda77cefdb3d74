#pragma once

// Truncated eigenfunction series u(x,t) = sum_m c_m E_alpha(-lambda_m^2 t^alpha) sin(lambda_m x)
// with lambda_m = (2m+1) pi: reference solutions for kappa = 1, f = 0 on (0,1).

#include <cstddef>
#include <span>
#include <vector>

#include "fracdiff/mlf.hpp"

namespace fracdiff::exact {

inline constexpr std::size_t kDefaultTerms = 60;

/// Fourier sine coefficient factor of the hat function 1 - 2|x - 1/2|.
inline constexpr double kHatFactor = 8.0;

class SeriesSolution {
public:
    SeriesSolution(double alpha, std::vector<double> coeffs);

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] std::size_t terms() const noexcept { return coeffs_.size(); }
    [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] std::span<const double> lambdas() const noexcept { return lambdas_; }

    /// Modal amplitudes c_m E_alpha(-lambda_m^2 t^alpha) at time t >= 0.
    [[nodiscard]] std::vector<double> amplitudes(double t) const;

    [[nodiscard]] double eval(double x, double t) const;

private:
    double alpha_;
    std::vector<double> coeffs_;
    std::vector<double> lambdas_;
    mlf::MittagLefflerNeg mlf_;
};

/// u0 = x(1-x): c_m = 8 / lambda_m^3.
[[nodiscard]] SeriesSolution example1(double alpha, std::size_t terms = kDefaultTerms);

/// u0 = hat: c_m = factor (-1)^m / lambda_m^2. The true sine coefficients
/// have factor 8; other factors are accepted for comparison studies.
[[nodiscard]] SeriesSolution example2(double alpha, std::size_t terms = kDefaultTerms,
                                      double factor = kHatFactor);

/// Evaluates a series at a fixed set of spatial points, reusing a table of
/// sin(lambda_m x) across many times.
class SeriesSampler {
public:
    SeriesSampler(const SeriesSolution& sol, std::span<const double> xs);

    [[nodiscard]] std::size_t size() const noexcept { return point_count_; }
    void sample(double t, std::span<double> out) const;

private:
    const SeriesSolution* sol_;
    std::size_t point_count_;
    std::vector<double> sines_;  // [m * point_count + i]
};

}  // namespace fracdiff::exact
