#pragma once

// Mittag-Leffler function E_alpha(-x) for 0 < alpha <= 1 and x >= 0.

namespace fracdiff::mlf {

struct MlfParams {
    double alpha = 1.0;
    /// Power series for x <= series_cutoff.
    double series_cutoff = 1.0;
    /// Asymptotic expansion for x >= asymptotic_cutoff.
    double asymptotic_cutoff = 10.0;
    /// Absolute tolerance for the integral representation in between.
    double quad_tolerance = 1e-12;
};

/// Cutoffs chosen from remainder bounds: the asymptotic cutoff is the smallest
/// x (on a geometric scan from 10) where the smallest asymptotic term falls
/// below 1e-13.
[[nodiscard]] MlfParams tuned_params(double alpha);

/// Evaluator bound to one order alpha; retains its tuned cutoffs.
class MittagLefflerNeg {
public:
    explicit MittagLefflerNeg(double alpha);
    explicit MittagLefflerNeg(const MlfParams& params);

    [[nodiscard]] const MlfParams& params() const noexcept { return params_; }

    /// E_alpha(-x), absolute error <= 1e-10.
    [[nodiscard]] double operator()(double x) const;

    /// Individual branches, exposed for regime-consistency checks.
    [[nodiscard]] double series(double x) const;
    [[nodiscard]] double asymptotic(double x) const;
    /// Integral representation integrated over r = e^s; throws AccuracyError
    /// when the quadrature error estimate exceeds `tolerance`.
    [[nodiscard]] double integral(double x, double tolerance) const;

private:
    MlfParams params_;
};

/// E_alpha(-x) with tuned default parameters.
[[nodiscard]] double mlf_neg(double alpha, double x);

/// 1 / Gamma(z) for real z, zero at the poles z = 0, -1, -2, ...
[[nodiscard]] double reciprocal_gamma(double z);

}  // namespace fracdiff::mlf
