#include "fracdiff/mlf.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <utility>
#include <vector>
#include <numbers>
#include <string>

#include "fracdiff/error.hpp"
#include "quadrature.hpp"

namespace fracdiff::mlf {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(pi v) with exact zeros at integers.
double sin_pi(double v) {
    double r = std::fmod(v, 2.0);
    if (r < 0.0) r += 2.0;
    if (r == 0.0 || r == 1.0) return 0.0;
    if (r > 1.0) return -sin_pi(r - 1.0);
    if (r > 0.5) r = 1.0 - r;
    return std::sin(kPi * r);
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw InvalidArgument("Mittag-Leffler order alpha must lie in (0, 1], got " +
                              std::to_string(alpha));
    }
}

struct AsymptoticSum {
    double value = 0.0;
    double remainder = 0.0;  // magnitude of the first omitted term
};

// Sum_{k>=1} (-1)^(k-1) x^-k / Gamma(1 - alpha k), truncated at the smallest
// term (the series diverges for fixed x).
AsymptoticSum asymptotic_sum(double alpha, double x) {
    AsymptoticSum out;
    const double log_x = std::log(x);
    double last = std::numeric_limits<double>::infinity();
    constexpr int kMaxTerms = 400;
    for (int k = 1; k <= kMaxTerms; ++k) {
        const double ak = alpha * static_cast<double>(k);
        // 1/Gamma(1 - ak) = Gamma(ak) sin(pi ak) / pi by reflection.
        const double s = sin_pi(ak);
        if (s == 0.0) continue;
        const double magnitude = std::exp(std::lgamma(ak) - static_cast<double>(k) * log_x);
        const double term = magnitude * s / kPi * ((k % 2 == 1) ? 1.0 : -1.0);
        const double size = std::abs(term);
        if (size > last) {
            out.remainder = size;
            return out;
        }
        out.value += term;
        last = size;
        if (size < 1e-18 * std::max(1e-300, std::abs(out.value))) {
            out.remainder = size;
            return out;
        }
    }
    out.remainder = last;
    return out;
}

}  // namespace

double reciprocal_gamma(double z) {
    if (z > 0.0) {
        if (z > 170.0) return std::exp(-std::lgamma(z));
        return 1.0 / std::tgamma(z);
    }
    const double s = sin_pi(z);
    if (s == 0.0) return 0.0;
    // 1/Gamma(z) = Gamma(1-z) sin(pi z) / pi
    return std::exp(std::lgamma(1.0 - z)) * s / kPi;
}

MlfParams tuned_params(double alpha) {
    check_alpha(alpha);
    MlfParams p;
    p.alpha = alpha;
    p.series_cutoff = 1.0;
    p.asymptotic_cutoff = 10.0;
    if (alpha == 1.0) {
        return p;
    }
    while (asymptotic_sum(alpha, p.asymptotic_cutoff).remainder > 1e-13 &&
           p.asymptotic_cutoff < 1e6) {
        p.asymptotic_cutoff *= 1.25;
    }
    return p;
}

MittagLefflerNeg::MittagLefflerNeg(double alpha) : params_(tuned_params(alpha)) {}

MittagLefflerNeg::MittagLefflerNeg(const MlfParams& params) : params_(params) {
    check_alpha(params.alpha);
    if (!(params.series_cutoff > 0.0) || params.series_cutoff > params.asymptotic_cutoff) {
        throw InvalidArgument("Mittag-Leffler cutoffs must satisfy 0 < series <= asymptotic");
    }
    if (!(params.quad_tolerance > 0.0)) {
        throw InvalidArgument("Mittag-Leffler quadrature tolerance must be positive");
    }
}

double MittagLefflerNeg::series(double x) const {
    const double alpha = params_.alpha;
    if (x == 0.0) return 1.0;
    const double log_x = std::log(x);
    // Kahan-compensated alternating sum.
    double sum = 1.0;
    double comp = 0.0;
    constexpr int kMaxTerms = 20000;
    for (int k = 1; k <= kMaxTerms; ++k) {
        const double kd = static_cast<double>(k);
        const double magnitude = std::exp(kd * log_x - std::lgamma(1.0 + alpha * kd));
        const double term = (k % 2 == 1) ? -magnitude : magnitude;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (magnitude < 1e-17 && alpha * kd > 1.0) {
            return sum;
        }
    }
    throw AccuracyError("Mittag-Leffler power series did not converge for x = " +
                        std::to_string(x));
}

double MittagLefflerNeg::asymptotic(double x) const {
    if (!(x > 0.0)) {
        throw DomainError("Mittag-Leffler asymptotic expansion needs x > 0");
    }
    if (params_.alpha == 1.0) return std::exp(-x);
    return asymptotic_sum(params_.alpha, x).value;
}

double MittagLefflerNeg::integral(double x, double tolerance) const {
    const double alpha = params_.alpha;
    if (alpha == 1.0) return std::exp(-x);
    const double sin_a = std::sin(kPi * alpha);
    const double cos_a = std::cos(kPi * alpha);
    const double scale = sin_a / kPi;
    // E_alpha(-t^alpha) is the Laplace transform at t of the spectral density K,
    // so E_alpha(-x) uses t = x^(1/alpha). With r = e^s the integrand is
    // e^{-t r} K(r) r.
    const double log_t = std::log(x) / alpha;
    auto integrand = [=](double s) {
        const double ra = std::exp(alpha * s);
        const double xr = std::exp(s + log_t);
        if (xr > 745.0) return 0.0;
        return std::exp(-xr) * scale * ra / (ra * ra + 2.0 * ra * cos_a + 1.0);
    };
    // Lower tail: for r^alpha <= 1/4 the denominator exceeds 1/2, so the tail
    // below s0 is at most 2 scale e^{alpha s0} / alpha.
    const double tail_budget = 1e-3 * tolerance;
    double s_lo = std::log(tail_budget * alpha / (2.0 * scale)) / alpha;
    s_lo = std::min(s_lo, std::log(0.25) / alpha);
    const double s_hi = x > 0.0 ? std::log(60.0) - log_t : 40.0;
    if (s_hi <= s_lo) {
        return 0.0;
    }
    // Breakpoints bracket the resonance of the density at r^alpha = -cos(pi alpha),
    // which sharpens to width ~ sin(pi alpha) as alpha -> 1.
    std::vector<double> cuts{s_lo, s_hi};
    if (cos_a < 0.0) {
        const double peak = std::log(-cos_a) / alpha;
        const double width = sin_a / alpha;
        for (double k : {0.0, 1.0, -1.0, 4.0, -4.0, 16.0, -16.0}) {
            const double c = peak + k * width;
            if (c > s_lo && c < s_hi) cuts.push_back(c);
        }
    }
    if (0.0 > s_lo && 0.0 < s_hi) cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());

    const auto result = detail::adaptive_integrate(integrand, cuts, tolerance);
    const double value = result.value;
    if (!result.converged || !std::isfinite(value)) {
        throw AccuracyError("Mittag-Leffler integral representation missed tolerance at x = " +
                            std::to_string(x));
    }
    return value;
}

double MittagLefflerNeg::operator()(double x) const {
    if (!(x >= 0.0) || std::isnan(x)) {
        throw DomainError("Mittag-Leffler E_alpha(-x) requires x >= 0");
    }
    if (params_.alpha == 1.0) return std::exp(-x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x <= params_.series_cutoff) return series(x);
    if (x >= params_.asymptotic_cutoff) return asymptotic(x);
    return integral(x, params_.quad_tolerance);
}

double mlf_neg(double alpha, double x) {
    check_alpha(alpha);
    if (alpha == 1.0) {
        if (!(x >= 0.0)) throw DomainError("Mittag-Leffler E_alpha(-x) requires x >= 0");
        return std::exp(-x);
    }
    return MittagLefflerNeg(alpha)(x);
}

}  // namespace fracdiff::mlf
