#include "fracdiff/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "fracdiff/error.hpp"

namespace fracdiff::exact {

namespace {

// sin((2m+1) pi x) folded about x = 1/2, where every odd mode is symmetric;
// exact zeros at both ends.
double odd_mode(std::size_t m, double x) {
    const double folded = x <= 0.5 ? x : 1.0 - x;
    if (folded == 0.0) return 0.0;
    double v = std::fmod(static_cast<double>(2 * m + 1) * folded, 2.0);
    double sign = 1.0;
    if (v > 1.0) {
        v -= 1.0;
        sign = -1.0;
    }
    if (v > 0.5) v = 1.0 - v;
    return sign * std::sin(std::numbers::pi * v);
}

}  // namespace

SeriesSolution::SeriesSolution(double alpha, std::vector<double> coeffs)
    : alpha_(alpha), coeffs_(std::move(coeffs)), mlf_(alpha) {
    if (coeffs_.empty()) {
        throw InvalidArgument("series solution needs at least one term");
    }
    lambdas_.resize(coeffs_.size());
    for (std::size_t m = 0; m < coeffs_.size(); ++m) {
        lambdas_[m] = static_cast<double>(2 * m + 1) * std::numbers::pi;
    }
}

std::vector<double> SeriesSolution::amplitudes(double t) const {
    if (!(t >= 0.0)) {
        throw DomainError("series solution: time must be non-negative");
    }
    std::vector<double> a(coeffs_.begin(), coeffs_.end());
    if (t == 0.0) {
        return a;
    }
    const double ta = std::pow(t, alpha_);
    for (std::size_t m = 0; m < a.size(); ++m) {
        a[m] *= mlf_(lambdas_[m] * lambdas_[m] * ta);
    }
    return a;
}

double SeriesSolution::eval(double x, double t) const {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("series solution: x must lie in [0, 1]");
    }
    const auto a = amplitudes(t);
    double u = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
        u += a[m] * odd_mode(m, x);
    }
    return u;
}

namespace {

void check_terms(std::size_t terms) {
    if (terms == 0) {
        throw InvalidArgument("series terms must be at least 1");
    }
}

}  // namespace

SeriesSolution example1(double alpha, std::size_t terms) {
    check_terms(terms);
    std::vector<double> c(terms);
    for (std::size_t m = 0; m < terms; ++m) {
        const double lambda = static_cast<double>(2 * m + 1) * std::numbers::pi;
        c[m] = 8.0 / (lambda * lambda * lambda);
    }
    return SeriesSolution(alpha, std::move(c));
}

SeriesSolution example2(double alpha, std::size_t terms, double factor) {
    check_terms(terms);
    std::vector<double> c(terms);
    for (std::size_t m = 0; m < terms; ++m) {
        const double lambda = static_cast<double>(2 * m + 1) * std::numbers::pi;
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        c[m] = factor * sign / (lambda * lambda);
    }
    return SeriesSolution(alpha, std::move(c));
}

SeriesSampler::SeriesSampler(const SeriesSolution& sol, std::span<const double> xs)
    : sol_(&sol), point_count_(xs.size()), sines_(sol.terms() * xs.size()) {
    const auto lambdas = sol.lambdas();
    for (std::size_t m = 0; m < lambdas.size(); ++m) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sines_[m * point_count_ + i] = odd_mode(m, xs[i]);
        }
    }
}

void SeriesSampler::sample(double t, std::span<double> out) const {
    if (out.size() != point_count_) {
        throw InvalidArgument("series sampler: output size mismatch");
    }
    const auto a = sol_->amplitudes(t);
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t m = 0; m < a.size(); ++m) {
        const double am = a[m];
        const double* row = sines_.data() + m * point_count_;
        for (std::size_t i = 0; i < point_count_; ++i) {
            out[i] += am * row[i];
        }
    }
}

}  // namespace fracdiff::exact
