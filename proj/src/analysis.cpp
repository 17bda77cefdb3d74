#include "fracdiff/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "fracdiff/error.hpp"
#include "fracdiff/mlf.hpp"
#include "quadrature.hpp"

namespace fracdiff::analysis {

ImplicitInterpolant implicit_interpolant(const kernel::GradedMesh& mesh,
                                         std::span<const double> slab_integrals, double v0) {
    const std::size_t N = mesh.steps();
    if (slab_integrals.size() != N) {
        throw InvalidArgument("implicit_interpolant: need one slab integral per step");
    }
    ImplicitInterpolant out{mesh, std::vector<double>(N + 1)};
    out.values[0] = v0;
    for (std::size_t n = 1; n <= N; ++n) {
        out.values[n] = 2.0 * slab_integrals[n - 1] / mesh.step(n) - out.values[n - 1];
    }
    return out;
}

double slab_integral(const TimeFunction& v, double t0, double t1) {
    if (!(t1 > t0)) {
        return 0.0;
    }
    const double scale = std::max(1.0, std::abs(v(0.5 * (t0 + t1))));
    const double tol = 1e-12 * (t1 - t0) * scale;
    const auto r = detail::adaptive_integrate(v, {t0, t1}, tol);
    if (!r.converged) {
        throw AccuracyError("slab_integral: quadrature did not reach tolerance");
    }
    return r.value;
}

std::vector<double> slab_integrals(const kernel::GradedMesh& mesh, const TimeFunction& v) {
    std::vector<double> s(mesh.steps());
    for (std::size_t n = 1; n <= mesh.steps(); ++n) {
        s[n - 1] = slab_integral(v, mesh.time(n - 1), mesh.time(n));
    }
    return s;
}

PsiIdentity psi_alternating_sum(const kernel::GradedMesh& mesh, const TimeFunction& v,
                                std::size_t n) {
    if (n < 1 || n > mesh.steps()) {
        throw InvalidArgument("psi_alternating_sum: index n must satisfy 1 <= n <= N");
    }
    const auto slabs = slab_integrals(mesh, v);
    const auto interp = implicit_interpolant(mesh, slabs, v(0.0));

    PsiIdentity out;
    out.lhs = v(mesh.time(n)) - interp.values[n];
    for (std::size_t j = 1; j <= n; ++j) {
        const double a = mesh.time(j - 1);
        const double b = mesh.time(j);
        const double tau = mesh.step(j);
        const double va = v(a);
        const double vb = v(b);
        const TimeFunction defect = [&](double t) {
            return v(t) - ((b - t) * va + (t - a) * vb) / tau;
        };
        const double delta = 2.0 / tau * slab_integral(defect, a, b);
        // (-1)^{n+j+1}
        out.rhs += ((n + j + 1) % 2 == 0) ? delta : -delta;
    }
    return out;
}

double frac_energy(const kernel::GradedMesh& mesh, double alpha, std::span<const double> nodal) {
    const std::size_t N = mesh.steps();
    if (nodal.size() != N + 1) {
        throw InvalidArgument("frac_energy: need N+1 nodal values");
    }
    std::vector<double> w(N);
    for (std::size_t n = 1; n <= N; ++n) w[n - 1] = nodal[n] - nodal[n - 1];
    // Sum over slabs of v' |_{I_n} times int_{I_n} d^alpha v dt.
    double energy = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        const double slope = w[n - 1] / mesh.step(n);
        if (slope == 0.0) continue;
        energy += slope * kernel::caputo_slab_integral(
                              mesh, alpha, std::span<const double>(w.data(), n));
    }
    return energy;
}

namespace {

struct SmoothFunction {
    double a0, a1, a2, freq, phase, amp;
    double operator()(double t) const {
        return a0 + a1 * t + a2 * t * t + amp * std::sin(freq * t + phase);
    }
};

// exp(x^2) erfc(x); the asymptotic expansion takes over before erfc underflows.
double scaled_erfc(double x) {
    if (x < 25.0) return std::exp(x * x) * std::erfc(x);
    const double z = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 1.0;
    for (int n = 1; n < 30; ++n) {
        term *= -(2.0 * n - 1.0) * z;
        sum += term;
    }
    return sum / (x * std::sqrt(std::numbers::pi));
}

DiagnosticResult finish(std::string name, double worst, double tol, std::size_t cases) {
    return {std::move(name), worst, tol, cases, worst <= tol};
}

}  // namespace

std::vector<DiagnosticResult> run_diagnostics(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
    auto random_mesh = [&](std::size_t max_steps) {
        const double T = uniform(0.5, 2.0);
        const auto N = static_cast<std::size_t>(1 + rng() % max_steps);
        return kernel::GradedMesh(T, N, uniform(1.0, 5.0));
    };
    auto random_function = [&]() {
        return SmoothFunction{uniform(1.0, 2.0),  uniform(-1.0, 1.0), uniform(-1.0, 1.0),
                              uniform(0.5, 6.0),  uniform(0.0, 6.28), uniform(-0.5, 0.5)};
    };

    std::vector<DiagnosticResult> results;

    {
        double worst = 0.0;
        constexpr std::size_t kCases = 100;
        for (std::size_t c = 0; c < kCases; ++c) {
            const auto mesh = random_mesh(50);
            const auto v = random_function();
            const auto s = slab_integrals(mesh, v);
            const auto hat = implicit_interpolant(mesh, s, v(0.0));
            for (std::size_t n = 1; n <= mesh.steps(); ++n) {
                const double avg = 0.5 * (hat.values[n - 1] + hat.values[n]) * mesh.step(n);
                worst = std::max(worst, std::abs(avg - s[n - 1]) / std::abs(s[n - 1]));
            }
        }
        results.push_back(finish("implicit interpolant average preservation", worst, 1e-12, kCases));
    }

    {
        double worst = 0.0;
        constexpr std::size_t kCases = 100;
        for (std::size_t c = 0; c < kCases; ++c) {
            const auto mesh = random_mesh(12);
            const auto v = random_function();
            const std::size_t n = 1 + rng() % mesh.steps();
            const auto id = psi_alternating_sum(mesh, v, n);
            worst = std::max(worst, std::abs(id.lhs - id.rhs));
        }
        results.push_back(finish("psi alternating-sum identity", worst, 1e-8, kCases));
    }

    {
        double most_negative = 0.0;
        constexpr std::size_t kCases = 1000;
        std::normal_distribution<double> normal(0.0, 1.0);
        for (std::size_t c = 0; c < kCases; ++c) {
            const auto mesh = random_mesh(50);
            const double alpha = 1.0 - unit(rng);  // (0, 1]
            std::vector<double> nodal(mesh.steps() + 1);
            for (double& x : nodal) x = normal(rng);
            most_negative = std::min(most_negative, frac_energy(mesh, alpha, nodal));
        }
        // Reported as the magnitude of the most negative energy.
        results.push_back(finish("fractional energy positivity", std::max(0.0, -most_negative), 1e-12, kCases));
    }

    {
        double worst = 0.0;
        const double xs[] = {0.1, 1.0, 10.0, 100.0};
        for (double x : xs) {
            worst = std::max(worst, std::abs(mlf::mlf_neg(0.5, x) - scaled_erfc(x)));
        }
        results.push_back(finish("Mittag-Leffler erfc identity", worst, 1e-10, std::size(xs)));
    }

    {
        double worst = 0.0;
        std::size_t cases = 0;
        for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
            const mlf::MittagLefflerNeg E(mlf::tuned_params(alpha));
            const auto& p = E.params();
            worst = std::max(worst, std::abs(E.series(p.series_cutoff) -
                                             E.integral(p.series_cutoff, p.quad_tolerance)));
            worst = std::max(worst, std::abs(E.asymptotic(p.asymptotic_cutoff) -
                                             E.integral(p.asymptotic_cutoff, p.quad_tolerance)));
            cases += 2;
        }
        results.push_back(finish("Mittag-Leffler regime agreement", worst, 1e-9, cases));
    }

    {
        // Count of probes violating 0 < E <= 1 or strict decrease.
        double violations = 0.0;
        std::size_t cases = 0;
        for (int a = 1; a <= 9; ++a) {
            const mlf::MittagLefflerNeg E(mlf::tuned_params(0.1 * a));
            double prev = 1.0;
            for (int k = 0; k <= 120; ++k) {
                const double x = std::pow(10.0, -6.0 + 0.1 * k);
                const double v = E(x);
                if (!(v > 0.0 && v <= 1.0 && v < prev)) violations += 1.0;
                prev = v;
                ++cases;
            }
        }
        results.push_back(finish("Mittag-Leffler monotonicity", violations, 0.0, cases));
    }
    return results;
}

}  // namespace fracdiff::analysis
