#pragma once

// Globally adaptive Gauss-Kronrod integration with an absolute tolerance.
// Panels are evaluated with Boost's 31-point rule; the panel with the largest
// error estimate is bisected until the summed estimate meets the tolerance.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace fracdiff::detail {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
};

template <class F>
QuadratureResult adaptive_integrate(const F& f, std::vector<double> breakpoints, double abs_tol,
                                    std::size_t max_panels = 4000) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    // Kronrod nodes with even index are the embedded Gauss nodes. The error is
    // |K - G| on the panel; Boost's own estimate does not scale with width.
    const auto& x = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = boost::math::quadrature::gauss<double, 15>::weights();
    auto eval = [&](double a, double b) {
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        const double f0 = f(c);
        double k = wk[0] * f0;
        double g = 0.0;
        for (std::size_t i = 1; i < x.size(); ++i) {
            const double pair = f(c - h * x[i]) + f(c + h * x[i]);
            k += wk[i] * pair;
            if (i % 2 == 0) g += wg[i / 2] * pair;
        }
        g += wg[0] * f0;
        return Panel{a, b, h * k, std::abs(h * (k - g))};
    };

    std::priority_queue<Panel> heap;
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] > breakpoints[i])) continue;
        Panel p = eval(breakpoints[i], breakpoints[i + 1]);
        value += p.value;
        error += p.error;
        heap.push(p);
    }
    while (error > abs_tol && heap.size() < max_panels) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push(worst);
            break;
        }
        Panel left = eval(worst.a, mid);
        Panel right = eval(mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of incremental updates.
    value = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {value, error, error <= abs_tol};
}

}  // namespace fracdiff::detail
