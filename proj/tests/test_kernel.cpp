#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "fracdiff/error.hpp"
#include "fracdiff/kernel.hpp"

using namespace fracdiff;
using namespace fracdiff::kernel;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// omega_mu(t) in 50-digit arithmetic.
Big big_omega(double mu, Big t) { return pow(t, Big(mu) - 1) / boost::math::tgamma(Big(mu)); }

Big big_a(const GradedMesh& m, double alpha, std::size_t n, std::size_t j) {
    const double mu = 3.0 - alpha;
    Big tn = m.time(n), tn1 = m.time(n - 1), tj1 = m.time(j - 1);
    Big lo = tn1 - tj1;
    return big_omega(mu, tn - tj1) - (lo > 0 ? big_omega(mu, lo) : Big(0));
}

}  // namespace

TEST(Omega, ClosedForms) {
    EXPECT_DOUBLE_EQ(omega(1.0, 5.0), 1.0);
    EXPECT_DOUBLE_EQ(omega(2.0, 3.0), 3.0);
    const double oracle = static_cast<double>(big_omega(2.5, Big(2)));
    EXPECT_NEAR(omega(2.5, 2.0), oracle, 1e-15);
    EXPECT_NEAR(omega(2.5, 2.0), 2.1277, 1e-4);
}

TEST(Omega, AtZero) {
    EXPECT_EQ(omega(1.0, 0.0), 1.0);
    EXPECT_EQ(omega(2.5, 0.0), 0.0);
    EXPECT_THROW((void)omega(0.5, 0.0), DomainError);
}

TEST(Omega, GammaAgainstMultiprecision) {
    for (double mu = 0.5; mu <= 5.0; mu += 0.0625) {
        const double oracle = static_cast<double>(boost::math::tgamma(Big(mu)));
        EXPECT_NEAR(1.0 / omega(mu, 1.0), oracle, 1e-14 * oracle) << mu;
    }
}

TEST(Omega, IncrementMatchesMultiprecision) {
    const double cases[][3] = {{2.5, 1.0, 1e-8}, {2.1, 1e3, 1e-3}, {2.9, 1e-9, 1e-12}, {1.5, 4.0, 2.0}};
    for (const auto& c : cases) {
        Big exact = big_omega(c[0], Big(c[1]) + Big(c[2])) - big_omega(c[0], Big(c[1]));
        EXPECT_NEAR(omega_increment(c[0], c[1], c[2]), static_cast<double>(exact),
                    1e-14 * abs(static_cast<double>(exact)));
    }
}

TEST(GradedMesh, Examples) {
    const auto uni = graded_mesh(1.0, 4, 1.0);
    const double t1[] = {0, 0.25, 0.5, 0.75, 1};
    for (int n = 0; n <= 4; ++n) EXPECT_DOUBLE_EQ(uni.time(n), t1[n]);
    const auto sq = graded_mesh(1.0, 4, 2.0);
    const double t2[] = {0, 0.0625, 0.25, 0.5625, 1};
    for (int n = 0; n <= 4; ++n) EXPECT_DOUBLE_EQ(sq.time(n), t2[n]);
    EXPECT_DOUBLE_EQ(graded_mesh(1.0, 8, 3.0).time(1), 1.953125e-3);
}

TEST(GradedMesh, RejectsBadArguments) {
    EXPECT_THROW(GradedMesh(1.0, 0, 2.0), InvalidArgument);
    EXPECT_THROW(GradedMesh(1.0, 4, 0.5), InvalidArgument);
    EXPECT_THROW(GradedMesh(-1.0, 4, 1.0), InvalidArgument);
}

TEST(GradedMesh, RandomPropertyDraws) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int c = 0; c < 1000; ++c) {
        const double T = 0.1 + 10.0 * U(rng);
        const std::size_t N = 1 + rng() % 200;
        const double g = 1.0 + 4.0 * U(rng);
        const GradedMesh m(T, N, g);
        const double tau = std::pow(T, 1.0 / g) / static_cast<double>(N);
        ASSERT_EQ(m.time(0), 0.0);
        ASSERT_EQ(m.time(N), T);
        for (std::size_t n = 1; n <= N; ++n) {
            ASSERT_GT(m.time(n), m.time(n - 1));
            const double tn = std::pow(static_cast<double>(n) * tau, g);
            ASSERT_NEAR(m.time(n), tn, 1e-13 * tn);
            if (n >= 2) {
                const double slack = 1e-12 * m.step(n);
                ASSERT_LE(m.time(n), std::pow(2.0, g) * m.time(n - 1) * (1 + 1e-14));
                ASSERT_LE(g * tau * std::pow(m.time(n - 1), 1 - 1 / g), m.step(n) + slack);
                ASSERT_LE(m.step(n), g * tau * std::pow(m.time(n), 1 - 1 / g) + slack);
            }
        }
    }
}

TEST(GradedMesh, SlabLookup) {
    const auto m = graded_mesh(1.0, 4, 2.0);
    EXPECT_EQ(m.slab_containing(0.0), 1u);
    EXPECT_EQ(m.slab_containing(0.0625), 1u);
    EXPECT_EQ(m.slab_containing(0.07), 2u);
    EXPECT_EQ(m.slab_containing(1.0), 4u);
    EXPECT_THROW((void)m.slab_containing(1.5), DomainError);
}

TEST(StepWeights, ClassicalLimit) {
    const auto m = graded_mesh(2.0, 10, 2.5);
    for (std::size_t n = 1; n <= 10; ++n) {
        const auto w = step_weights(m, 1.0, n);
        EXPECT_EQ(w.b.size(), n - 1);
        EXPECT_DOUBLE_EQ(w.tau_n_alpha, m.step(n));
        for (double b : w.b) EXPECT_EQ(b, 0.0);
    }
}

TEST(StepWeights, UniformExamples) {
    const GradedMesh m(3.0, 3, 1.0);  // t_k = k
    const double g25 = static_cast<double>(boost::math::tgamma(Big(2.5)));
    const auto w2 = step_weights(m, 0.5, 2);
    ASSERT_EQ(w2.b.size(), 1u);
    EXPECT_NEAR(w2.b[0], (std::pow(2.0, 1.5) - 2.0) / g25, 1e-15);
    EXPECT_NEAR(w2.b[0], 0.62319, 1e-5);
    const auto w3 = step_weights(m, 0.5, 3);
    EXPECT_NEAR(w3.b[0], (std::pow(3.0, 1.5) - 2 * std::pow(2.0, 1.5) + 1.0) / g25, 1e-15);
    EXPECT_TRUE(step_weights(m, 0.5, 1).b.empty());
}

TEST(StepWeights, MatchMultiprecisionOracle) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int c = 0; c < 20; ++c) {
        const double alpha = 0.05 + 0.95 * U(rng);
        const GradedMesh m(0.5 + U(rng), 1 + rng() % 60, 1.0 + 4.0 * U(rng));
        const std::size_t n = 1 + rng() % m.steps();
        const auto w = step_weights(m, alpha, n);
        const Big tna = boost::math::tgamma(Big(3.0 - alpha)) * pow(Big(m.step(n)), Big(alpha));
        EXPECT_NEAR(w.tau_n_alpha, static_cast<double>(tna), 1e-14 * static_cast<double>(tna));
        for (std::size_t j = 1; j < n; ++j) {
            const double exact = static_cast<double>(big_a(m, alpha, n, j) - big_a(m, alpha, n, j + 1));
            // b is a second difference; its accuracy is relative to a_{n,j}.
            const double scale = static_cast<double>(big_a(m, alpha, n, j));
            EXPECT_NEAR(w.b[j - 1], exact, 1e-13 * scale) << "n=" << n << " j=" << j;
            EXPECT_NEAR(history_a(m, alpha, n, j), static_cast<double>(big_a(m, alpha, n, j)),
                        1e-13 * static_cast<double>(big_a(m, alpha, n, j)));
        }
    }
}

// Steep grading makes the first steps tiny next to t_n; b must stay accurate
// relative to itself there, since the solver divides it by tau_j.
TEST(StepWeights, SteepGradingRelativeAccuracy) {
    const double alpha = 0.3;
    const GradedMesh m(1.0, 128, 2.0 / alpha + 1.0);
    for (std::size_t n : {2u, 3u, 20u, 64u, 127u, 128u}) {
        const auto w = step_weights(m, alpha, n);
        for (std::size_t j = 1; j < n; ++j) {
            const double exact = static_cast<double>(big_a(m, alpha, n, j) - big_a(m, alpha, n, j + 1));
            ASSERT_GT(exact, 0.0);
            EXPECT_NEAR(w.b[j - 1], exact, 1e-11 * exact) << "n=" << n << " j=" << j;
        }
    }
}

TEST(StepWeights, Positivity) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int c = 0; c < 40; ++c) {
        const double alpha = 0.01 + 0.98 * U(rng);
        const GradedMesh m(1.0, 1 + rng() % 200, 1.0 + 4.0 * U(rng));
        for (std::size_t n = 1; n <= m.steps(); n += 1 + m.steps() / 17) {
            const auto w = step_weights(m, alpha, n);
            for (std::size_t j = 1; j < n; ++j) {
                ASSERT_GT(history_a(m, alpha, n, j), 0.0);
                ASSERT_GT(w.b[j - 1], 0.0) << "alpha=" << alpha << " n=" << n << " j=" << j;
            }
        }
    }
}

TEST(CaputoSlab, Examples) {
    const GradedMesh m(2.0, 2, 1.0);
    const double g25 = std::tgamma(2.5);
    EXPECT_EQ(caputo_slab_integral(m, 0.5, std::vector<double>{0.0, 0.0}), 0.0);
    EXPECT_NEAR(caputo_slab_integral(m, 0.5, std::vector<double>{1.0, 1.0}),
                (std::pow(2.0, 1.5) - 1.0) / g25, 1e-15);
    EXPECT_DOUBLE_EQ(caputo_slab_integral(m, 1.0, std::vector<double>{0.3, -0.7}), -0.7);
    EXPECT_THROW((void)caputo_slab_integral(m, 0.5, std::vector<double>{1.0, 2.0, 3.0}), InvalidArgument);
    EXPECT_THROW((void)caputo_slab_integral(m, 0.5, std::vector<double>{}), InvalidArgument);
}

TEST(CaputoSlab, LinearFunctionTelescopes) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int c = 0; c < 200; ++c) {
        const double alpha = 0.02 + 0.98 * U(rng);
        const GradedMesh m(0.2 + 3 * U(rng), 1 + rng() % 80, 1.0 + 4.0 * U(rng));
        const std::size_t n = 1 + rng() % m.steps();
        std::vector<double> w(n);
        for (std::size_t j = 1; j <= n; ++j) w[j - 1] = m.step(j);  // v(t) = t
        const double exact = omega(3 - alpha, m.time(n)) - omega(3 - alpha, m.time(n - 1));
        EXPECT_NEAR(caputo_slab_integral(m, alpha, w), exact, 1e-12 * exact);
    }
}

// Independent oracle: (I^{1-a} v')(t) for piecewise-linear v is a sum of
// shifted omega_{2-a} ramps; integrate it over the slab numerically.
TEST(CaputoSlab, MatchesQuadratureOfConvolution) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    boost::math::quadrature::tanh_sinh<double> ts;
    for (int c = 0; c < 50; ++c) {
        const double alpha = 0.05 + 0.9 * U(rng);
        const GradedMesh m(0.5 + U(rng), 1 + rng() % 10, 1.0 + 3.0 * U(rng));
        const std::size_t n = 1 + rng() % m.steps();
        std::vector<double> w(n);
        for (double& x : w) x = 2.0 * U(rng) - 1.0;
        auto rl = [&](double t) {
            double s = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double slope = w[j - 1] / m.step(j);
                const double a = t - m.time(j - 1);
                const double b = t - m.time(j);
                if (a <= 0) continue;
                s += slope * (std::pow(a, 1 - alpha) - (b > 0 ? std::pow(b, 1 - alpha) : 0.0));
            }
            return s / std::tgamma(2 - alpha);
        };
        const double oracle = ts.integrate(rl, m.time(n - 1), m.time(n));
        const double got = caputo_slab_integral(m, alpha, w);
        EXPECT_NEAR(got, oracle, 1e-8 * std::max(1e-3, std::abs(oracle)));
    }
}

TEST(CaputoSlab, VectorVariantIsComponentwise) {
    const GradedMesh m(1.0, 5, 2.0);
    std::vector<std::vector<double>> inc{{1, 2}, {0.5, -1}, {0.25, 3}};
    const auto v = caputo_slab_integral(m, 0.4, inc);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_DOUBLE_EQ(v[0], caputo_slab_integral(m, 0.4, std::vector<double>{1, 0.5, 0.25}));
    EXPECT_DOUBLE_EQ(v[1], caputo_slab_integral(m, 0.4, std::vector<double>{2, -1, 3}));
}
