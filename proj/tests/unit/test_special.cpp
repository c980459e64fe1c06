#include <gtest/gtest.h>

#include <random>

#include "hagkit/quadrature.hpp"
#include "hagkit/special.hpp"

namespace hagkit {
namespace {

const cplx I(0.0, 1.0);

ComplexFn hermite_fn(int k) {
    return [k](const RVec& x) { return cplx(hermite_function(k, x(0))); };
}

Window unit_window() { return {RVec::Zero(1), RVec::Ones(1)}; }

QuadratureSpec spec200() {
    QuadratureSpec s;
    s.nodes_per_axis = 200;
    s.scheme = Scheme::trapezoid;
    s.truncation_radius = 12.0;
    return s;
}

TEST(HermitePoly, SmallValues) {
    EXPECT_EQ(hermite_poly(0, cplx(3.7, 1.0)), cplx(1.0));
    EXPECT_EQ(hermite_poly(2, 0.0), cplx(-2.0));
    EXPECT_EQ(hermite_poly(3, 1.0), cplx(-4.0));
}

TEST(HermitePoly, OrthogonalityAgainstGaussHermite) {
    const auto rule = gauss_hermite_rule(200);
    for (int k = 0; k <= 12; ++k)
        for (int l = 0; l <= 12; ++l) {
            double s = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double x = rule.nodes[i];
                s += rule.weights[i] * std::exp(-x * x) * std::real(hermite_poly(k, x)) *
                     std::real(hermite_poly(l, x));
            }
            const double expect = k == l ? std::sqrt(kPi) * std::pow(2.0, k) * factorial(k) : 0.0;
            const double scale = std::sqrt(kPi) * std::pow(2.0, std::max(k, l)) * factorial(std::max(k, l));
            EXPECT_LT(std::abs(s - expect) / scale, 1e-10) << k << "," << l;
        }
}

TEST(HermitePoly, SumRule) {
    for (int k = 0; k <= 8; ++k)
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b) {
                const cplx x = -1.0 + 0.5 * a;
                const cplx z(-0.6 + 0.3 * b, 0.4 - 0.2 * a);
                cplx sum = 0.0;
                for (int j = 0; j <= k; ++j)
                    sum += binomial(k, j) * std::pow(2.0 * z, k - j) * hermite_poly(j, x);
                const cplx direct = hermite_poly(k, x + z);
                EXPECT_LT(std::abs(sum - direct) / std::max(1.0, std::abs(direct)), 1e-10);
            }
}

// Coefficients of e^{x^2} (-d/dx)^k e^{-x^2}: differentiate p(x) e^{-x^2}
// as p' - 2x p, negated.
TEST(HermitePoly, DerivativeFormulaCoefficients) {
    std::vector<double> p{1.0};
    for (int k = 0; k <= 6; ++k) {
        for (double x : {-1.3, -0.2, 0.0, 0.7, 2.1}) {
            double v = 0.0;
            for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) v = v * x + p[i];
            EXPECT_NEAR(v, std::real(hermite_poly(k, x)), 1e-12 * std::max(1.0, std::abs(v)));
        }
        std::vector<double> next(p.size() + 1, 0.0);
        for (std::size_t i = 1; i < p.size(); ++i) next[i - 1] -= static_cast<double>(i) * p[i];
        for (std::size_t i = 0; i < p.size(); ++i) next[i + 1] += 2.0 * p[i];
        p = next;
    }
}

TEST(Laguerre, SmallValues) {
    EXPECT_EQ(laguerre_poly(0, 2.5, 1.0), cplx(1.0));
    EXPECT_NEAR(std::abs(laguerre_poly(1, 0.0, 2.0) + 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(laguerre_poly(2, 1.0, 0.0) - 3.0), 0.0, 1e-15);
}

TEST(Laguerre, RecurrenceMatchesMonomialSum) {
    for (int k = 0; k <= 10; ++k)
        for (int g = 0; g <= 4; ++g)
            for (cplx x : {cplx(0.3), cplx(-1.2, 0.5), cplx(2.0, -1.0)}) {
                const cplx a = laguerre_poly(k, g, x);
                const cplx b = laguerre_monomial(k, g, x);
                EXPECT_LT(std::abs(a - b) / std::max(1.0, std::abs(b)), 1e-10);
            }
}

TEST(Laguerre, CrossIntegralIdentity) {
    const auto rule = gauss_hermite_rule(200);
    const cplx z1(0.3, -0.2), z2(-0.4, 0.25);
    for (int k = 0; k <= 6; ++k)
        for (int l = k; l <= 6; ++l) {
            cplx s = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double x = rule.nodes[i];
                s += rule.weights[i] * std::exp(-x * x) * hermite_poly(k, x + z1) * hermite_poly(l, x + z2);
            }
            const cplx expect = std::sqrt(kPi) * std::pow(2.0, l) * factorial(k) * std::pow(z2, l - k) *
                                laguerre_poly(k, l - k, -2.0 * z1 * z2);
            EXPECT_LT(std::abs(s - expect) / std::max(1.0, std::abs(expect)), 1e-8) << k << "," << l;
        }
}

TEST(HermiteFunction, Values) {
    EXPECT_NEAR(hermite_function(0, 0.0), 0.751125544464942, 1e-15);
    EXPECT_EQ(hermite_function(1, 0.0), 0.0);
    const auto r = integrate([](const RVec& x) { return cplx(std::pow(hermite_function(2, x(0)), 2)); },
                             unit_window(), spec200());
    EXPECT_NEAR(r.value.real(), 1.0, 1e-12);
}

TEST(HermiteFunction, HighDegreeStaysFinite) {
    const auto v = hermite_functions(400, 3.0);
    for (double x : v) EXPECT_TRUE(std::isfinite(x));
    EXPECT_NEAR(v[7], hermite_function(7, 3.0), 1e-15);
}

TEST(HermiteFunction, FourierEigenfunction) {
    for (int k = 0; k <= 6; ++k)
        for (double xi : {-1.1, 0.0, 0.4, 1.7}) {
            RVec v(1);
            v << xi;
            const auto r = fourier_quadrature(hermite_fn(k), 1.0, v, unit_window(), spec200());
            const cplx expect = std::pow(-I, k) * hermite_function(k, xi);
            EXPECT_LT(std::abs(r.value - expect), 1e-8) << k;
        }
}

TEST(HermiteWigner, ReferenceValues) {
    EXPECT_NEAR(std::abs(hermite_wigner(0, 0, 0, 0) - 1.0 / kPi), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(hermite_wigner(1, 1, 0, 0) + 1.0 / kPi), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(hermite_wigner(1, 0, 1, 0) - std::sqrt(2.0) / kPi * std::exp(-1.0)), 0.0, 1e-15);
}

TEST(HermiteWigner, MatchesQuadrature) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 0; n < 25; ++n) {
        PhasePoint pt{RVec::Constant(1, u(rng)), RVec::Constant(1, u(rng))};
        for (int k = 0; k <= 5; ++k)
            for (int l = 0; l <= 5; ++l) {
                const auto r = wigner_quadrature(hermite_fn(k), hermite_fn(l), 1.0, pt, unit_window(), spec200());
                EXPECT_LT(std::abs(hermite_wigner(k, l, pt.x(0), pt.xi(0)) - r.value), 1e-8);
            }
    }
}

TEST(HermiteWigner, HermitianAndRadial) {
    for (int k = 0; k <= 4; ++k) {
        for (int l = 0; l <= 4; ++l)
            EXPECT_EQ(hermite_wigner(k, l, 0.3, -0.8), std::conj(hermite_wigner(l, k, 0.3, -0.8)));
        const double r = std::hypot(0.3, -0.8);
        EXPECT_NEAR(std::abs(hermite_wigner(k, k, 0.3, -0.8) - hermite_wigner(k, k, r, 0.0)), 0.0, 1e-12);
        EXPECT_NEAR(hermite_husimi(k, 0.3, -0.8), hermite_husimi(k, r, 0.0), 1e-12);
    }
}

TEST(HermiteFbi, ReferenceValues) {
    EXPECT_NEAR(std::abs(hermite_fbi(0, 0, 0) - 1.0 / std::sqrt(2.0 * kPi)), 0.0, 1e-15);
    EXPECT_NEAR(hermite_husimi(0, 0, 0), 1.0 / (2.0 * kPi), 1e-15);
    EXPECT_NEAR(std::abs(hermite_fbi(3, 0, 1)), std::exp(-0.25) / std::sqrt(kPi * 16.0 * 6.0), 1e-15);
}

TEST(HermiteFbi, MatchesQuadrature) {
    for (int k = 0; k <= 5; ++k)
        for (double x : {-0.7, 0.0, 1.2})
            for (double xi : {-1.0, 0.5}) {
                PhasePoint pt{RVec::Constant(1, x), RVec::Constant(1, xi)};
                const auto r = fbi_quadrature(hermite_fn(k), 1.0, pt, unit_window(), spec200());
                EXPECT_LT(std::abs(hermite_fbi(k, x, xi) - r.value), 1e-10);
            }
}

TEST(LaguerreKernel, BranchValues) {
    const cplx eta(0.3, -0.4), zeta(-0.7, 0.2);
    EXPECT_EQ(laguerre_kernel_two(0, 0, eta, zeta), cplx(1.0));
    EXPECT_NEAR(std::abs(laguerre_kernel_two(1, 0, eta, zeta) - 2.0 * eta), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(laguerre_kernel_two(0, 1, eta, zeta) - 2.0 * zeta), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(laguerre_kernel_one(1, 0, zeta) - 2.0 * zeta), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(laguerre_kernel_one(0, 1, zeta) + 2.0 * std::conj(zeta)), 0.0, 1e-15);
    for (int k = 0; k <= 5; ++k) {
        const cplx expect = std::pow(2.0, k) * factorial(k) * laguerre_poly(k, 0, 2.0 * std::norm(zeta));
        EXPECT_LT(std::abs(laguerre_kernel_one(k, k, zeta) - expect), 1e-12 * std::abs(expect) + 1e-14);
    }
}

TEST(LaguerreKernel, ScaledMatchesUnscaled) {
    const cplx zeta(0.6, -0.9);
    for (int m = 0; m <= 8; ++m)
        for (int n = 0; n <= 8; ++n) {
            const cplx full = laguerre_kernel_one(m, n, zeta) /
                              std::sqrt(std::pow(2.0, m + n) * factorial(m) * factorial(n));
            EXPECT_LT(std::abs(laguerre_kernel_one_scaled(m, n, zeta) - full), 1e-12 * std::max(1.0, std::abs(full)));
        }
}

}  // namespace
}  // namespace hagkit
