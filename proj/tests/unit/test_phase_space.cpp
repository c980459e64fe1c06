#include <gtest/gtest.h>

#include "hagkit/errors.hpp"
#include "hagkit/quadrature.hpp"
#include "hagkit/special.hpp"
#include "support/support.hpp"

namespace hagkit {
namespace {

using testing::Rng;
using testing::random_params;
using testing::random_point;

PhasePoint point1(double x, double xi) { return {RVec::Constant(1, x), RVec::Constant(1, xi)}; }

TEST(ZVector, DirectAndEmbeddingAgree) {
    Rng rng(41);
    for (int d = 1; d <= 4; ++d) {
        const Basis b(random_params(d, rng));
        const auto pt = random_point(b, rng);
        EXPECT_LT(max_abs(CVec(z_of(b, pt).z - z_via_embedding(b, pt).z)), 1e-12);
    }
}

TEST(WignerClosed, StandardBasisMatchesHermite) {
    const Basis b(ParameterSet::standard(1));
    for (int k = 0; k <= 4; ++k)
        for (int l = 0; l <= 4; ++l) {
            const cplx w = wigner_closed(b, MultiIndex{k}, MultiIndex{l}, point1(0.7, -0.3));
            EXPECT_LT(std::abs(w - hermite_wigner(k, l, 0.7, -0.3)), 1e-14);
        }
    EXPECT_NEAR(wigner_closed(b, MultiIndex{1}, MultiIndex{0}, point1(1.0, 0.0)).real(), 0.16560393163270393, 1e-15);
}

TEST(WignerClosed, MatchesQuadrature) {
    Rng rng(42);
    const Basis b(random_params(2, rng));
    const auto set = IndexSet::total_degree(2, 2);
    QuadratureSpec spec;
    spec.nodes_per_axis = 80;
    Window w = wavepacket_window(b, 2);
    w.scale *= 2.0;
    const auto pt = random_point(b, rng, 1.5);
    VectorFn F = [&](const RVec& x) {
        const auto v = wavepackets_eval(b, set, x);
        return CVec(Eigen::Map<const CVec>(v.data(), static_cast<Eigen::Index>(v.size())));
    };
    const auto q = wigner_quadrature_matrix(F, b.epsilon(), pt, w, spec);
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = 0; j < set.size(); ++j)
            EXPECT_LT(std::abs(wigner_closed(b, set[i], set[j], pt) - q.value(i, j)), 1e-10);
}

TEST(WignerTable, RecurrenceMatchesClosedForm) {
    Rng rng(43);
    for (int d = 1; d <= 3; ++d) {
        const Basis b(random_params(d, rng));
        const auto set = IndexSet::total_degree(d, 4);
        const auto pt = random_point(b, rng);
        for (auto order : {FillOrder::l_first, FillOrder::k_first}) {
            const auto t = wigner_table(b, set, pt, order);
            double scale = t.values.cwiseAbs().maxCoeff();
            for (std::size_t i = 0; i < set.size(); ++i)
                for (std::size_t j = 0; j < set.size(); ++j)
                    EXPECT_LT(std::abs(t.values(i, j) - wigner_closed(b, set[i], set[j], pt)), 1e-12 * scale);
        }
    }
}

TEST(WignerTable, FillOrdersAgreeAndHermitian) {
    Rng rng(44);
    const Basis b(random_params(2, rng));
    const auto set = IndexSet::hyperbolic(2, 8);
    const auto pt = random_point(b, rng);
    const auto a = wigner_table(b, set, pt, FillOrder::l_first);
    const auto c = wigner_table(b, set, pt, FillOrder::k_first);
    EXPECT_LT(max_abs(CMat(a.values - c.values)), 1e-13);
    EXPECT_LT(max_abs(CMat(a.values - a.values.adjoint())), 1e-13);
}

TEST(WignerTable, RequiresClosedSet) {
    const Basis b(ParameterSet::standard(2));
    EXPECT_THROW(wigner_table(b, IndexSet::level(2, 2), {RVec::Zero(2), RVec::Zero(2)}), StructuralError);
}

TEST(Wigner, MetaplecticProductAgrees) {
    Rng rng(45);
    const Basis b(random_params(2, rng, 1.0));
    const auto pt = random_point(b, rng);
    for (const auto& k : {MultiIndex{0, 0}, MultiIndex{2, 1}})
        for (const auto& l : {MultiIndex{1, 0}, MultiIndex{2, 1}})
            EXPECT_NEAR(std::abs(wigner_metaplectic(b, k, l, pt)), std::abs(wigner_closed(b, k, l, pt)), 1e-12);
}

TEST(Wigner, OddPacketAtCentre) {
    const Basis b(ParameterSet::standard(2, 0.5));
    const double w = wigner_closed(b, MultiIndex{1, 0}, MultiIndex{1, 0}, {RVec::Zero(2), RVec::Zero(2)}).real();
    EXPECT_NEAR(w, -std::pow(kPi * 0.5, -2.0), 1e-13);
}

TEST(Wigner, SuperpositionIndependentOfWorkers) {
    Rng rng(46);
    const Basis b(random_params(2, rng));
    const auto set = IndexSet::total_degree(2, 3);
    auto c = CoefficientVector::zeros(set);
    for (std::size_t i = 0; i < set.size(); ++i) c.coeffs[i] = cplx(1.0 / (1.0 + i), 0.1 * i);
    std::vector<PhasePoint> pts;
    for (int i = 0; i < 37; ++i) pts.push_back(random_point(b, rng));
    const auto a = wigner_superposition(b, c, pts, 1);
    const auto z = wigner_superposition(b, c, pts, 4);
    ASSERT_EQ(a.size(), z.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], z[i]);
}

TEST(Wigner, EigenspaceTraceIsRadial) {
    const Basis b(ParameterSet::standard(2));
    const PhasePoint p1{RVec::Constant(2, 0.3), RVec::Constant(2, -0.4)};
    PhasePoint p2{RVec::Zero(2), RVec::Zero(2)};
    p2.x(0) = std::sqrt(2 * 0.09 + 2 * 0.16);
    EXPECT_NEAR(eigenspace_trace(b, 2, p1), eigenspace_trace(b, 2, p2), 1e-13);
}

TEST(Ladders, PhaseSpaceIdentities) {
    Rng rng(47);
    const Basis b(random_params(2, rng));
    const auto pt = random_point(b, rng);
    const MultiIndex k{1, 2}, l{2, 0};
    EXPECT_LT(phase_ladder_residual(b, k, l, pt), 1e-6);
    EXPECT_GT(phase_ladder_residual(b, k, l, pt, 0.0, LadderSigns::printed), 1e-3);
}

TEST(Fbi, IsotropicAndGeneralAgree) {
    Rng rng(48);
    ParameterSet ps = ParameterSet::standard(2, 0.7);
    ps.q = testing::random_vec(2, rng, 0.5);
    ps.p = testing::random_vec(2, rng, 0.5);
    const CMat U = testing::random_unitary(2, rng);
    ps.Q = ps.Q * U;
    ps.P = ps.P * U;
    const Basis b(ps);
    ASSERT_TRUE(is_isotropic(b, 1e-12));
    const auto pt = random_point(b, rng);
    for (const auto& k : IndexSet::total_degree(2, 3))
        EXPECT_LT(std::abs(fbi_isotropic(b, k, pt) - fbi_general(b, k, pt)), 1e-13);
}

TEST(Fbi, MatchesQuadrature) {
    Rng rng(49);
    const Basis b(random_params(2, rng));
    const auto pt = random_point(b, rng);
    QuadratureSpec spec;
    spec.nodes_per_axis = 100;
    Window w = wavepacket_window(b, 3);
    for (const auto& k : {MultiIndex{0, 0}, MultiIndex{1, 2}}) {
        const auto r = fbi_quadrature(testing::packet(b, k), b.epsilon(), pt, w, spec);
        EXPECT_LT(std::abs(fbi_closed(b, k, pt) - r.value), 1e-10);
        EXPECT_NEAR(husimi(b, k, pt), std::norm(fbi_closed(b, k, pt)), 1e-15);
    }
}

TEST(Quadrature, GaussHermiteIntegratesGaussian) {
    const auto r = gauss_hermite_rule(40);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::exp(-r.nodes[i] * r.nodes[i]);
    EXPECT_NEAR(s, std::sqrt(kPi), 1e-13);
}

TEST(Quadrature, ReportsNodeHalvingDelta) {
    QuadratureSpec spec;
    spec.nodes_per_axis = 120;
    const Window w{RVec::Zero(1), RVec::Ones(1)};
    const auto r = integrate([](const RVec& x) { return cplx(std::exp(-x(0) * x(0))); }, w, spec);
    EXPECT_NEAR(r.value.real(), std::sqrt(kPi), 1e-13);
    EXPECT_LT(r.delta, 1e-12);
    EXPECT_FALSE(r.truncation_warning);
}

TEST(Quadrature, FlagsTruncation) {
    QuadratureSpec spec;
    spec.truncation_radius = 1.0;
    const Window w{RVec::Zero(1), RVec::Ones(1)};
    const auto r = integrate([](const RVec& x) { return cplx(std::exp(-0.1 * x(0) * x(0))); }, w, spec);
    EXPECT_TRUE(r.truncation_warning);
}

TEST(Quadrature, FourierDualOfGaussian) {
    ParameterSet ps = ParameterSet::standard(1);
    ps.q(0) = 0.4;
    ps.p(0) = -0.3;
    const Basis b(ps);
    const auto dual = fourier_dual(ps);
    const Basis bd(dual.params);
    QuadratureSpec spec;
    spec.nodes_per_axis = 160;
    for (int k = 0; k <= 4; ++k)
        for (double xi : {-1.0, 0.2, 0.9}) {
            const auto r = fourier_quadrature(testing::packet(b, MultiIndex{k}), 1.0, RVec::Constant(1, xi),
                                              wavepacket_window(b, 4), spec);
            EXPECT_LT(std::abs(r.value - dual.phase * wavepacket_eval(bd, MultiIndex{k}, RVec::Constant(1, xi))), 1e-8);
        }
}

TEST(Husimi, ConvolutionOfWigner) {
    const Basis b(ParameterSet::standard(1));
    const auto grid = sample_phase_grid(
        [&](const PhasePoint& pt) { return wigner_closed(b, MultiIndex{2}, MultiIndex{2}, pt).real(); }, 1,
        {-7.0, -7.0}, {7.0, 7.0}, 141);
    const PhasePoint pt = point1(0.5, -0.8);
    const auto c = husimi_convolution(grid, 1.0, pt);
    EXPECT_NEAR(c.value, husimi(b, MultiIndex{2}, pt), 1e-8);
    EXPECT_FALSE(c.coverage_warning);
}

}  // namespace
}  // namespace hagkit
