#include <gaffine/affine.hpp>
#include <gaffine/errors.hpp>
#include <gaffine/expr.hpp>
#include <gaffine/invariants.hpp>
#include <gaffine/matrix_exp.hpp>

#include "test_support.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace gaffine;
using gaffine::test::rel_err;
using gaffine::test::Rng;

namespace {

GraphJet jet_of(std::initializer_list<double> d, double x = 0.0, double y = 0.0)
{
    GraphJet j;
    j.x = x;
    j.y = y;
    std::size_t i = 0;
    for (double v : d)
        j.d[i++] = v;
    return j;
}

void expect_same_jet(const GraphJet& a, const GraphJet& b, std::size_t orders, double tol)
{
    EXPECT_NEAR(a.x, b.x, tol * std::max(1.0, std::abs(b.x)));
    EXPECT_NEAR(a.y, b.y, tol * std::max(1.0, std::abs(b.y)));
    for (std::size_t k = 1; k <= orders; ++k)
        EXPECT_NEAR(a.dy(k), b.dy(k), tol * std::max(1.0, std::abs(b.dy(k)))) << "order " << k;
}

Eigen::Matrix3d eigen_expm(const Eigen::Matrix3d& m) { return m.exp(); }

} // namespace

TEST(AffinePoint, IdentityFixesPoints)
{
    const Point p = apply_point(AffineMap{}, Point(3, 4));
    EXPECT_EQ(p, Point(3, 4));
}

TEST(AffinePoint, TranslationMovesOrigin)
{
    EXPECT_EQ(apply_point(AffineMap::translation(1, 2), Point(0, 0)), Point(1, 2));
}

TEST(AffinePoint, Shear) { EXPECT_EQ(apply_point(AffineMap(1, 1, 0, 1), Point(1, 1)), Point(2, 1)); }

TEST(AffineGroup, InverseOfIdentity)
{
    const AffineMap i = inverse(AffineMap{});
    EXPECT_TRUE(i.homogeneous().isApprox(Eigen::Matrix3d::Identity()));
}

TEST(AffineGroup, InverseOfTranslation)
{
    const AffineMap i = inverse(AffineMap::translation(1, 2));
    EXPECT_EQ(i.translation(), Eigen::Vector2d(-1, -2));
    EXPECT_EQ(i.linear(), Eigen::Matrix2d::Identity());
}

TEST(AffineGroup, CompositionDoesNotCommute)
{
    const AffineMap a(1, 0, 0, 2);
    const AffineMap b(1, 1, 0, 1);
    const Eigen::Matrix3d ab = compose(a, b).homogeneous();
    const Eigen::Matrix3d ba = compose(b, a).homogeneous();
    EXPECT_TRUE(ab.isApprox(a.homogeneous() * b.homogeneous()));
    EXPECT_TRUE(ba.isApprox(b.homogeneous() * a.homogeneous()));
    EXPECT_FALSE(ab.isApprox(ba));
    // a∘b applies b first.
    EXPECT_EQ(apply_point(compose(a, b), Point(1, 1)), apply_point(a, apply_point(b, Point(1, 1))));
}

TEST(AffineGroup, ComposeWithInverseIsIdentity)
{
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        const AffineMap a = test::random_map(rng, rng.sign(), jet_of({0.0}));
        const Eigen::Matrix3d m = compose(a, inverse(a)).homogeneous();
        EXPECT_LE((m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(AffineMapConstruction, DegenerateMapsThrow)
{
    EXPECT_THROW(AffineMap(1, 2, 2, 4), DegenerateMap);
    EXPECT_THROW(AffineMap(1e-7, 0, 0, 1e-7), DegenerateMap);
    EXPECT_NO_THROW(AffineMap(1e-5, 0, 0, 1e-5));
    EXPECT_EQ(AffineMap(0, 1, 1, 0).orientation(), -1);
    EXPECT_EQ(AffineMap(2, 0, 0, 1).orientation(), 1);
    Eigen::Matrix3d bad = Eigen::Matrix3d::Identity();
    bad(2, 0) = 1.0;
    EXPECT_THROW(AffineMap::from_homogeneous(bad), InvalidArgument);
}

TEST(ProlongClosedForm, IdentityLeavesJet)
{
    const GraphJet j = jet_of({0.3, -1.2, 2.5, 0.7, -3.1, 4.4}, 0.5, 0.2);
    expect_same_jet(prolong_closed_form(AffineMap{}, j), j, 6, 1e-14);
}

TEST(ProlongClosedForm, VerticalScaling)
{
    const GraphJet j = jet_of({3, 6, 6, 0, 0, 0}, 1, 1);
    const GraphJet p = prolong_closed_form(AffineMap(1, 0, 0, 2), j);
    const double want[] = {6, 12, 12, 0, 0, 0};
    for (std::size_t k = 1; k <= 6; ++k)
        EXPECT_NEAR(p.dy(k), want[k - 1], 1e-13) << k;
    EXPECT_DOUBLE_EQ(p.y, 2.0);
}

TEST(ProlongClosedForm, ShearThirdDerivative)
{
    const GraphJet j = jet_of({0, 1, 0, 0, 0, 0});
    const GraphJet p = prolong_closed_form(AffineMap(1, 1, 0, 1), j);
    EXPECT_NEAR(p.dy(1), 0.0, 1e-15);
    EXPECT_NEAR(p.dy(2), 1.0, 1e-15);
    EXPECT_NEAR(p.dy(3), -3.0, 1e-14);
}

TEST(ProlongClosedForm, ShearMatchesSubstitutionOracle)
{
    // y = x² under (x, y) -> (x + y, y): x' = x + x², y' = x², so the image is
    // the graph of y'(x') = ((−1 + √(1 + 4x'))/2)² near the origin.
    const GraphJet j = eval_jet(parse("x^2"), 0.0);
    const GraphJet p = prolong_closed_form(AffineMap(1, 1, 0, 1), j);
    const GraphJet oracle = eval_jet(parse("((sqrt(1+4*x)-1)/2)^2"), 0.0);
    expect_same_jet(p, oracle, 6, 1e-11);
}

TEST(ProlongClosedForm, VerticalTangentThrows)
{
    const GraphJet j = jet_of({1, 1, 0, 0, 0, 0});
    EXPECT_THROW(prolong_closed_form(AffineMap(1, -1, 1, 1), j), VerticalTangent);
    EXPECT_THROW(prolong(AffineMap(1, -1, 1, 1), j), VerticalTangent);
}

TEST(Prolong, IdentityAndScaling)
{
    const GraphJet j = jet_of({3, 6, 6, 0, 0, 0}, 1, 1);
    expect_same_jet(prolong(AffineMap{}, j), j, 6, 1e-14);
    const GraphJet p = prolong(AffineMap(1, 0, 0, 2), j);
    const double want[] = {6, 12, 12, 0, 0};
    for (std::size_t k = 1; k <= 5; ++k)
        EXPECT_NEAR(p.dy(k), want[k - 1], 1e-13);
}

TEST(Prolong, ClosedFormAgreesOnExponentialJet)
{
    Rng rng(32);
    const GraphJet j = eval_jet(parse("exp(x)"), 0.0);
    for (int i = 0; i < 200; ++i) {
        const AffineMap a = test::random_map(rng, +1, j);
        expect_same_jet(prolong_closed_form(a, j), prolong(a, j), 5, 1e-9);
    }
}

TEST(Prolong, ClosedFormAgreesOnRandomJets)
{
    Rng rng(33);
    for (int i = 0; i < 1000; ++i) {
        const GraphJet j = test::random_regular_jet(rng);
        const AffineMap a = test::random_map(rng, rng.sign(), j);
        const GraphJet c = prolong_closed_form(a, j);
        const GraphJet g = prolong(a, j);
        for (std::size_t k = 1; k <= 5; ++k)
            ASSERT_LE(rel_err(c.dy(k), g.dy(k)), 1e-9) << "trial " << i << " order " << k;
        ASSERT_EQ(c.dy(6), g.dy(6));
    }
}

TEST(Prolong, ClosedFormFaultIsVisible)
{
    const GraphJet j = jet_of({0.4, 1.1, -0.7, 0.9, 1.3, -0.2});
    const AffineMap a(1.2, 0.3, -0.4, 0.9);
    const GraphJet good = prolong_closed_form(a, j);
    const GraphJet bad = prolong_closed_form(a, j, ClosedFormFault{1e-6});
    for (std::size_t k = 1; k <= 4; ++k)
        EXPECT_EQ(good.dy(k), bad.dy(k));
    EXPECT_GT(rel_err(good.dy(5), bad.dy(5)), 1e-8);
}

namespace {

// max_k |a_k − b_k| / max_k |b_k| over orders 1..n
double jet_err(const GraphJet& a, const GraphJet& b, std::size_t n)
{
    double num = 0.0, den = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        num = std::max(num, std::abs(a.dy(k) - b.dy(k)));
        den = std::max(den, std::abs(b.dy(k)));
    }
    return num / den;
}

} // namespace

// Both Γ factors at least 1: with |Γ| near 0.1 the order-6 entries pick up
// Γ⁻¹¹ and the two sides differ by rounding alone.
TEST(Prolong, GroupLaw)
{
    Rng rng(34);
    for (int i = 0; i < 1000; ++i) {
        const GraphJet j = test::random_regular_jet(rng);
        const AffineMap b = test::random_map(rng, rng.sign(), j, 1.0);
        const GraphJet jb = prolong(b, j);
        const AffineMap a = test::random_map(rng, rng.sign(), jb, 1.0);
        const GraphJet lhs = prolong(compose(a, b), j);
        const GraphJet rhs = prolong(a, jb);
        ASSERT_LE(jet_err(lhs, rhs, 6), 1e-9) << "trial " << i;
        ASSERT_NEAR(lhs.x, rhs.x, 1e-12 * std::max(1.0, std::abs(rhs.x)));
        ASSERT_NEAR(lhs.y, rhs.y, 1e-12 * std::max(1.0, std::abs(rhs.y)));
    }
}

TEST(Prolong, GroupLawNearSmallGamma)
{
    Rng rng(36);
    for (int i = 0; i < 1000; ++i) {
        const GraphJet j = test::random_regular_jet(rng);
        const AffineMap b = test::random_map(rng, rng.sign(), j);
        const GraphJet jb = prolong(b, j);
        const AffineMap a = test::random_map(rng, rng.sign(), jb);
        ASSERT_LE(jet_err(prolong(compose(a, b), j), prolong(a, jb), 5), 1e-8) << "trial " << i;
    }
}

TEST(Prolong, SValueTransformationLaws)
{
    Rng rng(35);
    for (int i = 0; i < 1000; ++i) {
        const GraphJet j = test::random_regular_jet(rng);
        // |Γ| >= 0.5: S3 of the image cancels more and more as Γ → 0.
        const AffineMap a = test::random_map(rng, rng.sign(), j, 0.5);
        const double d = a.det();
        const double g = a.a11() + a.a12() * j.dy(1);
        const SValues s = compute_s(j);
        const SValues sp = compute_s(prolong(a, j));
        ASSERT_LE(rel_err(sp.s1, d * std::pow(g, -3) * s.s1), 1e-9);
        ASSERT_LE(rel_err(sp.s2, d * d * std::pow(g, -8) * s.s2), 1e-9);
        ASSERT_LE(rel_err(sp.s3, d * d * d * std::pow(g, -12) * s.s3), 1e-9);
    }
}

TEST(OneParamSubgroup, ZeroGeneratorIsIdentity)
{
    for (double t : {-3.0, 0.0, 2.5})
        EXPECT_TRUE(one_param_subgroup(Generator{}, t).homogeneous().isApprox(Eigen::Matrix3d::Identity()));
}

TEST(OneParamSubgroup, ParabolicClosedForm)
{
    const Generator x = Generator::from_rows(0, 1, 0, 0, 0, 1);
    EXPECT_EQ(canonical_form(x), CanonicalForm::Parabolic);
    for (double t : {-1.5, 0.4, 2.0}) {
        Eigen::Matrix3d want;
        want << 1, t, t * t / 2, 0, 1, t, 0, 0, 1;
        EXPECT_LE((one_param_subgroup(x, t).homogeneous() - want).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(OneParamSubgroup, DiagonalScalarExponentials)
{
    const Generator x = Generator::from_rows(1, 0, 0, 0, 3, 0);
    const Eigen::Matrix3d m = one_param_subgroup(x, std::log(2.0)).homogeneous();
    EXPECT_NEAR(m(0, 0), 2.0, 1e-14);
    EXPECT_NEAR(m(1, 1), 8.0, 1e-13);
    EXPECT_NEAR(m(2, 2), 1.0, 0.0);
    EXPECT_NEAR(m(0, 1), 0.0, 0.0);
}

TEST(OneParamSubgroup, TranslationScalingExactForm)
{
    const double a = 1.7, lambda = -0.6;
    const Generator x = Generator::from_rows(0, 0, a, 0, lambda, 0);
    EXPECT_EQ(canonical_form(x), CanonicalForm::TranslationScaling);
    for (double t : {-2.0, 0.5, 3.0}) {
        const Eigen::Matrix3d m = one_param_subgroup(x, t).homogeneous();
        EXPECT_NEAR(m(0, 2), a * t, 1e-13);
        EXPECT_NEAR(m(1, 1), std::exp(lambda * t), 1e-13);
        EXPECT_NEAR(m(1, 2), 0.0, 1e-15);
    }
}

TEST(OneParamSubgroup, CanonicalFormsMatchIndependentExponential)
{
    const Generator gens[] = {
        Generator::from_rows(0.3, 0, 0, 0, -1.2, 0),   // diagonal
        Generator::from_rows(0.5, 1, 0, 0, 0.5, 0),    // Jordan
        Generator::from_rows(-0.2, -1.5, 0, 1.5, -0.2, 0), // rotation-scaling
        Generator::from_rows(0, 0, 2.0, 0, 0.7, 0),    // translation-scaling
        Generator::from_rows(0, 1, 0, 0, 0, 1),        // parabolic
    };
    const CanonicalForm forms[] = {CanonicalForm::Diagonal, CanonicalForm::Jordan, CanonicalForm::RotationScaling,
                                   CanonicalForm::TranslationScaling, CanonicalForm::Parabolic};
    for (std::size_t g = 0; g < std::size(gens); ++g) {
        EXPECT_EQ(canonical_form(gens[g]), forms[g]);
        for (double t : {-2.0, -0.3, 0.0, 0.9, 2.5}) {
            const Eigen::Matrix3d want = eigen_expm(t * gens[g].matrix());
            EXPECT_LE((canonical_exp(gens[g], t) - want).cwiseAbs().maxCoeff(), 1e-10 * want.cwiseAbs().maxCoeff());
            EXPECT_LE((one_param_subgroup(gens[g], t).homogeneous() - want).cwiseAbs().maxCoeff(),
                      1e-10 * want.cwiseAbs().maxCoeff());
        }
    }
    EXPECT_EQ(canonical_form(Generator::from_rows(1, 2, 3, 4, 5, 6)), CanonicalForm::None);
    EXPECT_THROW(canonical_exp(Generator::from_rows(1, 2, 3, 4, 5, 6), 1.0), InvalidArgument);
}

TEST(MatrixExp, AgreesWithIndependentExponential)
{
    Rng rng(36);
    for (int i = 0; i < 300; ++i) {
        Eigen::Matrix3d m;
        const double scale = std::pow(10.0, rng.uniform(-6, 1.3));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                m(r, c) = scale * rng.uniform(-1, 1);
        const Eigen::Matrix3d want = eigen_expm(m);
        const double err = (expm(m) - want).cwiseAbs().maxCoeff() / want.cwiseAbs().maxCoeff();
        ASSERT_LE(err, 1e-12) << "scale " << scale;
    }
}

TEST(MatrixExp, TaylorBranchForTinyMatrices)
{
    Eigen::Matrix3d m;
    m << 1e-5, -2e-5, 3e-6, 4e-6, 0, 1e-5, -1e-6, 2e-6, -3e-6;
    EXPECT_LE((expm(m) - eigen_expm(m)).cwiseAbs().maxCoeff(), 2 * std::numeric_limits<double>::epsilon());
    EXPECT_LE((expm_taylor(m, 8) - eigen_expm(m)).cwiseAbs().maxCoeff(), 2 * std::numeric_limits<double>::epsilon());
}

TEST(OneParamSubgroup, ExponentialLaw)
{
    Rng rng(37);
    for (int i = 0; i < 100; ++i) {
        const Generator x = Generator::from_rows(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                                                 rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        const double s = rng.uniform(-2, 2), t = rng.uniform(-2, 2);
        const Eigen::Matrix3d lhs = one_param_subgroup(x, s + t).homogeneous();
        const Eigen::Matrix3d rhs = one_param_subgroup(x, s).homogeneous() * one_param_subgroup(x, t).homogeneous();
        ASSERT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10 * lhs.cwiseAbs().maxCoeff());
    }
}

TEST(GeneratorConstruction, LastRowMustBeZero)
{
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(2, 2) = 1.0;
    EXPECT_THROW(Generator{m}, InvalidArgument);
}

TEST(Orbit, DiagonalOrbitIsCubic)
{
    const Generator x = Generator::from_rows(1, 0, 0, 0, 3, 0);
    const std::vector<double> grid = {-0.5, 0.0, 0.5};
    const Orbit o = orbit_curve(x, Point(1, 1), grid);
    ASSERT_EQ(o.samples.size(), 3u);
    EXPECT_TRUE(o.skipped.empty());
    for (const auto& s : o.samples) {
        EXPECT_NEAR(s.point.x(), std::exp(s.t), 1e-14);
        EXPECT_NEAR(s.point.y(), std::exp(3 * s.t), 1e-13);
    }
    const GraphJet at0 = o.samples[1].jet;
    const GraphJet cubic = eval_jet(parse("x^3"), 1.0);
    expect_same_jet(at0, cubic, 6, 1e-12);
}

TEST(Orbit, ParabolicOrbitIsSingular)
{
    const Generator x = Generator::from_rows(0, 1, 0, 0, 0, 1);
    const std::vector<double> grid = {-1.0, -0.5, 0.0, 0.5, 1.0};
    const Orbit o = orbit_curve(x, Point(0, 0), grid);
    ASSERT_EQ(o.skipped.size(), 1u);
    EXPECT_EQ(o.skipped[0], 0.0);
    for (const auto& s : o.samples) {
        EXPECT_NEAR(s.point.x(), s.t * s.t / 2, 1e-15);
        EXPECT_NEAR(s.point.y(), s.t, 1e-15);
        EXPECT_NEAR(compute_s(s.jet).s2, 0.0, 1e-12);
        EXPECT_FALSE(is_regular(s.jet));
    }
}

TEST(Orbit, RotationOrbitIsUnitCircleWithZeroCurvature)
{
    const Generator x = Generator::from_rows(0, -1, 0, 1, 0, 0);
    const auto grid = linspace(0.2, 2.9, 10);
    const Orbit o = orbit_curve(x, Point(1, 0), grid);
    ASSERT_EQ(o.samples.size(), 10u);
    for (const auto& s : o.samples) {
        EXPECT_NEAR(s.point.norm(), 1.0, 1e-14);
        EXPECT_NEAR(curvature(s.jet), 0.0, 1e-9);
        EXPECT_EQ(signature(s.jet), 1);
    }
}
