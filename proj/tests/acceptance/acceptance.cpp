// Acceptance suite. Prints one PASS/FAIL line per criterion with the
// measured error, the tolerance and the runtime; exits 1 if any fails.

#include <gaffine/affine.hpp>
#include <gaffine/curve.hpp>
#include <gaffine/errors.hpp>
#include <gaffine/expr.hpp>
#include <gaffine/frames.hpp>
#include <gaffine/invariants.hpp>
#include <gaffine/matrix_exp.hpp>
#include <gaffine/reconstruct.hpp>

#include "test_support.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace gaffine;
using gaffine::test::rel_err;
using gaffine::test::Rng;

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kExpK = std::sqrt(6.0) / 3.0;
const double kXlogxK = 4.0 * kSqrt3 / 3.0;
const double kCubicK = 2.0 * kSqrt3 / 3.0 * 4.0 / std::sqrt(5.0);

// One measured quantity of a criterion.
struct Check {
    std::string what;
    double measured;
    double tolerance;
    bool pass() const { return measured <= tolerance; }
};

struct Criterion {
    int id;
    std::string title;
    std::function<std::vector<Check>()> run;
    double time_limit_s; // 0 when unbounded
};

double max_of(double a, double b) { return std::isnan(b) ? b : std::max(a, b); }

double mid(const CatalogCurve& c) { return 0.5 * (c.window_lo + c.window_hi); }

ChartInvariants chart_at(const Curve& c, double p)
{
    const auto [xj, yj] = c.jets(p);
    return parametric_invariants(xj, yj);
}

// 1 ---------------------------------------------------------------------
std::vector<Check> closed_forms()
{
    double err = 0.0;
    int bad_sigma = 0;
    auto check = [&](const CatalogCurve& cc, double want_k, int want_sigma) {
        const Curve c = cc.curve();
        for (double p : linspace(cc.window_lo, cc.window_hi, 7)) {
            const ChartInvariants ci = chart_at(c, p);
            err = max_of(err, want_k == 0.0 ? std::abs(ci.k) : rel_err(ci.k, want_k));
            bad_sigma += ci.sigma != want_sigma;
        }
    };
    check(catalog_curve("exp"), kExpK, -1);
    check(catalog_curve("power", {{"a", 3.0}}), kCubicK, -1);
    for (double b : {1.0, -1.0, 2.5})
        check(catalog_curve("xlogx", {{"a", 0.7}, {"b", b}}), -kXlogxK * (b > 0 ? 1 : -1), 1);
    Rng rng(101);
    for (int i = 0; i < 20; ++i) {
        const double a = rng.uniform(-3, 3);
        const double b = rng.uniform(0.2, 3) * rng.sign();
        const double want = -kXlogxK * a * (b > 0 ? 1 : -1) / std::sqrt(a * a + 9 * b * b);
        check(catalog_curve("spiral", {{"a", a}, {"b", b}}), want, 1);
    }
    check(catalog_curve("spiral", {{"a", 0.0}, {"b", 1.0}}), 0.0, 1);
    check(catalog_curve("ellipse", {{"p", 1.0}, {"q", 1.0}}), 0.0, 1);
    return {{"max rel err of k", err, 1e-9}, {"wrong sigma count", static_cast<double>(bad_sigma), 0}};
}

// 2 and 3 ---------------------------------------------------------------
struct SweepErrors {
    double k = 0, sigma = 0, flip = 0, s1 = 0, s2 = 0, s3 = 0, t1 = 0, t2 = 0;
};

SweepErrors sweep()
{
    SweepErrors e;
    Rng rng(202);
    for (int i = 0; i < 1000; ++i) {
        const GraphJet j = test::random_regular_jet(rng);
        const int orientation = i % 2 == 0 ? 1 : -1;
        const AffineMap a = test::random_map(rng, orientation, j);
        const GraphJet jt = prolong(a, j);
        const double delta = a.linear().determinant();
        const double gamma = a.linear()(0, 0) + a.linear()(0, 1) * j.d[0];

        const double k = curvature(j), kt = curvature(jt);
        if (orientation > 0)
            e.k = max_of(e.k, rel_err(kt, k));
        else
            e.flip = max_of(e.flip, rel_err(kt, -k));
        e.sigma += signature(jt) != signature(j);

        const SValues s = compute_s(j), st = compute_s(jt);
        e.s1 = max_of(e.s1, rel_err(st.s1, delta * std::pow(gamma, -3) * s.s1));
        e.s2 = max_of(e.s2, rel_err(st.s2, delta * delta * std::pow(gamma, -8) * s.s2));
        e.s3 = max_of(e.s3, rel_err(st.s3, std::pow(delta, 3) * std::pow(gamma, -12) * s.s3));
        const ModularT m = modular_t(j), mt = modular_t(jt);
        e.t1 = max_of(e.t1, rel_err(mt.t1, delta * m.t1));
        e.t2 = max_of(e.t2, rel_err(mt.t2, gamma * m.t2));
    }
    return e;
}

std::vector<Check> invariance()
{
    const SweepErrors e = sweep();
    return {{"k (Delta>0)", e.k, 1e-8}, {"k flip (Delta<0)", e.flip, 1e-8}, {"sigma mismatches", e.sigma, 0}};
}

std::vector<Check> weights()
{
    const SweepErrors e = sweep();
    return {{"S1", e.s1, 1e-8}, {"S2", e.s2, 1e-8}, {"S3", e.s3, 1e-8}, {"T1", e.t1, 1e-8}, {"T2", e.t2, 1e-8}};
}

// 4 ---------------------------------------------------------------------
std::vector<Check> normalization()
{
    Rng rng(404);
    double err = 0.0, k_err = 0.0, delta_bad = 0.0;
    for (int i = 0; i < 200; ++i) {
        const GraphJet j = test::random_regular_jet(rng);
        const Normalization n = normalize_jet(j);
        const GraphJet& c = n.canonical;
        const double sigma = compute_s(j).s2 > 0 ? 1.0 : -1.0;
        for (double d : {c.x, c.y, c.dy(1), c.dy(2) - 1.0, c.dy(3), c.dy(4) - sigma})
            err = max_of(err, std::abs(d));
        k_err = max_of(k_err, std::abs(c.dy(5) - curvature(j)));
        delta_bad += !(n.map.linear().determinant() > 0);
    }
    return {{"canonical entries", err, 1e-9}, {"order-5 entry vs k", k_err, 1e-9}, {"Delta<=0 maps", delta_bad, 0}};
}

// 5 ---------------------------------------------------------------------
std::vector<Check> frames()
{
    Rng rng(505);
    double col = 0.0, te = 0.0;
    for (int i = 0; i < 200; ++i) {
        const GraphJet j = test::random_regular_jet(rng);
        const FrameRecord fr = right_frame(j);
        const Eigen::Matrix2d inv = fr.a.inverse();
        const auto [e1, e2] = left_frame(j);
        col = max_of(col, (inv.col(0) - e1).cwiseAbs().maxCoeff());
        col = max_of(col, (inv.col(1) - e2).cwiseAbs().maxCoeff());
        te = max_of(te, (fr.t - fr.e1).cwiseAbs().maxCoeff());
        te = max_of(te, (frenet(j).first - e1).cwiseAbs().maxCoeff());
    }
    double resid = 0.0;
    for (const char* name : {"power", "xlogx", "spiral", "exp", "hyperbola"}) {
        const CatalogCurve cc = catalog_curve(name);
        for (MovingEquation m : {MovingEquation::Right, MovingEquation::Left, MovingEquation::Frenet})
            resid = max_of(resid, moving_eq_residual(cc.curve(), cc.window_lo, cc.window_hi, m, 1e-3));
    }
    return {{"(e1, e2) vs inverse columns", col, 1e-10}, {"t - e1", te, 1e-10}, {"moving equation residual", resid, 1e-7}};
}

// 6 ---------------------------------------------------------------------
std::vector<Check> round_trip()
{
    double dev = 0.0, rk_vs_exp = 0.0;
    for (const char* name : {"power", "xlogx", "spiral", "exp", "ellipse", "hyperbola"}) {
        const CatalogCurve cc = catalog_curve(name);
        const Curve c = cc.curve();
        const double p0 = mid(cc);
        const GraphJet j0 = c.sample(p0).jet;
        const double k = curvature(j0);
        const int sigma = signature(j0);
        const FrenetState f0 = frenet_state(j0);
        const CurvatureProfile prof = CurvatureProfile::constant(k, sigma);
        for (double dir : {1.0, -1.0}) {
            const auto rk = integrate_frenet(prof, f0, 0.0, dir, 1e-3);
            std::vector<double> grid;
            for (const auto& s : rk)
                grid.push_back(s.s);
            const auto ex = reconstruct_constant(k, sigma, grid, f0);
            // Curve parameter as a function of arc length: dp/ds = 1 / (ds/dp).
            const double h = dir * 1e-3;
            const auto g = [&](double q) { return 1.0 / arc_speed(c, q); };
            double p = p0;
            for (std::size_t i = 0; i < rk.size(); ++i) {
                if (i > 0) {
                    const double k1 = g(p), k2 = g(p + 0.5 * h * k1), k3 = g(p + 0.5 * h * k2), k4 = g(p + h * k3);
                    p += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
                }
                dev = max_of(dev, (rk[i].f.r() - c.point(p)).norm());
                rk_vs_exp = max_of(rk_vs_exp, (rk[i].f.matrix() - ex[i].f.matrix()).cwiseAbs().maxCoeff());
            }
        }
    }
    return {{"pointwise deviation over arc length 2", dev, 1e-6}, {"RK4 vs matrix exponential", rk_vs_exp, 1e-10}};
}

// 7 ---------------------------------------------------------------------
std::vector<Check> classification()
{
    int wrong = 0, total = 0;
    auto expect = [&](bool ok) {
        wrong += !ok;
        ++total;
    };
    auto family_of = [](const CatalogCurve& cc) {
        const ChartInvariants ci = chart_at(cc.curve(), mid(cc));
        return classify_constant(ci.k, ci.sigma);
    };
    expect(family_of(catalog_curve("power")).tag == FamilyTag::PowerCurve);
    expect(family_of(catalog_curve("xlogx")).tag == FamilyTag::XLogX);
    expect(family_of(catalog_curve("spiral")).tag == FamilyTag::LogSpiral);
    expect(family_of(catalog_curve("exp")).tag == FamilyTag::Exponential);
    expect(family_of(catalog_curve("ellipse")).tag == FamilyTag::EllipseCircle);
    expect(family_of(catalog_curve("hyperbola")).tag == FamilyTag::Hyperbola);

    Rng rng(707);
    for (int i = 0; i < 50;) {
        const double a = rng.uniform(-6, 6);
        if (std::abs(a) < 0.05 || std::abs(a - 1) < 0.02 || std::abs(a + 1) < 0.02 || std::abs(a - 0.5) < 0.02 ||
            std::abs(a - 2) < 0.02)
            continue;
        ++i;
        const Family f = family_of(catalog_curve("power", {{"a", a}}));
        bool ok = f.tag == FamilyTag::PowerCurve;
        if (ok) {
            const double p = f.params.at("a"), q = f.congruent_params.at("a");
            const double tol = 1e-6 * std::abs(a);
            ok = (std::abs(p - a) <= tol || std::abs(q - a) <= tol) && std::abs(p * q - 1) <= 1e-12;
        }
        expect(ok);
    }
    for (int i = 0; i < 50; ++i) {
        const double b = rng.uniform(0.1, 3) * rng.sign();
        const Family f = family_of(catalog_curve("xlogx", {{"a", rng.uniform(-3, 3)}, {"b", b}}));
        expect(f.tag == FamilyTag::XLogX && f.params.at("b") == (b > 0 ? 1.0 : -1.0));
    }
    for (int i = 0; i < 50; ++i) {
        double a = rng.uniform(-4, 4);
        if (std::abs(a) < 1e-3)
            a = 1.0;
        const double b = rng.uniform(0.2, 3) * rng.sign();
        const Family f = family_of(catalog_curve("spiral", {{"a", a}, {"b", b}}));
        expect(f.tag == FamilyTag::LogSpiral &&
               std::abs(f.params.at("ratio") - a / b) <= 1e-7 * std::max(1.0, std::abs(a / b)));
    }
    for (int i = 0; i < 50; ++i) {
        const std::string src = fmt::format("({})*exp(({})*x) + ({})*x + ({})", rng.uniform(0.2, 3) * rng.sign(),
                                            rng.uniform(0.2, 3) * rng.sign(), rng.uniform(-2, 2), rng.uniform(-2, 2));
        const GraphJet j = eval_jet(parse(src), rng.uniform(-1, 1));
        expect(classify_constant(curvature(j), signature(j)).tag == FamilyTag::Exponential);
    }
    for (int i = 0; i < 50; ++i) {
        const std::map<std::string, double> pq{{"p", rng.uniform(0.2, 3)}, {"q", rng.uniform(0.2, 3)}};
        expect(family_of(catalog_curve("ellipse", pq)).tag == FamilyTag::EllipseCircle);
        expect(family_of(catalog_curve("hyperbola", pq)).tag == FamilyTag::Hyperbola);
    }
    return {{fmt::format("misclassified of {}", total), static_cast<double>(wrong), 0}};
}

// 8 ---------------------------------------------------------------------
std::vector<Check> singular()
{
    int wrong = 0;
    auto kind_of = [](const char* src, double lo, double hi) {
        std::vector<GraphJet> js;
        for (double x : linspace(lo, hi, 9))
            js.push_back(eval_jet(parse(src), x));
        return classify_singular(js);
    };
    wrong += kind_of("2*x - 1", -1, 1) != SingularKind::LineLike;
    wrong += kind_of("x^2", -1, 1) != SingularKind::ParabolaLike;
    wrong += kind_of("sqrt(x) + x", 0.5, 2) != SingularKind::ParabolaLike;

    Rng rng(808);
    double err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const GraphJet j = test::random_regular_jet(rng);
        const AffineMap a = test::random_map(rng, rng.sign(), j);
        const GraphJet cf = prolong_closed_form(a, j);
        const GraphJet gen = prolong(a, j);
        err = max_of(err, rel_err(cf.x, gen.x));
        err = max_of(err, rel_err(cf.y, gen.y));
        for (std::size_t n = 1; n <= 5; ++n)
            err = max_of(err, rel_err(cf.dy(n), gen.dy(n)));
    }
    return {{"singular kinds wrong", static_cast<double>(wrong), 0}, {"closed form vs transport", err, 1e-9}};
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "closed-form invariants", closed_forms, 1.0},
        {2, "affine invariance sweep", invariance, 5.0},
        {3, "modular weights", weights, 0.0},
        {4, "normalization", normalization, 0.0},
        {5, "frame consistency", frames, 0.0},
        {6, "round trip", round_trip, 2.0},
        {7, "classification", classification, 0.0},
        {8, "singular classification and prolongation", singular, 0.0},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<Check> checks;
        std::string error;
        try {
            checks = c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = error.empty();
        std::vector<std::string> parts;
        for (const auto& ch : checks) {
            pass = pass && ch.pass();
            parts.push_back(fmt::format("{} {:.3g} (tol {:.0e})", ch.what, ch.measured, ch.tolerance));
        }
        if (c.time_limit_s > 0) {
            pass = pass && secs < c.time_limit_s;
            parts.push_back(fmt::format("time {:.3f}s (limit {}s)", secs, c.time_limit_s));
        } else {
            parts.push_back(fmt::format("time {:.3f}s", secs));
        }
        if (!error.empty())
            parts.push_back("exception: " + error);
        failed += !pass;
        std::printf("%s criterion %d %s: %s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    fmt::format("{}", fmt::join(parts, "; ")).c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
