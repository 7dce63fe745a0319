#include "gaffine_cli/verify.hpp"

#include <gaffine/errors.hpp>
#include <gaffine/invariants.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace gaffine::cli {

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

GraphJet random_regular_jet(std::mt19937_64& rng)
{
    for (;;) {
        GraphJet j;
        j.x = uniform(rng, -2.0, 2.0);
        j.y = uniform(rng, -2.0, 2.0);
        for (auto& d : j.d)
            d = uniform(rng, -2.0, 2.0);
        const double y2 = j.dy(2), y3 = j.dy(3), y4 = j.dy(4), y5 = j.dy(5);
        const SValues s = compute_s(j);
        const double s2_terms = 3.0 * std::abs(y2 * y4) + 5.0 * y3 * y3;
        const double s3_terms =
            9.0 * y2 * y2 * std::abs(y5) + 45.0 * std::abs(y2 * y3 * y4) + 40.0 * std::abs(y3 * y3 * y3);
        if (std::abs(y2) >= 0.1 && std::abs(s.s2) >= 0.1 * s2_terms && std::abs(s.s3) >= 0.1 * s3_terms)
            return j;
    }
}

AffineMap random_map(std::mt19937_64& rng, int orientation, const GraphJet& j)
{
    for (;;) {
        const double a11 = uniform(rng, -2.0, 2.0);
        const double a12 = uniform(rng, -2.0, 2.0);
        const double a21 = uniform(rng, -2.0, 2.0);
        const double a22 = uniform(rng, -2.0, 2.0);
        const double det = a11 * a22 - a21 * a12;
        const double gamma = a11 + a12 * j.dy(1);
        if (std::abs(det) < 0.1 || std::abs(gamma) < 0.1 || (det > 0.0) != (orientation > 0))
            continue;
        return {a11, a12, a21, a22, uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
    }
}

namespace {

double rel_err(double got, double want)
{
    const double scale = std::max(std::abs(got), std::abs(want));
    if (scale == 0.0)
        return 0.0;
    return std::abs(got - want) / scale;
}

struct Tracker {
    std::vector<LawResult> laws;

    LawResult& law(const std::string& name)
    {
        for (auto& l : laws)
            if (l.name == name)
                return l;
        laws.push_back({name, 0.0, kVerifyTolerance, true});
        return laws.back();
    }

    void record(const std::string& name, double err)
    {
        LawResult& l = law(name);
        if (std::isnan(err))
            err = std::numeric_limits<double>::infinity();
        l.max_rel_err = std::max(l.max_rel_err, err);
        l.pass = l.max_rel_err <= l.tolerance;
    }
};

} // namespace

VerifyReport run_verify(std::size_t trials, std::uint64_t seed, const ClosedFormFault& fault)
{
    if (trials == 0)
        throw InvalidArgument("verify needs at least one trial");

    std::mt19937_64 rng(seed);
    Tracker t;
    for (const char* name : {"k-invariance", "sigma-invariance", "orientation-flip", "S1-weight", "S2-weight",
                             "S3-weight", "T1-weight", "T2-weight", "closed-form-vs-transport"})
        t.law(name);

    for (std::size_t i = 0; i < trials; ++i) {
        const GraphJet j = random_regular_jet(rng);
        const AffineMap a = random_map(rng, +1, j);
        const AffineMap b = random_map(rng, -1, j);

        const GraphJet ja = prolong_closed_form(a, j, fault);
        const GraphJet jb = prolong_closed_form(b, j, fault);
        const GraphJet generic = prolong(a, j);

        const double k = curvature(j);
        t.record("k-invariance", rel_err(curvature(ja), k));
        t.record("orientation-flip", rel_err(curvature(jb), -k));
        const int sigma = signature(j);
        t.record("sigma-invariance", (signature(ja) == sigma && signature(jb) == sigma) ? 0.0 : 1.0);

        const double delta = a.det();
        const double gamma = gamma_factor(a, j);
        const SValues s = compute_s(j);
        const SValues sa = compute_s(ja);
        t.record("S1-weight", rel_err(sa.s1, delta * std::pow(gamma, -3) * s.s1));
        t.record("S2-weight", rel_err(sa.s2, delta * delta * std::pow(gamma, -8) * s.s2));
        t.record("S3-weight", rel_err(sa.s3, delta * delta * delta * std::pow(gamma, -12) * s.s3));

        const ModularT m = modular_t(j);
        const ModularT ma = modular_t(ja);
        t.record("T1-weight", rel_err(ma.t1, delta * m.t1));
        t.record("T2-weight", rel_err(ma.t2, gamma * m.t2));

        double transport = 0.0;
        for (std::size_t n = 1; n <= 5; ++n)
            transport = std::max(transport, rel_err(ja.dy(n), generic.dy(n)));
        t.record("closed-form-vs-transport", transport);
    }

    VerifyReport r;
    r.sweep = "affine-transformation-laws";
    r.trials = trials;
    r.seed = seed;
    r.laws = std::move(t.laws);
    for (const auto& l : r.laws) {
        r.max_rel_err = std::max(r.max_rel_err, l.max_rel_err);
        r.pass = r.pass && l.pass;
    }
    return r;
}

} // namespace gaffine::cli
