#include "gaffine/invariants.hpp"

#include "gaffine/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace gaffine {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Homogeneous magnitude of the jet under x-scaling, matched to y2.
double s1_scale(const GraphJet& j) noexcept
{
    return std::abs(j.dy(2)) + std::cbrt(j.dy(3) * j.dy(3)) + std::sqrt(std::abs(j.dy(4))) +
           std::pow(std::abs(j.dy(5)), 0.4) + std::cbrt(std::abs(j.dy(6)));
}

double s2_scale(const GraphJet& j) noexcept
{
    return 3.0 * std::abs(j.dy(2) * j.dy(4)) + 5.0 * j.dy(3) * j.dy(3);
}

double s3_scale(const GraphJet& j) noexcept
{
    const double y2 = std::abs(j.dy(2));
    const double y3 = std::abs(j.dy(3));
    return 45.0 * y2 * y3 * std::abs(j.dy(4)) + 9.0 * y2 * y2 * std::abs(j.dy(5)) + 40.0 * y3 * y3 * y3;
}

bool s1_vanishes(const GraphJet& j) noexcept { return std::abs(j.dy(2)) <= kRegularityEps * s1_scale(j); }

bool s2_vanishes(const GraphJet& j, double s2) noexcept { return std::abs(s2) <= kRegularityEps * s2_scale(j); }

void require_regular(const GraphJet& j, const char* what)
{
    if (!is_regular(j))
        throw SingularPoint(fmt::format("{} requires a regular point (x = {})", what, j.x));
}

} // namespace

SValues compute_s(const GraphJet& j) noexcept
{
    const double y2 = j.dy(2);
    const double y3 = j.dy(3);
    const double y4 = j.dy(4);
    const double y5 = j.dy(5);
    return {
        y2,
        3.0 * y2 * y4 - 5.0 * y3 * y3,
        -45.0 * y2 * y3 * y4 + 9.0 * y2 * y2 * y5 + 40.0 * y3 * y3 * y3,
    };
}

std::string_view to_string(SingularKind k) noexcept
{
    switch (k) {
    case SingularKind::LineLike: return "LineLike";
    case SingularKind::ParabolaLike: return "ParabolaLike";
    case SingularKind::MixedOrUnknown: return "MixedOrUnknown";
    }
    return "MixedOrUnknown";
}

Regularity regularity(const GraphJet& j) noexcept
{
    if (s1_vanishes(j))
        return {false, SingularKind::LineLike};
    if (s2_vanishes(j, compute_s(j).s2))
        return {false, SingularKind::ParabolaLike};
    return {true, SingularKind::MixedOrUnknown};
}

int signature(const GraphJet& j) noexcept
{
    const double s2 = compute_s(j).s2;
    if (s2_vanishes(j, s2))
        return 0;
    return s2 > 0.0 ? 1 : -1;
}

SingularKind classify_singular(std::span<const GraphJet> samples)
{
    if (samples.size() < 5)
        throw InvalidArgument("classify_singular needs at least 5 samples");
    bool all_line = true;
    for (const auto& j : samples) {
        const Regularity r = regularity(j);
        if (r.regular)
            throw NotAllSingular(fmt::format("sample at x = {} is regular", j.x));
        all_line = all_line && r.kind == SingularKind::LineLike;
    }
    return all_line ? SingularKind::LineLike : SingularKind::ParabolaLike;
}

double arc_element(const GraphJet& j)
{
    require_regular(j, "arc_element");
    const SValues s = compute_s(j);
    return std::sqrt(std::abs(s.s2)) / (kSqrt3 * s.s1);
}

double curvature(const GraphJet& j)
{
    require_regular(j, "curvature");
    const SValues s = compute_s(j);
    const double a = std::abs(s.s2);
    return kSqrt3 * s.s3 / (3.0 * a * std::sqrt(a));
}

Jet curvature_jet(const GraphJet& j)
{
    require_regular(j, "curvature_jet");
    const Jet y = j.as_jet();
    const Jet y2 = y.differentiate().differentiate();
    const Jet y3 = y2.differentiate();
    const Jet y4 = y3.differentiate();
    const Jet y5 = y4.differentiate();
    const Jet s2 = 3.0 * y2 * y4 - 5.0 * y3 * y3;
    const Jet s3 = -45.0 * y2 * y3 * y4 + 9.0 * y2 * y2 * y5 + 40.0 * y3 * y3 * y3;
    const Jet abs_s2 = s2[0] > 0.0 ? s2 : -s2;
    const Jet k = kSqrt3 * s3 / (3.0 * pow(abs_s2, 1.5));
    // Only orders 0 and 1 are backed by the six available derivatives.
    Jet out;
    out[0] = k[0];
    out[1] = k[1];
    return out;
}

double invariant_derivative(const Jet& f, const GraphJet& j) { return f[1] / arc_element(j); }

double curvature_derivative(const GraphJet& j) { return invariant_derivative(curvature_jet(j), j); }

ModularT modular_t(const GraphJet& j)
{
    const SValues s = compute_s(j);
    if (!(std::abs(s.s3) > 1e-12 * s3_scale(j)))
        throw S3Zero(fmt::format("S3 vanishes at x = {}", j.x));
    const double s1sq = s.s1 * s.s1;
    return {s1sq * s1sq / s.s3, s.s1 * s.s2 / s.s3};
}

InvariantRecord invariant_record(const GraphJet& j)
{
    InvariantRecord r;
    r.x = j.x;
    r.y = j.y;
    r.s = compute_s(j);
    r.sigma = signature(j);
    const Regularity reg = regularity(j);
    r.regular = reg.regular;
    r.kind = reg.kind;
    if (reg.regular) {
        r.ds_dx = arc_element(j);
        r.k = curvature(j);
        r.k_s = curvature_derivative(j);
    }
    return r;
}

} // namespace gaffine
