#include "gaffine/affine.hpp"

#include "gaffine/errors.hpp"
#include "gaffine/matrix_exp.hpp"

#include <Eigen/LU>

#include <cmath>
#include <fmt/format.h>

namespace gaffine {

AffineMap::AffineMap() noexcept : linear_(Eigen::Matrix2d::Identity()), translation_(Eigen::Vector2d::Zero()) {}

AffineMap::AffineMap(double a11, double a12, double a21, double a22, double tx, double ty)
{
    linear_ << a11, a12, a21, a22;
    translation_ << tx, ty;
    if (!(std::abs(det()) > kDegenerateDet))
        throw DegenerateMap(fmt::format("affine map is degenerate (det = {})", det()));
}

AffineMap::AffineMap(const Eigen::Matrix2d& linear, const Eigen::Vector2d& translation)
    : AffineMap(linear(0, 0), linear(0, 1), linear(1, 0), linear(1, 1), translation(0), translation(1))
{
}

AffineMap AffineMap::from_homogeneous(const Eigen::Matrix3d& m)
{
    if (m(2, 0) != 0.0 || m(2, 1) != 0.0 || m(2, 2) != 1.0)
        throw InvalidArgument("homogeneous affine matrix must have last row (0, 0, 1)");
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1), m(0, 2), m(1, 2)};
}

Eigen::Matrix3d AffineMap::homogeneous() const noexcept
{
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    m.topLeftCorner<2, 2>() = linear_;
    m.topRightCorner<2, 1>() = translation_;
    return m;
}

Point apply_point(const AffineMap& a, const Point& p) noexcept { return a.linear() * p + a.translation(); }

AffineMap compose(const AffineMap& a, const AffineMap& b)
{
    return {a.linear() * b.linear(), a.linear() * b.translation() + a.translation()};
}

AffineMap inverse(const AffineMap& a)
{
    const Eigen::Matrix2d inv = a.linear().inverse();
    return {inv, -inv * a.translation()};
}

double gamma_factor(const AffineMap& a, const GraphJet& j) noexcept { return a.a11() + a.a12() * j.dy(1); }

namespace {

void check_gamma(double g)
{
    if (!(std::abs(g) > kVerticalTangentTol))
        throw VerticalTangent(fmt::format("prolonged jet has a vertical tangent (Gamma = {})", g));
}

} // namespace

GraphJet prolong(const AffineMap& a, const GraphJet& j)
{
    check_gamma(gamma_factor(a, j));
    const Jet xj = Jet::variable(j.x);
    const Jet yj = j.as_jet();
    const Jet xt = a.a11() * xj + a.a12() * yj + a.translation()(0);
    const Jet yt = a.a21() * xj + a.a22() * yj + a.translation()(1);
    return graph_jet_from_parametric(xt, yt);
}

GraphJet prolong_closed_form(const AffineMap& a, const GraphJet& j, const ClosedFormFault& fault)
{
    const double a11 = a.a11();
    const double a12 = a.a12();
    const double a21 = a.a21();
    const double a22 = a.a22();
    const double y1 = j.dy(1);
    const double y2 = j.dy(2);
    const double y3 = j.dy(3);
    const double y4 = j.dy(4);
    const double y5 = j.dy(5);

    const double g = a11 + a12 * y1;
    check_gamma(g);
    const double delta = a.det();

    const double g2 = g * g;
    const double g3 = g2 * g;
    const double g5 = g3 * g2;
    const double g7 = g5 * g2;
    const double g9 = g7 * g2;

    // The order-4 numerator carries 15·a12²·y2³ without a Γ factor; with it
    // the normalized fourth derivative would not come out as ±1.
    const double m = g2 * y4 - 10.0 * a12 * g * y2 * y3 + 15.0 * a12 * a12 * y2 * y2 * y2;
    double n = g3 * y5 - 15.0 * a12 * g2 * y2 * y4 - 10.0 * a12 * g2 * y3 * y3 +
               105.0 * a12 * a12 * g * y2 * y2 * y3 - 105.0 * a12 * a12 * a12 * y2 * y2 * y2 * y2;
    n *= 1.0 + fault.n_relative;

    const Point base = apply_point(a, Point(j.x, j.y));
    GraphJet out;
    out.x = base(0);
    out.y = base(1);
    out.d[0] = (a21 + a22 * y1) / g;
    out.d[1] = delta * y2 / g3;
    out.d[2] = delta * (a11 * y3 + a12 * y1 * y3 - 3.0 * a12 * y2 * y2) / g5;
    out.d[3] = delta * m / g7;
    out.d[4] = delta * n / g9;
    out.d[5] = prolong(a, j).d[5];
    return out;
}

// ----------------------------------------------------------------------------
// One-parameter subgroups
// ----------------------------------------------------------------------------

Generator::Generator(const Eigen::Matrix3d& m) : m_(m)
{
    if (m(2, 0) != 0.0 || m(2, 1) != 0.0 || m(2, 2) != 0.0)
        throw InvalidArgument("generator must have a zero last row");
}

Generator Generator::from_rows(double m00, double m01, double m02, double m10, double m11, double m12)
{
    Eigen::Matrix3d m;
    m << m00, m01, m02, m10, m11, m12, 0.0, 0.0, 0.0;
    return Generator(m);
}

namespace {

constexpr double kCanonicalTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kCanonicalTol; }

} // namespace

CanonicalForm canonical_form(const Generator& x) noexcept
{
    const Eigen::Matrix3d& m = x.matrix();
    const bool no_translation = near(m(0, 2), 0.0) && near(m(1, 2), 0.0);
    if (near(m(0, 0), 0.0) && near(m(0, 1), 1.0) && near(m(0, 2), 0.0) && near(m(1, 0), 0.0) &&
        near(m(1, 1), 0.0) && near(m(1, 2), 1.0))
        return CanonicalForm::Parabolic;
    if (no_translation && near(m(0, 1), 0.0) && near(m(1, 0), 0.0))
        return CanonicalForm::Diagonal;
    if (no_translation && near(m(0, 0), m(1, 1)) && near(m(0, 1), 1.0) && near(m(1, 0), 0.0))
        return CanonicalForm::Jordan;
    if (no_translation && near(m(0, 0), m(1, 1)) && near(m(0, 1), -m(1, 0)))
        return CanonicalForm::RotationScaling;
    if (near(m(0, 0), 0.0) && near(m(0, 1), 0.0) && near(m(1, 0), 0.0) && near(m(1, 2), 0.0))
        return CanonicalForm::TranslationScaling;
    return CanonicalForm::None;
}

Eigen::Matrix3d canonical_exp(const Generator& x, double t)
{
    const Eigen::Matrix3d& m = x.matrix();
    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    switch (canonical_form(x)) {
    case CanonicalForm::Diagonal:
        r(0, 0) = std::exp(m(0, 0) * t);
        r(1, 1) = std::exp(m(1, 1) * t);
        break;
    case CanonicalForm::Jordan: {
        const double e = std::exp(m(0, 0) * t);
        r(0, 0) = e;
        r(0, 1) = t * e;
        r(1, 1) = e;
        break;
    }
    case CanonicalForm::RotationScaling: {
        const double e = std::exp(m(0, 0) * t);
        const double mu = m(1, 0);
        r(0, 0) = e * std::cos(mu * t);
        r(0, 1) = -e * std::sin(mu * t);
        r(1, 0) = e * std::sin(mu * t);
        r(1, 1) = e * std::cos(mu * t);
        break;
    }
    case CanonicalForm::TranslationScaling:
        r(0, 2) = m(0, 2) * t;
        r(1, 1) = std::exp(m(1, 1) * t);
        break;
    case CanonicalForm::Parabolic:
        r(0, 1) = t;
        r(0, 2) = 0.5 * t * t;
        r(1, 2) = t;
        break;
    case CanonicalForm::None:
        throw InvalidArgument("generator has no canonical closed form");
    }
    return r;
}

AffineMap one_param_subgroup(const Generator& x, double t)
{
    const Eigen::Matrix3d series = expm(t * x.matrix());
    if (canonical_form(x) == CanonicalForm::None)
        return AffineMap::from_homogeneous(series);
    const Eigen::Matrix3d closed = canonical_exp(x, t);
    const double scale = std::max(1.0, closed.cwiseAbs().maxCoeff());
    if ((closed - series).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw Error("closed-form one-parameter subgroup disagrees with the matrix exponential");
    return AffineMap::from_homogeneous(closed);
}

std::pair<Jet, Jet> orbit_jet(const Generator& x, const Point& p, double t)
{
    // exp((t + s)X)p = exp(tX) Σ X^n p s^n / n!
    const Eigen::Matrix3d& m = x.matrix();
    Eigen::Vector3d v(p(0), p(1), 1.0);
    v = one_param_subgroup(x, t).homogeneous() * v;
    Jet xj, yj;
    double fact = 1.0;
    for (std::size_t n = 0; n <= kJetOrder; ++n) {
        if (n > 0) {
            v = m * v;
            fact *= static_cast<double>(n);
        }
        xj[n] = v(0) / fact;
        yj[n] = v(1) / fact;
    }
    return {xj, yj};
}

Orbit orbit_curve(const Generator& x, const Point& p, std::span<const double> t_grid)
{
    Orbit orbit;
    orbit.samples.reserve(t_grid.size());
    for (double t : t_grid) {
        const auto [xj, yj] = orbit_jet(x, p, t);
        try {
            orbit.samples.push_back({t, Point(xj[0], yj[0]), graph_jet_from_parametric(xj, yj)});
        } catch (const NotAGraph&) {
            orbit.skipped.push_back(t);
        }
    }
    return orbit;
}

} // namespace gaffine
