#include "gaffine/reconstruct.hpp"

#include "gaffine/errors.hpp"
#include "gaffine/invariants.hpp"
#include "gaffine/matrix_exp.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace gaffine {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

void check_sigma(int sigma)
{
    if (sigma != 1 && sigma != -1)
        throw InvalidArgument("sigma must be +1 or -1");
}

// Natural cubic spline second derivatives (tridiagonal solve).
std::vector<double> spline_moments(const std::vector<double>& s, const std::vector<double>& k)
{
    const std::size_t n = s.size();
    std::vector<double> m(n, 0.0);
    if (n < 3)
        return m;
    std::vector<double> diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = s[i] - s[i - 1];
        const double h1 = s[i + 1] - s[i];
        const double lower = h0 / 6.0;
        diag[i] = (h0 + h1) / 3.0;
        upper[i] = h1 / 6.0;
        rhs[i] = (k[i + 1] - k[i]) / h1 - (k[i] - k[i - 1]) / h0;
        // Eliminate the sub-diagonal against the previous row.
        const double w = lower / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 1; i-- > 1;)
        m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
    return m;
}

} // namespace

CurvatureProfile CurvatureProfile::constant(double k, int sigma)
{
    check_sigma(sigma);
    if (!std::isfinite(k))
        throw InvalidArgument("curvature must be finite");
    return {Constant{k}, sigma};
}

CurvatureProfile CurvatureProfile::sampled(std::vector<double> s, std::vector<double> k, int sigma)
{
    check_sigma(sigma);
    if (s.size() != k.size() || s.size() < 2)
        throw InvalidArgument("sampled profile needs matching s and k arrays with at least two samples");
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!(s[i] > s[i - 1]))
            throw InvalidArgument("sampled profile grid must be strictly increasing");
    auto m = spline_moments(s, k);
    return {Sampled{std::move(s), std::move(k), std::move(m)}, sigma};
}

CurvatureProfile CurvatureProfile::expression(Expr k, int sigma)
{
    check_sigma(sigma);
    return {Expression{std::move(k)}, sigma};
}

Jet CurvatureProfile::k_jet(double s) const
{
    if (const auto* c = std::get_if<Constant>(&v_))
        return Jet::constant(c->k);
    if (const auto* e = std::get_if<Expression>(&v_))
        return eval(e->k, Jet::variable(s));

    const auto& p = std::get<Sampled>(v_);
    const double span = p.s.back() - p.s.front();
    const double slack = 1e-12 * std::max(1.0, span);
    if (s < p.s.front() - slack || s > p.s.back() + slack)
        throw InvalidArgument(fmt::format("arc length {} outside the sampled profile", s));
    const auto it = std::upper_bound(p.s.begin(), p.s.end(), s);
    std::size_t i = static_cast<std::size_t>(std::distance(p.s.begin(), it));
    i = std::clamp<std::size_t>(i, 1, p.s.size() - 1) - 1;
    const double h = p.s[i + 1] - p.s[i];
    const double a = s - p.s[i];
    const double b = p.s[i + 1] - s;
    const double m0 = p.m[i];
    const double m1 = p.m[i + 1];
    // S(s) = m0 b³/6h + m1 a³/6h + (k0/h − m0 h/6) b + (k1/h − m1 h/6) a
    const double c0 = (p.k[i] / h - m0 * h / 6.0);
    const double c1 = (p.k[i + 1] / h - m1 * h / 6.0);
    Jet j;
    j[0] = m0 * b * b * b / (6.0 * h) + m1 * a * a * a / (6.0 * h) + c0 * b + c1 * a;
    j[1] = -m0 * b * b / (2.0 * h) + m1 * a * a / (2.0 * h) - c0 + c1;
    j[2] = (m0 * b / h + m1 * a / h) / 2.0;
    j[3] = (m1 - m0) / (6.0 * h);
    return j;
}

Eigen::Matrix3d CurvatureProfile::generator(double s) const
{
    const Jet k = k_jet(s);
    return frenet_generator(k[0], k[1], sigma_);
}

FrenetState::FrenetState(const Eigen::Vector2d& t, const Eigen::Vector2d& n, const Point& r)
{
    m_ << t(0), n(0), r(0), t(1), n(1), r(1), 0.0, 0.0, 1.0;
    if (m_.topLeftCorner<2, 2>().determinant() == 0.0)
        throw InvalidArgument("Frenet vectors t and n must be linearly independent");
}

FrenetState::FrenetState(const Eigen::Matrix3d& m) : m_(m)
{
    if (m(2, 0) != 0.0 || m(2, 1) != 0.0 || m(2, 2) != 1.0)
        throw InvalidArgument("Frenet state must have last row (0, 0, 1)");
    if (m.topLeftCorner<2, 2>().determinant() == 0.0)
        throw InvalidArgument("Frenet vectors t and n must be linearly independent");
}

FrenetState frenet_state(const GraphJet& j)
{
    const auto [t, n] = frenet(j);
    return {t, n, Point(j.x, j.y)};
}

std::vector<FrenetSample> integrate_frenet(const CurvatureProfile& profile, const FrenetState& f0, double s0,
                                           double s1, double h)
{
    if (!(h > 0.0) || !std::isfinite(s0) || !std::isfinite(s1))
        throw InvalidArgument("integrate_frenet needs a positive step and a finite span");
    const double span = s1 - s0;
    const auto steps = static_cast<std::size_t>(std::ceil(std::abs(span) / h - 1e-9));
    std::vector<FrenetSample> out;
    out.reserve(steps + 1);
    out.push_back({s0, f0});
    if (steps == 0)
        return out;

    const double dt = span / static_cast<double>(steps);
    Eigen::Matrix3d f = f0.matrix();
    for (std::size_t i = 0; i < steps; ++i) {
        const double s = s0 + dt * static_cast<double>(i);
        const Eigen::Matrix3d x0 = profile.generator(s);
        const Eigen::Matrix3d xm = profile.generator(s + 0.5 * dt);
        const Eigen::Matrix3d x1 = profile.generator(s + dt);
        const Eigen::Matrix3d k1 = f * x0;
        const Eigen::Matrix3d k2 = (f + 0.5 * dt * k1) * xm;
        const Eigen::Matrix3d k3 = (f + 0.5 * dt * k2) * xm;
        const Eigen::Matrix3d k4 = (f + dt * k3) * x1;
        Eigen::Matrix3d next = f + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        next.row(2) << 0.0, 0.0, 1.0;

        const double before = f.cwiseAbs().maxCoeff();
        const double after = next.cwiseAbs().maxCoeff();
        if (!std::isfinite(after) || after > 1e6 * before)
            throw StepTooLarge(fmt::format("Frenet state grew from {} to {} in one step at s = {}", before, after, s));
        f = next;
        const double s_next = i + 1 == steps ? s1 : s0 + dt * static_cast<double>(i + 1);
        out.push_back({s_next, FrenetState(f)});
    }
    return out;
}

std::vector<FrenetSample> reconstruct_constant(double k, int sigma, std::span<const double> s_grid,
                                               const FrenetState& f0)
{
    check_sigma(sigma);
    const Eigen::Matrix3d x = frenet_generator(k, 0.0, sigma);
    std::vector<FrenetSample> out;
    out.reserve(s_grid.size());
    for (double s : s_grid) {
        Eigen::Matrix3d f = f0.matrix() * expm(s * x);
        f.row(2) << 0.0, 0.0, 1.0;
        out.push_back({s, FrenetState(f)});
    }
    return out;
}

Curve constant_curvature_curve(double k, int sigma, const FrenetState& f0)
{
    check_sigma(sigma);
    const Eigen::Matrix3d x = frenet_generator(k, 0.0, sigma);
    return Curve([x, f = f0.matrix()](double s) {
        // r(s + u) = F0 exp(sX) exp(uX) e3
        const Eigen::Matrix3d basis = f * expm(s * x);
        Jet xj, yj;
        double fact = 1.0;
        Eigen::Matrix3d power = Eigen::Matrix3d::Identity();
        for (std::size_t n = 0; n <= kJetOrder; ++n) {
            if (n > 0) {
                power = power * x;
                fact *= static_cast<double>(n);
            }
            const Eigen::Vector3d v = basis * power * Eigen::Vector3d::UnitZ();
            xj[n] = v(0) / fact;
            yj[n] = v(1) / fact;
        }
        return std::pair{xj, yj};
    });
}

std::pair<Jet, Jet> frenet_point_jets(const CurvatureProfile& profile, const FrenetState& f, double s)
{
    // Taylor coefficients of X(s + u) from the curvature jet; k_s loses one order.
    const Jet k = profile.k_jet(s);
    const Jet ks = k.differentiate();
    const int sigma = profile.sigma();
    std::array<Eigen::Matrix3d, kJetOrder> xc;
    for (std::size_t n = 0; n < kJetOrder; ++n) {
        const Jet ksq = k * k;
        xc[n] = Eigen::Matrix3d::Zero();
        xc[n](0, 1) = -0.5 * ksq[n] - 0.5 * sigma * ks[n] - (n == 0 ? sigma / 3.0 : 0.0);
        xc[n](0, 2) = n == 0 ? 1.0 : 0.0;
        xc[n](1, 0) = n == 0 ? 1.0 : 0.0;
        xc[n](1, 1) = -1.5 * sigma * k[n];
    }
    // F_{n+1} = (1 / (n + 1)) Σ_{i<=n} F_i X_{n−i}
    std::array<Eigen::Matrix3d, kJetOrder + 1> fc;
    fc[0] = f.matrix();
    for (std::size_t n = 0; n < kJetOrder; ++n) {
        Eigen::Matrix3d acc = Eigen::Matrix3d::Zero();
        for (std::size_t i = 0; i <= n; ++i)
            acc += fc[i] * xc[n - i];
        fc[n + 1] = acc / static_cast<double>(n + 1);
    }
    Jet xj, yj;
    for (std::size_t n = 0; n <= kJetOrder; ++n) {
        xj[n] = fc[n](0, 2);
        yj[n] = fc[n](1, 2);
    }
    return {xj, yj};
}

// ----------------------------------------------------------------------------
// Classification
// ----------------------------------------------------------------------------

std::string_view to_string(FamilyTag t) noexcept
{
    switch (t) {
    case FamilyTag::EllipseCircle: return "Ellipse/Circle";
    case FamilyTag::Hyperbola: return "Hyperbola";
    case FamilyTag::LogSpiral: return "LogSpiral";
    case FamilyTag::XLogX: return "XLogX";
    case FamilyTag::PowerCurve: return "PowerCurve";
    case FamilyTag::Exponential: return "Exponential";
    }
    return "Unknown";
}

double power_curve_abs_curvature(double a) noexcept
{
    const double q = std::abs((2.0 * a - 1.0) * (a - 2.0));
    return 2.0 * kSqrt3 / 3.0 * std::abs(a + 1.0) / std::sqrt(q);
}

namespace {

// Root of power_curve_abs_curvature(a) = target on an interval where it is
// monotone; `increasing` gives the direction.
double solve_branch(double target, double lo, double hi, bool increasing)
{
    for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        const bool above = power_curve_abs_curvature(mid) > target;
        if (above == increasing)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

} // namespace

Family classify_constant(double k, int sigma)
{
    check_sigma(sigma);
    const double ak = std::abs(k);
    Family f{FamilyTag::EllipseCircle, {}, {}, sign_of(k)};
    const double xlogx_k = 4.0 * kSqrt3 / 3.0;
    const double exp_k = std::sqrt(6.0) / 3.0;

    if (ak <= kFamilyBoundaryTol) {
        f.orientation = 0;
        if (sigma > 0) {
            f.tag = FamilyTag::EllipseCircle;
        } else {
            f.tag = FamilyTag::Hyperbola;
            f.params["a"] = -1.0;
            f.congruent_params["a"] = -1.0;
        }
        return f;
    }

    if (sigma > 0) {
        if (std::abs(ak - xlogx_k) <= kFamilyBoundaryTol) {
            // y = a x + b x ln|x| on x > 0 has k = −(4√3/3) sgn(b).
            f.tag = FamilyTag::XLogX;
            f.params["a"] = 0.0;
            f.params["b"] = -static_cast<double>(sign_of(k));
        } else if (ak < xlogx_k) {
            // k = −(4√3/3) ρ / √(ρ² + 9) for r = e^{ρθ}
            f.tag = FamilyTag::LogSpiral;
            const double q = k / xlogx_k;
            f.params["ratio"] = -3.0 * q / std::sqrt(1.0 - q * q);
        } else {
            // Branch (1/2, 1) is decreasing; its partner 1/a lies in (1, 2).
            f.tag = FamilyTag::PowerCurve;
            const double small = solve_branch(ak, 0.5, 1.0, false);
            f.params["a"] = 1.0 / small;
            f.congruent_params["a"] = small;
        }
        return f;
    }

    if (std::abs(ak - exp_k) <= kFamilyBoundaryTol) {
        f.tag = FamilyTag::Exponential;
    } else if (ak > exp_k) {
        // Branch (0, 1/2) is increasing; its partner 1/a exceeds 2.
        f.tag = FamilyTag::PowerCurve;
        const double small = solve_branch(ak, 0.0, 0.5, true);
        f.params["a"] = 1.0 / small;
        f.congruent_params["a"] = small;
    } else {
        // Branch (−1, 0) is increasing; its partner 1/a is below −1.
        f.tag = FamilyTag::PowerCurve;
        const double small = solve_branch(ak, -1.0, 0.0, true);
        f.params["a"] = 1.0 / small;
        f.congruent_params["a"] = small;
    }
    return f;
}

} // namespace gaffine
