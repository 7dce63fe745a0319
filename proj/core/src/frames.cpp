#include "gaffine/frames.hpp"

#include "gaffine/errors.hpp"
#include "gaffine/invariants.hpp"

#include <Eigen/LU>

#include <array>
#include <cmath>
#include <fmt/format.h>

namespace gaffine {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

void require_regular(const GraphJet& j, const char* what)
{
    if (!is_regular(j))
        throw SingularPoint(fmt::format("{} requires a regular point (x = {})", what, j.x));
}

} // namespace

FrameRecord right_frame(const GraphJet& j)
{
    require_regular(j, "right_frame");
    const double y1 = j.dy(1);
    const double y2 = j.dy(2);
    const double y3 = j.dy(3);
    const SValues s = compute_s(j);
    const double abs_s2 = std::abs(s.s2);
    const double root = std::sqrt(abs_s2);
    const double y2_cubed = y2 * y2 * y2;

    FrameRecord f;
    f.base = Point(j.x, j.y);
    const double a22 = abs_s2 / (3.0 * y2_cubed);
    const double a21 = -y1 * a22;
    const double a12 = y3 * root / (3.0 * kSqrt3 * y2_cubed);
    const double a11 = -(y1 * y3 - 3.0 * y2 * y2) * root / (3.0 * kSqrt3 * y2_cubed);
    f.a << a11, a12, a21, a22;
    f.delta = std::sqrt(y2 * a22 * a22 * a22);

    const Eigen::Matrix2d inv = f.a.inverse();
    f.e1 = inv.col(0);
    f.e2 = inv.col(1);
    f.sigma = s.s2 > 0.0 ? 1 : -1;
    f.k = curvature(j);
    f.t = f.e1;
    f.n = -0.5 * f.sigma * f.k * f.t + f.e2;
    return f;
}

Normalization normalize_jet(const GraphJet& j)
{
    const FrameRecord f = right_frame(j);
    const AffineMap map(f.a, -f.a * f.base);
    return {prolong(map, j), map};
}

std::pair<Eigen::Vector2d, Eigen::Vector2d> left_frame(const GraphJet& j)
{
    require_regular(j, "left_frame");
    const double y1 = j.dy(1);
    const double y2 = j.dy(2);
    const double y3 = j.dy(3);
    const double abs_s2 = std::abs(compute_s(j).s2);
    const double root = std::sqrt(abs_s2);
    const Eigen::Vector2d e1(kSqrt3 * y2 / root, kSqrt3 * y1 * y2 / root);
    const Eigen::Vector2d e2(-y2 * y3 / abs_s2, -y2 * (y1 * y3 - 3.0 * y2 * y2) / abs_s2);
    return {e1, e2};
}

std::pair<Eigen::Vector2d, Eigen::Vector2d> frenet(const GraphJet& j)
{
    const auto [e1, e2] = left_frame(j);
    const double k = curvature(j);
    const int sigma = signature(j);
    return {e1, -0.5 * sigma * k * e1 + e2};
}

Eigen::Matrix2d right_connection(double k, int sigma) noexcept
{
    const double sk = sigma * k;
    Eigen::Matrix2d m;
    m << 0.5 * sk, sigma / 3.0, -1.0, sk;
    return m;
}

Eigen::Matrix2d left_connection(double k, int sigma) noexcept { return -right_connection(k, sigma); }

Eigen::Matrix3d frenet_generator(double k, double k_s, int sigma) noexcept
{
    Eigen::Matrix3d x;
    x << 0.0, -0.5 * k * k - 0.5 * sigma * k_s - sigma / 3.0, 1.0, //
        1.0, -1.5 * sigma * k, 0.0,                                //
        0.0, 0.0, 0.0;
    return x;
}

std::string_view to_string(MovingEquation m) noexcept
{
    switch (m) {
    case MovingEquation::Right: return "right";
    case MovingEquation::Left: return "left";
    case MovingEquation::Frenet: return "frenet";
    }
    return "right";
}

namespace {

// The frame quantity whose s-derivative is checked, flattened to a 2x3 block
// (unused columns stay zero).
Eigen::Matrix<double, 2, 3> frame_state(const GraphJet& j, MovingEquation which)
{
    Eigen::Matrix<double, 2, 3> m = Eigen::Matrix<double, 2, 3>::Zero();
    const FrameRecord f = right_frame(j);
    switch (which) {
    case MovingEquation::Right:
        m.leftCols<2>() = f.a;
        break;
    case MovingEquation::Left:
        m.col(0) = f.e1;
        m.col(1) = f.e2;
        break;
    case MovingEquation::Frenet:
        m.col(0) = f.t;
        m.col(1) = f.n;
        m.col(2) = f.base;
        break;
    }
    return m;
}

} // namespace

double arc_speed(const Curve& curve, double p)
{
    const auto [xj, yj] = curve.jets(p);
    if (std::abs(xj[1]) >= std::abs(yj[1]))
        return arc_element(graph_jet_from_parametric(xj, yj)) * xj[1];
    return -arc_element(graph_jet_from_parametric(yj, xj)) * yj[1];
}

ChartInvariants parametric_invariants(const Jet& xj, const Jet& yj)
{
    const bool swap = std::abs(xj[1]) < std::abs(yj[1]);
    const GraphJet j = swap ? graph_jet_from_parametric(yj, xj) : graph_jet_from_parametric(xj, yj);
    const double k = curvature(j);
    return {swap ? -k : k, signature(j), curvature_derivative(j)};
}

double moving_eq_residual(const Curve& curve, double lo, double hi, MovingEquation which, double h, int centers)
{
    if (!(h > 0.0) || !(hi - lo > 4.0 * h) || centers < 1)
        throw InvalidArgument("moving_eq_residual needs h > 0, a window wider than 4h, and at least one center");
    constexpr std::array<double, 5> kWeights = {1.0, -8.0, 0.0, 8.0, -1.0};

    double worst = 0.0;
    for (int c = 0; c < centers; ++c) {
        const double p = centers == 1 ? 0.5 * (lo + hi)
                                      : (lo + 2.0 * h) + (hi - lo - 4.0 * h) * c / static_cast<double>(centers - 1);
        const CurveSample mid = curve.sample(p);
        const double ds_dp = arc_element(mid.jet) * mid.dx_dparam;

        Eigen::Matrix<double, 2, 3> deriv = Eigen::Matrix<double, 2, 3>::Zero();
        for (int i = 0; i < 5; ++i) {
            if (kWeights[i] == 0.0)
                continue;
            deriv += kWeights[i] * frame_state(curve.sample(p + (i - 2) * h).jet, which);
        }
        deriv /= 12.0 * h * ds_dp;

        const Eigen::Matrix<double, 2, 3> state = frame_state(mid.jet, which);
        const double k = curvature(mid.jet);
        const int sigma = signature(mid.jet);
        Eigen::Matrix<double, 2, 3> expected = Eigen::Matrix<double, 2, 3>::Zero();
        switch (which) {
        case MovingEquation::Right:
            expected.leftCols<2>() = right_connection(k, sigma) * state.leftCols<2>();
            break;
        case MovingEquation::Left:
            expected.leftCols<2>() = state.leftCols<2>() * left_connection(k, sigma);
            break;
        case MovingEquation::Frenet:
            expected = state * frenet_generator(k, curvature_derivative(mid.jet), sigma);
            break;
        }
        worst = std::max(worst, (deriv - expected).cwiseAbs().maxCoeff());
    }
    return worst;
}

} // namespace gaffine
