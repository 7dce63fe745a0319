#pragma once

/**
 * @file reconstruct.hpp
 * @brief Rebuilding a curve from its curvature profile, and the
 * constant-curvature classification.
 *
 * The Frenet state F = [[t, n, r], [0, 0, 1]] obeys dF/ds = F·X(s) with X
 * from frenet_generator. For constant k the solution is F(s) = F(0)·exp(sX).
 */

#include "gaffine/curve.hpp"
#include "gaffine/expr.hpp"
#include "gaffine/frames.hpp"

#include <Eigen/Core>

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gaffine {

class CurvatureProfile {
public:
    struct Constant {
        double k;
    };
    struct Sampled {
        std::vector<double> s;
        std::vector<double> k;
        // Natural cubic spline second derivatives at the knots.
        std::vector<double> m;
    };
    struct Expression {
        Expr k; // in the variable s
    };

    static CurvatureProfile constant(double k, int sigma);
    /// Strictly increasing grid, at least two samples; natural cubic spline.
    static CurvatureProfile sampled(std::vector<double> s, std::vector<double> k, int sigma);
    static CurvatureProfile expression(Expr k, int sigma);

    int sigma() const noexcept { return sigma_; }
    bool is_constant() const noexcept { return std::holds_alternative<Constant>(v_); }

    /// Jet of k(s + u). Exact for constant and expression profiles; the
    /// spline piece for sampled ones.
    Jet k_jet(double s) const;
    double k(double s) const { return k_jet(s)[0]; }
    double k_s(double s) const { return k_jet(s)[1]; }

    /// Frenet generator at s.
    Eigen::Matrix3d generator(double s) const;

private:
    using Variant = std::variant<Constant, Sampled, Expression>;
    CurvatureProfile(Variant v, int sigma) : v_(std::move(v)), sigma_(sigma) {}

    Variant v_;
    int sigma_;
};

/// F = [[t, n, r], [0, 0, 1]] with (t, n) linearly independent.
class FrenetState {
public:
    /// Identity frame at the origin: t = (1, 0), n = (0, 1), r = 0.
    FrenetState() noexcept : m_(Eigen::Matrix3d::Identity()) {}
    FrenetState(const Eigen::Vector2d& t, const Eigen::Vector2d& n, const Point& r);
    /// Throws InvalidArgument on a bad last row or a singular (t, n) block.
    explicit FrenetState(const Eigen::Matrix3d& m);

    const Eigen::Matrix3d& matrix() const noexcept { return m_; }
    Eigen::Vector2d t() const { return m_.block<2, 1>(0, 0); }
    Eigen::Vector2d n() const { return m_.block<2, 1>(0, 1); }
    Point r() const { return m_.block<2, 1>(0, 2); }

private:
    Eigen::Matrix3d m_;
};

/// Frenet state of a curve at a regular jet: t, n and the base point.
FrenetState frenet_state(const GraphJet& j);

struct FrenetSample {
    double s;
    FrenetState f;
};

/// Classical RK4 on dF/ds = F·X(s) from s0 to s1 (either direction) with
/// step at most h. Returns the state at every step, start included. Throws
/// StepTooLarge if ‖F‖ grows by more than 1e6 in one step.
std::vector<FrenetSample> integrate_frenet(const CurvatureProfile& profile, const FrenetState& f0, double s0,
                                           double s1, double h);

/// F(s) = F0·exp(sX) at each requested arc length.
std::vector<FrenetSample> reconstruct_constant(double k, int sigma, std::span<const double> s_grid,
                                               const FrenetState& f0 = {});

/// The curve s ↦ r(s) of a constant profile through F0 at s = 0, with exact jets.
Curve constant_curvature_curve(double k, int sigma, const FrenetState& f0 = {});

/// Jets (x(s + u), y(s + u)) of the reconstructed point, by Taylor-mode
/// solution of the Frenet system from the state F at s.
std::pair<Jet, Jet> frenet_point_jets(const CurvatureProfile& profile, const FrenetState& f, double s);

enum class FamilyTag { EllipseCircle, Hyperbola, LogSpiral, XLogX, PowerCurve, Exponential };

std::string_view to_string(FamilyTag t) noexcept;

struct Family {
    FamilyTag tag;
    std::map<std::string, double> params;
    std::map<std::string, double> congruent_params;
    /// sgn(k); 0 when k vanishes.
    int orientation = 0;
};

inline constexpr double kFamilyBoundaryTol = 1e-9;

/// |k| for y = x^a on x > 0; infinite at a = 1/2 and a = 2.
double power_curve_abs_curvature(double a) noexcept;

/// Constant-curvature family with parameters, decided by (|k|, σ).
Family classify_constant(double k, int sigma);

} // namespace gaffine
