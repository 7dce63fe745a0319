#pragma once

/**
 * @file affine.hpp
 * @brief The general affine group Aff(2): points, prolonged action on curve
 * jets, one-parameter subgroups and their orbits.
 *
 * A map acts as p' = L p + b with L = [[a11, a12], [a21, a22]] and
 * Δ = det L ≠ 0. Its homogeneous form is [[L, b], [0, 0, 1]].
 */

#include "gaffine/jet.hpp"

#include <Eigen/Core>
#include <Eigen/LU>

#include <span>
#include <utility>
#include <vector>

namespace gaffine {

using Point = Eigen::Vector2d;

inline constexpr double kDegenerateDet = 1e-12;
inline constexpr double kVerticalTangentTol = 1e-12;

class AffineMap {
public:
    /// Identity.
    AffineMap() noexcept;

    /// Throws DegenerateMap when |Δ| <= 1e-12.
    AffineMap(double a11, double a12, double a21, double a22, double tx = 0.0, double ty = 0.0);

    AffineMap(const Eigen::Matrix2d& linear, const Eigen::Vector2d& translation);

    /// From a homogeneous 3x3 matrix; the last row must be (0, 0, 1).
    static AffineMap from_homogeneous(const Eigen::Matrix3d& m);

    static AffineMap translation(double tx, double ty) { return {1.0, 0.0, 0.0, 1.0, tx, ty}; }

    double a11() const noexcept { return linear_(0, 0); }
    double a12() const noexcept { return linear_(0, 1); }
    double a21() const noexcept { return linear_(1, 0); }
    double a22() const noexcept { return linear_(1, 1); }

    const Eigen::Matrix2d& linear() const noexcept { return linear_; }
    const Eigen::Vector2d& translation() const noexcept { return translation_; }

    /// Δ = a11·a22 − a21·a12.
    double det() const noexcept { return linear_.determinant(); }
    int orientation() const noexcept { return det() > 0.0 ? 1 : -1; }

    Eigen::Matrix3d homogeneous() const noexcept;

private:
    Eigen::Matrix2d linear_;
    Eigen::Vector2d translation_;
};

Point apply_point(const AffineMap& a, const Point& p) noexcept;

/// a ∘ b: apply b first.
AffineMap compose(const AffineMap& a, const AffineMap& b);
AffineMap inverse(const AffineMap& a);

/// Γ = a11 + a12·y1 for the jet j.
double gamma_factor(const AffineMap& a, const GraphJet& j) noexcept;

/// Deliberate corruption of the closed-form order-5 polynomial N, used to
/// prove that the verification sweep catches transcription errors.
struct ClosedFormFault {
    double n_relative = 0.0;
};

/// Prolonged action through order 5 by the closed-form rational expressions;
/// order 6 comes from the generic transport. The translation moves the base
/// point only. Throws VerticalTangent when |Γ| <= 1e-12.
GraphJet prolong_closed_form(const AffineMap& a, const GraphJet& j, const ClosedFormFault& fault = {});

/// Prolonged action by transporting the parametric jet (x0 + t, y(x0 + t))
/// through the map and re-graphing. Throws VerticalTangent when |Γ| <= 1e-12.
GraphJet prolong(const AffineMap& a, const GraphJet& j);

/// Element of aff(2) in homogeneous form; the last row is exactly zero.
class Generator {
public:
    Generator() noexcept : m_(Eigen::Matrix3d::Zero()) {}
    /// Throws InvalidArgument if the last row is not exactly zero.
    explicit Generator(const Eigen::Matrix3d& m);

    /// [[m00, m01, m02], [m10, m11, m12], [0, 0, 0]].
    static Generator from_rows(double m00, double m01, double m02, double m10, double m11, double m12);

    const Eigen::Matrix3d& matrix() const noexcept { return m_; }

private:
    Eigen::Matrix3d m_;
};

/// The canonical generator shapes whose exponentials have closed forms.
enum class CanonicalForm {
    None,
    Diagonal,           // [[λ1, 0, 0], [0, λ2, 0]]
    Jordan,             // [[λ, 1, 0], [0, λ, 0]]
    RotationScaling,    // [[λ, −μ, 0], [μ, λ, 0]]
    TranslationScaling, // [[0, 0, a], [0, λ, 0]]
    Parabolic,          // [[0, 1, 0], [0, 0, 1]]
};

CanonicalForm canonical_form(const Generator& x) noexcept;

/// Closed-form exp(tX) for a canonical generator; nullopt-like identity is
/// never returned for CanonicalForm::None (throws InvalidArgument).
Eigen::Matrix3d canonical_exp(const Generator& x, double t);

/// exp(tX). Canonical generators use the closed form, cross-checked against
/// the Padé result to 1e-10.
AffineMap one_param_subgroup(const Generator& x, double t);

/// Parametric jets (x(s), y(s)) of s ↦ exp((t + s)X)p at s = 0.
std::pair<Jet, Jet> orbit_jet(const Generator& x, const Point& p, double t);

struct OrbitSample {
    double t;
    Point point;
    GraphJet jet;
};

struct Orbit {
    std::vector<OrbitSample> samples;
    /// Parameters where dx/dt vanished; no jet exists there.
    std::vector<double> skipped;
};

Orbit orbit_curve(const Generator& x, const Point& p, std::span<const double> t_grid);

} // namespace gaffine
