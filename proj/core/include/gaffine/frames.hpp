#pragma once

/**
 * @file frames.hpp
 * @brief Right and left moving frames, normalization to canonical form, the
 * Frenet frame, and numerical checks of their moving equations.
 *
 * The right frame A (rows α1, α2) maps the jet, after translating its base
 * point to the origin, to the canonical jet (0, 0, 0, 1, 0, σ, k, ·). Its
 * inverse has columns e1, e2 (the left frame). The Frenet pair is t = e1 and
 * n = dt/ds = −σk/2·t + e2.
 *
 * With σ = sgn(S2) and arc length s, the frames satisfy
 *
 *   dA/ds          = K A,          K = [[σk/2, σ/3], [−1, σk]]
 *   d(e1, e2)/ds   = (e1, e2)(−K)
 *   d(t, n, r)/ds  = (t, n, r) X,  X = [[0, −k²/2 − σk_s/2 − σ/3, 1],
 *                                       [1, −3σk/2, 0], [0, 0, 0]]
 */

#include "gaffine/affine.hpp"
#include "gaffine/curve.hpp"
#include "gaffine/jet.hpp"

#include <Eigen/Core>

#include <string_view>
#include <utility>

namespace gaffine {

struct FrameRecord {
    Point base;
    /// Right frame, rows α1 = (a11, a12) and α2 = (a21, a22).
    Eigen::Matrix2d a;
    /// det A from √(y2·a22³); positive by construction.
    double delta = 0.0;
    Eigen::Vector2d e1;
    Eigen::Vector2d e2;
    Eigen::Vector2d t;
    Eigen::Vector2d n;
    int sigma = 0;
    double k = 0.0;
};

/// Right frame and the frames derived from it. Throws SingularPoint.
FrameRecord right_frame(const GraphJet& j);

struct Normalization {
    GraphJet canonical;
    AffineMap map;
};

/// The unique map with Δ > 0 sending j to canonical form.
Normalization normalize_jet(const GraphJet& j);

/// Closed-form left frame (e1, e2), independent of inverting A.
std::pair<Eigen::Vector2d, Eigen::Vector2d> left_frame(const GraphJet& j);

/// Frenet pair (t, n).
std::pair<Eigen::Vector2d, Eigen::Vector2d> frenet(const GraphJet& j);

Eigen::Matrix2d right_connection(double k, int sigma) noexcept;
Eigen::Matrix2d left_connection(double k, int sigma) noexcept;

/// Generator X of the Frenet system d(t, n, r)/ds = (t, n, r) X.
Eigen::Matrix3d frenet_generator(double k, double k_s, int sigma) noexcept;

/// ds/dp along a curve, valid across vertical tangents: where |x'| < |y'| the
/// axes are swapped (Δ = −1, which negates ds) before re-graphing.
double arc_speed(const Curve& curve, double p);

struct ChartInvariants {
    double k = 0.0;
    int sigma = 0;
    double k_s = 0.0;
};

/// Invariants of a parametric jet in whichever axis chart is a graph; the
/// swap negates k but leaves σ and dk/ds unchanged. Throws SingularPoint.
ChartInvariants parametric_invariants(const Jet& xj, const Jet& yj);

enum class MovingEquation { Right, Left, Frenet };

std::string_view to_string(MovingEquation m) noexcept;

/// Max-norm residual of the chosen moving equation over [lo, hi], with
/// derivatives taken by 5-point central differences of step h in the curve
/// parameter and converted to arc length through ds/dp. Centers are spread
/// over [lo + 2h, hi − 2h]. Throws SingularPoint if the window is not regular.
double moving_eq_residual(const Curve& curve, double lo, double hi, MovingEquation which, double h = 1e-3,
                          int centers = 41);

} // namespace gaffine
