#pragma once

/**
 * @file invariants.hpp
 * @brief Pointwise general-affine invariants of a plane curve jet.
 *
 *   S1 = y2
 *   S2 = 3·y2·y4 − 5·y3²
 *   S3 = 9·y2²·y5 − 45·y2·y3·y4 + 40·y3³
 *
 * Under a map with determinant Δ and Γ = a11 + a12·y1 these rescale by
 * Δ·Γ⁻³, Δ²·Γ⁻⁸ and Δ³·Γ⁻¹². A point is regular when S1 ≠ 0 and S2 ≠ 0;
 * arc element, curvature and frames exist only there.
 */

#include "gaffine/jet.hpp"

#include <optional>
#include <span>
#include <string_view>

namespace gaffine {

inline constexpr double kRegularityEps = 1e-10;

struct SValues {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
};

SValues compute_s(const GraphJet& j) noexcept;

enum class SingularKind { LineLike, ParabolaLike, MixedOrUnknown };

std::string_view to_string(SingularKind k) noexcept;

struct Regularity {
    bool regular = false;
    /// Meaningful only when !regular.
    SingularKind kind = SingularKind::MixedOrUnknown;
};

Regularity regularity(const GraphJet& j) noexcept;
inline bool is_regular(const GraphJet& j) noexcept { return regularity(j).regular; }

/// sgn(S2), or 0 when S2 vanishes.
int signature(const GraphJet& j) noexcept;

/// Requires at least 5 samples, all singular. Throws NotAllSingular otherwise.
SingularKind classify_singular(std::span<const GraphJet> samples);

/// ds/dx = |S2|^{1/2} / (√3·S1). Carries the sign of S1.
double arc_element(const GraphJet& j);

/// k = √3·S3 / (3·|S2|^{3/2}).
double curvature(const GraphJet& j);

/// Curvature as a jet in x of order 1: c0 = k, c1 = dk/dx. Uses y6.
Jet curvature_jet(const GraphJet& j);

/// df/ds = (df/dx) / (ds/dx), where f is given as a jet in x at j.x.
double invariant_derivative(const Jet& f, const GraphJet& j);

/// dk/ds.
double curvature_derivative(const GraphJet& j);

struct ModularT {
    double t1 = 0.0; // S1⁴ / S3, weight (1, 0)
    double t2 = 0.0; // S1·S2 / S3, weight (0, 1)
};

/// Throws S3Zero when S3 vanishes relative to its term magnitudes.
ModularT modular_t(const GraphJet& j);

struct InvariantRecord {
    double x = 0.0;
    double y = 0.0;
    SValues s;
    int sigma = 0;
    bool regular = false;
    SingularKind kind = SingularKind::MixedOrUnknown;
    std::optional<double> ds_dx;
    std::optional<double> k;
    std::optional<double> k_s;
};

/// Everything at once; singular jets leave the optional fields empty.
InvariantRecord invariant_record(const GraphJet& j);

} // namespace gaffine
