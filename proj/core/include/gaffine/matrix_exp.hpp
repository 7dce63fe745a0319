#pragma once

#include <Eigen/Core>

namespace gaffine {

/// exp(X) by scaling and squaring with a diagonal Padé(6) approximant.
/// Matrices with infinity norm below 1e-4 use the Taylor series directly.
Eigen::Matrix3d expm(const Eigen::Matrix3d& x);

/// Truncated Taylor series of exp(X) through degree `terms`; only accurate
/// for small ‖X‖.
Eigen::Matrix3d expm_taylor(const Eigen::Matrix3d& x, int terms);

} // namespace gaffine
