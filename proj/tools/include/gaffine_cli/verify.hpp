#pragma once

#include <gaffine/affine.hpp>
#include <gaffine/jet.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gaffine::cli {

/// Uniform double in [lo, hi) built from the raw engine bits, so sequences
/// agree across standard libraries.
double uniform(std::mt19937_64& rng, double lo, double hi);

/// A jet with |S1|, |S2| and |S3| at least 10% of their term magnitudes.
GraphJet random_regular_jet(std::mt19937_64& rng);

/// Entries in [−2, 2], |Δ| >= 0.1, sgn Δ = orientation and |Γ| >= 0.1 at j.
AffineMap random_map(std::mt19937_64& rng, int orientation, const GraphJet& j);

struct LawResult {
    std::string name;
    double max_rel_err = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct VerifyReport {
    std::string sweep;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double max_rel_err = 0.0;
    bool pass = true;
    std::vector<LawResult> laws;
};

inline constexpr double kVerifyTolerance = 1e-8;

/// Transformation-law sweep over random (jet, map) pairs. Transformed jets
/// come from the closed-form prolongation; `fault` corrupts it on purpose.
VerifyReport run_verify(std::size_t trials, std::uint64_t seed, const ClosedFormFault& fault = {});

} // namespace gaffine::cli
