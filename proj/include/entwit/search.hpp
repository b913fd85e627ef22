#pragma once

#include <cstdint>

#include "entwit/gaussian.hpp"

namespace entwit {

enum class ParameterDomain { discrete, cv };

struct SearchConfig {
    int grid_resolution = 16; // points per angle, >= 4
    int refine_iters = 2;     // coordinate-wise golden-section rounds, >= 0
    std::uint64_t seed = 0;   // drives the cv low-discrepancy sampling
    CriterionId criterion = CriterionId::general_measurable;
    ParameterDomain domain = ParameterDomain::discrete;

    void validate() const;
};

struct SearchResult {
    CriterionConfig best_config;
    double best_margin = 0.0; // bound - lhs at best_config; > tol means violation found
    CriterionVerdict verdict; // re-evaluation at best_config
    long evaluations = 0;
};

// Strongest violation of a discrete-variable criterion over the coefficient
// space. Verdicts are scale invariant, so (a1, a2) and (b1, b2) are scanned
// as angles on the circle and every candidate is reported max-abs-normalized
// (largest coefficient magnitude 1). Grids of every resolution 4..G are
// scanned and each resolution's best cell is refined coordinate-wise by
// golden section, which makes the result monotone in both grid_resolution
// and refine_iters. Deterministic; ties break toward the lexicographically
// smallest (theta_a, theta_b).
SearchResult optimize_violation(const DensityMatrix& rho, const ObservablePairSet& pairs,
                                const SearchConfig& sc);

// Same contract for the continuous-variable criteria: the two coefficient
// 4-vectors are scanned over hypersphere angles via a seeded Kronecker
// low-discrepancy sequence (plus the canonical EPR-type candidates), then
// refined coordinate-wise.
SearchResult optimize_cv(const GaussianState& gs, const SearchConfig& sc);

} // namespace entwit
