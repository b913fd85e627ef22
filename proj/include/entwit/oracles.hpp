#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "entwit/search.hpp"

namespace entwit {

enum class PptVerdict { PPT, NPT };

struct OracleVerdict {
    PptVerdict verdict = PptVerdict::PPT;
    double min_eigenvalue = 0.0; // of the partial transpose
    // PPT is equivalent to separability only in 2x2 and 2x3; elsewhere only
    // the NPT => entangled direction is used.
    bool exact_domain = false;
};

// Peres-Horodecki test: smallest eigenvalue of the partial transpose.
// NPT <=> min eigenvalue < -1e-9.
OracleVerdict ppt_check(const DensityMatrix& rho);

struct CriterionTally {
    long checked = 0;
    long violated = 0;
    long sound = 0; // violations confirmed NPT by the oracle
};

struct SoundnessFailure {
    std::size_t state_index = 0;
    CriterionConfig config;
    CriterionVerdict verdict;
    OracleVerdict oracle;
};

struct AuditReport {
    std::size_t states_checked = 0;
    long npt_states = 0;
    std::map<CriterionId, CriterionTally> tallies;
    std::vector<SoundnessFailure> failures;
};

struct AuditOptions {
    // Also run the witness search per state for each searchable criterion.
    bool with_search = false;
    SearchConfig search{.grid_resolution = 8, .refine_iters = 1};
    double tol = kViolationTol;
    int threads = 0; // 0 = hardware concurrency
};

// Thrown when any criterion flags a PPT state inside the exact PPT domain;
// carries the full report including the offending states and configs.
class AuditSoundnessError : public std::runtime_error {
  public:
    explicit AuditSoundnessError(AuditReport report);
    const AuditReport& report() const { return report_; }

  private:
    AuditReport report_;
};

// Evaluates every measurable criterion (and optionally the witness search)
// for each state at each config, cross-checking all violations against
// ppt_check. states and pairs run in parallel (index i uses pairs[i]);
// results merge in input order regardless of thread count.
AuditReport consistency_audit(const std::vector<DensityMatrix>& states,
                              const std::vector<ObservablePairSet>& pairs,
                              const std::vector<CriterionConfig>& configs,
                              const AuditOptions& opts = {});

} // namespace entwit
