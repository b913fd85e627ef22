#pragma once

#include <string_view>
#include <vector>

#include "entwit/states.hpp"

namespace entwit {

enum class CriterionId {
    heisenberg,
    general_ensemble,
    general_measurable,
    general_strong,
    sum,
    prl02_product,
    linear_family,
    cv_product,
    cv_sum,
};

std::string_view criterion_name(CriterionId id);
CriterionId criterion_from_name(std::string_view name);

enum class OtildeSource { ensemble, measurable, strong };

std::string_view otilde_source_name(OtildeSource source);

// The separable-state bound O-tilde and its per-subsystem pieces, assembled
// as O = (|a1 b1| O1 + |a2 b2| O2) / 2. Which expectation feeds O_j depends
// on the source: the decomposition-dependent ensemble value, the measurable
// lower bound |<C_j>|, or the strong-uncertainty variant.
struct OtildeBound {
    double otilde = 0.0;
    double otilde1 = 0.0;
    double otilde2 = 0.0;
    OtildeSource source = OtildeSource::measurable;
};

struct CriterionVerdict {
    CriterionId criterion = CriterionId::heisenberg;
    double lhs = 0.0;
    double bound = 0.0;
    double margin = 0.0; // bound - lhs; positive margin beyond tol => violated
    bool violated = false;
};

// Cached first/second moments of one (state, observable pairs) combination.
// Every criterion bound in this module is a few scalar operations on these
// numbers, so batch evaluation over many configs (the witness search, the
// validation audit) pays the O(d^3) traces once.
class BipartiteMoments {
  public:
    BipartiteMoments(const DensityMatrix& rho, const ObservablePairSet& pairs);

    double variance_u(double a1, double a2) const;
    double variance_v(double b1, double b2) const;

    double c1_mean() const { return c1_mean_; }
    double c2_mean() const { return c2_mean_; }
    double c1c2_mean() const { return c1c2_mean_; }
    double c1_norm() const { return c1_norm_; }
    double c2_norm() const { return c2_norm_; }

    // Evaluates one of the state-only criteria: heisenberg,
    // general_measurable, sum or prl02_product.
    CriterionVerdict evaluate(CriterionId id, const CriterionConfig& cfg,
                              double tol = kViolationTol) const;

  private:
    // First and second moments of r1 (x) I, I (x) r2 (u side) and of
    // s1 (x) I, I (x) s2 (v side); *_cross holds <X1 (x) X2>.
    double u_mean1_, u_mean2_, u_sq1_, u_sq2_, u_cross_;
    double v_mean1_, v_mean2_, v_sq1_, v_sq2_, v_cross_;
    double c1_mean_, c2_mean_, c1c2_mean_, c1_norm_, c2_norm_;
};

// Robertson bound, valid for every quantum state:
// var(u) var(v) >= |a1 b1 <C1> + a2 b2 <C2>|^2 / 4.
// A violation beyond tol cannot come from physics and raises
// std::logic_error instead of producing a verdict.
CriterionVerdict heisenberg_bound(const DensityMatrix& rho, const ObservablePairSet& pairs,
                                  const CriterionConfig& cfg, double tol = kViolationTol);

// O_j = Sum_k w_k |<C_j>_k| over the ensemble's own factors.
OtildeBound otilde_from_ensemble(const SeparableEnsemble& e, const ObservablePairSet& pairs,
                                 const CriterionConfig& cfg);

// Strong-uncertainty variant: O_j = 2 Sum_k w_k |Tr[dr ds rho_kj]| with the
// deltas taken about each term's own means (modulus of the full complex
// expectation).
OtildeBound otilde_strong_from_ensemble(const SeparableEnsemble& e,
                                        const ObservablePairSet& pairs,
                                        const CriterionConfig& cfg);

// Measurable, decomposition-independent lower bound: O_j = |<C_j>| on the
// reduced state of subsystem j.
OtildeBound otilde_measurable(const DensityMatrix& rho, const ObservablePairSet& pairs,
                              const CriterionConfig& cfg);

// Separable states obey var(u) var(v) >= O-tilde^2. Violation certifies
// entanglement when the supplied O-tilde is a valid lower bound for rho
// (measurable source, or an ensemble that actually decomposes rho).
CriterionVerdict product_criterion_check(const DensityMatrix& rho, const OtildeBound& otilde,
                                         const ObservablePairSet& pairs,
                                         const CriterionConfig& cfg,
                                         double tol = kViolationTol);

// var(u) + var(v) >= |a1 b1||<C1>| + |a2 b2||<C2>|.
CriterionVerdict sum_criterion_check(const DensityMatrix& rho, const ObservablePairSet& pairs,
                                     const CriterionConfig& cfg, double tol = kViolationTol);

// var(u) var(v) >= |a1 a2 b1 b2| |<C1 (x) C2>|^2 / (||C1|| ||C2||).
CriterionVerdict prl02_product_check(const DensityMatrix& rho, const ObservablePairSet& pairs,
                                     const CriterionConfig& cfg, double tol = kViolationTol);

// One member of the linear family: alpha var(u) + beta var(v) >=
// 2 sqrt(alpha beta) O-tilde, for nonnegative alpha, beta.
CriterionVerdict linear_family_check(const DensityMatrix& rho, const ObservablePairSet& pairs,
                                     const CriterionConfig& cfg, double alpha, double beta,
                                     const OtildeBound& otilde, double tol = kViolationTol);

struct EnvelopePoint {
    double variance_u = 0.0;
    double variance_v = 0.0;
    // alpha/beta of the linear-family line tangent at this point.
    double tangent_alpha_over_beta = 0.0;
};

// Samples the boundary hyperbola var_u var_v = O-tilde^2 over
// var_u in [lo, hi] (geometric spacing), annotating each point with the
// tangent line's alpha/beta ratio. O-tilde = 0 degenerates to var_v = 0.
std::vector<EnvelopePoint> boundary_envelope(double otilde, int n_points, double lo, double hi);

} // namespace entwit
