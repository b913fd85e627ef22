#include "entwit/criteria.hpp"

#include <cmath>
#include <string>

namespace entwit {

namespace {

double real_trace_product(const Matrix& a, const Matrix& b) {
    return (a.transpose().cwiseProduct(b)).sum().real();
}

Complex complex_trace_product(const Matrix& a, const Matrix& b) {
    return (a.transpose().cwiseProduct(b)).sum();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const Eigen::Index ar = a.rows(), ac = a.cols();
    const Eigen::Index br = b.rows(), bc = b.cols();
    Matrix out(ar * br, ac * bc);
    for (Eigen::Index i = 0; i < ar; ++i) {
        for (Eigen::Index j = 0; j < ac; ++j) {
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
        }
    }
    return out;
}

double clamp_variance(double var) {
    return var < 0.0 ? 0.0 : var;
}

void check_pair_dims(const DensityMatrix& rho, const ObservablePairSet& pairs) {
    if (pairs.pair1.dim() != rho.dims().d1 || pairs.pair2.dim() != rho.dims().d2) {
        throw std::invalid_argument("observable pairs do not match the state's subsystems");
    }
}

} // namespace

std::string_view criterion_name(CriterionId id) {
    switch (id) {
        case CriterionId::heisenberg: return "heisenberg";
        case CriterionId::general_ensemble: return "general_ensemble";
        case CriterionId::general_measurable: return "general_measurable";
        case CriterionId::general_strong: return "general_strong";
        case CriterionId::sum: return "sum";
        case CriterionId::prl02_product: return "prl02_product";
        case CriterionId::linear_family: return "linear_family";
        case CriterionId::cv_product: return "cv_product";
        case CriterionId::cv_sum: return "cv_sum";
    }
    throw std::logic_error("unknown criterion id");
}

CriterionId criterion_from_name(std::string_view name) {
    for (CriterionId id :
         {CriterionId::heisenberg, CriterionId::general_ensemble, CriterionId::general_measurable,
          CriterionId::general_strong, CriterionId::sum, CriterionId::prl02_product,
          CriterionId::linear_family, CriterionId::cv_product, CriterionId::cv_sum}) {
        if (criterion_name(id) == name) return id;
    }
    throw std::invalid_argument("unknown criterion name: " + std::string(name));
}

std::string_view otilde_source_name(OtildeSource source) {
    switch (source) {
        case OtildeSource::ensemble: return "ensemble";
        case OtildeSource::measurable: return "measurable";
        case OtildeSource::strong: return "strong";
    }
    throw std::logic_error("unknown otilde source");
}

BipartiteMoments::BipartiteMoments(const DensityMatrix& rho, const ObservablePairSet& pairs) {
    check_pair_dims(rho, pairs);
    const auto [d1, d2] = rho.dims();
    const Matrix& m = rho.entries();
    const Matrix i1 = Matrix::Identity(d1, d1);
    const Matrix i2 = Matrix::Identity(d2, d2);

    const Matrix& r1 = pairs.pair1.r.entries();
    const Matrix& s1 = pairs.pair1.s.entries();
    const Matrix& r2 = pairs.pair2.r.entries();
    const Matrix& s2 = pairs.pair2.s.entries();

    const DensityMatrix red1 = reduce(rho, 1);
    const DensityMatrix red2 = reduce(rho, 2);
    const Matrix& m1 = red1.entries();
    const Matrix& m2 = red2.entries();

    // Single-subsystem moments only need the reduced states.
    u_mean1_ = real_trace_product(r1, m1);
    u_mean2_ = real_trace_product(r2, m2);
    u_sq1_ = real_trace_product(r1 * r1, m1);
    u_sq2_ = real_trace_product(r2 * r2, m2);
    u_cross_ = real_trace_product(kron(r1, r2), m);

    v_mean1_ = real_trace_product(s1, m1);
    v_mean2_ = real_trace_product(s2, m2);
    v_sq1_ = real_trace_product(s1 * s1, m1);
    v_sq2_ = real_trace_product(s2 * s2, m2);
    v_cross_ = real_trace_product(kron(s1, s2), m);

    const HermitianOperator c1 = commutator_obs(pairs.pair1);
    const HermitianOperator c2 = commutator_obs(pairs.pair2);
    c1_mean_ = real_trace_product(c1.entries(), m1);
    c2_mean_ = real_trace_product(c2.entries(), m2);
    c1c2_mean_ = real_trace_product(kron(c1.entries(), c2.entries()), m);
    c1_norm_ = op_norm(c1);
    c2_norm_ = op_norm(c2);
}

double BipartiteMoments::variance_u(double a1, double a2) const {
    const double mean = a1 * u_mean1_ + a2 * u_mean2_;
    const double second = a1 * a1 * u_sq1_ + a2 * a2 * u_sq2_ + 2.0 * a1 * a2 * u_cross_;
    return clamp_variance(second - mean * mean);
}

double BipartiteMoments::variance_v(double b1, double b2) const {
    const double mean = b1 * v_mean1_ + b2 * v_mean2_;
    const double second = b1 * b1 * v_sq1_ + b2 * b2 * v_sq2_ + 2.0 * b1 * b2 * v_cross_;
    return clamp_variance(second - mean * mean);
}

CriterionVerdict BipartiteMoments::evaluate(CriterionId id, const CriterionConfig& cfg,
                                            double tol) const {
    cfg.validate();
    const double var_u = variance_u(cfg.a1, cfg.a2);
    const double var_v = variance_v(cfg.b1, cfg.b2);

    CriterionVerdict verdict;
    verdict.criterion = id;
    switch (id) {
        case CriterionId::heisenberg: {
            verdict.lhs = var_u * var_v;
            const double commutator = cfg.a1 * cfg.b1 * c1_mean_ + cfg.a2 * cfg.b2 * c2_mean_;
            verdict.bound = commutator * commutator / 4.0;
            break;
        }
        case CriterionId::general_measurable: {
            verdict.lhs = var_u * var_v;
            const double otilde = 0.5 * (std::abs(cfg.a1 * cfg.b1) * std::abs(c1_mean_) +
                                         std::abs(cfg.a2 * cfg.b2) * std::abs(c2_mean_));
            verdict.bound = otilde * otilde;
            break;
        }
        case CriterionId::sum: {
            verdict.lhs = var_u + var_v;
            verdict.bound = std::abs(cfg.a1 * cfg.b1) * std::abs(c1_mean_) +
                            std::abs(cfg.a2 * cfg.b2) * std::abs(c2_mean_);
            break;
        }
        case CriterionId::prl02_product: {
            verdict.lhs = var_u * var_v;
            const double norms = c1_norm_ * c2_norm_;
            verdict.bound = norms < 1e-300
                                ? 0.0
                                : std::abs(cfg.a1 * cfg.a2 * cfg.b1 * cfg.b2) *
                                      c1c2_mean_ * c1c2_mean_ / norms;
            break;
        }
        default:
            throw std::invalid_argument("criterion requires more context than a state");
    }
    verdict.margin = verdict.bound - verdict.lhs;
    verdict.violated = verdict.lhs < verdict.bound - tol;
    if (id == CriterionId::heisenberg && verdict.violated) {
        throw std::logic_error(
            "uncertainty principle violated numerically; implementation is corrupted "
            "(lhs " + std::to_string(verdict.lhs) + ", bound " + std::to_string(verdict.bound) +
            ")");
    }
    return verdict;
}

CriterionVerdict heisenberg_bound(const DensityMatrix& rho, const ObservablePairSet& pairs,
                                  const CriterionConfig& cfg, double tol) {
    return BipartiteMoments(rho, pairs).evaluate(CriterionId::heisenberg, cfg, tol);
}

namespace {

OtildeBound assemble_otilde(double otilde1, double otilde2, const CriterionConfig& cfg,
                            OtildeSource source) {
    OtildeBound b;
    b.otilde1 = otilde1;
    b.otilde2 = otilde2;
    b.otilde = 0.5 * (std::abs(cfg.a1 * cfg.b1) * otilde1 + std::abs(cfg.a2 * cfg.b2) * otilde2);
    b.source = source;
    return b;
}

void check_ensemble_pairs(const SeparableEnsemble& e, const ObservablePairSet& pairs) {
    if (pairs.pair1.dim() != e.dims().d1 || pairs.pair2.dim() != e.dims().d2) {
        throw std::invalid_argument("observable pairs do not match the ensemble's subsystems");
    }
}

} // namespace

OtildeBound otilde_from_ensemble(const SeparableEnsemble& e, const ObservablePairSet& pairs,
                                 const CriterionConfig& cfg) {
    cfg.validate();
    check_ensemble_pairs(e, pairs);
    const Matrix c1 = commutator_obs(pairs.pair1).entries();
    const Matrix c2 = commutator_obs(pairs.pair2).entries();
    double o1 = 0.0, o2 = 0.0;
    for (const auto& t : e.terms()) {
        o1 += t.weight * std::abs(real_trace_product(c1, t.rho1.entries()));
        o2 += t.weight * std::abs(real_trace_product(c2, t.rho2.entries()));
    }
    return assemble_otilde(o1, o2, cfg, OtildeSource::ensemble);
}

OtildeBound otilde_strong_from_ensemble(const SeparableEnsemble& e,
                                        const ObservablePairSet& pairs,
                                        const CriterionConfig& cfg) {
    cfg.validate();
    check_ensemble_pairs(e, pairs);
    double o1 = 0.0, o2 = 0.0;
    for (const auto& t : e.terms()) {
        // |<dr ds>| per factor, with the deltas about this term's means:
        // Tr[r s rho] - <r><s>.
        const auto term_value = [](const ObservablePair& p, const Matrix& rho) {
            const double r_mean = real_trace_product(p.r.entries(), rho);
            const double s_mean = real_trace_product(p.s.entries(), rho);
            const Complex rs = complex_trace_product(p.r.entries() * p.s.entries(), rho);
            return std::abs(rs - Complex(r_mean * s_mean, 0.0));
        };
        o1 += 2.0 * t.weight * term_value(pairs.pair1, t.rho1.entries());
        o2 += 2.0 * t.weight * term_value(pairs.pair2, t.rho2.entries());
    }
    return assemble_otilde(o1, o2, cfg, OtildeSource::strong);
}

OtildeBound otilde_measurable(const DensityMatrix& rho, const ObservablePairSet& pairs,
                              const CriterionConfig& cfg) {
    cfg.validate();
    check_pair_dims(rho, pairs);
    const Matrix c1 = commutator_obs(pairs.pair1).entries();
    const Matrix c2 = commutator_obs(pairs.pair2).entries();
    const double o1 = std::abs(real_trace_product(c1, reduce(rho, 1).entries()));
    const double o2 = std::abs(real_trace_product(c2, reduce(rho, 2).entries()));
    return assemble_otilde(o1, o2, cfg, OtildeSource::measurable);
}

namespace {

CriterionId criterion_for_source(OtildeSource source) {
    switch (source) {
        case OtildeSource::ensemble: return CriterionId::general_ensemble;
        case OtildeSource::measurable: return CriterionId::general_measurable;
        case OtildeSource::strong: return CriterionId::general_strong;
    }
    throw std::logic_error("unknown otilde source");
}

} // namespace

CriterionVerdict product_criterion_check(const DensityMatrix& rho, const OtildeBound& otilde,
                                         const ObservablePairSet& pairs,
                                         const CriterionConfig& cfg, double tol) {
    cfg.validate();
    const BipartiteMoments moments(rho, pairs);
    CriterionVerdict verdict;
    verdict.criterion = criterion_for_source(otilde.source);
    verdict.lhs = moments.variance_u(cfg.a1, cfg.a2) * moments.variance_v(cfg.b1, cfg.b2);
    verdict.bound = otilde.otilde * otilde.otilde;
    verdict.margin = verdict.bound - verdict.lhs;
    verdict.violated = verdict.lhs < verdict.bound - tol;
    return verdict;
}

CriterionVerdict sum_criterion_check(const DensityMatrix& rho, const ObservablePairSet& pairs,
                                     const CriterionConfig& cfg, double tol) {
    return BipartiteMoments(rho, pairs).evaluate(CriterionId::sum, cfg, tol);
}

CriterionVerdict prl02_product_check(const DensityMatrix& rho, const ObservablePairSet& pairs,
                                     const CriterionConfig& cfg, double tol) {
    return BipartiteMoments(rho, pairs).evaluate(CriterionId::prl02_product, cfg, tol);
}

CriterionVerdict linear_family_check(const DensityMatrix& rho, const ObservablePairSet& pairs,
                                     const CriterionConfig& cfg, double alpha, double beta,
                                     const OtildeBound& otilde, double tol) {
    if (alpha < 0.0 || beta < 0.0) {
        throw std::invalid_argument("alpha and beta must be nonnegative");
    }
    cfg.validate();
    const BipartiteMoments moments(rho, pairs);
    CriterionVerdict verdict;
    verdict.criterion = CriterionId::linear_family;
    verdict.lhs = alpha * moments.variance_u(cfg.a1, cfg.a2) +
                  beta * moments.variance_v(cfg.b1, cfg.b2);
    verdict.bound = 2.0 * std::sqrt(alpha * beta) * otilde.otilde;
    verdict.margin = verdict.bound - verdict.lhs;
    verdict.violated = verdict.lhs < verdict.bound - tol;
    return verdict;
}

std::vector<EnvelopePoint> boundary_envelope(double otilde, int n_points, double lo, double hi) {
    if (otilde < 0.0) {
        throw std::invalid_argument("otilde must be nonnegative");
    }
    if (n_points < 1) {
        throw std::invalid_argument("n_points must be >= 1");
    }
    if (lo <= 0.0 || hi < lo) {
        throw std::invalid_argument("range must satisfy 0 < lo <= hi");
    }
    std::vector<EnvelopePoint> points;
    points.reserve(static_cast<std::size_t>(n_points));
    const double ratio = hi / lo;
    for (int i = 0; i < n_points; ++i) {
        const double frac = n_points == 1 ? 0.0 : static_cast<double>(i) / (n_points - 1);
        EnvelopePoint p;
        p.variance_u = lo * std::pow(ratio, frac);
        p.variance_v = otilde * otilde / p.variance_u;
        p.tangent_alpha_over_beta = p.variance_v / p.variance_u;
        points.push_back(p);
    }
    return points;
}

} // namespace entwit
