#include "entwit/search.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "entwit/rng.hpp"

namespace entwit {

void SearchConfig::validate() const {
    if (grid_resolution < 4) {
        throw std::invalid_argument("grid_resolution must be >= 4");
    }
    if (refine_iters < 0) {
        throw std::invalid_argument("refine_iters must be >= 0");
    }
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;
constexpr int kGoldenIters = 20;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Scales a coefficient pair so the largest magnitude is 1; margins are then
// comparable across the whole scale-equivalence class (the convention the
// documented closed-form margins use).
void max_normalize(double& x, double& y) {
    const double scale = std::max(std::abs(x), std::abs(y));
    x /= scale;
    y /= scale;
}

CriterionConfig config_from_angles(double theta_a, double theta_b) {
    CriterionConfig cfg;
    cfg.a1 = std::cos(theta_a);
    cfg.a2 = std::sin(theta_a);
    cfg.b1 = std::cos(theta_b);
    cfg.b2 = std::sin(theta_b);
    max_normalize(cfg.a1, cfg.a2);
    max_normalize(cfg.b1, cfg.b2);
    return cfg;
}

struct DiscreteBest {
    double margin = -std::numeric_limits<double>::infinity();
    double theta_a = 0.0;
    double theta_b = 0.0;
    CriterionConfig config;
};

class DiscreteObjective {
  public:
    DiscreteObjective(const BipartiteMoments& moments, CriterionId criterion, DiscreteBest& best,
                      long& evaluations)
        : moments_(moments), criterion_(criterion), best_(best), evaluations_(evaluations) {}

    double operator()(double theta_a, double theta_b) const {
        const CriterionConfig cfg = config_from_angles(theta_a, theta_b);
        const double margin = moments_.evaluate(criterion_, cfg).margin;
        ++evaluations_;
        if (margin > best_.margin ||
            (margin == best_.margin &&
             (theta_a < best_.theta_a ||
              (theta_a == best_.theta_a && theta_b < best_.theta_b)))) {
            best_ = DiscreteBest{margin, theta_a, theta_b, cfg};
        }
        return margin;
    }

  private:
    const BipartiteMoments& moments_;
    CriterionId criterion_;
    DiscreteBest& best_;
    long& evaluations_;
};

// Golden-section maximization of f over [lo, hi]; the best point is tracked
// by the objective itself, so only the probing schedule matters here.
template <typename F>
void golden_max(F&& f, double lo, double hi) {
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < kGoldenIters; ++i) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kInvPhi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kInvPhi * (hi - lo);
            fd = f(d);
        }
    }
}

} // namespace

SearchResult optimize_violation(const DensityMatrix& rho, const ObservablePairSet& pairs,
                                const SearchConfig& sc) {
    sc.validate();
    if (sc.domain != ParameterDomain::discrete) {
        throw std::invalid_argument("optimize_violation expects the discrete parameter domain");
    }
    switch (sc.criterion) {
        case CriterionId::heisenberg:
        case CriterionId::general_measurable:
        case CriterionId::sum:
        case CriterionId::prl02_product:
            break;
        default:
            throw std::invalid_argument(
                "criterion is not searchable from a bare state: " +
                std::string(criterion_name(sc.criterion)));
    }

    const BipartiteMoments moments(rho, pairs);
    DiscreteBest best;
    long evaluations = 0;
    const DiscreteObjective objective(moments, sc.criterion, best, evaluations);

    // Nested scan: every resolution from 4 up to the requested one, each
    // followed by its own refinement; enlarging the budget can then only add
    // candidates, which keeps best_margin monotone in both knobs.
    for (int g = 4; g <= sc.grid_resolution; ++g) {
        DiscreteBest grid_best;
        for (int ia = 0; ia < g; ++ia) {
            for (int ib = 0; ib < g; ++ib) {
                const double theta_a = kTwoPi * ia / g;
                const double theta_b = kTwoPi * ib / g;
                const double margin = objective(theta_a, theta_b);
                if (margin > grid_best.margin) {
                    grid_best = DiscreteBest{margin, theta_a, theta_b, {}};
                }
            }
        }
        double ta = grid_best.theta_a;
        double tb = grid_best.theta_b;
        double h = kTwoPi / g;
        for (int round = 0; round < sc.refine_iters; ++round) {
            double line_best_margin = -std::numeric_limits<double>::infinity();
            double line_best = ta;
            golden_max(
                [&](double x) {
                    const double m = objective(x, tb);
                    if (m > line_best_margin) {
                        line_best_margin = m;
                        line_best = x;
                    }
                    return m;
                },
                ta - h, ta + h);
            ta = line_best;
            line_best_margin = -std::numeric_limits<double>::infinity();
            line_best = tb;
            golden_max(
                [&](double x) {
                    const double m = objective(ta, x);
                    if (m > line_best_margin) {
                        line_best_margin = m;
                        line_best = x;
                    }
                    return m;
                },
                tb - h, tb + h);
            tb = line_best;
            h *= 0.5;
        }
    }

    SearchResult result;
    result.best_config = best.config;
    result.best_margin = best.margin;
    result.evaluations = evaluations;
    result.verdict = moments.evaluate(sc.criterion, best.config);
    return result;
}

namespace {

Eigen::Vector4d sphere_point(double phi1, double phi2, double phi3) {
    return {std::cos(phi1), std::sin(phi1) * std::cos(phi2),
            std::sin(phi1) * std::sin(phi2) * std::cos(phi3),
            std::sin(phi1) * std::sin(phi2) * std::sin(phi3)};
}

CVConfig cv_config_from_angles(const std::array<double, 6>& angles) {
    const Eigen::Vector4d a = sphere_point(angles[0], angles[1], angles[2]);
    const Eigen::Vector4d b = sphere_point(angles[3], angles[4], angles[5]);
    const double a_scale = a.cwiseAbs().maxCoeff();
    const double b_scale = b.cwiseAbs().maxCoeff();
    CVConfig cfg;
    cfg.a1 = a(0) / a_scale;
    cfg.a2 = a(1) / a_scale;
    cfg.a3 = a(2) / a_scale;
    cfg.a4 = a(3) / a_scale;
    cfg.b1 = b(0) / b_scale;
    cfg.b2 = b(1) / b_scale;
    cfg.b3 = b(2) / b_scale;
    cfg.b4 = b(3) / b_scale;
    return cfg;
}

struct CVBest {
    double margin = -std::numeric_limits<double>::infinity();
    std::array<double, 6> angles{};
    CVConfig config;
    bool from_angles = false;
};

// Kronecker (R_d) low-discrepancy sequence in [0,1)^6, offset by the seed.
class KroneckerSequence {
  public:
    explicit KroneckerSequence(std::uint64_t seed) {
        // gamma solves x^7 = x + 1; alpha_j = gamma^-(j+1).
        const double gamma = 1.1127756842787055;
        double a = 1.0;
        for (int j = 0; j < 6; ++j) {
            a /= gamma;
            alpha_[j] = a;
            offset_[j] =
                static_cast<double>(derive_seed(seed, static_cast<std::uint64_t>(j)) >> 11) *
                0x1.0p-53;
        }
    }

    std::array<double, 6> next() {
        ++index_;
        std::array<double, 6> x{};
        for (int j = 0; j < 6; ++j) {
            double v = offset_[j] + index_ * alpha_[j];
            x[j] = v - std::floor(v);
        }
        return x;
    }

  private:
    std::array<double, 6> alpha_{};
    std::array<double, 6> offset_{};
    long index_ = 0;
};

} // namespace

SearchResult optimize_cv(const GaussianState& gs, const SearchConfig& sc) {
    sc.validate();
    if (sc.domain != ParameterDomain::cv) {
        throw std::invalid_argument("optimize_cv expects the cv parameter domain");
    }
    if (sc.criterion != CriterionId::cv_product && sc.criterion != CriterionId::cv_sum) {
        throw std::invalid_argument("optimize_cv supports cv_product and cv_sum only");
    }

    CVBest best;
    long evaluations = 0;
    const auto evaluate_config = [&](const CVConfig& cfg) {
        const CriterionVerdict verdict = sc.criterion == CriterionId::cv_product
                                             ? cv_product_check(gs, cfg)
                                             : cv_sum_check(gs, cfg);
        ++evaluations;
        return verdict.margin;
    };
    const auto consider_angles = [&](const std::array<double, 6>& angles) {
        const CVConfig cfg = cv_config_from_angles(angles);
        const double margin = evaluate_config(cfg);
        if (margin > best.margin) {
            best = CVBest{margin, angles, cfg, true};
        }
        return margin;
    };

    // Canonical EPR-type candidates (the data-sheet configs every search
    // should at least reach).
    for (double a2 : {-1.0, 1.0}) {
        for (double b2 : {-1.0, 1.0}) {
            CVConfig cfg;
            cfg.a1 = 1.0;
            cfg.a2 = a2;
            cfg.b1 = 1.0;
            cfg.b2 = b2;
            const double margin = evaluate_config(cfg);
            if (margin > best.margin) {
                best = CVBest{margin, {}, cfg, false};
            }
        }
    }

    const double pi = std::numbers::pi;
    const auto refine_from = [&](CVBest start, double h) {
        if (!start.from_angles) return;
        std::array<double, 6> current = start.angles;
        double width = h;
        for (int round = 0; round < sc.refine_iters; ++round) {
            for (int coord = 0; coord < 6; ++coord) {
                double line_best_margin = -std::numeric_limits<double>::infinity();
                double line_best = current[coord];
                golden_max(
                    [&](double x) {
                        std::array<double, 6> probe = current;
                        probe[coord] = x;
                        const double m = consider_angles(probe);
                        if (m > line_best_margin) {
                            line_best_margin = m;
                            line_best = x;
                        }
                        return m;
                    },
                    current[coord] - width, current[coord] + width);
                current[coord] = line_best;
            }
            width *= 0.5;
        }
    };

    for (int g = 4; g <= sc.grid_resolution; ++g) {
        KroneckerSequence seq(derive_seed(sc.seed, static_cast<std::uint64_t>(g)));
        CVBest stage_best;
        const long samples = static_cast<long>(g) * g * g;
        for (long i = 0; i < samples; ++i) {
            const auto x = seq.next();
            const std::array<double, 6> angles = {x[0] * pi,   x[1] * pi, x[2] * kTwoPi,
                                                  x[3] * pi,   x[4] * pi, x[5] * kTwoPi};
            const CVConfig cfg = cv_config_from_angles(angles);
            const double margin = evaluate_config(cfg);
            if (margin > best.margin) {
                best = CVBest{margin, angles, cfg, true};
            }
            if (margin > stage_best.margin) {
                stage_best = CVBest{margin, angles, cfg, true};
            }
        }
        refine_from(stage_best, pi / g);
    }

    SearchResult result;
    result.best_config = best.config;
    result.best_margin = best.margin;
    result.evaluations = evaluations;
    result.verdict = sc.criterion == CriterionId::cv_product
                         ? cv_product_check(gs, best.config)
                         : cv_sum_check(gs, best.config);
    return result;
}

} // namespace entwit
