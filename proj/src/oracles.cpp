#include "entwit/oracles.hpp"

#include <atomic>
#include <thread>

namespace entwit {

namespace {

constexpr double kNptTol = 1e-9;

bool in_exact_ppt_domain(Dims dims) {
    const int lo = std::min(dims.d1, dims.d2);
    const int hi = std::max(dims.d1, dims.d2);
    return lo == 2 && (hi == 2 || hi == 3);
}

} // namespace

OracleVerdict ppt_check(const DensityMatrix& rho) {
    const Matrix pt = partial_transpose(rho, 2);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(pt, Eigen::EigenvaluesOnly);
    OracleVerdict verdict;
    verdict.min_eigenvalue = solver.eigenvalues()(0);
    verdict.verdict = verdict.min_eigenvalue < -kNptTol ? PptVerdict::NPT : PptVerdict::PPT;
    verdict.exact_domain = in_exact_ppt_domain(rho.dims());
    return verdict;
}

AuditSoundnessError::AuditSoundnessError(AuditReport report)
    : std::runtime_error("consistency audit found " + std::to_string(report.failures.size()) +
                         " soundness failure(s)"),
      report_(std::move(report)) {}

namespace {

// Everything observed for one state, merged into the report in input order.
struct StateAudit {
    bool npt = false;
    std::map<CriterionId, CriterionTally> tallies;
    std::vector<SoundnessFailure> failures;
};

StateAudit audit_one_state(std::size_t index, const DensityMatrix& state,
                           const ObservablePairSet& pairs,
                           const std::vector<CriterionConfig>& configs,
                           const AuditOptions& opts) {
    StateAudit out;
    const OracleVerdict oracle = ppt_check(state);
    out.npt = oracle.verdict == PptVerdict::NPT;
    const bool ppt_is_conclusive = oracle.exact_domain;

    const auto record = [&](const CriterionVerdict& verdict, const CriterionConfig& cfg) {
        auto& tally = out.tallies[verdict.criterion];
        ++tally.checked;
        if (!verdict.violated) return;
        ++tally.violated;
        if (out.npt) {
            ++tally.sound;
        } else if (ppt_is_conclusive) {
            out.failures.push_back(SoundnessFailure{index, cfg, verdict, oracle});
        }
    };

    const BipartiteMoments moments(state, pairs);
    for (const auto& cfg : configs) {
        for (CriterionId id : {CriterionId::heisenberg, CriterionId::general_measurable,
                               CriterionId::sum, CriterionId::prl02_product}) {
            record(moments.evaluate(id, cfg, opts.tol), cfg);
        }
    }

    if (opts.with_search) {
        for (CriterionId id : {CriterionId::general_measurable, CriterionId::sum,
                               CriterionId::prl02_product}) {
            SearchConfig sc = opts.search;
            sc.criterion = id;
            sc.domain = ParameterDomain::discrete;
            const SearchResult result = optimize_violation(state, pairs, sc);
            record(result.verdict, result.best_config);
        }
    }
    return out;
}

} // namespace

AuditReport consistency_audit(const std::vector<DensityMatrix>& states,
                              const std::vector<ObservablePairSet>& pairs,
                              const std::vector<CriterionConfig>& configs,
                              const AuditOptions& opts) {
    if (states.size() != pairs.size()) {
        throw std::invalid_argument("audit needs one observable pair set per state");
    }

    std::vector<StateAudit> per_state(states.size());
    const unsigned workers =
        opts.threads > 0 ? static_cast<unsigned>(opts.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> cursor{0};
    const auto worker = [&]() {
        while (true) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= states.size()) break;
            per_state[i] = audit_one_state(i, states[i], pairs[i], configs, opts);
        }
    };
    if (workers <= 1 || states.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < workers; ++t) {
            threads.emplace_back(worker);
        }
        for (auto& t : threads) t.join();
    }

    AuditReport report;
    report.states_checked = states.size();
    for (const auto& audit : per_state) {
        if (audit.npt) ++report.npt_states;
        for (const auto& [id, tally] : audit.tallies) {
            auto& merged = report.tallies[id];
            merged.checked += tally.checked;
            merged.violated += tally.violated;
            merged.sound += tally.sound;
        }
        report.failures.insert(report.failures.end(), audit.failures.begin(),
                               audit.failures.end());
    }
    if (!report.failures.empty()) {
        throw AuditSoundnessError(std::move(report));
    }
    return report;
}

} // namespace entwit
