// Acceptance suite. Each numbered section prints one PASS/FAIL line; the
// process exits nonzero if any section fails. Criterion 9 drives the CLI
// binary named by the ENTWIT_CLI environment variable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "entwit/io.hpp"
#include "entwit/oracles.hpp"
#include "entwit/search.hpp"

using namespace entwit;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %-22s %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Campaign {
    SeparableEnsemble ensemble;
    DensityMatrix rho;
    ObservablePairSet pairs;
    CriterionConfig cfg;
};

Campaign make_campaign_case(Dims dims, std::uint64_t seed) {
    const int k = 1 + static_cast<int>(derive_seed(seed, 50) % 8);
    SeparableEnsemble e = random_product_ensemble(dims, k, seed);
    DensityMatrix rho = ensemble_to_density(e);
    Rng rng(derive_seed(seed, 51));
    ObservablePair pair1 = random_pair(dims.d1, rng);
    ObservablePair pair2 = random_pair(dims.d2, rng);
    CriterionConfig cfg;
    do {
        cfg.a1 = rng.uniform(-2.0, 2.0);
        cfg.a2 = rng.uniform(-2.0, 2.0);
        cfg.b1 = rng.uniform(-2.0, 2.0);
        cfg.b2 = rng.uniform(-2.0, 2.0);
    } while ((cfg.a1 == 0.0 && cfg.a2 == 0.0) || (cfg.b1 == 0.0 && cfg.b2 == 0.0));
    return {std::move(e), std::move(rho), {std::move(pair1), std::move(pair2)}, cfg};
}

constexpr std::uint64_t kTheoremSeed = 811;
constexpr int kTheoremPerDims = 1000;
const Dims kTheoremDims[] = {{2, 2}, {2, 3}, {3, 3}};

// 1. THEOREM SUITE and 2. CHAIN SUITE share the same seeded ensembles.
void run_theorem_and_chain() {
    const auto start = std::chrono::steady_clock::now();
    long theorem_bad = 0;
    long chain_bad = 0;
    double worst_slack = 1e300;
    std::uint64_t counter = 0;
    for (const Dims dims : kTheoremDims) {
        for (int i = 0; i < kTheoremPerDims; ++i) {
            const Campaign c = make_campaign_case(dims, derive_seed(kTheoremSeed, counter++));
            const OtildeBound ens = otilde_from_ensemble(c.ensemble, c.pairs, c.cfg);
            const CriterionVerdict v = product_criterion_check(c.rho, ens, c.pairs, c.cfg);
            worst_slack = std::min(worst_slack, v.lhs - v.bound);
            if (v.violated) ++theorem_bad;

            const OtildeBound strong =
                otilde_strong_from_ensemble(c.ensemble, c.pairs, c.cfg);
            const OtildeBound meas = otilde_measurable(c.rho, c.pairs, c.cfg);
            const BipartiteMoments moments(c.rho, c.pairs);
            const double heis = 0.5 * std::abs(c.cfg.a1 * c.cfg.b1 * moments.c1_mean() +
                                               c.cfg.a2 * c.cfg.b2 * moments.c2_mean());
            if (strong.otilde < ens.otilde - 1e-10) ++chain_bad;
            if (ens.otilde < meas.otilde - 1e-10) ++chain_bad;
            if (meas.otilde < heis - 1e-10) ++chain_bad;
            const double norms = moments.c1_norm() * moments.c2_norm();
            if (norms > 1e-12 &&
                ens.otilde1 * ens.otilde2 <
                    moments.c1c2_mean() * moments.c1c2_mean() / norms - 1e-10) {
                ++chain_bad;
            }
        }
    }
    const double elapsed = seconds_since(start);
    {
        std::ostringstream detail;
        detail << counter << " ensembles, worst slack " << worst_slack << ", "
               << theorem_bad << " violations, " << elapsed << " s";
        report(1, "theorem-suite", theorem_bad == 0 && worst_slack >= -1e-9 && elapsed < 60.0,
               detail.str());
    }
    {
        std::ostringstream detail;
        detail << chain_bad << " chain breaks over " << counter << " ensembles";
        report(2, "chain-suite", chain_bad == 0, detail.str());
    }
}

void run_implication_suite() {
    long sum_implications = 0;
    long prl02_implications = 0;
    long counterexamples = 0;
    long chain_checks = 0;
    long chain_breaks = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const Dims dims = i % 4 < 2 ? Dims{2, 2} : Dims{2, 3};
        const std::uint64_t seed = derive_seed(812, i);
        const bool separable = i % 2 != 0;
        const SeparableEnsemble ensemble = random_product_ensemble(
            dims, 1 + static_cast<int>(seed % 6), seed);
        const DensityMatrix rho =
            separable ? ensemble_to_density(ensemble) : random_density_matrix(dims, seed);
        Rng rng(derive_seed(813, i));
        const ObservablePairSet pairs{random_pair(dims.d1, rng), random_pair(dims.d2, rng)};
        const BipartiteMoments moments(rho, pairs);
        for (int c = 0; c < 100; ++c) {
            CriterionConfig cfg;
            do {
                cfg.a1 = rng.uniform(-2.0, 2.0);
                cfg.a2 = rng.uniform(-2.0, 2.0);
                cfg.b1 = rng.uniform(-2.0, 2.0);
                cfg.b2 = rng.uniform(-2.0, 2.0);
            } while ((cfg.a1 == 0.0 && cfg.a2 == 0.0) || (cfg.b1 == 0.0 && cfg.b2 == 0.0));
            const CriterionVerdict sum = moments.evaluate(CriterionId::sum, cfg);
            const CriterionVerdict general =
                moments.evaluate(CriterionId::general_measurable, cfg);
            const CriterionVerdict prl02 = moments.evaluate(CriterionId::prl02_product, cfg);
            if (sum.violated) {
                ++sum_implications;
                if (!general.violated) ++counterexamples;
            }
            if (prl02.violated) {
                ++prl02_implications;
                if (!general.violated) ++counterexamples;
            }
            if (separable) {
                // The chain behind the implication: the prl02 bound never
                // exceeds the squared ensemble O-tilde on separable states.
                const OtildeBound ens = otilde_from_ensemble(ensemble, pairs, cfg);
                ++chain_checks;
                if (prl02.bound > ens.otilde * ens.otilde + 1e-10) ++chain_breaks;
            }
        }
    }
    std::ostringstream detail;
    detail << counterexamples << " counterexamples (" << sum_implications
           << " sum violations, " << prl02_implications << " prl02 violations), "
           << chain_breaks << "/" << chain_checks << " bound-chain breaks";
    report(3, "implication-suite", counterexamples == 0 && chain_breaks == 0, detail.str());
}

void run_soundness_vs_ppt() {
    bool pass = true;
    std::ostringstream detail;

    std::vector<DensityMatrix> states;
    std::vector<ObservablePairSet> pairs;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const Dims dims = i < 500 ? Dims{2, 2} : Dims{2, 3};
        const std::uint64_t seed = derive_seed(814, i);
        if (i % 2 == 0) {
            states.push_back(ensemble_to_density(
                random_product_ensemble(dims, 1 + static_cast<int>(seed % 8), seed)));
        } else {
            states.push_back(random_density_matrix(dims, seed));
        }
        Rng rng(derive_seed(815, i));
        pairs.push_back({random_pair(dims.d1, rng), random_pair(dims.d2, rng)});
    }
    std::vector<CriterionConfig> configs;
    Rng cfg_rng(816);
    while (configs.size() < 20) {
        CriterionConfig cfg;
        cfg.a1 = cfg_rng.uniform(-2.0, 2.0);
        cfg.a2 = cfg_rng.uniform(-2.0, 2.0);
        cfg.b1 = cfg_rng.uniform(-2.0, 2.0);
        cfg.b2 = cfg_rng.uniform(-2.0, 2.0);
        if ((cfg.a1 == 0.0 && cfg.a2 == 0.0) || (cfg.b1 == 0.0 && cfg.b2 == 0.0)) continue;
        configs.push_back(cfg);
    }

    AuditOptions opts;
    opts.with_search = true;
    opts.search.grid_resolution = 8;
    opts.search.refine_iters = 1;
    long violations = 0;
    try {
        const AuditReport report_data = consistency_audit(states, pairs, configs, opts);
        for (const auto& [id, tally] : report_data.tallies) violations += tally.violated;
        detail << report_data.states_checked << " states (" << report_data.npt_states
               << " NPT), " << violations << " sound violations";
    } catch (const AuditSoundnessError& e) {
        pass = false;
        detail << e.report().failures.size() << " soundness failures";
    }

    const DensityMatrix singlet = bell_state(BellState::psi_minus);
    const ObservablePair xy{pauli_x(), pauli_y()};
    const CriterionVerdict v = prl02_product_check(singlet, {xy, xy}, {1, 1, 1, 1});
    if (std::abs(v.margin - 4.0) > 1e-9) {
        pass = false;
        detail << "; singlet prl02 margin " << v.margin;
    }
    const OracleVerdict oracle = ppt_check(singlet);
    if (std::abs(oracle.min_eigenvalue + 0.5) > 1e-12) {
        pass = false;
        detail << "; singlet PT eigenvalue " << oracle.min_eigenvalue;
    }
    report(4, "soundness-vs-ppt", pass, detail.str());
}

void run_werner_threshold() {
    // Bisection on the sign of the partial-transpose minimum eigenvalue.
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (ppt_check(werner_state(mid)).min_eigenvalue < 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const double threshold = 0.5 * (lo + hi);
    std::ostringstream detail;
    detail << "transition at p = " << threshold;
    report(5, "werner-threshold", std::abs(threshold - 1.0 / 3.0) <= 1e-9, detail.str());
}

void run_cv_closed_forms() {
    const CVConfig epr{1, -1, 1, 1};
    bool pass = true;
    std::ostringstream detail;

    const GaussianState tms = two_mode_squeezed(0.5);
    const CriterionVerdict product = cv_product_check(tms, epr);
    const CriterionVerdict sum = cv_sum_check(tms, epr);
    if (std::abs(product.lhs - std::exp(-2.0)) > 1e-12 || product.bound != 1.0 ||
        !product.violated) {
        pass = false;
    }
    if (std::abs(sum.lhs - 2.0 * std::exp(-1.0)) > 1e-12 || sum.bound != 2.0 ||
        !sum.violated) {
        pass = false;
    }
    detail << "tms lhs " << product.lhs << "/" << sum.lhs;

    const GaussianState vac = vacuum_state();
    const CriterionVerdict vac_product = cv_product_check(vac, epr);
    const CriterionVerdict vac_sum = cv_sum_check(vac, epr);
    if (std::abs(vac_product.lhs - vac_product.bound) > 1e-12 || vac_product.violated) {
        pass = false;
    }
    if (std::abs(vac_sum.lhs - vac_sum.bound) > 1e-12 || vac_sum.violated) pass = false;
    detail << ", vacuum saturation gaps " << vac_product.lhs - vac_product.bound << "/"
           << vac_sum.lhs - vac_sum.bound;
    report(6, "cv-closed-forms", pass, detail.str());
}

void run_gaussian_completeness() {
    const auto start = std::chrono::steady_clock::now();
    int mismatches = 0;
    int borderline = 0;
    int checked = 0;
    for (int ir = 0; ir < 10; ++ir) {
        for (int in = 0; in < 5; ++in) {
            const double r = 0.05 + (1.0 - 0.05) * ir / 9.0;
            const double n_th = 0.4 * in / 4.0;
            const GaussianState gs = two_mode_squeezed(r, n_th);
            const SimonVerdict oracle = simon_ppt_oracle(gs);
            SearchConfig sc;
            sc.domain = ParameterDomain::cv;
            sc.criterion = CriterionId::cv_product;
            sc.grid_resolution = 8;
            sc.refine_iters = 2;
            sc.seed = derive_seed(817, static_cast<std::uint64_t>(checked));
            const SearchResult result = optimize_cv(gs, sc);
            const bool search_entangled = result.best_margin > kViolationTol;
            ++checked;
            if (std::abs(oracle.min_symplectic_eig - 0.5) < 0.02) {
                ++borderline;
                continue;
            }
            if (search_entangled != oracle.entangled) ++mismatches;
        }
    }
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << checked << " states, " << mismatches << " mismatches, " << borderline
           << " borderline reported, " << elapsed << " s";
    report(7, "gaussian-completeness", mismatches == 0 && elapsed < 120.0, detail.str());
}

void run_envelope_geometry() {
    const auto points = boundary_envelope(1.0, 64, 0.25, 4.0);
    long grid_breaks = 0;
    long tangency_breaks = 0;
    for (const auto& p : points) {
        for (int ia = 1; ia <= 50; ++ia) {
            for (int ib = 1; ib <= 50; ++ib) {
                const double alpha = 10.0 * ia / 50.0;
                const double beta = 10.0 * ib / 50.0;
                const double slack = alpha * p.variance_u + beta * p.variance_v -
                                     2.0 * std::sqrt(alpha * beta);
                if (slack < -1e-9) ++grid_breaks;
            }
        }
        const double alpha = p.tangent_alpha_over_beta;
        const double gap =
            alpha * p.variance_u + p.variance_v - 2.0 * std::sqrt(alpha);
        if (std::abs(gap) > 1e-9) ++tangency_breaks;
    }
    std::ostringstream detail;
    detail << points.size() << " points vs 50x50 grid, " << grid_breaks << " grid breaks, "
           << tangency_breaks << " tangency breaks";
    report(8, "envelope-geometry", grid_breaks == 0 && tangency_breaks == 0, detail.str());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void run_determinism() {
    const char* cli = std::getenv("ENTWIT_CLI");
    if (cli == nullptr) {
        report(9, "determinism", false, "ENTWIT_CLI not set");
        return;
    }
    const auto dir = std::filesystem::temp_directory_path() / "entwit_acceptance";
    std::filesystem::create_directories(dir);
    const auto singlet_path = dir / "singlet.json";
    {
        std::ofstream out(singlet_path);
        out << io::to_json(bell_state(BellState::psi_minus)).dump(2) << '\n';
    }

    const auto run = [&](const std::string& args, const std::filesystem::path& out_path) {
        const std::string cmd = std::string("\"") + cli + "\" " + args + " > \"" +
                                out_path.string() + "\" 2>/dev/null";
        return std::system(cmd.c_str()) == 0;
    };

    bool pass = true;
    std::ostringstream detail;

    const std::string validate_args = "validate --dims 2x2 --n 50 --seed 123 --grid 6";
    if (!run(validate_args, dir / "validate_a.json") ||
        !run(validate_args, dir / "validate_b.json")) {
        pass = false;
        detail << "validate run failed; ";
    } else if (read_file(dir / "validate_a.json") != read_file(dir / "validate_b.json")) {
        pass = false;
        detail << "validate outputs differ; ";
    }
    const std::string search_args = "search --state \"" + singlet_path.string() +
                                    "\" --criterion prl02_product --grid 12 --refine 2 --seed 9";
    if (!run(search_args, dir / "search_a.json") || !run(search_args, dir / "search_b.json")) {
        pass = false;
        detail << "search run failed";
    } else if (read_file(dir / "search_a.json") != read_file(dir / "search_b.json")) {
        pass = false;
        detail << "search outputs differ";
    }
    if (pass) detail << "validate and search byte-identical across reruns";
    report(9, "determinism", pass, detail.str());
}

} // namespace

int main() {
    run_theorem_and_chain();
    run_implication_suite();
    run_soundness_vs_ppt();
    run_werner_threshold();
    run_cv_closed_forms();
    run_gaussian_completeness();
    run_envelope_geometry();
    run_determinism();
    std::printf("ACCEPTANCE: %d/9 passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
