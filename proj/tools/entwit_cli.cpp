// Command-line surface: check states against the criteria, search witness
// coefficients, run the seeded validation campaign, emit boundary-curve data.
//
// Exit codes: 0 = ran to completion (verdicts are data, not exit codes),
// 1 = validation campaign found a soundness failure, 2 = invalid input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entwit/io.hpp"

namespace {

using entwit::io::json;

enum class InputKind { density, ensemble, gaussian };

InputKind detect_kind(const json& j) {
    if (j.contains("terms")) return InputKind::ensemble;
    if (j.contains("cov") || j.contains("mean")) return InputKind::gaussian;
    return InputKind::density;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open file: " + path);
    }
    // nlohmann reports parse failures with line/column positions.
    return json::parse(in);
}

double verdict_tolerance() {
    if (const char* env = std::getenv("ENTWIT_TOLERANCE")) {
        char* end = nullptr;
        const double tol = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(tol >= 0.0)) {
            throw std::invalid_argument("ENTWIT_TOLERANCE must be a nonnegative number");
        }
        return tol;
    }
    return entwit::kViolationTol;
}

entwit::Dims parse_dims(const std::string& text) {
    const auto sep = text.find('x');
    if (sep == std::string::npos) {
        throw std::invalid_argument("--dims expects the form D1xD2, e.g. 2x2");
    }
    const int d1 = std::stoi(text.substr(0, sep));
    const int d2 = std::stoi(text.substr(sep + 1));
    if (d1 < 2 || d2 < 2) {
        throw std::invalid_argument("--dims components must be >= 2");
    }
    return {d1, d2};
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto sep = text.find(':');
    if (sep == std::string::npos) {
        throw std::invalid_argument("--range expects the form LO:HI");
    }
    return {std::stod(text.substr(0, sep)), std::stod(text.substr(sep + 1))};
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string::npos ? text.size() : comma;
        if (end > start) out.push_back(text.substr(start, end - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

entwit::ObservablePairSet default_pauli_pairs(entwit::Dims dims) {
    if (dims.d1 != 2 || dims.d2 != 2) {
        throw std::invalid_argument(
            "no --observables given and the state is not two-qubit; the built-in default "
            "pairs are sigma_x/sigma_y per qubit");
    }
    entwit::ObservablePair pair(entwit::pauli_x(), entwit::pauli_y());
    return {pair, pair};
}

struct CheckArgs {
    std::string state_path;
    std::string observables_path;
    std::string config_path;
    std::string criteria = "all";
    std::string format = "json";
};

int run_check(const CheckArgs& args) {
    const double tol = verdict_tolerance();
    const json state_json = load_json(args.state_path);
    const InputKind kind = detect_kind(state_json);

    entwit::CriterionConfig cfg;
    double alpha = 1.0, beta = 1.0;
    if (!args.config_path.empty()) {
        const json config_json = load_json(args.config_path);
        cfg = entwit::io::config_from_json(config_json);
        if (config_json.contains("alpha")) alpha = config_json.at("alpha").get<double>();
        if (config_json.contains("beta")) beta = config_json.at("beta").get<double>();
    } else {
        cfg.a1 = cfg.a2 = cfg.b1 = cfg.b2 = 1.0;
    }

    std::vector<entwit::CriterionId> requested;
    const bool all = args.criteria == "all";
    if (!all) {
        for (const auto& name : split_list(args.criteria)) {
            requested.push_back(entwit::criterion_from_name(name));
        }
        if (requested.empty()) {
            throw std::invalid_argument("--criteria list is empty");
        }
    }

    std::vector<std::pair<entwit::CriterionVerdict, entwit::CriterionConfig>> verdicts;
    std::string kind_name;

    if (kind == InputKind::gaussian) {
        kind_name = "gaussian";
        const entwit::GaussianState gs = entwit::io::gaussian_from_json(state_json);
        std::vector<entwit::CriterionId> list =
            all ? std::vector<entwit::CriterionId>{entwit::CriterionId::cv_product,
                                                   entwit::CriterionId::cv_sum}
                : requested;
        for (entwit::CriterionId id : list) {
            switch (id) {
                case entwit::CriterionId::cv_product:
                    verdicts.emplace_back(entwit::cv_product_check(gs, cfg, tol), cfg);
                    break;
                case entwit::CriterionId::cv_sum:
                    verdicts.emplace_back(entwit::cv_sum_check(gs, cfg, tol), cfg);
                    break;
                default:
                    throw std::invalid_argument(
                        std::string(entwit::criterion_name(id)) +
                        " does not apply to a Gaussian state file");
            }
        }
    } else {
        std::optional<entwit::SeparableEnsemble> ensemble;
        std::optional<entwit::DensityMatrix> rho;
        if (kind == InputKind::ensemble) {
            kind_name = "ensemble";
            ensemble = entwit::io::ensemble_from_json(state_json);
            rho = entwit::ensemble_to_density(*ensemble);
        } else {
            kind_name = "density";
            rho = entwit::io::density_from_json(state_json);
        }
        if (args.observables_path.empty()) {
            throw std::invalid_argument("--observables is required for discrete-variable input");
        }
        const entwit::ObservablePairSet pairs =
            entwit::io::pairs_from_json(load_json(args.observables_path));

        std::vector<entwit::CriterionId> list;
        if (all) {
            list = {entwit::CriterionId::heisenberg, entwit::CriterionId::general_measurable,
                    entwit::CriterionId::sum, entwit::CriterionId::prl02_product,
                    entwit::CriterionId::linear_family};
            if (ensemble) {
                list.push_back(entwit::CriterionId::general_ensemble);
                list.push_back(entwit::CriterionId::general_strong);
            }
        } else {
            list = requested;
        }
        for (entwit::CriterionId id : list) {
            switch (id) {
                case entwit::CriterionId::heisenberg:
                    verdicts.emplace_back(entwit::heisenberg_bound(*rho, pairs, cfg, tol), cfg);
                    break;
                case entwit::CriterionId::general_measurable:
                    verdicts.emplace_back(
                        entwit::product_criterion_check(
                            *rho, entwit::otilde_measurable(*rho, pairs, cfg), pairs, cfg, tol),
                        cfg);
                    break;
                case entwit::CriterionId::general_ensemble:
                    if (!ensemble) {
                        throw std::invalid_argument(
                            "general_ensemble needs an ensemble input file");
                    }
                    verdicts.emplace_back(
                        entwit::product_criterion_check(
                            *rho, entwit::otilde_from_ensemble(*ensemble, pairs, cfg), pairs,
                            cfg, tol),
                        cfg);
                    break;
                case entwit::CriterionId::general_strong:
                    if (!ensemble) {
                        throw std::invalid_argument("general_strong needs an ensemble input file");
                    }
                    verdicts.emplace_back(
                        entwit::product_criterion_check(
                            *rho, entwit::otilde_strong_from_ensemble(*ensemble, pairs, cfg),
                            pairs, cfg, tol),
                        cfg);
                    break;
                case entwit::CriterionId::sum:
                    verdicts.emplace_back(entwit::sum_criterion_check(*rho, pairs, cfg, tol), cfg);
                    break;
                case entwit::CriterionId::prl02_product:
                    verdicts.emplace_back(entwit::prl02_product_check(*rho, pairs, cfg, tol),
                                          cfg);
                    break;
                case entwit::CriterionId::linear_family:
                    verdicts.emplace_back(
                        entwit::linear_family_check(
                            *rho, pairs, cfg, alpha, beta,
                            entwit::otilde_measurable(*rho, pairs, cfg), tol),
                        cfg);
                    break;
                default:
                    throw std::invalid_argument(std::string(entwit::criterion_name(id)) +
                                                " does not apply to discrete-variable input");
            }
        }
    }

    if (args.format == "csv") {
        std::cout << "criterion,lhs,bound,margin,violated\n";
        for (const auto& [v, c] : verdicts) {
            std::cout << entwit::criterion_name(v.criterion) << ','
                      << entwit::io::format_double(v.lhs) << ','
                      << entwit::io::format_double(v.bound) << ','
                      << entwit::io::format_double(v.margin) << ','
                      << (v.violated ? "true" : "false") << '\n';
        }
    } else {
        json out;
        out["command"] = "check";
        out["kind"] = kind_name;
        out["tolerance"] = tol;
        json list = json::array();
        for (const auto& [v, c] : verdicts) {
            list.push_back(entwit::io::to_json(v, c));
        }
        out["verdicts"] = std::move(list);
        std::cout << out.dump(2) << '\n';
    }
    return 0;
}

struct SearchArgs {
    std::string state_path;
    std::string observables_path;
    bool gaussian = false;
    std::string criterion = "general_measurable";
    int grid = 16;
    int refine = 2;
    std::uint64_t seed = 0;
};

int run_search(const SearchArgs& args) {
    const json state_json = load_json(args.state_path);
    const InputKind kind = args.gaussian ? InputKind::gaussian : detect_kind(state_json);

    entwit::SearchConfig sc;
    sc.grid_resolution = args.grid;
    sc.refine_iters = args.refine;
    sc.seed = args.seed;
    sc.criterion = entwit::criterion_from_name(args.criterion);

    entwit::SearchResult result;
    if (kind == InputKind::gaussian) {
        sc.domain = entwit::ParameterDomain::cv;
        result = entwit::optimize_cv(entwit::io::gaussian_from_json(state_json), sc);
    } else {
        sc.domain = entwit::ParameterDomain::discrete;
        const entwit::DensityMatrix rho =
            kind == InputKind::ensemble
                ? entwit::ensemble_to_density(entwit::io::ensemble_from_json(state_json))
                : entwit::io::density_from_json(state_json);
        const entwit::ObservablePairSet pairs =
            args.observables_path.empty()
                ? default_pauli_pairs(rho.dims())
                : entwit::io::pairs_from_json(load_json(args.observables_path));
        result = entwit::optimize_violation(rho, pairs, sc);
    }

    json out;
    out["command"] = "search";
    out["criterion"] = args.criterion;
    out["grid"] = args.grid;
    out["refine"] = args.refine;
    out["seed"] = args.seed;
    out["result"] = entwit::io::to_json(result);
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct ValidateArgs {
    std::string dims = "2x2";
    int n = 100;
    std::uint64_t seed = 0;
    int configs_per_state = 20;
    bool no_search = false;
    int grid = 8;
    int refine = 1;
};

int run_validate(const ValidateArgs& args) {
    if (args.n < 0 || args.configs_per_state < 1) {
        throw std::invalid_argument("--n must be >= 0 and --configs >= 1");
    }
    const entwit::Dims dims = parse_dims(args.dims);
    const std::size_t n = static_cast<std::size_t>(args.n);

    std::vector<entwit::DensityMatrix> states;
    std::vector<entwit::ObservablePairSet> pairs;
    states.reserve(n);
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t state_seed = entwit::derive_seed(args.seed, 2 * i);
        const std::uint64_t pair_seed = entwit::derive_seed(args.seed, 2 * i + 1);
        if (i % 2 == 0) {
            // Guaranteed-separable half of the population.
            const int k = 1 + static_cast<int>(entwit::derive_seed(state_seed, 7) % 8);
            states.push_back(entwit::ensemble_to_density(
                entwit::random_product_ensemble(dims, k, state_seed)));
        } else {
            states.push_back(entwit::random_density_matrix(dims, state_seed));
        }
        entwit::Rng rng(pair_seed);
        entwit::ObservablePair p1 = entwit::random_pair(dims.d1, rng);
        entwit::ObservablePair p2 = entwit::random_pair(dims.d2, rng);
        pairs.push_back({std::move(p1), std::move(p2)});
    }

    std::vector<entwit::CriterionConfig> configs;
    entwit::Rng cfg_rng(entwit::derive_seed(args.seed, 0xC0FF5EEDULL));
    while (static_cast<int>(configs.size()) < args.configs_per_state) {
        entwit::CriterionConfig cfg;
        cfg.a1 = cfg_rng.uniform(-2.0, 2.0);
        cfg.a2 = cfg_rng.uniform(-2.0, 2.0);
        cfg.b1 = cfg_rng.uniform(-2.0, 2.0);
        cfg.b2 = cfg_rng.uniform(-2.0, 2.0);
        if ((cfg.a1 == 0.0 && cfg.a2 == 0.0) || (cfg.b1 == 0.0 && cfg.b2 == 0.0)) continue;
        configs.push_back(cfg);
    }

    entwit::AuditOptions opts;
    opts.with_search = !args.no_search;
    opts.search.grid_resolution = args.grid;
    opts.search.refine_iters = args.refine;
    opts.tol = verdict_tolerance();

    json out;
    out["command"] = "validate";
    out["dims"] = json::array({dims.d1, dims.d2});
    out["n"] = args.n;
    out["seed"] = args.seed;
    out["configs_per_state"] = args.configs_per_state;
    out["search"] = opts.with_search;

    try {
        const entwit::AuditReport report = entwit::consistency_audit(states, pairs, configs, opts);
        out["report"] = entwit::io::to_json(report);
        std::cout << out.dump(2) << '\n';
        return 0;
    } catch (const entwit::AuditSoundnessError& e) {
        out["report"] = entwit::io::to_json(e.report());
        std::cout << out.dump(2) << '\n';
        // Diagnostic dump of every offending state and config.
        for (const auto& failure : e.report().failures) {
            json dump;
            dump["state_index"] = failure.state_index;
            dump["state"] = entwit::io::to_json(states[failure.state_index]);
            dump["config"] = entwit::io::to_json(failure.config);
            dump["verdict"] = entwit::io::to_json(failure.verdict, failure.config);
            dump["oracle"] = entwit::io::to_json(failure.oracle);
            std::cerr << dump.dump(2) << '\n';
        }
        return 1;
    }
}

struct BoundaryArgs {
    double otilde = -1.0;
    std::string range = "0.25:4";
    int points = 64;
    std::string state_path;
    std::string observables_path;
    std::string config_path;
    std::string format = "csv";
};

int run_boundary(const BoundaryArgs& args) {
    const auto [lo, hi] = parse_range(args.range);

    double otilde = args.otilde;
    bool have_context = false;
    double prl02_bound = 0.0;
    double sum_bound = 0.0;

    if (!args.state_path.empty()) {
        const json state_json = load_json(args.state_path);
        const InputKind kind = detect_kind(state_json);
        if (kind == InputKind::gaussian) {
            throw std::invalid_argument("boundary context expects a discrete-variable state");
        }
        if (args.observables_path.empty()) {
            throw std::invalid_argument("boundary context needs --observables");
        }
        const entwit::DensityMatrix rho =
            kind == InputKind::ensemble
                ? entwit::ensemble_to_density(entwit::io::ensemble_from_json(state_json))
                : entwit::io::density_from_json(state_json);
        const entwit::ObservablePairSet pairs =
            entwit::io::pairs_from_json(load_json(args.observables_path));
        entwit::CriterionConfig cfg;
        if (!args.config_path.empty()) {
            cfg = entwit::io::config_from_json(load_json(args.config_path));
        } else {
            cfg.a1 = cfg.a2 = cfg.b1 = cfg.b2 = 1.0;
        }
        const entwit::OtildeBound measurable = entwit::otilde_measurable(rho, pairs, cfg);
        otilde = measurable.otilde;
        sum_bound = 2.0 * measurable.otilde;
        prl02_bound = entwit::prl02_product_check(rho, pairs, cfg).bound;
        have_context = true;
    } else if (otilde < 0.0) {
        throw std::invalid_argument("either --otilde or a state context is required");
    }

    const auto points = entwit::boundary_envelope(otilde, args.points, lo, hi);

    if (args.format == "json") {
        json out;
        out["command"] = "boundary";
        out["otilde"] = otilde;
        json arr = json::array();
        for (const auto& p : points) {
            json row;
            row["variance_u"] = p.variance_u;
            row["variance_v"] = p.variance_v;
            row["tangent_alpha_over_beta"] = p.tangent_alpha_over_beta;
            if (have_context) {
                row["prl02_variance_v"] = prl02_bound / p.variance_u;
                row["sum_line_variance_v"] = sum_bound - p.variance_u;
            }
            arr.push_back(std::move(row));
        }
        out["points"] = std::move(arr);
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "variance_u,variance_v,tangent_alpha_over_beta";
        if (have_context) std::cout << ",prl02_variance_v,sum_line_variance_v";
        std::cout << '\n';
        for (const auto& p : points) {
            std::cout << entwit::io::format_double(p.variance_u) << ','
                      << entwit::io::format_double(p.variance_v) << ','
                      << entwit::io::format_double(p.tangent_alpha_over_beta);
            if (have_context) {
                std::cout << ',' << entwit::io::format_double(prl02_bound / p.variance_u) << ','
                          << entwit::io::format_double(sum_bound - p.variance_u);
            }
            std::cout << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variance-based entanglement criteria for bipartite quantum states"};
    app.require_subcommand(1);

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "Evaluate criteria on a state file");
    check->add_option("--state", check_args.state_path, "State file (density, ensemble or Gaussian JSON)")
        ->required();
    check->add_option("--observables", check_args.observables_path,
                      "Observable pairs file (discrete input)");
    check->add_option("--config", check_args.config_path, "Coefficient config JSON");
    check->add_option("--criteria", check_args.criteria,
                      "Comma-separated criteria or 'all'");
    check->add_option("--format", check_args.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    SearchArgs search_args;
    auto* search = app.add_subcommand("search", "Optimize criterion coefficients on a state");
    search->add_option("--state", search_args.state_path, "State file")->required();
    search->add_option("--observables", search_args.observables_path,
                       "Observable pairs file (defaults to Pauli x/y on two qubits)");
    search->add_flag("--gaussian", search_args.gaussian, "Treat the state file as Gaussian");
    search->add_option("--criterion", search_args.criterion, "Criterion to optimize");
    search->add_option("--grid", search_args.grid, "Grid resolution per angle (>= 4)");
    search->add_option("--refine", search_args.refine, "Golden-section refinement rounds");
    search->add_option("--seed", search_args.seed, "Sampling seed (cv domain)");

    ValidateArgs validate_args;
    auto* validate = app.add_subcommand("validate", "Run the seeded soundness campaign");
    validate->add_option("--dims", validate_args.dims, "Subsystem dimensions, e.g. 2x2")
        ->required();
    validate->add_option("--n", validate_args.n, "Number of random states")->required();
    validate->add_option("--seed", validate_args.seed, "Campaign seed")->required();
    validate->add_option("--configs", validate_args.configs_per_state,
                         "Random configs per state");
    validate->add_flag("--no-search", validate_args.no_search, "Skip the witness search");
    validate->add_option("--grid", validate_args.grid, "Search grid resolution");
    validate->add_option("--refine", validate_args.refine, "Search refinement rounds");

    BoundaryArgs boundary_args;
    auto* boundary = app.add_subcommand("boundary", "Emit boundary-curve data");
    boundary->add_option("--otilde", boundary_args.otilde, "Separable bound O-tilde");
    boundary->add_option("--range", boundary_args.range, "variance_u range LO:HI");
    boundary->add_option("--points", boundary_args.points, "Number of points");
    boundary->add_option("--state", boundary_args.state_path, "Optional state context");
    boundary->add_option("--observables", boundary_args.observables_path,
                         "Observables for the state context");
    boundary->add_option("--config", boundary_args.config_path, "Config for the state context");
    boundary->add_option("--format", boundary_args.format, "csv or json")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (check->parsed()) return run_check(check_args);
        if (search->parsed()) return run_search(search_args);
        if (validate->parsed()) return run_validate(validate_args);
        if (boundary->parsed()) return run_boundary(boundary_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
