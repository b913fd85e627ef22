#include "entwit/io.hpp"

#include <cstdio>

namespace entwit::io {

namespace {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows) {
        throw std::invalid_argument("\"entries\" must be an array of " + std::to_string(rows) +
                                    " rows");
    }
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            throw std::invalid_argument("matrix row " + std::to_string(i) + " must have " +
                                        std::to_string(cols) + " entries");
        }
        for (int k = 0; k < cols; ++k) {
            const json& cell = row.at(k);
            if (!cell.is_array() || cell.size() != 2) {
                throw std::invalid_argument("complex entries must be [re, im] pairs");
            }
            m(i, k) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    return m;
}

int positive_int(const json& j, const char* name) {
    if (!j.is_number_integer() || j.get<int>() < 1) {
        throw std::invalid_argument(std::string("\"") + name + "\" must be a positive integer");
    }
    return j.get<int>();
}

const json& require(const json& j, const char* key) {
    if (!j.contains(key)) {
        throw std::invalid_argument(std::string("missing required field \"") + key + "\"");
    }
    return j.at(key);
}

} // namespace

json to_json(const HermitianOperator& op) {
    json j;
    j["dim"] = op.dim();
    j["entries"] = matrix_to_json(op.entries());
    return j;
}

HermitianOperator operator_from_json(const json& j) {
    const int dim = positive_int(require(j, "dim"), "dim");
    return HermitianOperator(matrix_from_json(require(j, "entries"), dim, dim));
}

json to_json(const DensityMatrix& rho) {
    json j;
    j["dims"] = json::array({rho.dims().d1, rho.dims().d2});
    j["entries"] = matrix_to_json(rho.entries());
    return j;
}

DensityMatrix density_from_json(const json& j) {
    const json& dims_json = require(j, "dims");
    if (!dims_json.is_array() || dims_json.size() != 2) {
        throw std::invalid_argument("\"dims\" must be [d1, d2]");
    }
    const Dims dims{positive_int(dims_json.at(0), "dims[0]"),
                    positive_int(dims_json.at(1), "dims[1]")};
    return DensityMatrix(dims, matrix_from_json(require(j, "entries"), dims.total(),
                                                dims.total()));
}

namespace {

json single_density_to_json(const DensityMatrix& rho) {
    json j;
    j["dim"] = rho.dims().d1;
    j["entries"] = matrix_to_json(rho.entries());
    return j;
}

DensityMatrix single_density_from_json(const json& j) {
    const int dim = positive_int(require(j, "dim"), "dim");
    return DensityMatrix::single(matrix_from_json(require(j, "entries"), dim, dim));
}

} // namespace

json to_json(const SeparableEnsemble& e) {
    json j;
    j["dims"] = json::array({e.dims().d1, e.dims().d2});
    json terms = json::array();
    for (const auto& t : e.terms()) {
        json term;
        term["w"] = t.weight;
        term["rho1"] = single_density_to_json(t.rho1);
        term["rho2"] = single_density_to_json(t.rho2);
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j;
}

SeparableEnsemble ensemble_from_json(const json& j) {
    const json& dims_json = require(j, "dims");
    if (!dims_json.is_array() || dims_json.size() != 2) {
        throw std::invalid_argument("\"dims\" must be [d1, d2]");
    }
    const Dims dims{positive_int(dims_json.at(0), "dims[0]"),
                    positive_int(dims_json.at(1), "dims[1]")};
    const json& terms_json = require(j, "terms");
    if (!terms_json.is_array() || terms_json.empty()) {
        throw std::invalid_argument("\"terms\" must be a nonempty array");
    }
    std::vector<EnsembleTerm> terms;
    terms.reserve(terms_json.size());
    for (const json& t : terms_json) {
        const json& w = require(t, "w");
        if (!w.is_number()) {
            throw std::invalid_argument("term weight \"w\" must be a number");
        }
        terms.push_back(EnsembleTerm{w.get<double>(),
                                     single_density_from_json(require(t, "rho1")),
                                     single_density_from_json(require(t, "rho2"))});
    }
    return SeparableEnsemble(dims, std::move(terms));
}

json to_json(const GaussianState& gs) {
    json j;
    json mean = json::array();
    for (int i = 0; i < 4; ++i) mean.push_back(gs.mean(i));
    json cov = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int k = 0; k < 4; ++k) row.push_back(gs.cov(i, k));
        cov.push_back(std::move(row));
    }
    j["mean"] = std::move(mean);
    j["cov"] = std::move(cov);
    return j;
}

GaussianState gaussian_from_json(const json& j) {
    const json& mean_json = require(j, "mean");
    const json& cov_json = require(j, "cov");
    if (!mean_json.is_array() || mean_json.size() != 4) {
        throw std::invalid_argument("\"mean\" must be a 4-vector");
    }
    if (!cov_json.is_array() || cov_json.size() != 4) {
        throw std::invalid_argument("\"cov\" must be a 4x4 matrix");
    }
    Eigen::Vector4d mean;
    Eigen::Matrix4d cov;
    for (int i = 0; i < 4; ++i) {
        mean(i) = mean_json.at(i).get<double>();
        const json& row = cov_json.at(i);
        if (!row.is_array() || row.size() != 4) {
            throw std::invalid_argument("\"cov\" rows must have 4 entries");
        }
        for (int k = 0; k < 4; ++k) {
            cov(i, k) = row.at(k).get<double>();
        }
    }
    return GaussianState(mean, cov);
}

json to_json(const ObservablePairSet& pairs) {
    json j;
    json arr = json::array();
    for (const ObservablePair* p : {&pairs.pair1, &pairs.pair2}) {
        json pair;
        pair["r"] = to_json(p->r);
        pair["s"] = to_json(p->s);
        arr.push_back(std::move(pair));
    }
    j["pairs"] = std::move(arr);
    return j;
}

ObservablePairSet pairs_from_json(const json& j) {
    const json& arr = require(j, "pairs");
    if (!arr.is_array() || arr.size() != 2) {
        throw std::invalid_argument("\"pairs\" must hold exactly two {r, s} pairs");
    }
    const auto parse_pair = [](const json& p) {
        return ObservablePair(operator_from_json(require(p, "r")),
                              operator_from_json(require(p, "s")));
    };
    return ObservablePairSet{parse_pair(arr.at(0)), parse_pair(arr.at(1))};
}

json to_json(const CriterionConfig& cfg) {
    json j;
    j["a1"] = cfg.a1;
    j["a2"] = cfg.a2;
    j["b1"] = cfg.b1;
    j["b2"] = cfg.b2;
    j["a3"] = cfg.a3;
    j["a4"] = cfg.a4;
    j["b3"] = cfg.b3;
    j["b4"] = cfg.b4;
    return j;
}

CriterionConfig config_from_json(const json& j) {
    CriterionConfig cfg;
    const auto get = [&](const char* key, double fallback) {
        if (!j.contains(key)) return fallback;
        const json& v = j.at(key);
        if (!v.is_number()) {
            throw std::invalid_argument(std::string("config field \"") + key +
                                        "\" must be a number");
        }
        return v.get<double>();
    };
    cfg.a1 = get("a1", 0.0);
    cfg.a2 = get("a2", 0.0);
    cfg.b1 = get("b1", 0.0);
    cfg.b2 = get("b2", 0.0);
    cfg.a3 = get("a3", 0.0);
    cfg.a4 = get("a4", 0.0);
    cfg.b3 = get("b3", 0.0);
    cfg.b4 = get("b4", 0.0);
    cfg.validate();
    return cfg;
}

json to_json(const CriterionVerdict& v, const CriterionConfig& cfg) {
    json j;
    j["criterion"] = std::string(criterion_name(v.criterion));
    j["lhs"] = v.lhs;
    j["bound"] = v.bound;
    j["violated"] = v.violated;
    j["margin"] = v.margin;
    j["config"] = to_json(cfg);
    return j;
}

json to_json(const OracleVerdict& v) {
    json j;
    j["verdict"] = v.verdict == PptVerdict::NPT ? "NPT" : "PPT";
    j["min_eigenvalue"] = v.min_eigenvalue;
    j["exact_domain"] = v.exact_domain;
    return j;
}

json to_json(const OtildeBound& b) {
    json j;
    j["otilde"] = b.otilde;
    j["otilde1"] = b.otilde1;
    j["otilde2"] = b.otilde2;
    j["source"] = std::string(otilde_source_name(b.source));
    return j;
}

json to_json(const SearchResult& r) {
    json j;
    j["best_config"] = to_json(r.best_config);
    j["best_margin"] = r.best_margin;
    j["verdict"] = to_json(r.verdict, r.best_config);
    j["evaluations"] = r.evaluations;
    return j;
}

json to_json(const AuditReport& r) {
    json j;
    j["states_checked"] = r.states_checked;
    j["npt_states"] = r.npt_states;
    json criteria;
    for (const auto& [id, tally] : r.tallies) {
        json t;
        t["checked"] = tally.checked;
        t["violated"] = tally.violated;
        t["sound"] = tally.sound;
        criteria[std::string(criterion_name(id))] = std::move(t);
    }
    j["criteria"] = std::move(criteria);
    json failures = json::array();
    for (const auto& f : r.failures) {
        json entry;
        entry["state_index"] = f.state_index;
        entry["criterion"] = std::string(criterion_name(f.verdict.criterion));
        entry["config"] = to_json(f.config);
        entry["verdict"] = to_json(f.verdict, f.config);
        entry["oracle"] = to_json(f.oracle);
        failures.push_back(std::move(entry));
    }
    j["failures"] = std::move(failures);
    return j;
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

} // namespace entwit::io
