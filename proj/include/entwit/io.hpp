#pragma once

#include <string>

#include <json.hpp>

#include "entwit/oracles.hpp"
#include "entwit/search.hpp"

namespace entwit::io {

using json = nlohmann::ordered_json;

// Complex matrices serialize row-major with each entry as [re, im].

// { "dim": d, "entries": [[[re,im], ...], ...] }
json to_json(const HermitianOperator& op);
HermitianOperator operator_from_json(const json& j);

// { "dims": [d1, d2], "entries": ... }
json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j);

// { "dims": [d1, d2], "terms": [{ "w": w, "rho1": {"dim":, "entries":}, "rho2": ... }] }
json to_json(const SeparableEnsemble& e);
SeparableEnsemble ensemble_from_json(const json& j);

// { "mean": [4 reals], "cov": [[4x4 reals]] }
json to_json(const GaussianState& gs);
GaussianState gaussian_from_json(const json& j);

// { "pairs": [{ "r": OP, "s": OP }, { "r": OP, "s": OP }] }
json to_json(const ObservablePairSet& pairs);
ObservablePairSet pairs_from_json(const json& j);

json to_json(const CriterionConfig& cfg);
CriterionConfig config_from_json(const json& j);

// { "criterion":, "lhs":, "bound":, "violated":, "margin":, "config": {...} }
json to_json(const CriterionVerdict& v, const CriterionConfig& cfg);

json to_json(const OracleVerdict& v);
json to_json(const OtildeBound& b);
json to_json(const SearchResult& r);
json to_json(const AuditReport& r);

// %.17g, enough digits to round-trip a double exactly (CSV output).
std::string format_double(double value);

} // namespace entwit::io
