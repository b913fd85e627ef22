#include <doctest.h>

#include "entwit/io.hpp"

using namespace entwit;
using entwit::io::json;

TEST_CASE("operator and state round trips") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const HermitianOperator op = random_hermitian(3, rng);
        const HermitianOperator back = io::operator_from_json(io::to_json(op));
        CHECK((op.entries() - back.entries()).cwiseAbs().maxCoeff() == 0.0);

        const DensityMatrix rho = random_density_matrix(Dims{2, 3}, seed);
        const DensityMatrix rho_back = io::density_from_json(io::to_json(rho));
        CHECK(rho_back.dims() == rho.dims());
        CHECK((rho.entries() - rho_back.entries()).cwiseAbs().maxCoeff() == 0.0);

        const SeparableEnsemble e =
            random_product_ensemble(Dims{2, 2}, 1 + static_cast<int>(seed % 4), seed);
        const SeparableEnsemble e_back = io::ensemble_from_json(io::to_json(e));
        REQUIRE(e_back.terms().size() == e.terms().size());
        for (std::size_t i = 0; i < e.terms().size(); ++i) {
            CHECK(e.terms()[i].weight == e_back.terms()[i].weight);
            CHECK((e.terms()[i].rho1.entries() - e_back.terms()[i].rho1.entries())
                      .cwiseAbs()
                      .maxCoeff() == 0.0);
        }

        const GaussianState gs = random_gaussian_state(seed);
        const GaussianState gs_back = io::gaussian_from_json(io::to_json(gs));
        CHECK((gs.cov - gs_back.cov).cwiseAbs().maxCoeff() == 0.0);
        CHECK((gs.mean - gs_back.mean).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("schema violations carry useful messages") {
    CHECK_THROWS_AS(io::density_from_json(json::parse(R"({"entries": []})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(io::density_from_json(json::parse(R"({"dims": [2], "entries": []})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        io::operator_from_json(json::parse(R"({"dim": 2, "entries": [[[0,0]],[[0,0]]]})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        io::operator_from_json(json::parse(R"({"dim": 1, "entries": [[[0,0,7]]]})")),
        std::invalid_argument);
    CHECK_THROWS_AS(io::config_from_json(json::parse(R"({"a1": 0, "b1": 1})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(io::gaussian_from_json(json::parse(R"({"mean": [0,0,0,0]})")),
                    std::invalid_argument);

    // non-Hermitian entries fail the type invariant, not the parser
    CHECK_THROWS_AS(io::operator_from_json(json::parse(
                        R"({"dim": 2, "entries": [[[0,0],[1,0]],[[0,0],[0,0]]]})")),
                    std::invalid_argument);
}

TEST_CASE("config parsing defaults the cv extension to zero") {
    const CriterionConfig cfg =
        io::config_from_json(json::parse(R"({"a1": 1, "a2": -1, "b1": 1, "b2": 1})"));
    CHECK(cfg.a3 == 0.0);
    CHECK(cfg.b4 == 0.0);
    const json j = io::to_json(cfg);
    CHECK(j.at("a1").get<double>() == 1.0);
    CHECK(j.at("a2").get<double>() == -1.0);
}

TEST_CASE("verdict serialization") {
    const DensityMatrix singlet = bell_state(BellState::psi_minus);
    const ObservablePair xy{pauli_x(), pauli_y()};
    const CriterionConfig cfg{1, 1, 1, 1};
    const CriterionVerdict v = prl02_product_check(singlet, {xy, xy}, cfg);
    const json j = io::to_json(v, cfg);
    CHECK(j.at("criterion").get<std::string>() == "prl02_product");
    CHECK(j.at("violated").get<bool>());
    CHECK(j.at("margin").get<double>() == v.margin);
    CHECK(j.at("config").at("b2").get<double>() == 1.0);
}

TEST_CASE("doubles survive the 17-digit text format") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const double x = rng.normal() * std::pow(10.0, rng.uniform(-12.0, 12.0));
        CHECK(std::stod(io::format_double(x)) == x);
    }
}
