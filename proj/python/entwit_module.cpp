#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entwit/io.hpp"
#include "entwit/oracles.hpp"
#include "entwit/search.hpp"

namespace py = pybind11;
using namespace entwit;

namespace {

std::string verdict_repr(const CriterionVerdict& v) {
    return "CriterionVerdict(criterion=" + std::string(criterion_name(v.criterion)) +
           ", lhs=" + std::to_string(v.lhs) + ", bound=" + std::to_string(v.bound) +
           ", violated=" + (v.violated ? std::string("True") : std::string("False")) + ")";
}

} // namespace

PYBIND11_MODULE(entwit, m) {
    m.doc() = "Variance-based entanglement criteria for bipartite quantum states";

    py::class_<Dims>(m, "Dims")
        .def(py::init<int, int>(), py::arg("d1"), py::arg("d2"))
        .def_readwrite("d1", &Dims::d1)
        .def_readwrite("d2", &Dims::d2)
        .def("total", &Dims::total)
        .def("__repr__", [](const Dims& d) {
            return "Dims(" + std::to_string(d.d1) + ", " + std::to_string(d.d2) + ")";
        });

    py::class_<HermitianOperator>(m, "HermitianOperator")
        .def(py::init<Matrix>(), py::arg("entries"))
        .def_property_readonly("dim", &HermitianOperator::dim)
        .def_property_readonly("entries",
                               [](const HermitianOperator& op) { return op.entries(); })
        .def("__add__", [](const HermitianOperator& a, const HermitianOperator& b) { return a + b; })
        .def("__sub__", [](const HermitianOperator& a, const HermitianOperator& b) { return a - b; })
        .def("__rmul__", [](const HermitianOperator& a, double s) { return s * a; });

    py::class_<ObservablePair>(m, "ObservablePair")
        .def(py::init<HermitianOperator, HermitianOperator>(), py::arg("r"), py::arg("s"))
        .def_readonly("r", &ObservablePair::r)
        .def_readonly("s", &ObservablePair::s);

    py::class_<ObservablePairSet>(m, "ObservablePairSet")
        .def(py::init<ObservablePair, ObservablePair>(), py::arg("pair1"), py::arg("pair2"))
        .def_readonly("pair1", &ObservablePairSet::pair1)
        .def_readonly("pair2", &ObservablePairSet::pair2);

    py::class_<CollectiveObservables>(m, "CollectiveObservables")
        .def_readonly("u", &CollectiveObservables::u)
        .def_readonly("v", &CollectiveObservables::v);

    py::class_<CriterionConfig>(m, "CriterionConfig")
        .def(py::init([](double a1, double a2, double b1, double b2, double a3, double a4,
                         double b3, double b4) {
                 return CriterionConfig{a1, a2, b1, b2, a3, a4, b3, b4};
             }),
             py::arg("a1"), py::arg("a2"), py::arg("b1"), py::arg("b2"), py::arg("a3") = 0.0,
             py::arg("a4") = 0.0, py::arg("b3") = 0.0, py::arg("b4") = 0.0)
        .def_readwrite("a1", &CriterionConfig::a1)
        .def_readwrite("a2", &CriterionConfig::a2)
        .def_readwrite("b1", &CriterionConfig::b1)
        .def_readwrite("b2", &CriterionConfig::b2)
        .def_readwrite("a3", &CriterionConfig::a3)
        .def_readwrite("a4", &CriterionConfig::a4)
        .def_readwrite("b3", &CriterionConfig::b3)
        .def_readwrite("b4", &CriterionConfig::b4)
        .def("validate", &CriterionConfig::validate);
    m.attr("CVConfig") = m.attr("CriterionConfig");

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init<Dims, Matrix>(), py::arg("dims"), py::arg("entries"))
        .def(py::init([](std::pair<int, int> dims, Matrix entries) {
                 return DensityMatrix(Dims{dims.first, dims.second}, std::move(entries));
             }),
             py::arg("dims"), py::arg("entries"))
        .def_static("pure",
                    [](std::pair<int, int> dims, const Eigen::VectorXcd& psi) {
                        return DensityMatrix::pure(Dims{dims.first, dims.second}, psi);
                    },
                    py::arg("dims"), py::arg("psi"))
        .def_static("single", &DensityMatrix::single, py::arg("entries"))
        .def_property_readonly("dims", &DensityMatrix::dims)
        .def_property_readonly("entries", [](const DensityMatrix& rho) { return rho.entries(); })
        .def_property_readonly("min_eigenvalue", &DensityMatrix::min_eigenvalue);

    py::class_<EnsembleTerm>(m, "EnsembleTerm")
        .def(py::init<double, DensityMatrix, DensityMatrix>(), py::arg("weight"),
             py::arg("rho1"), py::arg("rho2"))
        .def_readonly("weight", &EnsembleTerm::weight)
        .def_readonly("rho1", &EnsembleTerm::rho1)
        .def_readonly("rho2", &EnsembleTerm::rho2);

    py::class_<SeparableEnsemble>(m, "SeparableEnsemble")
        .def(py::init([](std::pair<int, int> dims, std::vector<EnsembleTerm> terms) {
                 return SeparableEnsemble(Dims{dims.first, dims.second}, std::move(terms));
             }),
             py::arg("dims"), py::arg("terms"))
        .def_property_readonly("dims", &SeparableEnsemble::dims)
        .def_property_readonly("terms", &SeparableEnsemble::terms);

    py::enum_<BellState>(m, "BellState")
        .value("phi_plus", BellState::phi_plus)
        .value("phi_minus", BellState::phi_minus)
        .value("psi_plus", BellState::psi_plus)
        .value("psi_minus", BellState::psi_minus);

    py::enum_<CriterionId>(m, "CriterionId")
        .value("heisenberg", CriterionId::heisenberg)
        .value("general_ensemble", CriterionId::general_ensemble)
        .value("general_measurable", CriterionId::general_measurable)
        .value("general_strong", CriterionId::general_strong)
        .value("sum", CriterionId::sum)
        .value("prl02_product", CriterionId::prl02_product)
        .value("linear_family", CriterionId::linear_family)
        .value("cv_product", CriterionId::cv_product)
        .value("cv_sum", CriterionId::cv_sum);

    py::enum_<OtildeSource>(m, "OtildeSource")
        .value("ensemble", OtildeSource::ensemble)
        .value("measurable", OtildeSource::measurable)
        .value("strong", OtildeSource::strong);

    py::class_<OtildeBound>(m, "OtildeBound")
        .def_readonly("otilde", &OtildeBound::otilde)
        .def_readonly("otilde1", &OtildeBound::otilde1)
        .def_readonly("otilde2", &OtildeBound::otilde2)
        .def_readonly("source", &OtildeBound::source);

    py::class_<CriterionVerdict>(m, "CriterionVerdict")
        .def_readonly("criterion", &CriterionVerdict::criterion)
        .def_readonly("lhs", &CriterionVerdict::lhs)
        .def_readonly("bound", &CriterionVerdict::bound)
        .def_readonly("margin", &CriterionVerdict::margin)
        .def_readonly("violated", &CriterionVerdict::violated)
        .def("__repr__", &verdict_repr);

    py::class_<EnvelopePoint>(m, "EnvelopePoint")
        .def_readonly("variance_u", &EnvelopePoint::variance_u)
        .def_readonly("variance_v", &EnvelopePoint::variance_v)
        .def_readonly("tangent_alpha_over_beta", &EnvelopePoint::tangent_alpha_over_beta);

    py::class_<GaussianState>(m, "GaussianState")
        .def(py::init<const Eigen::Vector4d&, const Eigen::Matrix4d&>(), py::arg("mean"),
             py::arg("cov"))
        .def_readonly("mean", &GaussianState::mean)
        .def_readonly("cov", &GaussianState::cov);

    py::class_<SimonVerdict>(m, "SimonVerdict")
        .def_readonly("entangled", &SimonVerdict::entangled)
        .def_readonly("min_symplectic_eig", &SimonVerdict::min_symplectic_eig);

    py::enum_<PptVerdict>(m, "PptVerdict")
        .value("PPT", PptVerdict::PPT)
        .value("NPT", PptVerdict::NPT);

    py::class_<OracleVerdict>(m, "OracleVerdict")
        .def_readonly("verdict", &OracleVerdict::verdict)
        .def_readonly("min_eigenvalue", &OracleVerdict::min_eigenvalue)
        .def_readonly("exact_domain", &OracleVerdict::exact_domain);

    py::enum_<ParameterDomain>(m, "ParameterDomain")
        .value("discrete", ParameterDomain::discrete)
        .value("cv", ParameterDomain::cv);

    py::class_<SearchConfig>(m, "SearchConfig")
        .def(py::init([](int grid, int refine, std::uint64_t seed, CriterionId criterion,
                         ParameterDomain domain) {
                 SearchConfig sc;
                 sc.grid_resolution = grid;
                 sc.refine_iters = refine;
                 sc.seed = seed;
                 sc.criterion = criterion;
                 sc.domain = domain;
                 return sc;
             }),
             py::arg("grid_resolution") = 16, py::arg("refine_iters") = 2, py::arg("seed") = 0,
             py::arg("criterion") = CriterionId::general_measurable,
             py::arg("domain") = ParameterDomain::discrete)
        .def_readwrite("grid_resolution", &SearchConfig::grid_resolution)
        .def_readwrite("refine_iters", &SearchConfig::refine_iters)
        .def_readwrite("seed", &SearchConfig::seed)
        .def_readwrite("criterion", &SearchConfig::criterion)
        .def_readwrite("domain", &SearchConfig::domain);

    py::class_<SearchResult>(m, "SearchResult")
        .def_readonly("best_config", &SearchResult::best_config)
        .def_readonly("best_margin", &SearchResult::best_margin)
        .def_readonly("verdict", &SearchResult::verdict)
        .def_readonly("evaluations", &SearchResult::evaluations);

    // operators
    m.def("identity_op", &identity_op, py::arg("dim"));
    m.def("pauli_x", &pauli_x);
    m.def("pauli_y", &pauli_y);
    m.def("pauli_z", &pauli_z);
    m.def("tensor", &tensor, py::arg("a"), py::arg("b"));
    m.def("embed",
          [](const HermitianOperator& a, int slot, std::pair<int, int> dims) {
              return embed(a, slot, Dims{dims.first, dims.second});
          },
          py::arg("a"), py::arg("slot"), py::arg("dims"));
    m.def("commutator_obs", &commutator_obs, py::arg("pair"));
    m.def("op_norm", &op_norm, py::arg("c"));
    m.def("build_uv", &build_uv, py::arg("pair1"), py::arg("pair2"), py::arg("cfg"));

    // states
    m.def("expectation", &expectation, py::arg("rho"), py::arg("o"));
    m.def("variance", &variance, py::arg("rho"), py::arg("o"));
    m.def("purity", &purity, py::arg("rho"));
    m.def("ensemble_to_density", &ensemble_to_density, py::arg("ensemble"));
    m.def("partial_transpose", &partial_transpose, py::arg("rho"), py::arg("slot"));
    m.def("reduce", &reduce, py::arg("rho"), py::arg("keep_slot"));
    m.def("bell_state", &bell_state, py::arg("which"));
    m.def("werner_state", &werner_state, py::arg("p"));
    m.def("random_product_ensemble",
          [](std::pair<int, int> dims, int k, std::uint64_t seed) {
              return random_product_ensemble(Dims{dims.first, dims.second}, k, seed);
          },
          py::arg("dims"), py::arg("k"), py::arg("seed"));
    m.def("random_density_matrix",
          [](std::pair<int, int> dims, std::uint64_t seed) {
              return random_density_matrix(Dims{dims.first, dims.second}, seed);
          },
          py::arg("dims"), py::arg("seed"));

    // criteria
    m.def("heisenberg_bound", &heisenberg_bound, py::arg("rho"), py::arg("pairs"),
          py::arg("cfg"), py::arg("tol") = kViolationTol);
    m.def("otilde_from_ensemble", &otilde_from_ensemble, py::arg("ensemble"), py::arg("pairs"),
          py::arg("cfg"));
    m.def("otilde_strong_from_ensemble", &otilde_strong_from_ensemble, py::arg("ensemble"),
          py::arg("pairs"), py::arg("cfg"));
    m.def("otilde_measurable", &otilde_measurable, py::arg("rho"), py::arg("pairs"),
          py::arg("cfg"));
    m.def("product_criterion_check", &product_criterion_check, py::arg("rho"),
          py::arg("otilde"), py::arg("pairs"), py::arg("cfg"), py::arg("tol") = kViolationTol);
    m.def("sum_criterion_check", &sum_criterion_check, py::arg("rho"), py::arg("pairs"),
          py::arg("cfg"), py::arg("tol") = kViolationTol);
    m.def("prl02_product_check", &prl02_product_check, py::arg("rho"), py::arg("pairs"),
          py::arg("cfg"), py::arg("tol") = kViolationTol);
    m.def("linear_family_check", &linear_family_check, py::arg("rho"), py::arg("pairs"),
          py::arg("cfg"), py::arg("alpha"), py::arg("beta"), py::arg("otilde"),
          py::arg("tol") = kViolationTol);
    m.def("boundary_envelope", &boundary_envelope, py::arg("otilde"), py::arg("n_points"),
          py::arg("lo"), py::arg("hi"));

    // gaussian
    m.def("cv_variance", &cv_variance, py::arg("gs"), py::arg("coeffs"));
    m.def("vacuum_state", &vacuum_state);
    m.def("two_mode_squeezed", &two_mode_squeezed, py::arg("r"), py::arg("n_th") = 0.0);
    m.def("thermal_two_mode", &thermal_two_mode, py::arg("n1"), py::arg("n2"));
    m.def("random_gaussian_state", &random_gaussian_state, py::arg("seed"));
    m.def("cv_product_check", &cv_product_check, py::arg("gs"), py::arg("cfg"),
          py::arg("tol") = kViolationTol);
    m.def("cv_sum_check", &cv_sum_check, py::arg("gs"), py::arg("cfg"),
          py::arg("tol") = kViolationTol);
    m.def("simon_ppt_oracle", &simon_ppt_oracle, py::arg("gs"));
    m.def("symplectic_eigenvalues", &symplectic_eigenvalues, py::arg("cov"));

    // oracles
    m.def("ppt_check", &ppt_check, py::arg("rho"));

    // search
    m.def("optimize_violation", &optimize_violation, py::arg("rho"), py::arg("pairs"),
          py::arg("config"));
    m.def("optimize_cv", &optimize_cv, py::arg("gs"), py::arg("config"));

    m.attr("VIOLATION_TOL") = kViolationTol;
}
