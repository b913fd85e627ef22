#include "entwit/gaussian.hpp"

#include <cmath>
#include <string>

#include "entwit/rng.hpp"

namespace entwit {

namespace {

constexpr double kSymTol = 1e-12;
constexpr double kBonaFideTol = 1e-9;

} // namespace

Eigen::Matrix4d symplectic_form() {
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    return omega;
}

namespace {

double min_uncertainty_eigenvalue(const Eigen::Matrix4d& cov) {
    // Smallest eigenvalue of the Hermitian matrix cov + (i/2) Omega.
    Eigen::Matrix4cd m = cov.cast<Complex>() + Complex(0, 0.5) * symplectic_form().cast<Complex>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

} // namespace

GaussianState::GaussianState(const Eigen::Vector4d& mean_in, const Eigen::Matrix4d& cov_in)
    : mean(mean_in), cov(cov_in) {
    const double asym = (cov_in - cov_in.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymTol) {
        throw std::invalid_argument("covariance matrix is not symmetric (deviation " +
                                    std::to_string(asym) + ")");
    }
    cov = 0.5 * (cov_in + cov_in.transpose());
    const double min_eig = min_uncertainty_eigenvalue(cov);
    if (min_eig < -kBonaFideTol) {
        throw std::invalid_argument(
            "covariance matrix violates the uncertainty condition (eigenvalue " +
            std::to_string(min_eig) + ")");
    }
}

std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& cov) {
    // Eigenvalues of the Hermitian matrix cov^{1/2} (i Omega) cov^{1/2} come
    // in +/- nu pairs; the positive ones are the symplectic spectrum.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> cov_solver(cov);
    if (cov_solver.eigenvalues()(0) <= 0.0) {
        throw std::invalid_argument("covariance matrix must be positive definite");
    }
    const Eigen::Matrix4d sqrt_cov = cov_solver.operatorSqrt();
    const Eigen::Matrix4cd i_omega = Complex(0, 1) * symplectic_form().cast<Complex>();
    const Eigen::Matrix4cd m =
        sqrt_cov.cast<Complex>() * i_omega * sqrt_cov.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m, Eigen::EigenvaluesOnly);
    const auto& eigs = solver.eigenvalues(); // ascending, symmetric about 0
    return {eigs(2), eigs(3)};
}

double cv_variance(const GaussianState& gs, const Eigen::Vector4d& coeffs) {
    const double var = coeffs.dot(gs.cov * coeffs);
    return var < 0.0 ? 0.0 : var;
}

GaussianState vacuum_state() {
    return GaussianState(Eigen::Vector4d::Zero(), 0.5 * Eigen::Matrix4d::Identity());
}

GaussianState two_mode_squeezed(double r, double n_th) {
    if (n_th < 0.0) {
        throw std::invalid_argument("thermal occupation must be nonnegative");
    }
    const double scale = n_th + 0.5;
    const double c = scale * std::cosh(2.0 * r);
    const double s = scale * std::sinh(2.0 * r);
    Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
    cov(0, 0) = cov(1, 1) = cov(2, 2) = cov(3, 3) = c;
    cov(0, 2) = cov(2, 0) = s;
    cov(1, 3) = cov(3, 1) = -s;
    return GaussianState(Eigen::Vector4d::Zero(), cov);
}

GaussianState thermal_two_mode(double n1, double n2) {
    if (n1 < 0.0 || n2 < 0.0) {
        throw std::invalid_argument("thermal occupations must be nonnegative");
    }
    Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
    cov(0, 0) = cov(1, 1) = n1 + 0.5;
    cov(2, 2) = cov(3, 3) = n2 + 0.5;
    return GaussianState(Eigen::Vector4d::Zero(), cov);
}

GaussianState random_gaussian_state(std::uint64_t seed) {
    Rng rng(seed);
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            m(i, j) = rng.normal();
        }
    }
    Eigen::Matrix4d cov = m * m.transpose() + 0.1 * Eigen::Matrix4d::Identity();
    const auto nus = symplectic_eigenvalues(cov);
    // Rescale to the physical boundary, then back off by a random factor so
    // the state is strictly bona fide; the partially transposed spectrum is
    // unconstrained, which leaves room for entangled samples.
    cov *= (1.0 + 0.5 * rng.uniform()) / (2.0 * nus[0]);
    Eigen::Vector4d mean;
    for (int i = 0; i < 4; ++i) {
        mean(i) = rng.normal();
    }
    return GaussianState(mean, cov);
}

namespace {

struct CVVectors {
    Eigen::Vector4d u;
    Eigen::Vector4d v;
};

CVVectors cv_vectors(const CVConfig& cfg) {
    cfg.validate();
    // u = a1 q1 + a3 p1 + a2 q2 + a4 p2, v = b3 q1 + b1 p1 + b4 q2 + b2 p2.
    return {{cfg.a1, cfg.a3, cfg.a2, cfg.a4}, {cfg.b3, cfg.b1, cfg.b4, cfg.b2}};
}

double cv_commutator_sum(const CVConfig& cfg) {
    return std::abs(cfg.a1 * cfg.b1 - cfg.a3 * cfg.b3) +
           std::abs(cfg.a2 * cfg.b2 - cfg.a4 * cfg.b4);
}

} // namespace

CriterionVerdict cv_product_check(const GaussianState& gs, const CVConfig& cfg, double tol) {
    const auto [u, v] = cv_vectors(cfg);
    CriterionVerdict verdict;
    verdict.criterion = CriterionId::cv_product;
    verdict.lhs = cv_variance(gs, u) * cv_variance(gs, v);
    const double half_sum = 0.5 * cv_commutator_sum(cfg);
    verdict.bound = half_sum * half_sum;
    verdict.margin = verdict.bound - verdict.lhs;
    verdict.violated = verdict.lhs < verdict.bound - tol;
    return verdict;
}

CriterionVerdict cv_sum_check(const GaussianState& gs, const CVConfig& cfg, double tol) {
    const auto [u, v] = cv_vectors(cfg);
    CriterionVerdict verdict;
    verdict.criterion = CriterionId::cv_sum;
    verdict.lhs = cv_variance(gs, u) + cv_variance(gs, v);
    verdict.bound = cv_commutator_sum(cfg);
    verdict.margin = verdict.bound - verdict.lhs;
    verdict.violated = verdict.lhs < verdict.bound - tol;
    return verdict;
}

SimonVerdict simon_ppt_oracle(const GaussianState& gs) {
    Eigen::Matrix4d reflected = gs.cov;
    // p2 -> -p2.
    for (int i = 0; i < 4; ++i) {
        if (i != 3) {
            reflected(i, 3) = -reflected(i, 3);
            reflected(3, i) = -reflected(3, i);
        }
    }
    const auto nus = symplectic_eigenvalues(reflected);
    SimonVerdict verdict;
    verdict.min_symplectic_eig = nus[0];
    verdict.entangled = nus[0] < 0.5 - kBonaFideTol;
    return verdict;
}

} // namespace entwit
