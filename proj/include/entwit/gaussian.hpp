#pragma once

#include <array>
#include <cstdint>

#include "entwit/criteria.hpp"

namespace entwit {

// Continuous-variable coefficients reuse the discrete layout; a3/a4/b3/b4
// mix momentum into r and position into s.
using CVConfig = CriterionConfig;

// Two-mode Gaussian state over quadratures (q1, p1, q2, p2), fixed to the
// [q, p] = i convention (vacuum covariance I/2). The covariance must be
// symmetric within 1e-12 and satisfy the bona-fide uncertainty condition
// cov + (i/2) Omega >= 0 within 1e-9.
struct GaussianState {
    Eigen::Vector4d mean;
    Eigen::Matrix4d cov;

    GaussianState(const Eigen::Vector4d& mean_in, const Eigen::Matrix4d& cov_in);
};

// Symplectic form Omega for ordering (q1, p1, q2, p2).
Eigen::Matrix4d symplectic_form();

// The two symplectic eigenvalues of a (positive definite) covariance
// matrix, ascending.
std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& cov);

// Variance of u = c . (q1, p1, q2, p2): c^T cov c.
double cv_variance(const GaussianState& gs, const Eigen::Vector4d& coeffs);

GaussianState vacuum_state();

// Two-mode squeezed thermal state: diagonal blocks (n_th + 1/2) cosh(2r) I,
// off-diagonal (n_th + 1/2) sinh(2r) diag(1, -1); zero mean.
GaussianState two_mode_squeezed(double r, double n_th = 0.0);

// Two uncorrelated thermal modes with occupations n1, n2.
GaussianState thermal_two_mode(double n1, double n2);

// Seeded random bona-fide two-mode state: a random positive matrix rescaled
// to the physical boundary, then expanded by a random factor >= 1. Spans
// both separable and entangled covariances.
GaussianState random_gaussian_state(std::uint64_t seed);

// var(u) var(v) >= ((|a1 b1 - a3 b3| + |a2 b2 - a4 b4|) / 2)^2 with
// u = (a1, a3, a2, a4) and v = (b3, b1, b4, b2) against (q1, p1, q2, p2).
CriterionVerdict cv_product_check(const GaussianState& gs, const CVConfig& cfg,
                                  double tol = kViolationTol);

// Sum form: var(u) + var(v) >= |a1 b1 - a3 b3| + |a2 b2 - a4 b4|.
CriterionVerdict cv_sum_check(const GaussianState& gs, const CVConfig& cfg,
                              double tol = kViolationTol);

struct SimonVerdict {
    bool entangled = false;
    // Smallest symplectic eigenvalue after the partial momentum reflection;
    // below 1/2 certifies entanglement (exactly, for two-mode Gaussians).
    double min_symplectic_eig = 0.0;
};

// Partial-transpose test in covariance form: reflect p2 -> -p2 and compare
// the smallest symplectic eigenvalue against the vacuum level 1/2.
SimonVerdict simon_ppt_oracle(const GaussianState& gs);

} // namespace entwit
