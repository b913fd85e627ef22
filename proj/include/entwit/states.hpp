#pragma once

#include <cstdint>
#include <vector>

#include "entwit/operators.hpp"
#include "entwit/rng.hpp"

namespace entwit {

// Density matrix on a bipartite space with declared subsystem dimensions.
// Single-subsystem states carry a trivial second factor, dims = (d, 1).
// Construction enforces Hermiticity (deviation <= 1e-10, then symmetrized),
// unit trace within 1e-10 and smallest eigenvalue >= -1e-9; the slight PSD
// slack absorbs rounding from random-state constructors.
class DensityMatrix {
  public:
    DensityMatrix(Dims dims, Matrix entries);

    // Pure state |psi><psi|; psi is normalized here.
    static DensityMatrix pure(Dims dims, const Eigen::VectorXcd& psi);

    // Single-subsystem state, dims (d, 1).
    static DensityMatrix single(Matrix entries);

    Dims dims() const { return dims_; }
    int total_dim() const { return dims_.total(); }
    const Matrix& entries() const { return entries_; }
    double min_eigenvalue() const { return min_eigenvalue_; }

  private:
    Dims dims_;
    Matrix entries_;
    double min_eigenvalue_ = 0.0;
};

struct EnsembleTerm {
    double weight;
    DensityMatrix rho1; // dims (d1, 1)
    DensityMatrix rho2; // dims (d2, 1)
};

// Convex mixture of product states {w_k, rho_k1, rho_k2}: weights
// nonnegative and summing to 1 within 1e-10, at most 64 terms.
class SeparableEnsemble {
  public:
    SeparableEnsemble(Dims dims, std::vector<EnsembleTerm> terms);

    Dims dims() const { return dims_; }
    const std::vector<EnsembleTerm>& terms() const { return terms_; }

    static constexpr int kMaxTerms = 64;

  private:
    Dims dims_;
    std::vector<EnsembleTerm> terms_;
};

enum class BellState { phi_plus, phi_minus, psi_plus, psi_minus };

// Tr[O rho]; the imaginary residue must stay below 1e-10 and is discarded.
double expectation(const DensityMatrix& rho, const HermitianOperator& o);

// <O^2> - <O>^2, clamped to 0 when within 1e-10 below zero.
double variance(const DensityMatrix& rho, const HermitianOperator& o);

double purity(const DensityMatrix& rho);

// Sum_k w_k rho_k1 (x) rho_k2.
DensityMatrix ensemble_to_density(const SeparableEnsemble& e);

// Transpose of the chosen tensor factor's indices. The result stays
// Hermitian with unit trace but may fail positivity, so it is returned as a
// raw matrix rather than a DensityMatrix.
Matrix partial_transpose(const DensityMatrix& rho, int slot);

// Partial trace onto the kept subsystem; result has dims (d, 1).
DensityMatrix reduce(const DensityMatrix& rho, int keep_slot);

DensityMatrix bell_state(BellState which);

// p |psi-><psi-| + (1 - p) I/4, p in [0, 1].
DensityMatrix werner_state(double p);

// k product terms with simplex-uniform weights; each factor is a mixture of
// d random pure states (normalized complex Gaussian vectors). Deterministic
// for a given seed.
SeparableEnsemble random_product_ensemble(Dims dims, int k, std::uint64_t seed);

// Random full-rank state G G^dag / Tr (Ginibre); covers both PPT and NPT
// states in the small dimensions used for validation.
DensityMatrix random_density_matrix(Dims dims, std::uint64_t seed);

HermitianOperator random_hermitian(int dim, Rng& rng);
ObservablePair random_pair(int dim, Rng& rng);

} // namespace entwit
