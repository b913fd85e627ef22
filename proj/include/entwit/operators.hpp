#pragma once

#include <complex>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace entwit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Deviations from exact Hermiticity below this are absorbed by
// symmetrization; anything larger is rejected as a corrupted input.
inline constexpr double kHermitianAbsorbTol = 1e-10;

// Slack on criterion verdicts: violated <=> lhs < bound - kViolationTol.
// Many natural states sit exactly on the bound, so strict comparison would
// flip verdicts on rounding noise.
inline constexpr double kViolationTol = 1e-9;

// Subsystem dimensions of a bipartite space. A trivial factor (dim 1) marks
// single-subsystem objects.
struct Dims {
    int d1 = 1;
    int d2 = 1;

    int total() const { return d1 * d2; }
    bool operator==(const Dims&) const = default;
};

double hermiticity_deviation(const Matrix& m);

// Dense Hermitian matrix on a finite-dimensional Hilbert space. Construction
// symmetrizes (A + A^dag)/2 when the deviation is below kHermitianAbsorbTol
// and throws otherwise, so a held value is always exactly Hermitian.
class HermitianOperator {
  public:
    explicit HermitianOperator(Matrix entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }

  private:
    Matrix entries_;
};

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator operator*(double scale, const HermitianOperator& a);

// The couple of observables (r, s) chosen on one subsystem.
struct ObservablePair {
    HermitianOperator r;
    HermitianOperator s;

    ObservablePair(HermitianOperator r_in, HermitianOperator s_in);
    int dim() const { return r.dim(); }
};

// One pair per subsystem; subsystem dimensions may differ.
struct ObservablePairSet {
    ObservablePair pair1;
    ObservablePair pair2;
};

// The collective observables u, v on the full bipartite space.
struct CollectiveObservables {
    HermitianOperator u;
    HermitianOperator v;
};

// Real coefficients of the collective observables. a3/a4/b3/b4 extend the
// set for quadrature combinations in the continuous-variable module and
// default to zero elsewhere.
struct CriterionConfig {
    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double a3 = 0.0;
    double a4 = 0.0;
    double b3 = 0.0;
    double b4 = 0.0;

    // Throws unless all entries are finite, at least one of a1/a2 and one of
    // b1/b2 is nonzero.
    void validate() const;
};

HermitianOperator identity_op(int dim);
HermitianOperator pauli_x();
HermitianOperator pauli_y();
HermitianOperator pauli_z();

// Kronecker product; subsystem 1 indexes the slow (row-major) axis.
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

// A acting on the chosen tensor slot, identity on the other: A (x) I or I (x) A.
HermitianOperator embed(const HermitianOperator& a, int slot, Dims dims);

// C = i[r, s]; Hermitian for Hermitian inputs (asserted by construction).
HermitianOperator commutator_obs(const ObservablePair& pair);

// Operator norm of a Hermitian matrix: the largest absolute eigenvalue,
// via full symmetric eigendecomposition.
double op_norm(const HermitianOperator& c);

// u = a1 r1 (x) I + a2 I (x) r2,  v = b1 s1 (x) I + b2 I (x) s2.
CollectiveObservables build_uv(const ObservablePair& pair1, const ObservablePair& pair2,
                               const CriterionConfig& cfg);

} // namespace entwit
