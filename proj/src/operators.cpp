#include "entwit/operators.hpp"

#include <cmath>
#include <string>

namespace entwit {

double hermiticity_deviation(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(Matrix entries) {
    if (entries.rows() < 1 || entries.rows() != entries.cols()) {
        throw std::invalid_argument("operator matrix must be square with dim >= 1");
    }
    const double dev = hermiticity_deviation(entries);
    if (!(dev < kHermitianAbsorbTol)) {
        throw std::invalid_argument("matrix is not Hermitian (max deviation " +
                                    std::to_string(dev) + ")");
    }
    entries_ = 0.5 * (entries + entries.adjoint().eval());
}

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("operator dimension mismatch in +");
    }
    return HermitianOperator(a.entries() + b.entries());
}

HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("operator dimension mismatch in -");
    }
    return HermitianOperator(a.entries() - b.entries());
}

HermitianOperator operator*(double scale, const HermitianOperator& a) {
    return HermitianOperator(scale * a.entries());
}

ObservablePair::ObservablePair(HermitianOperator r_in, HermitianOperator s_in)
    : r(std::move(r_in)), s(std::move(s_in)) {
    if (r.dim() != s.dim()) {
        throw std::invalid_argument("observable pair must act on one subsystem dimension");
    }
}

void CriterionConfig::validate() const {
    for (double c : {a1, a2, b1, b2, a3, a4, b3, b4}) {
        if (!std::isfinite(c)) {
            throw std::invalid_argument("criterion coefficients must be finite");
        }
    }
    if (a1 == 0.0 && a2 == 0.0) {
        throw std::invalid_argument("at least one of a1, a2 must be nonzero");
    }
    if (b1 == 0.0 && b2 == 0.0) {
        throw std::invalid_argument("at least one of b1, b2 must be nonzero");
    }
}

HermitianOperator identity_op(int dim) {
    return HermitianOperator(Matrix::Identity(dim, dim));
}

HermitianOperator pauli_x() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
    return HermitianOperator(m);
}

HermitianOperator pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return HermitianOperator(m);
}

HermitianOperator pauli_z() {
    Matrix m(2, 2);
    m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
    return HermitianOperator(m);
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    const Eigen::Index ar = a.rows(), ac = a.cols();
    const Eigen::Index br = b.rows(), bc = b.cols();
    Matrix out(ar * br, ac * bc);
    for (Eigen::Index i = 0; i < ar; ++i) {
        for (Eigen::Index j = 0; j < ac; ++j) {
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
        }
    }
    return out;
}

} // namespace

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(kron(a.entries(), b.entries()));
}

HermitianOperator embed(const HermitianOperator& a, int slot, Dims dims) {
    if (slot != 1 && slot != 2) {
        throw std::invalid_argument("slot must be 1 or 2");
    }
    const int expected = slot == 1 ? dims.d1 : dims.d2;
    if (a.dim() != expected) {
        throw std::invalid_argument("embedded operator dimension does not match its slot");
    }
    if (slot == 1) {
        return HermitianOperator(kron(a.entries(), Matrix::Identity(dims.d2, dims.d2)));
    }
    return HermitianOperator(kron(Matrix::Identity(dims.d1, dims.d1), a.entries()));
}

HermitianOperator commutator_obs(const ObservablePair& pair) {
    const Matrix rs = pair.r.entries() * pair.s.entries();
    const Matrix product = Complex(0, 1) * (rs - rs.adjoint().eval());
    // i[r, s] of Hermitian r, s is Hermitian; the constructor asserts it.
    return HermitianOperator(product);
}

double op_norm(const HermitianOperator& c) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(c.entries(), Eigen::EigenvaluesOnly);
    const auto& eigs = solver.eigenvalues();
    return std::max(std::abs(eigs(0)), std::abs(eigs(eigs.size() - 1)));
}

CollectiveObservables build_uv(const ObservablePair& pair1, const ObservablePair& pair2,
                               const CriterionConfig& cfg) {
    cfg.validate();
    const Dims dims{pair1.dim(), pair2.dim()};
    Matrix u = cfg.a1 * embed(pair1.r, 1, dims).entries() +
               cfg.a2 * embed(pair2.r, 2, dims).entries();
    Matrix v = cfg.b1 * embed(pair1.s, 1, dims).entries() +
               cfg.b2 * embed(pair2.s, 2, dims).entries();
    return {HermitianOperator(std::move(u)), HermitianOperator(std::move(v))};
}

} // namespace entwit
