#include "entwit/states.hpp"

#include <cmath>
#include <string>

namespace entwit {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-9;
constexpr double kImagTol = 1e-10;

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

double real_trace_product(const Matrix& a, const Matrix& b) {
    // Tr[a b] without forming the product.
    return (a.transpose().cwiseProduct(b)).sum().real();
}

} // namespace

DensityMatrix::DensityMatrix(Dims dims, Matrix entries) : dims_(dims) {
    if (dims.d1 < 1 || dims.d2 < 1) {
        throw std::invalid_argument("subsystem dimensions must be >= 1");
    }
    if (entries.rows() != dims.total() || entries.cols() != dims.total()) {
        throw std::invalid_argument("density matrix size does not match declared dims");
    }
    const double dev = hermiticity_deviation(entries);
    if (!(dev < kHermitianAbsorbTol)) {
        throw std::invalid_argument("density matrix is not Hermitian (max deviation " +
                                    std::to_string(dev) + ")");
    }
    entries_ = 0.5 * (entries + entries.adjoint().eval());
    const double trace = entries_.trace().real();
    if (std::abs(trace - 1.0) > kTraceTol) {
        throw std::invalid_argument("density matrix trace " + std::to_string(trace) +
                                    " is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
    min_eigenvalue_ = solver.eigenvalues()(0);
    if (min_eigenvalue_ < -kPsdTol) {
        throw std::invalid_argument("density matrix has negative eigenvalue " +
                                    std::to_string(min_eigenvalue_));
    }
}

DensityMatrix DensityMatrix::pure(Dims dims, const Eigen::VectorXcd& psi) {
    if (psi.size() != dims.total()) {
        throw std::invalid_argument("state vector size does not match dims");
    }
    const double norm = psi.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("state vector must be nonzero");
    }
    const Eigen::VectorXcd unit = psi / norm;
    return DensityMatrix(dims, unit * unit.adjoint());
}

DensityMatrix DensityMatrix::single(Matrix entries) {
    const int d = static_cast<int>(entries.rows());
    return DensityMatrix(Dims{d, 1}, std::move(entries));
}

SeparableEnsemble::SeparableEnsemble(Dims dims, std::vector<EnsembleTerm> terms)
    : dims_(dims), terms_(std::move(terms)) {
    if (terms_.empty()) {
        throw std::invalid_argument("ensemble needs at least one term");
    }
    if (static_cast<int>(terms_.size()) > kMaxTerms) {
        throw std::invalid_argument("ensemble exceeds the term cap of 64");
    }
    double total = 0.0;
    for (const auto& t : terms_) {
        if (t.weight < 0.0) {
            throw std::invalid_argument("ensemble weights must be nonnegative");
        }
        if (t.rho1.dims() != Dims{dims.d1, 1} || t.rho2.dims() != Dims{dims.d2, 1}) {
            throw std::invalid_argument("ensemble term dimensions do not match");
        }
        total += t.weight;
    }
    if (std::abs(total - 1.0) > kTraceTol) {
        throw std::invalid_argument("ensemble weights sum to " + std::to_string(total) +
                                    ", expected 1");
    }
}

double expectation(const DensityMatrix& rho, const HermitianOperator& o) {
    if (o.dim() != rho.total_dim()) {
        throw std::invalid_argument("observable dimension does not match state");
    }
    const Complex value = (o.entries() * rho.entries()).trace();
    if (std::abs(value.imag()) > kImagTol) {
        throw std::runtime_error("expectation value has imaginary residue " +
                                 std::to_string(value.imag()));
    }
    return value.real();
}

double variance(const DensityMatrix& rho, const HermitianOperator& o) {
    const double mean = expectation(rho, o);
    const double second = real_trace_product(o.entries() * o.entries(), rho.entries());
    double var = second - mean * mean;
    if (var < 0.0) {
        if (var < -kImagTol) {
            throw std::runtime_error("variance " + std::to_string(var) +
                                     " below tolerance; inputs are corrupted");
        }
        var = 0.0;
    }
    return var;
}

double purity(const DensityMatrix& rho) {
    return (rho.entries() * rho.entries()).trace().real();
}

DensityMatrix ensemble_to_density(const SeparableEnsemble& e) {
    const int n = e.dims().total();
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& t : e.terms()) {
        sum += t.weight * kron(t.rho1.entries(), t.rho2.entries());
    }
    return DensityMatrix(e.dims(), std::move(sum));
}

Matrix partial_transpose(const DensityMatrix& rho, int slot) {
    if (slot != 1 && slot != 2) {
        throw std::invalid_argument("slot must be 1 or 2");
    }
    const auto [d1, d2] = rho.dims();
    const Matrix& m = rho.entries();
    Matrix out(d1 * d2, d1 * d2);
    for (int i1 = 0; i1 < d1; ++i1) {
        for (int i2 = 0; i2 < d2; ++i2) {
            for (int j1 = 0; j1 < d1; ++j1) {
                for (int j2 = 0; j2 < d2; ++j2) {
                    const int row = i1 * d2 + i2;
                    const int col = j1 * d2 + j2;
                    const int src_row = (slot == 1 ? j1 : i1) * d2 + (slot == 2 ? j2 : i2);
                    const int src_col = (slot == 1 ? i1 : j1) * d2 + (slot == 2 ? i2 : j2);
                    out(row, col) = m(src_row, src_col);
                }
            }
        }
    }
    return out;
}

DensityMatrix reduce(const DensityMatrix& rho, int keep_slot) {
    if (keep_slot != 1 && keep_slot != 2) {
        throw std::invalid_argument("slot must be 1 or 2");
    }
    const auto [d1, d2] = rho.dims();
    const Matrix& m = rho.entries();
    if (keep_slot == 1) {
        Matrix out = Matrix::Zero(d1, d1);
        for (int i = 0; i < d1; ++i) {
            for (int j = 0; j < d1; ++j) {
                for (int k = 0; k < d2; ++k) {
                    out(i, j) += m(i * d2 + k, j * d2 + k);
                }
            }
        }
        return DensityMatrix::single(std::move(out));
    }
    Matrix out = Matrix::Zero(d2, d2);
    for (int i = 0; i < d2; ++i) {
        for (int j = 0; j < d2; ++j) {
            for (int k = 0; k < d1; ++k) {
                out(i, j) += m(k * d2 + i, k * d2 + j);
            }
        }
    }
    return DensityMatrix::single(std::move(out));
}

DensityMatrix bell_state(BellState which) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (which) {
        case BellState::phi_plus:
            psi(0) = inv_sqrt2;
            psi(3) = inv_sqrt2;
            break;
        case BellState::phi_minus:
            psi(0) = inv_sqrt2;
            psi(3) = -inv_sqrt2;
            break;
        case BellState::psi_plus:
            psi(1) = inv_sqrt2;
            psi(2) = inv_sqrt2;
            break;
        case BellState::psi_minus:
            psi(1) = inv_sqrt2;
            psi(2) = -inv_sqrt2;
            break;
    }
    return DensityMatrix::pure(Dims{2, 2}, psi);
}

DensityMatrix werner_state(double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("werner parameter must lie in [0, 1]");
    }
    const Matrix singlet = bell_state(BellState::psi_minus).entries();
    Matrix m = p * singlet + (1.0 - p) * 0.25 * Matrix::Identity(4, 4);
    return DensityMatrix(Dims{2, 2}, std::move(m));
}

namespace {

Eigen::VectorXcd random_pure_vector(int dim, Rng& rng) {
    Eigen::VectorXcd psi(dim);
    for (int i = 0; i < dim; ++i) {
        psi(i) = rng.complex_normal();
    }
    return psi / psi.norm();
}

std::vector<double> simplex_weights(int n, Rng& rng) {
    // Dirichlet(1, ..., 1) via exponential spacings.
    std::vector<double> w(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        while (u == 0.0) u = rng.uniform();
        w[i] = -std::log(u);
        total += w[i];
    }
    for (double& x : w) x /= total;
    return w;
}

DensityMatrix random_mixed_single(int dim, Rng& rng) {
    const auto weights = simplex_weights(dim, rng);
    Matrix m = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const Eigen::VectorXcd psi = random_pure_vector(dim, rng);
        m += weights[i] * (psi * psi.adjoint());
    }
    return DensityMatrix::single(std::move(m));
}

} // namespace

SeparableEnsemble random_product_ensemble(Dims dims, int k, std::uint64_t seed) {
    if (k < 1) {
        throw std::invalid_argument("ensemble term count must be >= 1");
    }
    if (k > SeparableEnsemble::kMaxTerms) {
        throw std::invalid_argument("ensemble term count exceeds the cap of 64");
    }
    Rng rng(seed);
    const auto weights = simplex_weights(k, rng);
    std::vector<EnsembleTerm> terms;
    terms.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        DensityMatrix rho1 = random_mixed_single(dims.d1, rng);
        DensityMatrix rho2 = random_mixed_single(dims.d2, rng);
        terms.push_back(EnsembleTerm{weights[static_cast<std::size_t>(i)], std::move(rho1),
                                     std::move(rho2)});
    }
    return SeparableEnsemble(dims, std::move(terms));
}

DensityMatrix random_density_matrix(Dims dims, std::uint64_t seed) {
    Rng rng(seed);
    const int n = dims.total();
    Matrix g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g(i, j) = rng.complex_normal();
        }
    }
    Matrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix(dims, std::move(m));
}

HermitianOperator random_hermitian(int dim, Rng& rng) {
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            a(i, j) = rng.complex_normal();
        }
    }
    return HermitianOperator(0.5 * (a + a.adjoint().eval()));
}

ObservablePair random_pair(int dim, Rng& rng) {
    HermitianOperator r = random_hermitian(dim, rng);
    HermitianOperator s = random_hermitian(dim, rng);
    return ObservablePair(std::move(r), std::move(s));
}

} // namespace entwit
