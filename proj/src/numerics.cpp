// SPDX-License-Identifier: Apache-2.0
#include "chorder/numerics.hpp"

#include "chorder/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

namespace chorder::numerics {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kPriceTol = 1e-12;
constexpr long kRefactorEvery = 50;

// Revised simplex state for the phase-one problem
//   min 1^T a  s.t.  S [C; 1^T] g + a = |b|,  g, a >= 0
// with S = diag(sign(b)). Artificial variables carry indices n..n+m-1.
class PhaseOne {
public:
    PhaseOne(const Matrix& columns, const Vector& target)
        : cols_(columns), n_(columns.cols()), m_(columns.rows() + 1) {
        rhs_.resize(m_);
        rhs_.head(m_ - 1) = target;
        rhs_(m_ - 1) = 1.0;
        sign_.resize(m_);
        for (Index i = 0; i < m_; ++i) sign_(i) = rhs_(i) < 0.0 ? -1.0 : 1.0;
        rhs_ = rhs_.cwiseAbs();

        basis_.resize(static_cast<std::size_t>(m_));
        in_basis_.assign(static_cast<std::size_t>(n_), false);
        for (Index i = 0; i < m_; ++i) basis_[static_cast<std::size_t>(i)] = n_ + i;
        binv_ = Matrix::Identity(m_, m_);
        xb_ = rhs_;
    }

    long run() {
        const long cap = std::max<long>(100000, 50 * static_cast<long>(n_ + m_));
        long iter = 0;
        for (;; ++iter) {
            if (iter >= cap) throw DomainError("simplex iteration cap reached");
            if (iter > 0 && iter % kRefactorEvery == 0) refactor();

            const Vector y = duals();
            const Vector ys = y.cwiseProduct(sign_);
            const Vector h = ys.head(m_ - 1);
            const double h0 = ys(m_ - 1);

            // Bland: lowest-index structural column with negative reduced cost.
            Index enter = -1;
            for (Index j = 0; j < n_; ++j) {
                if (in_basis_[static_cast<std::size_t>(j)]) continue;
                const double reduced = -(h.dot(cols_.col(j)) + h0);
                if (reduced < -kPriceTol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) break;

            const Vector u = binv_ * column(enter);
            double best = std::numeric_limits<double>::infinity();
            for (Index i = 0; i < m_; ++i)
                if (u(i) > kPivotTol) best = std::min(best, std::max(xb_(i), 0.0) / u(i));
            // ties go to the lowest basic variable index (Bland)
            Index leave = -1;
            for (Index i = 0; i < m_; ++i) {
                if (u(i) <= kPivotTol) continue;
                if (std::max(xb_(i), 0.0) / u(i) > best + 1e-14 * (1.0 + best)) continue;
                if (leave < 0 || basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])
                    leave = i;
            }
            // Phase one is bounded below by zero, so an unbounded ray signals
            // numerical trouble; refactor and retry once before giving up.
            if (leave < 0) {
                refactor();
                const Vector u2 = binv_ * column(enter);
                if ((u2.array() > kPivotTol).any()) continue;
                throw DomainError("simplex encountered an unbounded ray in phase one");
            }
            pivot(leave, enter, u);
        }
        refactor();
        return iter;
    }

    Vector duals() const {
        Vector cb(m_);
        for (Index i = 0; i < m_; ++i) cb(i) = basis_[static_cast<std::size_t>(i)] >= n_ ? 1.0 : 0.0;
        return binv_.transpose() * cb;
    }

    double objective() const {
        double total = 0.0;
        for (Index i = 0; i < m_; ++i)
            if (basis_[static_cast<std::size_t>(i)] >= n_) total += std::max(xb_(i), 0.0);
        return total;
    }

    Vector weights() const {
        Vector w = Vector::Zero(n_);
        for (Index i = 0; i < m_; ++i) {
            const Index j = basis_[static_cast<std::size_t>(i)];
            if (j < n_) w(j) = std::max(xb_(i), 0.0);
        }
        return w;
    }

    const Vector& sign() const { return sign_; }

private:
    Vector column(Index j) const {
        Vector c(m_);
        if (j < n_) {
            c.head(m_ - 1) = cols_.col(j);
            c(m_ - 1) = 1.0;
            return c.cwiseProduct(sign_);
        }
        c.setZero();
        c(j - n_) = 1.0;
        return c;
    }

    void pivot(Index row, Index enter, const Vector& u) {
        const double p = u(row);
        binv_.row(row) /= p;
        xb_(row) /= p;
        for (Index i = 0; i < m_; ++i) {
            if (i == row || u(i) == 0.0) continue;
            binv_.row(i) -= u(i) * binv_.row(row);
            xb_(i) -= u(i) * xb_(row);
        }
        const Index old = basis_[static_cast<std::size_t>(row)];
        if (old < n_) in_basis_[static_cast<std::size_t>(old)] = false;
        basis_[static_cast<std::size_t>(row)] = enter;
        in_basis_[static_cast<std::size_t>(enter)] = true;
    }

    void refactor() {
        Matrix b(m_, m_);
        for (Index i = 0; i < m_; ++i) b.col(i) = column(basis_[static_cast<std::size_t>(i)]);
        Eigen::PartialPivLU<Matrix> lu(b);
        binv_ = lu.inverse();
        xb_ = binv_ * rhs_;
    }

    const Matrix& cols_;
    Index n_;
    Index m_;
    Vector rhs_;
    Vector sign_;
    std::vector<Index> basis_;
    std::vector<bool> in_basis_;
    Matrix binv_;
    Vector xb_;
};

void validate(const FeasibilityProblem& problem) {
    if (problem.columns.cols() == 0) throw InputError("feasibility problem has no columns");
    if (problem.columns.rows() != problem.target.size()) {
        std::ostringstream os;
        os << "dimension mismatch: columns have length " << problem.columns.rows() << ", target has length "
           << problem.target.size();
        throw InputError(os.str());
    }
    if (!(problem.tolerance >= 0.0)) throw InputError("tolerance must be nonnegative");
    if (!all_finite(problem.columns) || !all_finite(problem.target))
        throw InputError("feasibility problem contains non-finite values");
}

} // namespace

bool all_finite(const Matrix& matrix) { return matrix.array().isFinite().all(); }

double replay_residual(const FeasibilityProblem& problem, const Vector& weights) {
    if (weights.size() != problem.columns.cols()) throw InputError("weight vector has wrong length");
    const double mix = (problem.columns * weights - problem.target).cwiseAbs().maxCoeff();
    return std::max(mix, std::abs(weights.sum() - 1.0));
}

double separation_margin(const FeasibilityProblem& problem, const Vector& separator) {
    if (separator.size() != problem.target.size()) throw InputError("separator has wrong length");
    const double best_column = (separator.transpose() * problem.columns).maxCoeff();
    return separator.dot(problem.target) - best_column;
}

FeasibilityCertificate solve_feasibility(const FeasibilityProblem& problem) {
    validate(problem);

    PhaseOne simplex(problem.columns, problem.target);
    FeasibilityCertificate cert;
    cert.iterations = simplex.run();

    const Vector w = simplex.weights();
    const double replay = replay_residual(problem, w);
    if (replay <= problem.tolerance) {
        cert.status = FeasibilityStatus::Feasible;
        cert.weights = w;
        cert.residual = replay;
        return cert;
    }

    // Optimal phase-one duals give y with y^T S [c_j; 1] <= 0 for every column
    // and y^T |b| = objective > 0.
    const Vector ys = simplex.duals().cwiseProduct(simplex.sign());
    Vector h = ys.head(problem.target.size());
    const double scale = h.cwiseAbs().maxCoeff();
    if (scale > 0.0) h /= scale;
    cert.status = FeasibilityStatus::Infeasible;
    cert.separator = h;
    cert.residual = simplex.objective();
    cert.margin = separation_margin(problem, h);
    return cert;
}

SvdResult svd(const Matrix& matrix) {
    if (!all_finite(matrix)) throw InputError("svd: matrix has non-finite entries");
    if (matrix.size() == 0) return {Matrix::Identity(matrix.rows(), matrix.rows()), Vector(), Matrix::Identity(matrix.cols(), matrix.cols())};
    Eigen::JacobiSVD<Matrix> solver(matrix, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

Vector singular_values(const Matrix& matrix) {
    if (!all_finite(matrix)) throw InputError("svd: matrix has non-finite entries");
    if (matrix.size() == 0) return Vector();
    return Eigen::JacobiSVD<Matrix>(matrix).singularValues();
}

Matrix inverse_sqrt_spd(const Matrix& matrix) {
    if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
        throw InputError("inverse_sqrt_spd: matrix must be square and nonempty");
    if (!all_finite(matrix)) throw InputError("inverse_sqrt_spd: matrix has non-finite entries");
    const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, matrix.cwiseAbs().maxCoeff())) {
        std::ostringstream os;
        os << "matrix is not symmetric (max asymmetry " << asym << ")";
        throw DomainError(os.str());
    }
    const Matrix sym = 0.5 * (matrix + matrix.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    const Vector& lambda = eig.eigenvalues();  // ascending
    const double lmax = lambda(lambda.size() - 1);
    const double lmin = lambda(0);
    if (!(lmax > 0.0) || !(lmin > 1e-12 * lmax)) {
        std::ostringstream os;
        os << "matrix is not positive definite: eigenvalue " << lmin << " (largest " << lmax << ")";
        throw DomainError(os.str());
    }
    const Matrix& v = eig.eigenvectors();
    return v * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Matrix sample_gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
    if (rows < 1 || cols < 1) throw InputError("sample_gaussian_matrix: rows and cols must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix out(rows, cols);
    // row-major fill so the draw order does not depend on storage order
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) out(i, j) = normal(rng);
    return out;
}

} // namespace chorder::numerics
