// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace chorder::numerics {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Convex-hull membership query: is `target` a convex combination of the
/// columns of `columns`?
struct FeasibilityProblem {
    Matrix columns;  // one candidate point per column
    Vector target;
    double tolerance = 1e-9;
};

enum class FeasibilityStatus { Feasible, Infeasible };

/// Outcome of solve_feasibility. When Feasible, `weights` is a probability
/// vector over the columns that reproduces the target. When Infeasible,
/// `separator` is a functional h (unit max-norm) with
/// <h, target> - max_j <h, column_j> = margin > 0.
struct FeasibilityCertificate {
    FeasibilityStatus status = FeasibilityStatus::Infeasible;
    Vector weights;
    Vector separator;
    double residual = 0.0;  // max(|C w - t|_inf, |sum w - 1|) for Feasible, phase-one objective otherwise
    double margin = 0.0;
    long iterations = 0;

    bool feasible() const noexcept { return status == FeasibilityStatus::Feasible; }
};

/// Phase-one revised simplex with Bland's rule on [C; 1^T] g = [t; 1], g >= 0.
/// Deterministic for a fixed input. Throws InputError on inconsistent shapes,
/// an empty column set, a negative tolerance or non-finite data.
FeasibilityCertificate solve_feasibility(const FeasibilityProblem& problem);

/// Replay helpers; these recompute from scratch and do not trust the solver.
double replay_residual(const FeasibilityProblem& problem, const Vector& weights);
double separation_margin(const FeasibilityProblem& problem, const Vector& separator);

struct SvdResult {
    Matrix left;    // rows x rows, orthogonal
    Vector values;  // min(rows, cols), nonincreasing
    Matrix right;   // cols x cols, orthogonal
};

/// Full singular value decomposition, matrix = left * diag(values) * right^T.
SvdResult svd(const Matrix& matrix);

/// Singular values only, nonincreasing.
Vector singular_values(const Matrix& matrix);

/// Symmetric inverse square root S of an SPD matrix, so that S * M * S^T = I.
/// Throws DomainError naming the offending eigenvalue when M is not SPD.
Matrix inverse_sqrt_spd(const Matrix& matrix);

/// i.i.d. standard normal entries, reproducible for a fixed seed.
Matrix sample_gaussian_matrix(Index rows, Index cols, std::uint64_t seed);

/// Independent sub-stream seed (splitmix64 of seed and stream index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

bool all_finite(const Matrix& matrix);

} // namespace chorder::numerics
