// SPDX-License-Identifier: Apache-2.0
//
// Channel inclusion between discrete memoryless channels.
//
// A channel K1 (n1 x m1) includes K2 (n2 x m2) when K2 is a convex mixture of
// products R K1 T with R an n2 x n1 input degradation and T an m1 x m2 output
// degradation. Both R and T may be taken deterministic (0/1 rows), so the
// decision reduces to convex-hull membership over the finite set of
// n1^n2 * m2^m1 deterministic pairs.
#pragma once

#include "chorder/numerics.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace chorder::dmc {

using numerics::Index;
using numerics::Matrix;

/// Row-stochastic matrix, rows indexed by channel input.
class StochasticMatrix {
public:
    /// Validates row sums (within 1e-12 of 1) and entry range; clamps entries
    /// that are within 1e-12 outside [0, 1]. Throws InputError otherwise.
    explicit StochasticMatrix(Matrix entries);

    const Matrix& entries() const noexcept { return entries_; }
    Index inputs() const noexcept { return entries_.rows(); }
    Index outputs() const noexcept { return entries_.cols(); }

private:
    Matrix entries_;
};

/// Binary symmetric channel with crossover probability p.
StochasticMatrix bsc(double p);

/// Deterministic input/output degradation. `input_map[i]` is the including
/// channel input fed when the included channel sees input i; `output_map[y]`
/// is the included-channel output reported for including-channel output y.
struct DeterministicPair {
    std::vector<Index> input_map;
    std::vector<Index> output_map;
    Index output_size = 0;

    bool operator==(const DeterministicPair&) const = default;
};

/// R K T for the 0/1 matrices encoded by `pair`.
Matrix apply_pair(const StochasticMatrix& channel, const DeterministicPair& pair);

struct InclusionWitness {
    std::vector<DeterministicPair> pairs;
    std::vector<double> weights;
    double residual = 0.0;
};

/// Linear functional on n2 x m2 matrices separating the worse channel from
/// every degraded version of the better one: <S, K2> - max <S, R K1 T> = margin.
struct Separator {
    Matrix functional;
    double margin = 0.0;
};

struct InclusionResult {
    std::variant<InclusionWitness, Separator> outcome;

    bool included() const noexcept { return std::holds_alternative<InclusionWitness>(outcome); }
    const InclusionWitness& witness() const { return std::get<InclusionWitness>(outcome); }
    const Separator& separator() const { return std::get<Separator>(outcome); }
};

struct InclusionOptions {
    double tolerance = 1e-9;
    double cap = 1e6;
};

/// n1^n2 * m2^m1 as a double (no overflow for large alphabets).
double enumeration_size(const StochasticMatrix& better, const StochasticMatrix& worse);

/// Decides whether `better` includes `worse`. Throws EnumerationTooLarge when
/// the deterministic-pair count exceeds options.cap.
InclusionResult includes(const StochasticMatrix& better, const StochasticMatrix& worse,
                         const InclusionOptions& options = {});

/// Mutual inclusion.
bool equivalent(const StochasticMatrix& a, const StochasticMatrix& b, const InclusionOptions& options = {});

/// Forward shared-randomness degradation sum_k weights[k] R_k K T_k.
StochasticMatrix degrade(const StochasticMatrix& channel, const std::vector<DeterministicPair>& pairs,
                         const std::vector<double>& weights);

/// Max |sum_k w_k R_k K1 T_k - K2|; used to replay witnesses.
double witness_residual(const StochasticMatrix& better, const StochasticMatrix& worse,
                        const InclusionWitness& witness);

/// Smallest average error probability over all deterministic codebooks of
/// `n_messages` codewords of length `block_length`, with maximum-likelihood
/// decoding (ties to the lowest message index) on the memoryless extension.
/// Exhaustive; throws EnumerationTooLarge when (inputs^block_length)^n_messages > cap.
double best_error_probability(const StochasticMatrix& channel, int n_messages, int block_length,
                              double cap = 1e6);

} // namespace chorder::dmc
