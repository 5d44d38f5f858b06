// SPDX-License-Identifier: Apache-2.0
#include "chorder/dmc.hpp"

#include "chorder/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace chorder::dmc {

namespace {

constexpr double kStochasticTol = 1e-12;

// Digits of `value` in base `radix`, least significant first.
std::vector<Index> digits(std::uint64_t value, Index radix, Index count) {
    std::vector<Index> out(static_cast<std::size_t>(count));
    for (auto& d : out) {
        d = static_cast<Index>(value % static_cast<std::uint64_t>(radix));
        value /= static_cast<std::uint64_t>(radix);
    }
    return out;
}

std::uint64_t ipow(Index base, Index exp) {
    std::uint64_t r = 1;
    for (Index i = 0; i < exp; ++i) r *= static_cast<std::uint64_t>(base);
    return r;
}

struct ColumnHash {
    std::size_t operator()(const std::vector<double>& v) const noexcept {
        return std::hash<std::string_view>{}(
            std::string_view(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(double)));
    }
};

void validate_pair(const StochasticMatrix& channel, const DeterministicPair& pair) {
    if (pair.output_map.size() != static_cast<std::size_t>(channel.outputs()))
        throw InputError("output map length does not match channel outputs");
    if (pair.output_size < 1) throw InputError("output map codomain must be nonempty");
    for (Index x : pair.input_map)
        if (x < 0 || x >= channel.inputs()) throw InputError("input map value out of range");
    for (Index y : pair.output_map)
        if (y < 0 || y >= pair.output_size) throw InputError("output map value out of range");
}

Matrix row_major_reshape(const numerics::Vector& v, Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index k = 0; k < cols; ++k) m(i, k) = v(i * cols + k);
    return m;
}

} // namespace

StochasticMatrix::StochasticMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.cols() < 1) throw InputError("stochastic matrix must be nonempty");
    if (!numerics::all_finite(entries_)) throw InputError("stochastic matrix has non-finite entries");
    for (Index i = 0; i < entries_.rows(); ++i) {
        for (Index k = 0; k < entries_.cols(); ++k) {
            double& e = entries_(i, k);
            if (e < -kStochasticTol || e > 1.0 + kStochasticTol) {
                std::ostringstream os;
                os << "stochastic matrix entry (" << i << "," << k << ") = " << e << " outside [0,1]";
                throw InputError(os.str());
            }
            e = std::clamp(e, 0.0, 1.0);
        }
        const double s = entries_.row(i).sum();
        if (std::abs(s - 1.0) > kStochasticTol) {
            std::ostringstream os;
            os << "row " << i << " sums to " << s << ", not 1";
            throw InputError(os.str());
        }
    }
}

StochasticMatrix bsc(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("crossover probability must lie in [0,1]");
    Matrix m(2, 2);
    m << 1.0 - p, p, p, 1.0 - p;
    return StochasticMatrix(m);
}

Matrix apply_pair(const StochasticMatrix& channel, const DeterministicPair& pair) {
    validate_pair(channel, pair);
    const auto& k = channel.entries();
    Matrix out = Matrix::Zero(static_cast<Index>(pair.input_map.size()), pair.output_size);
    for (Index i = 0; i < out.rows(); ++i) {
        const Index x = pair.input_map[static_cast<std::size_t>(i)];
        for (Index y = 0; y < k.cols(); ++y) out(i, pair.output_map[static_cast<std::size_t>(y)]) += k(x, y);
    }
    return out;
}

double enumeration_size(const StochasticMatrix& better, const StochasticMatrix& worse) {
    return std::pow(static_cast<double>(better.inputs()), static_cast<double>(worse.inputs())) *
           std::pow(static_cast<double>(worse.outputs()), static_cast<double>(better.outputs()));
}

InclusionResult includes(const StochasticMatrix& better, const StochasticMatrix& worse,
                         const InclusionOptions& options) {
    const double count = enumeration_size(better, worse);
    if (count > options.cap) throw EnumerationTooLarge(count, options.cap);

    const Index n1 = better.inputs(), m1 = better.outputs();
    const Index n2 = worse.inputs(), m2 = worse.outputs();
    const std::uint64_t n_outputs_maps = ipow(m2, m1);
    const std::uint64_t total = ipow(n1, n2) * n_outputs_maps;
    const Index dim = n2 * m2;

    // Many pairs produce the same product; keep the first of each.
    std::unordered_map<std::vector<double>, std::uint64_t, ColumnHash> seen;
    std::vector<std::uint64_t> representative;
    std::vector<double> flat;
    std::vector<double> col(static_cast<std::size_t>(dim));
    const auto& k = better.entries();
    for (std::uint64_t alpha = 0; alpha < total; ++alpha) {
        const auto in_map = digits(alpha / n_outputs_maps, n1, n2);
        const auto out_map = digits(alpha % n_outputs_maps, m2, m1);
        std::fill(col.begin(), col.end(), 0.0);
        for (Index i = 0; i < n2; ++i) {
            const Index x = in_map[static_cast<std::size_t>(i)];
            for (Index y = 0; y < m1; ++y)
                col[static_cast<std::size_t>(i * m2 + out_map[static_cast<std::size_t>(y)])] += k(x, y);
        }
        if (seen.emplace(col, alpha).second) {
            representative.push_back(alpha);
            flat.insert(flat.end(), col.begin(), col.end());
        }
    }

    numerics::FeasibilityProblem problem;
    problem.columns = Eigen::Map<const Matrix>(flat.data(), dim, static_cast<Index>(representative.size()));
    problem.target.resize(dim);
    for (Index i = 0; i < n2; ++i)
        for (Index y = 0; y < m2; ++y) problem.target(i * m2 + y) = worse.entries()(i, y);
    problem.tolerance = options.tolerance;

    auto pair_of = [&](std::uint64_t alpha) {
        return DeterministicPair{digits(alpha / n_outputs_maps, n1, n2), digits(alpha % n_outputs_maps, m2, m1), m2};
    };

    // A single product that already matches is the sparsest witness.
    for (std::size_t j = 0; j < representative.size(); ++j) {
        const double gap = (problem.columns.col(static_cast<Index>(j)) - problem.target).cwiseAbs().maxCoeff();
        if (gap <= options.tolerance) return {InclusionWitness{{pair_of(representative[j])}, {1.0}, gap}};
    }

    const auto cert = numerics::solve_feasibility(problem);
    if (!cert.feasible())
        return {Separator{row_major_reshape(cert.separator, n2, m2), cert.margin}};

    InclusionWitness witness;
    for (Index j = 0; j < cert.weights.size(); ++j) {
        if (cert.weights(j) <= 0.0) continue;
        witness.pairs.push_back(pair_of(representative[static_cast<std::size_t>(j)]));
        witness.weights.push_back(cert.weights(j));
    }
    witness.residual = cert.residual;
    return {std::move(witness)};
}

bool equivalent(const StochasticMatrix& a, const StochasticMatrix& b, const InclusionOptions& options) {
    return includes(a, b, options).included() && includes(b, a, options).included();
}

StochasticMatrix degrade(const StochasticMatrix& channel, const std::vector<DeterministicPair>& pairs,
                         const std::vector<double>& weights) {
    if (pairs.empty()) throw InputError("degrade needs at least one pair");
    if (pairs.size() != weights.size()) throw InputError("pairs and weights differ in length");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw InputError("degradation weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw InputError("degradation weights must sum to 1");
    const auto rows = pairs.front().input_map.size();
    const Index cols = pairs.front().output_size;
    Matrix out = Matrix::Zero(static_cast<Index>(rows), cols);
    for (std::size_t a = 0; a < pairs.size(); ++a) {
        if (pairs[a].input_map.size() != rows || pairs[a].output_size != cols)
            throw InputError("degradation pairs have inconsistent dimensions");
        out += weights[a] * apply_pair(channel, pairs[a]);
    }
    // renormalize rounding so the result passes the 1e-12 row-sum check
    for (Index i = 0; i < out.rows(); ++i) out.row(i) /= out.row(i).sum();
    return StochasticMatrix(out);
}

double witness_residual(const StochasticMatrix& better, const StochasticMatrix& worse,
                        const InclusionWitness& witness) {
    Matrix mix = Matrix::Zero(worse.inputs(), worse.outputs());
    double total = 0.0;
    for (std::size_t a = 0; a < witness.pairs.size(); ++a) {
        const Matrix p = apply_pair(better, witness.pairs[a]);
        if (p.rows() != mix.rows() || p.cols() != mix.cols()) throw InputError("witness pair has wrong shape");
        mix += witness.weights[a] * p;
        total += witness.weights[a];
    }
    return std::max((mix - worse.entries()).cwiseAbs().maxCoeff(), std::abs(total - 1.0));
}

double best_error_probability(const StochasticMatrix& channel, int n_messages, int block_length, double cap) {
    if (n_messages < 1 || block_length < 1) throw InputError("n_messages and block_length must be >= 1");
    const Index n_in = channel.inputs(), n_out = channel.outputs();
    const double words = std::pow(static_cast<double>(n_in), block_length);
    const double count = std::pow(words, n_messages);
    if (count > cap || std::pow(static_cast<double>(n_out), block_length) > cap)
        throw EnumerationTooLarge(count, cap);

    // Memoryless extension: rows are input words, columns output words.
    const Index n_words = static_cast<Index>(words);
    const Index n_seq = static_cast<Index>(ipow(n_out, block_length));
    Matrix ext(n_words, n_seq);
    for (Index x = 0; x < n_words; ++x) {
        const auto xs = digits(static_cast<std::uint64_t>(x), n_in, block_length);
        for (Index y = 0; y < n_seq; ++y) {
            const auto ys = digits(static_cast<std::uint64_t>(y), n_out, block_length);
            double p = 1.0;
            for (int t = 0; t < block_length; ++t)
                p *= channel.entries()(xs[static_cast<std::size_t>(t)], ys[static_cast<std::size_t>(t)]);
            ext(x, y) = p;
        }
    }

    const auto total = static_cast<std::uint64_t>(count);
    double best = 1.0;
    std::vector<Index> codebook;
    for (std::uint64_t c = 0; c < total; ++c) {
        codebook = digits(c, n_words, n_messages);
        double correct = 0.0;
        for (Index y = 0; y < n_seq; ++y) {
            // ML decision, ties to the lowest message index
            std::size_t decided = 0;
            for (std::size_t msg = 1; msg < codebook.size(); ++msg)
                if (ext(codebook[msg], y) > ext(codebook[decided], y)) decided = msg;
            correct += ext(codebook[decided], y);
        }
        best = std::min(best, 1.0 - correct / n_messages);
    }
    return std::max(best, 0.0);
}

} // namespace chorder::dmc
