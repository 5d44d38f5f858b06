// SPDX-License-Identifier: Apache-2.0
//
// Linear Gaussian channels Y = H X + V, V ~ N(0, Sigma).
//
// Output processing C and input processing B with ||B|| <= 1 degrade a
// channel to (C H B, C Sigma C^T). Whitening and an SVD reduce every channel
// to the sorted singular values of Sigma^{-1/2} H; two channels are ordered
// exactly when these vectors are ordered element-wise, and element-wise
// max / min give the lattice operations.
#pragma once

#include "chorder/numerics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace chorder::lgc {

using numerics::Index;
using numerics::Matrix;
using numerics::Vector;

class GaussianChannel {
public:
    /// Throws InputError on shape mismatch, DomainError unless Sigma is SPD
    /// (symmetric within 1e-12, smallest eigenvalue > 1e-12 * largest).
    GaussianChannel(Matrix h, Matrix sigma);

    const Matrix& h() const noexcept { return h_; }
    const Matrix& sigma() const noexcept { return sigma_; }
    Index outputs() const noexcept { return h_.rows(); }
    Index inputs() const noexcept { return h_.cols(); }

private:
    Matrix h_;
    Matrix sigma_;
};

/// Sorted (nonincreasing) nonnegative singular values of a whitened channel.
class SingularSpectrum {
public:
    /// Throws InputError unless values are finite, >= 0 and nonincreasing.
    explicit SingularSpectrum(std::vector<double> values);

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Copy zero-padded to `length` (a missing stream has zero SNR).
    SingularSpectrum padded(std::size_t length) const;

    bool operator==(const SingularSpectrum&) const = default;

private:
    std::vector<double> values_;
};

SingularSpectrum canonicalize(const GaussianChannel& channel);

struct Included {};
struct NotIncluded {
    std::size_t index = 0;  // first k with worse[k] > better[k] + tolerance
    double excess = 0.0;
};
using InclusionResult = std::variant<Included, NotIncluded>;

inline bool is_included(const InclusionResult& r) { return std::holds_alternative<Included>(r); }

InclusionResult includes(const SingularSpectrum& better, const SingularSpectrum& worse, double tolerance = 1e-9);
InclusionResult includes(const GaussianChannel& better, const GaussianChannel& worse, double tolerance = 1e-9);

SingularSpectrum lub(const SingularSpectrum& a, const SingularSpectrum& b);
SingularSpectrum glb(const SingularSpectrum& a, const SingularSpectrum& b);

/// Spectra equal element-wise within tol after zero padding.
bool spectra_match(const SingularSpectrum& a, const SingularSpectrum& b, double tol);

struct Equivalent {};
struct NotEquivalent {
    std::vector<std::string> failed_conditions;
    std::optional<SingularSpectrum> transformed;  // present when the transformed channel could be built
};
using EquivalenceResult = std::variant<Equivalent, NotEquivalent>;

/// Checks the hypotheses for (C H B, C Sigma C^T) to be equivalent to
/// (H, Sigma) and compares canonical spectra. B must be right-invertible with
/// all singular values within tolerance of 1; C must be left-invertible. A
/// tall C gives a rank-deficient covariance; the transformed channel is then
/// restricted to the range of C Sigma C^T before whitening. Throws InputError
/// on incompatible dimensions.
EquivalenceResult verify_equivalence_transform(const GaussianChannel& channel, const Matrix& b, const Matrix& c,
                                               double tolerance = 1e-9);

/// Haar-distributed orthogonal matrix: Q of a QR factorization of an i.i.d.
/// Gaussian matrix, with column signs fixed so that R has a positive diagonal.
Matrix sample_haar_orthogonal(Index n, std::uint64_t seed);

struct SingularEnsemble {
    std::vector<SingularSpectrum> samples;
    std::uint64_t seed = 0;
    std::string copula_note;

    std::size_t dimension() const { return samples.empty() ? 0 : samples.front().size(); }
};

/// H with i.i.d. N(0, scale^2) entries.
struct GaussianEntries {
    Index rows = 1;
    Index cols = 1;
    double scale = 1.0;
};
/// Q_left * fixed * Q_right with independent Haar factors.
struct HaarRotated {
    Matrix fixed;
    bool rotate_left = true;
    bool rotate_right = true;
};
struct SampleList {
    std::vector<Matrix> matrices;
};
using EnsembleSampler = std::variant<GaussianEntries, HaarRotated, SampleList>;

/// Canonical spectra of n_samples draws (identity noise). Sample i uses the
/// sub-stream derive_seed(seed, i), so equal seeds pair samples across
/// samplers. A SampleList is used as given (n_samples is ignored).
SingularEnsemble ensemble_from_sampler(const EnsembleSampler& sampler, std::size_t n_samples, std::uint64_t seed);

enum class OrderDirection { Equal, FirstDominates, SecondDominates };
std::string to_string(OrderDirection d);

struct Ordered {
    OrderDirection direction = OrderDirection::Equal;
    double max_margin = 0.0;       // largest CDF gap in the favourable direction
    std::size_t violations = 0;    // grid points where the raw inequality fails
};
struct NotOrdered {
    double max_violation = 0.0;    // the smaller of the two directions' worst CDF excess
};
using EnsembleOrder = std::variant<Ordered, NotOrdered>;

/// DKW-style band 2 sqrt(ln(2/delta) / (2N)).
double dkw_band(std::size_t n, double delta = 0.05);

/// Coordinate-wise comparison of empirical marginal CDFs on an n_grid-point
/// grid per coordinate. The common-copula assumption is the caller's.
/// Throws InputError for empty or dimensionally inconsistent ensembles.
EnsembleOrder ensemble_order(const SingularEnsemble& a, const SingularEnsemble& b, std::size_t n_grid = 200,
                             double delta = 0.05);

/// Coordinate-wise quantile max / min under the copula of `a`: sample i of the
/// result takes, in each coordinate, the max / min of the two marginal
/// quantiles at the rank of a's sample i. Samples that come out unsorted
/// (possible only when the copulas differ) are sorted and counted in the note.
SingularEnsemble ensemble_lub(const SingularEnsemble& a, const SingularEnsemble& b);
SingularEnsemble ensemble_glb(const SingularEnsemble& a, const SingularEnsemble& b);

} // namespace chorder::lgc
