// SPDX-License-Identifier: Apache-2.0
#include "chorder/lgc.hpp"

#include "chorder/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace chorder::lgc {

namespace {

SingularSpectrum to_spectrum(const Vector& v) {
    std::vector<double> values(v.data(), v.data() + v.size());
    std::sort(values.begin(), values.end(), std::greater<>());
    return SingularSpectrum(std::move(values));
}

template <typename Op>
SingularSpectrum elementwise(const SingularSpectrum& a, const SingularSpectrum& b, Op op) {
    const std::size_t len = std::max(a.size(), b.size());
    const auto pa = a.padded(len).values();
    const auto pb = b.padded(len).values();
    std::vector<double> out(len);
    for (std::size_t k = 0; k < len; ++k) out[k] = op(pa[k], pb[k]);
    return SingularSpectrum(std::move(out));
}

// Spectrum of (H, Sigma) where Sigma may be singular: whiten on the range of
// Sigma. Returns nullopt when part of the signal lies outside that range
// (a noiseless direction, i.e. infinite SNR).
std::optional<SingularSpectrum> range_whitened_spectrum(const Matrix& h, const Matrix& sigma) {
    const Matrix sym = 0.5 * (sigma + sigma.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    const Vector& lambda = eig.eigenvalues();
    const double lmax = lambda.maxCoeff();
    if (!(lmax > 0.0)) return std::nullopt;
    std::vector<Index> keep;
    for (Index i = 0; i < lambda.size(); ++i)
        if (lambda(i) > 1e-10 * lmax) keep.push_back(i);
    Matrix basis(sym.rows(), static_cast<Index>(keep.size()));
    Vector scale(static_cast<Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
        basis.col(static_cast<Index>(k)) = eig.eigenvectors().col(keep[k]);
        scale(static_cast<Index>(k)) = 1.0 / std::sqrt(lambda(keep[k]));
    }
    const Matrix outside = h - basis * (basis.transpose() * h);
    if (outside.size() > 0 && outside.cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, h.cwiseAbs().maxCoeff()))
        return std::nullopt;
    const Matrix whitened = scale.asDiagonal() * basis.transpose() * h;
    return to_spectrum(numerics::singular_values(whitened));
}

} // namespace

GaussianChannel::GaussianChannel(Matrix h, Matrix sigma) : h_(std::move(h)), sigma_(std::move(sigma)) {
    if (h_.rows() < 1 || h_.cols() < 1) throw InputError("channel matrix must be nonempty");
    if (sigma_.rows() != h_.rows() || sigma_.cols() != h_.rows())
        throw InputError("noise covariance must be square with one row per channel output");
    if (!numerics::all_finite(h_)) throw InputError("channel matrix has non-finite entries");
    numerics::inverse_sqrt_spd(sigma_);  // throws DomainError when not SPD
}

SingularSpectrum::SingularSpectrum(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k]) || values_[k] < 0.0) throw InputError("singular values must be finite and >= 0");
        if (k > 0 && values_[k] > values_[k - 1]) throw InputError("singular values must be nonincreasing");
    }
}

SingularSpectrum SingularSpectrum::padded(std::size_t length) const {
    if (length < values_.size()) throw InputError("cannot pad a spectrum to a shorter length");
    auto v = values_;
    v.resize(length, 0.0);
    return SingularSpectrum(std::move(v));
}

SingularSpectrum canonicalize(const GaussianChannel& channel) {
    const Matrix whitened = numerics::inverse_sqrt_spd(channel.sigma()) * channel.h();
    return to_spectrum(numerics::singular_values(whitened));
}

InclusionResult includes(const SingularSpectrum& better, const SingularSpectrum& worse, double tolerance) {
    if (!(tolerance >= 0.0)) throw InputError("tolerance must be nonnegative");
    const std::size_t len = std::max(better.size(), worse.size());
    const auto b = better.padded(len).values();
    const auto w = worse.padded(len).values();
    for (std::size_t k = 0; k < len; ++k)
        if (w[k] > b[k] + tolerance) return NotIncluded{k, w[k] - b[k]};
    return Included{};
}

InclusionResult includes(const GaussianChannel& better, const GaussianChannel& worse, double tolerance) {
    return includes(canonicalize(better), canonicalize(worse), tolerance);
}

SingularSpectrum lub(const SingularSpectrum& a, const SingularSpectrum& b) {
    return elementwise(a, b, [](double x, double y) { return std::max(x, y); });
}

SingularSpectrum glb(const SingularSpectrum& a, const SingularSpectrum& b) {
    return elementwise(a, b, [](double x, double y) { return std::min(x, y); });
}

bool spectra_match(const SingularSpectrum& a, const SingularSpectrum& b, double tol) {
    const std::size_t len = std::max(a.size(), b.size());
    const auto pa = a.padded(len).values();
    const auto pb = b.padded(len).values();
    for (std::size_t k = 0; k < len; ++k)
        if (std::abs(pa[k] - pb[k]) > tol) return false;
    return true;
}

EquivalenceResult verify_equivalence_transform(const GaussianChannel& channel, const Matrix& b, const Matrix& c,
                                               double tolerance) {
    if (b.rows() != channel.inputs()) {
        std::ostringstream os;
        os << "B must have " << channel.inputs() << " rows (channel inputs), got " << b.rows();
        throw InputError(os.str());
    }
    if (c.cols() != channel.outputs()) {
        std::ostringstream os;
        os << "C must have " << channel.outputs() << " columns (channel outputs), got " << c.cols();
        throw InputError(os.str());
    }
    if (!numerics::all_finite(b) || !numerics::all_finite(c)) throw InputError("B and C must be finite");

    std::vector<std::string> failed;
    const Vector sb = numerics::singular_values(b);
    const Vector sc = numerics::singular_values(c);
    if (b.rows() > b.cols() || sb.size() == 0 || sb.minCoeff() <= tolerance)
        failed.emplace_back("B is not right-invertible");
    if (sb.size() > 0 && sb.maxCoeff() > 1.0 + tolerance) failed.emplace_back("operator norm of B exceeds 1");
    if (sb.size() > 0 && (sb.array() - 1.0).abs().maxCoeff() > tolerance)
        failed.emplace_back("singular values of B not all 1");
    if (c.rows() < c.cols() || sc.size() == 0 || sc.minCoeff() <= tolerance)
        failed.emplace_back("C is not left-invertible");

    const Matrix h2 = c * channel.h() * b;
    const Matrix s2 = c * channel.sigma() * c.transpose();
    std::optional<SingularSpectrum> transformed = range_whitened_spectrum(h2, s2);
    if (!transformed) {
        failed.emplace_back("transformed channel has signal outside the noise range");
    } else if (const auto original = canonicalize(channel);
               !spectra_match(original, *transformed,
                              tolerance * std::max(1.0, original.size() ? original.values().front() : 1.0))) {
        failed.emplace_back("canonical spectra differ");
    }
    if (failed.empty()) return Equivalent{};
    return NotEquivalent{std::move(failed), std::move(transformed)};
}

Matrix sample_haar_orthogonal(Index n, std::uint64_t seed) {
    if (n < 1) throw InputError("Haar sampler needs n >= 1");
    const Matrix g = numerics::sample_gaussian_matrix(n, n, seed);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

SingularEnsemble ensemble_from_sampler(const EnsembleSampler& sampler, std::size_t n_samples, std::uint64_t seed) {
    SingularEnsemble out;
    out.seed = seed;
    if (const auto* list = std::get_if<SampleList>(&sampler)) {
        if (list->matrices.empty()) throw InputError("sample list is empty");
        for (const auto& m : list->matrices) {
            if (m.rows() != list->matrices.front().rows() || m.cols() != list->matrices.front().cols())
                throw InputError("sample list matrices differ in shape");
            out.samples.push_back(to_spectrum(numerics::singular_values(m)));
        }
        out.copula_note = "user-supplied samples; identity noise";
        return out;
    }
    if (n_samples == 0) throw InputError("n_samples must be >= 1");
    out.samples.reserve(n_samples);
    if (const auto* g = std::get_if<GaussianEntries>(&sampler)) {
        if (!(g->scale >= 0.0)) throw InputError("Gaussian sampler scale must be nonnegative");
        for (std::size_t i = 0; i < n_samples; ++i) {
            const Matrix h = g->scale * numerics::sample_gaussian_matrix(g->rows, g->cols, numerics::derive_seed(seed, i));
            out.samples.push_back(to_spectrum(numerics::singular_values(h)));
        }
        std::ostringstream os;
        os << "iid Gaussian entries, scale " << g->scale << ", sample i seeded by derive_seed(seed, i); identity noise";
        out.copula_note = os.str();
        return out;
    }
    const auto& haar = std::get<HaarRotated>(sampler);
    if (haar.fixed.size() == 0) throw InputError("fixed matrix is empty");
    for (std::size_t i = 0; i < n_samples; ++i) {
        const std::uint64_t s = numerics::derive_seed(seed, i);
        Matrix h = haar.fixed;
        if (haar.rotate_left) h = sample_haar_orthogonal(h.rows(), numerics::derive_seed(s, 0)) * h;
        if (haar.rotate_right) h = h * sample_haar_orthogonal(h.cols(), numerics::derive_seed(s, 1));
        out.samples.push_back(to_spectrum(numerics::singular_values(h)));
    }
    out.copula_note = "fixed matrix with independent Haar rotations; identity noise";
    return out;
}

std::string to_string(OrderDirection d) {
    switch (d) {
    case OrderDirection::Equal: return "Equal";
    case OrderDirection::FirstDominates: return "FirstDominates";
    case OrderDirection::SecondDominates: return "SecondDominates";
    }
    return "Equal";
}

double dkw_band(std::size_t n, double delta) {
    if (n == 0) throw InputError("DKW band needs a nonempty sample");
    return 2.0 * std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

namespace {

void check_ensemble(const SingularEnsemble& e) {
    if (e.samples.empty()) throw InputError("ensemble is empty");
    for (const auto& s : e.samples)
        if (s.size() != e.dimension()) throw InputError("ensemble samples differ in length");
}

std::vector<double> coordinate(const SingularEnsemble& e, std::size_t k) {
    std::vector<double> out;
    out.reserve(e.samples.size());
    for (const auto& s : e.samples) out.push_back(s.values()[k]);
    std::sort(out.begin(), out.end());
    return out;
}

double ecdf(const std::vector<double>& sorted, double x) {
    return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) /
           static_cast<double>(sorted.size());
}

} // namespace

EnsembleOrder ensemble_order(const SingularEnsemble& a, const SingularEnsemble& b, std::size_t n_grid, double delta) {
    check_ensemble(a);
    check_ensemble(b);
    if (a.dimension() != b.dimension()) throw InputError("ensembles have different spectrum lengths");
    if (n_grid < 2) throw InputError("n_grid must be >= 2");
    const double band = dkw_band(std::min(a.samples.size(), b.samples.size()), delta);

    // a_excess: max of F_a - F_b (a puts more mass low, so b would dominate)
    double a_excess = 0.0, b_excess = 0.0;
    std::size_t a_raw = 0, b_raw = 0;
    for (std::size_t k = 0; k < a.dimension(); ++k) {
        const auto ca = coordinate(a, k);
        const auto cb = coordinate(b, k);
        const double lo = std::min(ca.front(), cb.front());
        const double hi = std::max(ca.back(), cb.back());
        for (std::size_t g = 0; g < n_grid; ++g) {
            const double x = hi > lo ? lo + (hi - lo) * static_cast<double>(g) / static_cast<double>(n_grid - 1) : lo;
            const double diff = ecdf(ca, x) - ecdf(cb, x);
            a_excess = std::max(a_excess, diff);
            b_excess = std::max(b_excess, -diff);
            if (diff > 0.0) ++a_raw;
            if (diff < 0.0) ++b_raw;
        }
    }
    // a dominates b when F_a <= F_b + band everywhere
    const bool a_dominates = a_excess <= band;
    const bool b_dominates = b_excess <= band;
    if (a_dominates && b_dominates) return Ordered{OrderDirection::Equal, std::max(a_excess, b_excess), a_raw + b_raw};
    if (a_dominates) return Ordered{OrderDirection::FirstDominates, b_excess, a_raw};
    if (b_dominates) return Ordered{OrderDirection::SecondDominates, a_excess, b_raw};
    return NotOrdered{std::min(a_excess, b_excess)};
}

namespace {

SingularEnsemble quantile_combine(const SingularEnsemble& a, const SingularEnsemble& b, bool take_max) {
    check_ensemble(a);
    check_ensemble(b);
    if (a.dimension() != b.dimension()) throw InputError("ensembles have different spectrum lengths");
    const std::size_t n = a.samples.size();
    const std::size_t dim = a.dimension();
    std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return a.samples[x].values()[k] < a.samples[y].values()[k];
        });
        const auto cb = coordinate(b, k);
        for (std::size_t rank = 0; rank < n; ++rank) {
            const std::size_t i = order[rank];
            const double qa = a.samples[i].values()[k];
            const auto j = std::min(cb.size() - 1, rank * cb.size() / n);
            const double qb = cb[j];
            rows[i][k] = take_max ? std::max(qa, qb) : std::min(qa, qb);
        }
    }
    SingularEnsemble out;
    out.seed = a.seed;
    std::size_t resorted = 0;
    for (auto& r : rows) {
        if (!std::is_sorted(r.begin(), r.end(), std::greater<>())) {
            ++resorted;
            std::sort(r.begin(), r.end(), std::greater<>());
        }
        out.samples.emplace_back(std::move(r));
    }
    std::ostringstream os;
    os << "coordinate-wise quantile " << (take_max ? "max" : "min") << " under the copula of the first ensemble; "
       << resorted << " samples re-sorted";
    out.copula_note = os.str();
    return out;
}

} // namespace

SingularEnsemble ensemble_lub(const SingularEnsemble& a, const SingularEnsemble& b) { return quantile_combine(a, b, true); }
SingularEnsemble ensemble_glb(const SingularEnsemble& a, const SingularEnsemble& b) { return quantile_combine(a, b, false); }

} // namespace chorder::lgc
