// SPDX-License-Identifier: Apache-2.0
#include "chorder/phase.hpp"

#include "chorder/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace chorder::phase {

namespace {

using namespace std::complex_literals;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCoeffTol = 1e-12;

std::size_t idx(int order, int m, int n) {
    const int w = 2 * order + 1;
    return static_cast<std::size_t>((m + order) * w + (n + order));
}

void require_order(int order) {
    if (order < 1) throw InputError("spectrum order must be >= 1");
}

template <typename... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

TorusSpectrum product_spectrum(const std::vector<Complex>& first, const std::vector<Complex>& second, int order,
                               SpectrumRole role) {
    const int w = 2 * order + 1;
    std::vector<Complex> c(static_cast<std::size_t>(w * w));
    for (int m = -order; m <= order; ++m)
        for (int n = -order; n <= order; ++n)
            c[idx(order, m, n)] = first[static_cast<std::size_t>(m + order)] * second[static_cast<std::size_t>(n + order)];
    return TorusSpectrum(order, std::move(c), role);
}

} // namespace

std::string to_string(SpectrumRole role) { return role == SpectrumRole::Channel ? "channel" : "degradation"; }

SpectrumRole spectrum_role_from_string(const std::string& name) {
    if (name == "channel") return SpectrumRole::Channel;
    if (name == "degradation") return SpectrumRole::Degradation;
    throw InputError("unknown spectrum role '" + name + "'");
}

double min_fejer_density(int order, const std::vector<Complex>& coeffs) {
    const int w = 2 * order + 1;
    const int g = 4 * order;
    std::vector<double> weight(static_cast<std::size_t>(w));
    for (int m = -order; m <= order; ++m)
        weight[static_cast<std::size_t>(m + order)] = 1.0 - std::abs(m) / static_cast<double>(order + 1);
    // twiddle[t] = e^{-j 2 pi t / g}
    std::vector<Complex> twiddle(static_cast<std::size_t>(g));
    for (int t = 0; t < g; ++t) twiddle[static_cast<std::size_t>(t)] = std::polar(1.0, -kTwoPi * t / g);
    auto tw = [&](int k, int t) { return twiddle[static_cast<std::size_t>(((k * t) % g + g) % g)]; };

    // inner[m][v] = sum_n w_n c[m,n] e^{-j n theta_v}
    std::vector<Complex> inner(static_cast<std::size_t>(w * g));
    for (int m = -order; m <= order; ++m)
        for (int v = 0; v < g; ++v) {
            Complex s = 0.0;
            for (int n = -order; n <= order; ++n)
                s += weight[static_cast<std::size_t>(n + order)] * coeffs[idx(order, m, n)] * tw(n, v);
            inner[static_cast<std::size_t>((m + order) * g + v)] = s;
        }
    double lowest = std::numeric_limits<double>::infinity();
    for (int h = 0; h < g; ++h)
        for (int v = 0; v < g; ++v) {
            Complex s = 0.0;
            for (int m = -order; m <= order; ++m)
                s += weight[static_cast<std::size_t>(m + order)] * tw(m, h) *
                     inner[static_cast<std::size_t>((m + order) * g + v)];
            lowest = std::min(lowest, s.real());
        }
    return lowest / (kTwoPi * kTwoPi);
}

TorusSpectrum::TorusSpectrum(int order, std::vector<Complex> coeffs, SpectrumRole role, double gibbs_tol)
    : order_(order), coeffs_(std::move(coeffs)), role_(role) {
    require_order(order_);
    const int w = width();
    if (coeffs_.size() != static_cast<std::size_t>(w * w)) {
        std::ostringstream os;
        os << "spectrum of order " << order_ << " needs " << w * w << " coefficients, got " << coeffs_.size();
        throw InputError(os.str());
    }
    for (const auto& c : coeffs_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InputError("spectrum has non-finite coefficient");
    if (std::abs(at(0, 0) - 1.0) > kCoeffTol) throw InputError("spectrum coefficient [0,0] must equal 1");
    for (int m = -order_; m <= order_; ++m)
        for (int n = -order_; n <= order_; ++n) {
            const Complex c = at(m, n);
            if (std::abs(c - std::conj(at(-m, -n))) > kCoeffTol) {
                std::ostringstream os;
                os << "spectrum is not Hermitian at (" << m << "," << n << ")";
                throw InputError(os.str());
            }
            if (std::abs(c) > 1.0 + kCoeffTol) {
                std::ostringstream os;
                os << "spectrum coefficient (" << m << "," << n << ") has modulus " << std::abs(c) << " > 1";
                throw InputError(os.str());
            }
        }
    const double low = min_fejer_density(order_, coeffs_);
    if (low < -gibbs_tol) {
        std::ostringstream os;
        os << "reconstructed density is negative (" << low << ")";
        throw InputError(os.str());
    }
}

Complex TorusSpectrum::at(int m, int n) const {
    if (std::abs(m) > order_ || std::abs(n) > order_) throw InputError("spectrum index out of range");
    return coeffs_[idx(order_, m, n)];
}

TorusSpectrum TorusSpectrum::with_role(SpectrumRole role) const {
    TorusSpectrum copy = *this;
    copy.role_ = role;
    return copy;
}

std::vector<Complex> from_wrapped(const WrappedFamily& family, int order) {
    require_order(order);
    std::vector<Complex> seq(static_cast<std::size_t>(2 * order + 1));
    for (int m = -order; m <= order; ++m) {
        auto& out = seq[static_cast<std::size_t>(m + order)];
        const double md = m;
        out = std::visit(
            Overloaded{
                [&](const WrappedGaussian& f) -> Complex {
                    if (!(f.sigma2 >= 0.0)) throw InputError("wrapped Gaussian needs sigma2 >= 0");
                    return std::polar(std::exp(-0.5 * f.sigma2 * md * md), md * f.mean);
                },
                [&](const WrappedCauchy& f) -> Complex {
                    if (!(f.gamma >= 0.0)) throw InputError("wrapped Cauchy needs gamma >= 0");
                    return std::polar(std::exp(-f.gamma * std::abs(md)), md * f.mean);
                },
                [&](const UniformPhase&) -> Complex { return m == 0 ? 1.0 : 0.0; },
                [&](const PointPhase& f) -> Complex { return std::polar(1.0, md * f.angle); },
            },
            family);
    }
    return seq;
}

TorusSpectrum product_channel(const std::vector<Complex>& h_marginal, const std::vector<Complex>& v_marginal,
                              SpectrumRole role) {
    if (h_marginal.size() != v_marginal.size() || h_marginal.size() % 2 == 0 || h_marginal.size() < 3)
        throw InputError("marginal sequences must have equal odd length 2M+1 with M >= 1");
    const int order = static_cast<int>(h_marginal.size() / 2);
    return product_spectrum(h_marginal, v_marginal, order, role);
}

TorusSpectrum from_grid(const Eigen::MatrixXd& pdf, int order, SpectrumRole role) {
    require_order(order);
    if (pdf.size() == 0) throw InputError("pdf grid is empty");
    if (!pdf.array().isFinite().all() || (pdf.array() < 0.0).any())
        throw InputError("pdf grid must be finite and nonnegative");
    const double total = pdf.sum();
    if (!(total > 0.0)) throw InputError("pdf grid is all zero");

    const auto rows = static_cast<int>(pdf.rows());
    const auto cols = static_cast<int>(pdf.cols());
    const int w = 2 * order + 1;
    auto table = [](int period) {
        std::vector<Complex> t(static_cast<std::size_t>(period));
        for (int k = 0; k < period; ++k) t[static_cast<std::size_t>(k)] = std::polar(1.0, kTwoPi * k / period);
        return t;
    };
    const auto row_tw = table(rows);
    const auto col_tw = table(cols);
    auto wrap = [](long long k, int period) { return static_cast<std::size_t>(((k % period) + period) % period); };

    // partial[i][n] = sum_k p_ik e^{j n theta_k}
    std::vector<Complex> partial(static_cast<std::size_t>(rows * w));
    for (int i = 0; i < rows; ++i)
        for (int n = -order; n <= order; ++n) {
            Complex s = 0.0;
            for (int k = 0; k < cols; ++k) s += pdf(i, k) * col_tw[wrap(static_cast<long long>(n) * k, cols)];
            partial[static_cast<std::size_t>(i * w + n + order)] = s / total;
        }
    std::vector<Complex> c(static_cast<std::size_t>(w * w));
    for (int m = -order; m <= order; ++m)
        for (int n = -order; n <= order; ++n) {
            Complex s = 0.0;
            for (int i = 0; i < rows; ++i)
                s += row_tw[wrap(static_cast<long long>(m) * i, rows)] * partial[static_cast<std::size_t>(i * w + n + order)];
            c[idx(order, m, n)] = s;
        }
    // symmetrize rounding so the Hermitian invariant holds exactly
    for (int m = -order; m <= order; ++m)
        for (int n = -order; n <= order; ++n) {
            if (idx(order, m, n) > idx(order, -m, -n)) continue;
            const Complex avg = 0.5 * (c[idx(order, m, n)] + std::conj(c[idx(order, -m, -n)]));
            c[idx(order, m, n)] = avg;
            c[idx(order, -m, -n)] = std::conj(avg);
        }
    c[idx(order, 0, 0)] = 1.0;
    return TorusSpectrum(order, std::move(c), role);
}

PhaseDegradation independent_degradation(const WrappedFamily& input, const WrappedFamily& output, int joint_order) {
    return {product_spectrum(from_wrapped(input, joint_order), from_wrapped(output, joint_order), joint_order,
                             SpectrumRole::Degradation)};
}

PhaseDegradation deterministic_degradation(double input_angle, double output_angle, int joint_order) {
    return independent_degradation(PointPhase{input_angle}, PointPhase{output_angle}, joint_order);
}

PhaseDegradation output_uniformizer(int joint_order) {
    require_order(joint_order);
    const int w = 2 * joint_order + 1;
    std::vector<Complex> c(static_cast<std::size_t>(w * w), 0.0);
    // E[e^{j(p Theta_i + q Theta_o)}] = E[e^{j(q - p) Theta_o}] = delta[q - p]
    for (int p = -joint_order; p <= joint_order; ++p) c[idx(joint_order, p, p)] = 1.0;
    return {TorusSpectrum(joint_order, std::move(c), SpectrumRole::Degradation)};
}

PhaseDegradation input_uniformizer(int joint_order) {
    return independent_degradation(UniformPhase{}, PointPhase{0.0}, joint_order);
}

TorusSpectrum degradation_coeffs(const PhaseDegradation& degradation, int order) {
    require_order(order);
    const auto& e = degradation.joint;
    if (e.order() < 2 * order) {
        std::ostringstream os;
        os << "joint degradation order " << e.order() << " is below the required " << 2 * order;
        throw InputError(os.str());
    }
    const int w = 2 * order + 1;
    std::vector<Complex> d(static_cast<std::size_t>(w * w));
    for (int m = -order; m <= order; ++m)
        for (int n = -order; n <= order; ++n) d[idx(order, m, n)] = e.at(m, m + n);
    return TorusSpectrum(order, std::move(d), SpectrumRole::Degradation);
}

TorusSpectrum worst_channel(int order) {
    const auto u = from_wrapped(UniformPhase{}, order);
    return product_channel(u, u);
}

TorusSpectrum degrade(const TorusSpectrum& channel, const TorusSpectrum& d) {
    if (channel.order() != d.order()) throw InputError("channel and degradation orders differ");
    if (d.role() != SpectrumRole::Degradation) throw InputError("second argument must have role 'degradation'");
    std::vector<Complex> out(channel.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = channel.coeffs()[i] * d.coeffs()[i];
    return TorusSpectrum(channel.order(), std::move(out), channel.role());
}

std::string to_string(const Strictness& s) {
    return std::visit(Overloaded{[](const Strict&) { return std::string("Strict"); },
                                 [](const Undoable&) { return std::string("Undoable"); },
                                 [](const NullChannel&) { return std::string("NullChannel"); }},
                      s);
}

Strictness is_strict(const TorusSpectrum& channel, const TorusSpectrum& d, double epsilon) {
    if (channel.order() != d.order()) throw InputError("channel and degradation orders differ");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0,1)");
    const int order = channel.order();
    bool any_support = false;
    std::optional<Undoable> witness;
    for (int m = -order; m <= order; ++m)
        for (int n = -order; n <= order; ++n) {
            if (m == 0 && n == 0) continue;
            if (std::abs(channel.at(m, n)) <= epsilon) continue;
            any_support = true;
            const Complex dv = d.at(m, n);
            if (std::abs(dv) < 1.0 - epsilon) return Strict{};
            if (!witness) witness = Undoable{m, n, m, m + n, std::arg(dv)};
        }
    if (!any_support) return NullChannel{};
    return *witness;
}

namespace {

WrappedFamily pick_scale(const WrappedFamily& a, const WrappedFamily& b, bool larger) {
    if (a.index() != b.index()) throw InputError("wrapped lattice operations need the same family");
    return std::visit(
        Overloaded{
            [&](const WrappedGaussian& x) -> WrappedFamily {
                const auto& y = std::get<WrappedGaussian>(b);
                if (x.mean != y.mean) throw InputError("wrapped lattice operations need a common mean");
                return WrappedGaussian{x.mean, larger ? std::max(x.sigma2, y.sigma2) : std::min(x.sigma2, y.sigma2)};
            },
            [&](const WrappedCauchy& x) -> WrappedFamily {
                const auto& y = std::get<WrappedCauchy>(b);
                if (x.mean != y.mean) throw InputError("wrapped lattice operations need a common mean");
                return WrappedCauchy{x.mean, larger ? std::max(x.gamma, y.gamma) : std::min(x.gamma, y.gamma)};
            },
            [&](const UniformPhase&) -> WrappedFamily { return UniformPhase{}; },
            [&](const PointPhase& x) -> WrappedFamily {
                if (x.angle != std::get<PointPhase>(b).angle)
                    throw InputError("wrapped lattice operations need a common mean");
                return x;
            },
        },
        a);
}

} // namespace

WrappedFamily wrapped_lub(const WrappedFamily& a, const WrappedFamily& b) { return pick_scale(a, b, true); }
WrappedFamily wrapped_glb(const WrappedFamily& a, const WrappedFamily& b) { return pick_scale(a, b, false); }

WrappedFamily parse_family(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    auto num = [&](std::size_t i) {
        try {
            std::size_t used = 0;
            const double v = std::stod(parts.at(i), &used);
            if (used != parts[i].size()) throw InputError("");
            return v;
        } catch (const std::exception&) {
            throw InputError("bad numeric field in phase family '" + text + "'");
        }
    };
    const auto& name = parts[0];
    if (name == "uniform" && parts.size() == 1) return UniformPhase{};
    if (name == "point" && parts.size() == 2) return PointPhase{num(1)};
    if (name == "wrapped_gaussian" && parts.size() == 3) {
        if (!(num(2) >= 0.0)) throw InputError("wrapped Gaussian needs sigma2 >= 0");
        return WrappedGaussian{num(1), num(2)};
    }
    if (name == "wrapped_cauchy" && parts.size() == 3) {
        if (!(num(2) >= 0.0)) throw InputError("wrapped Cauchy needs gamma >= 0");
        return WrappedCauchy{num(1), num(2)};
    }
    throw InputError("unknown phase family '" + text + "'");
}

} // namespace chorder::phase
