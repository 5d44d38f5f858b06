// SPDX-License-Identifier: Apache-2.0
//
// Phase-degraded channels Y = |H| e^{j Theta_H} X + |V| e^{j Theta_V}.
//
// With |H|, |V| fixed, the channel is the joint law of (Theta_H, Theta_V) on
// the torus, held as its truncated 2-D Fourier series
// phi[m,n] = E[e^{j(m Theta_H + n Theta_V)}], |m|,|n| <= M. An input phase
// Theta_i and output phase Theta_o (jointly distributed, independent of the
// channel) act as a pointwise product with d[m,n], the coefficients of
// (Theta_o + Theta_i, Theta_o).
#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace chorder::phase {

using Complex = std::complex<double>;

enum class SpectrumRole { Channel, Degradation };

std::string to_string(SpectrumRole role);
SpectrumRole spectrum_role_from_string(const std::string& name);

inline constexpr int kDefaultOrder = 32;
inline constexpr double kDefaultGibbsTol = 1e-6;

class TorusSpectrum {
public:
    /// `coeffs` is row-major over (m, n) in [-order, order]^2. Throws
    /// InputError unless coeffs[0,0] = 1, the grid is Hermitian
    /// (c[-m,-n] = conj c[m,n]) and bounded by 1 within 1e-12, and the
    /// Fejer-smoothed reconstruction on a (4M)^2 grid is >= -gibbs_tol.
    TorusSpectrum(int order, std::vector<Complex> coeffs, SpectrumRole role = SpectrumRole::Channel,
                  double gibbs_tol = kDefaultGibbsTol);

    int order() const noexcept { return order_; }
    int width() const noexcept { return 2 * order_ + 1; }
    SpectrumRole role() const noexcept { return role_; }
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }

    Complex at(int m, int n) const;

    /// Copy with a different role tag.
    TorusSpectrum with_role(SpectrumRole role) const;

private:
    int order_;
    std::vector<Complex> coeffs_;
    SpectrumRole role_;
};

/// Minimum over a (4M)^2 grid of the Fejer-smoothed density (per unit area).
double min_fejer_density(int order, const std::vector<Complex>& coeffs);

struct WrappedGaussian {
    double mean = 0.0;
    double sigma2 = 0.0;
};
struct WrappedCauchy {
    double mean = 0.0;
    double gamma = 0.0;
};
struct UniformPhase {};
struct PointPhase {
    double angle = 0.0;
};

using WrappedFamily = std::variant<WrappedGaussian, WrappedCauchy, UniformPhase, PointPhase>;

/// Characteristic sequence E[e^{j m Theta}], m = -order..order (index m + order).
std::vector<Complex> from_wrapped(const WrappedFamily& family, int order);

/// phi[m,n] = h[m] v[n] for independent channel and noise phases.
TorusSpectrum product_channel(const std::vector<Complex>& h_marginal, const std::vector<Complex>& v_marginal,
                              SpectrumRole role = SpectrumRole::Channel);

/// Spectrum of the empirical measure of a nonnegative grid over [0, 2pi)^2;
/// row i is theta_H = 2 pi i / rows, column k is theta_V = 2 pi k / cols.
TorusSpectrum from_grid(const Eigen::MatrixXd& pdf_samples, int order, SpectrumRole role = SpectrumRole::Channel);

/// Joint law of (Theta_i, Theta_o), coefficients e[p,q] = E[e^{j(p Theta_i + q Theta_o)}].
struct PhaseDegradation {
    TorusSpectrum joint;
};

PhaseDegradation independent_degradation(const WrappedFamily& input, const WrappedFamily& output, int joint_order);
/// Theta_i, Theta_o fixed angles: a relabelling that can always be undone.
PhaseDegradation deterministic_degradation(double input_angle, double output_angle, int joint_order);
/// Theta_o uniform and Theta_i = -Theta_o: uniformizes the noise phase only.
PhaseDegradation output_uniformizer(int joint_order);
/// Theta_o = 0 and Theta_i uniform: uniformizes the channel phase only.
PhaseDegradation input_uniformizer(int joint_order);

/// d[m,n] = e[m, m+n] for |m|,|n| <= order; requires joint order >= 2 * order.
TorusSpectrum degradation_coeffs(const PhaseDegradation& degradation, int order);

/// Uniform law on the torus, coefficients delta[m] delta[n].
TorusSpectrum worst_channel(int order);

/// Pointwise product channel[m,n] * d[m,n].
TorusSpectrum degrade(const TorusSpectrum& channel, const TorusSpectrum& d);

struct Strict {};
/// Every support coefficient of the channel sees |d| = 1; (m, n) is one such
/// coefficient and (a, b) = (m, m + n) the integer relation
/// a Theta_i + b Theta_o = gamma (mod 2 pi) that holds almost surely.
struct Undoable {
    int m = 0;
    int n = 0;
    int a = 0;
    int b = 0;
    double gamma = 0.0;
};
struct NullChannel {};

using Strictness = std::variant<Strict, Undoable, NullChannel>;

std::string to_string(const Strictness& s);

/// Decides whether degrading `channel` by `d` can be undone by a later phase
/// degradation. Only coefficients with |channel[m,n]| > epsilon, (m,n) != 0,
/// are examined.
Strictness is_strict(const TorusSpectrum& channel, const TorusSpectrum& d, double epsilon = 1e-9);

/// Scale comparison inside one wrapped family at a common mean: returns the
/// noisier (lub) or cleaner (glb) member. Throws InputError for mixed families
/// or different means.
WrappedFamily wrapped_lub(const WrappedFamily& a, const WrappedFamily& b);
WrappedFamily wrapped_glb(const WrappedFamily& a, const WrappedFamily& b);

/// Parse "uniform", "point:ANGLE", "wrapped_gaussian:MEAN:SIGMA2",
/// "wrapped_cauchy:MEAN:GAMMA".
WrappedFamily parse_family(const std::string& text);

} // namespace chorder::phase
