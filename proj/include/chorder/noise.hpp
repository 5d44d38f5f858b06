// SPDX-License-Identifier: Apache-2.0
//
// Additive infinitely divisible noise channels, represented by the
// nondecreasing function K(u) of the zero-mean finite-variance
// Levy-Khinchine form
//
//   log phi(zeta) = integral (e^{j zeta u} - 1 - j zeta u) / u^2 dK(u),
//
// with the integrand taken as -zeta^2/2 at u = 0. A profile stores dK/du on a
// grid (the absolutely continuous part) plus a finite list of jumps (atoms).
// One channel is a degraded version of another when the K-difference is
// itself nondecreasing; the larger K is the noisier, included channel.
//
// The same type with ProfileKind::Spectral carries a spectral distribution
// function of a stationary Gaussian noise process; comparison and lattice
// operations are identical.
#pragma once

#include <complex>
#include <string>
#include <vector>

namespace chorder::noise {

enum class ProfileKind { NoiseK, Spectral };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

struct Atom {
    double location = 0.0;
    double mass = 0.0;
};

/// Two atoms sit at the same location when closer than this.
inline constexpr double kAtomLocationTol = 1e-9;

inline constexpr double kDefaultGridMax = 10.0;
inline constexpr int kDefaultGridPoints = 2049;

/// Uniform grid of `points` abscissae on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, int points);
std::vector<double> default_grid();

class MonotoneProfile {
public:
    /// Throws InputError unless the grid is strictly increasing with at least
    /// two points, densities are >= -1e-12 (clamped to 0) and finite, and atom
    /// masses are positive. Atoms are sorted; two atoms closer than
    /// kAtomLocationTol are rejected.
    MonotoneProfile(std::vector<double> grid, std::vector<double> density, std::vector<Atom> atoms,
                    ProfileKind kind = ProfileKind::NoiseK);

    /// Zero profile (no noise) on the default grid.
    static MonotoneProfile zero(ProfileKind kind = ProfileKind::NoiseK);
    /// Gaussian noise of the given variance: a single atom at 0.
    static MonotoneProfile gaussian(double variance);
    /// Pure-jump profile on the default grid.
    static MonotoneProfile atoms_only(std::vector<Atom> atoms, ProfileKind kind = ProfileKind::NoiseK);

    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<double>& density() const noexcept { return density_; }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    ProfileKind kind() const noexcept { return kind_; }

    /// Linear interpolation of the density; zero outside the grid.
    double density_at(double u) const;

    /// Density resampled onto another grid.
    std::vector<double> resample(const std::vector<double>& grid) const;

private:
    std::vector<double> grid_;
    std::vector<double> density_;
    std::vector<Atom> atoms_;
    ProfileKind kind_;
};

enum class Relation { FirstWorse, SecondWorse, Equal, Incomparable };

std::string to_string(Relation relation);

struct OrderResult {
    Relation relation = Relation::Incomparable;
    /// For Equal / FirstWorse / SecondWorse: the largest shortfall in the
    /// accepted direction (<= tolerance). For Incomparable: the smaller of the
    /// two directions' shortfalls, i.e. how far the pair is from being ordered.
    double max_violation = 0.0;
};

/// Merged abscissae of two grids (points closer than 1e-12 relative coalesce).
std::vector<double> union_grid(const std::vector<double>& a, const std::vector<double>& b);

/// Largest amount by which (larger - smaller) fails to be a valid profile.
double order_violation(const MonotoneProfile& smaller, const MonotoneProfile& larger);

/// SecondWorse when b - a is a valid profile within tolerance, FirstWorse when
/// a - b is, Equal when both. Throws InputError on mismatched kinds.
OrderResult check_order(const MonotoneProfile& a, const MonotoneProfile& b, double tolerance = 1e-9);

/// Smallest profile above both: pointwise max density on the union grid,
/// atoms at distinct locations kept, atoms at a shared location take the
/// larger mass.
MonotoneProfile lub(const MonotoneProfile& a, const MonotoneProfile& b);

/// Largest profile below both: pointwise min density, atoms only where both
/// have one, with the smaller mass.
MonotoneProfile glb(const MonotoneProfile& a, const MonotoneProfile& b);

/// Profile of the sum of independent noises: densities add, atoms merge with
/// masses summed at shared locations.
MonotoneProfile profile_sum(const MonotoneProfile& a, const MonotoneProfile& b);

/// Total mass K(+inf): trapezoid integral of the density plus atom masses.
double variance(const MonotoneProfile& profile);

/// Log characteristic function at zeta: trapezoid rule on the density plus
/// exact atom terms. Throws InputError for spectral profiles.
std::complex<double> log_cf(const MonotoneProfile& profile, double zeta);

/// Profiles agree within tol on the union grid and atom lists match.
bool approx_equal(const MonotoneProfile& a, const MonotoneProfile& b, double tol = 1e-9);

} // namespace chorder::noise
