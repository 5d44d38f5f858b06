// SPDX-License-Identifier: Apache-2.0
#include "chorder/noise.hpp"

#include "chorder/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chorder::noise {

namespace {

constexpr double kDensityClamp = 1e-12;

// (e^{jx} - 1 - jx) / x^2, equal to -1/2 at x = 0.
std::complex<double> kernel(double x) {
    using namespace std::complex_literals;
    if (std::abs(x) < 0.1) {
        // sum_{n>=2} (jx)^n / (n! x^2)
        std::complex<double> term = -0.5;  // n = 2
        std::complex<double> sum = term;
        for (int n = 3; n <= 14; ++n) {
            term *= 1i * x / static_cast<double>(n);
            sum += term;
        }
        return sum;
    }
    return (std::exp(1i * x) - 1.0 - 1i * x) / (x * x);
}

void require_same_kind(const MonotoneProfile& a, const MonotoneProfile& b) {
    if (a.kind() != b.kind())
        throw InputError("profiles have different interpretation flags (" + to_string(a.kind()) + " vs " +
                         to_string(b.kind()) + ")");
}

// Two-pointer walk over atom lists; `on_pair` is called with matched
// (possibly absent) atoms in location order.
template <typename F>
void merge_atoms(const std::vector<Atom>& a, const std::vector<Atom>& b, F&& on_pair) {
    std::size_t i = 0, k = 0;
    while (i < a.size() || k < b.size()) {
        if (k == b.size() || (i < a.size() && a[i].location < b[k].location - kAtomLocationTol)) {
            on_pair(&a[i], nullptr);
            ++i;
        } else if (i == a.size() || b[k].location < a[i].location - kAtomLocationTol) {
            on_pair(nullptr, &b[k]);
            ++k;
        } else {
            on_pair(&a[i], &b[k]);
            ++i;
            ++k;
        }
    }
}

template <typename Op>
std::vector<double> combine_density(const MonotoneProfile& a, const MonotoneProfile& b,
                                    const std::vector<double>& grid, Op op) {
    const auto da = a.resample(grid);
    const auto db = b.resample(grid);
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = op(da[i], db[i]);
    return out;
}

} // namespace

std::string to_string(ProfileKind kind) { return kind == ProfileKind::NoiseK ? "noise_K" : "spectral"; }

ProfileKind profile_kind_from_string(const std::string& name) {
    if (name == "noise_K") return ProfileKind::NoiseK;
    if (name == "spectral") return ProfileKind::Spectral;
    throw InputError("unknown profile flag '" + name + "'");
}

std::string to_string(Relation relation) {
    switch (relation) {
    case Relation::FirstWorse: return "FirstWorse";
    case Relation::SecondWorse: return "SecondWorse";
    case Relation::Equal: return "Equal";
    case Relation::Incomparable: return "Incomparable";
    }
    return "Incomparable";
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw InputError("uniform grid needs points >= 2 and min < max");
    std::vector<double> g(static_cast<std::size_t>(points));
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + step * i;
    g.back() = hi;
    return g;
}

std::vector<double> default_grid() { return uniform_grid(-kDefaultGridMax, kDefaultGridMax, kDefaultGridPoints); }

MonotoneProfile::MonotoneProfile(std::vector<double> grid, std::vector<double> density, std::vector<Atom> atoms,
                                 ProfileKind kind)
    : grid_(std::move(grid)), density_(std::move(density)), atoms_(std::move(atoms)), kind_(kind) {
    if (grid_.size() < 2) throw InputError("profile grid needs at least two points");
    if (density_.size() != grid_.size()) throw InputError("density length does not match grid");
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (!std::isfinite(grid_[i])) throw InputError("profile grid has non-finite abscissa");
        if (i > 0 && !(grid_[i] > grid_[i - 1])) throw InputError("profile grid must be strictly increasing");
    }
    for (double& d : density_) {
        if (!std::isfinite(d)) throw InputError("profile density has non-finite value");
        if (d < -kDensityClamp) {
            std::ostringstream os;
            os << "profile density is negative (" << d << ")";
            throw InputError(os.str());
        }
        d = std::max(d, 0.0);
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) { return x.location < y.location; });
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (!std::isfinite(atoms_[i].location) || !std::isfinite(atoms_[i].mass))
            throw InputError("atom has non-finite location or mass");
        if (!(atoms_[i].mass > 0.0)) throw InputError("atom masses must be positive");
        if (i > 0 && atoms_[i].location - atoms_[i - 1].location <= kAtomLocationTol)
            throw InputError("two atoms share a location");
    }
}

MonotoneProfile MonotoneProfile::zero(ProfileKind kind) {
    auto g = default_grid();
    std::vector<double> d(g.size(), 0.0);
    return MonotoneProfile(std::move(g), std::move(d), {}, kind);
}

MonotoneProfile MonotoneProfile::gaussian(double var) {
    if (!(var >= 0.0)) throw InputError("variance must be nonnegative");
    if (var == 0.0) return zero();
    return atoms_only({{0.0, var}});
}

MonotoneProfile MonotoneProfile::atoms_only(std::vector<Atom> atoms, ProfileKind kind) {
    auto g = default_grid();
    std::vector<double> d(g.size(), 0.0);
    return MonotoneProfile(std::move(g), std::move(d), std::move(atoms), kind);
}

double MonotoneProfile::density_at(double u) const {
    if (u < grid_.front() || u > grid_.back()) return 0.0;
    auto it = std::upper_bound(grid_.begin(), grid_.end(), u);
    if (it == grid_.end()) return density_.back();
    const std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
    const std::size_t lo = hi - 1;
    const double t = (u - grid_[lo]) / (grid_[hi] - grid_[lo]);
    return (1.0 - t) * density_[lo] + t * density_[hi];
}

std::vector<double> MonotoneProfile::resample(const std::vector<double>& grid) const {
    if (grid == grid_) return density_;
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = density_at(grid[i]);
    return out;
}

std::vector<double> union_grid(const std::vector<double>& a, const std::vector<double>& b) {
    if (a == b) return a;
    std::vector<double> merged;
    merged.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
    std::vector<double> out;
    out.reserve(merged.size());
    for (double u : merged)
        if (out.empty() || u - out.back() > 1e-12 * (1.0 + std::abs(u))) out.push_back(u);
    return out;
}

double order_violation(const MonotoneProfile& smaller, const MonotoneProfile& larger) {
    require_same_kind(smaller, larger);
    const auto grid = union_grid(smaller.grid(), larger.grid());
    const auto ds = smaller.resample(grid);
    const auto dl = larger.resample(grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, ds[i] - dl[i]);
    merge_atoms(smaller.atoms(), larger.atoms(), [&](const Atom* s, const Atom* l) {
        if (s) worst = std::max(worst, s->mass - (l ? l->mass : 0.0));
    });
    return worst;
}

OrderResult check_order(const MonotoneProfile& a, const MonotoneProfile& b, double tolerance) {
    if (!(tolerance >= 0.0)) throw InputError("tolerance must be nonnegative");
    const double ab = order_violation(a, b);  // b is worse if this is small
    const double ba = order_violation(b, a);
    const bool second_worse = ab <= tolerance;
    const bool first_worse = ba <= tolerance;
    if (second_worse && first_worse) return {Relation::Equal, std::max(ab, ba)};
    if (second_worse) return {Relation::SecondWorse, ab};
    if (first_worse) return {Relation::FirstWorse, ba};
    return {Relation::Incomparable, std::min(ab, ba)};
}

MonotoneProfile lub(const MonotoneProfile& a, const MonotoneProfile& b) {
    require_same_kind(a, b);
    auto grid = union_grid(a.grid(), b.grid());
    auto density = combine_density(a, b, grid, [](double x, double y) { return std::max(x, y); });
    std::vector<Atom> atoms;
    merge_atoms(a.atoms(), b.atoms(), [&](const Atom* x, const Atom* y) {
        if (x && y) atoms.push_back({x->location, std::max(x->mass, y->mass)});
        else atoms.push_back(x ? *x : *y);
    });
    return MonotoneProfile(std::move(grid), std::move(density), std::move(atoms), a.kind());
}

MonotoneProfile glb(const MonotoneProfile& a, const MonotoneProfile& b) {
    require_same_kind(a, b);
    auto grid = union_grid(a.grid(), b.grid());
    auto density = combine_density(a, b, grid, [](double x, double y) { return std::min(x, y); });
    std::vector<Atom> atoms;
    merge_atoms(a.atoms(), b.atoms(), [&](const Atom* x, const Atom* y) {
        if (x && y) atoms.push_back({x->location, std::min(x->mass, y->mass)});
    });
    return MonotoneProfile(std::move(grid), std::move(density), std::move(atoms), a.kind());
}

MonotoneProfile profile_sum(const MonotoneProfile& a, const MonotoneProfile& b) {
    require_same_kind(a, b);
    auto grid = union_grid(a.grid(), b.grid());
    auto density = combine_density(a, b, grid, [](double x, double y) { return x + y; });
    std::vector<Atom> atoms;
    merge_atoms(a.atoms(), b.atoms(), [&](const Atom* x, const Atom* y) {
        if (x && y) atoms.push_back({x->location, x->mass + y->mass});
        else atoms.push_back(x ? *x : *y);
    });
    return MonotoneProfile(std::move(grid), std::move(density), std::move(atoms), a.kind());
}

double variance(const MonotoneProfile& profile) {
    const auto& g = profile.grid();
    const auto& d = profile.density();
    double total = 0.0;
    for (std::size_t i = 1; i < g.size(); ++i) total += 0.5 * (g[i] - g[i - 1]) * (d[i] + d[i - 1]);
    for (const auto& atom : profile.atoms()) total += atom.mass;
    return total;
}

std::complex<double> log_cf(const MonotoneProfile& profile, double zeta) {
    if (profile.kind() != ProfileKind::NoiseK)
        throw InputError("log_cf is defined only for noise_K profiles");
    if (!std::isfinite(zeta)) throw InputError("zeta must be finite");
    const double z2 = zeta * zeta;
    std::complex<double> total = 0.0;
    for (const auto& atom : profile.atoms()) total += atom.mass * z2 * kernel(zeta * atom.location);

    const auto& g = profile.grid();
    const auto& d = profile.density();
    std::complex<double> prev = d[0] * z2 * kernel(zeta * g[0]);
    for (std::size_t i = 1; i < g.size(); ++i) {
        const std::complex<double> cur = d[i] * z2 * kernel(zeta * g[i]);
        total += 0.5 * (g[i] - g[i - 1]) * (cur + prev);
        prev = cur;
    }
    return total;
}

bool approx_equal(const MonotoneProfile& a, const MonotoneProfile& b, double tol) {
    if (a.kind() != b.kind()) return false;
    const auto grid = union_grid(a.grid(), b.grid());
    const auto da = a.resample(grid);
    const auto db = b.resample(grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (std::abs(da[i] - db[i]) > tol) return false;
    bool same = true;
    merge_atoms(a.atoms(), b.atoms(), [&](const Atom* x, const Atom* y) {
        const double mx = x ? x->mass : 0.0;
        const double my = y ? y->mass : 0.0;
        if (std::abs(mx - my) > tol) same = false;
    });
    return same;
}

} // namespace chorder::noise
