// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 0 only
// when every criterion passes.
#include "support.hpp"

#include "chorder/dmc.hpp"
#include "chorder/lgc.hpp"
#include "chorder/noise.hpp"
#include "chorder/numerics.hpp"
#include "chorder/phase.hpp"

#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace chorder;
using numerics::Index;
using numerics::Matrix;
using testing::Rng;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// 1 ---------------------------------------------------------------------------
void bsc_characterization(Outcome& o) {
    const auto t0 = Clock::now();
    int cells = 0, rule_mismatch = 0, includes_mismatch = 0;
    for (int a = 0; a <= 10; ++a)
        for (int b = 0; b <= 10; ++b) {
            const double p = 0.05 * a, q = 0.05 * b;
            const auto kp = dmc::bsc(p), kq = dmc::bsc(q);
            const bool hull = testing::includes_2x2_oracle(kp.entries(), kq.entries(), 1e-9);
            const bool rule = testing::bsc_rule(p, q);
            const bool got = dmc::includes(kp, kq, {1e-9, 1e6}).included();
            rule_mismatch += hull != rule;
            includes_mismatch += got != rule;
            ++cells;
        }
    const double dt = seconds_since(t0);
    o.require(rule_mismatch == 0, "analytic rule disagrees with brute-force hull oracle");
    o.require(includes_mismatch == 0, "includes disagrees with analytic rule");
    o.require(dt < 5.0, "runtime >= 5 s");
    o.detail << cells << " grid cells, rule/oracle mismatches " << rule_mismatch << ", includes mismatches "
             << includes_mismatch << ", " << dt << " s";
}

// 2 ---------------------------------------------------------------------------
void shannon_monotonicity(Outcome& o) {
    const auto t0 = Clock::now();
    Rng rng(20260002);
    int comparisons = 0;
    double worst_gap = -1.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = testing::random_stochastic(rng, testing::uniform_int(rng, 2, 3), testing::uniform_int(rng, 2, 3));
        const auto b = testing::random_degradation(rng, a, testing::uniform_int(rng, 2, 3),
                                                   testing::uniform_int(rng, 2, 3), testing::uniform_int(rng, 1, 4));
        for (int n : {1, 2}) {
            const double pa = dmc::best_error_probability(a, 2, n);
            const double pb = dmc::best_error_probability(b, 2, n);
            worst_gap = std::max(worst_gap, pa - pb);
            o.require(pa <= pb + 1e-12, "Pe(A) > Pe(B) + 1e-12");
            ++comparisons;
        }
    }
    const double dt = seconds_since(t0);
    o.require(dt < 60.0, "runtime >= 60 s");
    o.detail << comparisons << " comparisons, max Pe(A)-Pe(B) = " << worst_gap << ", " << dt << " s";
}

// 3 ---------------------------------------------------------------------------
/// Enumerates every deterministic product R K T directly and returns the
/// largest value of <S, R K T>.
double max_over_products(const dmc::StochasticMatrix& better, Index worse_in, Index worse_out, const Matrix& s) {
    const Index n1 = better.inputs(), m1 = better.outputs();
    std::vector<Index> r(static_cast<std::size_t>(worse_in), 0), t(static_cast<std::size_t>(m1), 0);
    double best = -std::numeric_limits<double>::infinity();
    auto advance = [](std::vector<Index>& digits, Index base) {
        for (auto& d : digits) {
            if (++d < base) return true;
            d = 0;
        }
        return false;
    };
    do {
        do {
            double v = 0.0;
            for (Index i = 0; i < worse_in; ++i)
                for (Index y = 0; y < m1; ++y) v += s(i, t[y]) * better.entries()(r[i], y);
            best = std::max(best, v);
        } while (advance(t, worse_out));
    } while (advance(r, n1));
    return best;
}

void feasibility_certificates(Outcome& o) {
    Rng rng(20260003);
    int feasible = 0, infeasible = 0;
    double worst_residual = 0.0, min_margin = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = testing::random_stochastic(rng, testing::uniform_int(rng, 2, 3), testing::uniform_int(rng, 2, 3));
        const int wi = testing::uniform_int(rng, 2, 3), wo = testing::uniform_int(rng, 2, 3);
        const auto b = trial % 2 == 0 ? testing::random_degradation(rng, a, wi, wo, testing::uniform_int(rng, 1, 3))
                                      : testing::random_stochastic(rng, wi, wo);
        const auto r = dmc::includes(a, b);
        if (r.included()) {
            ++feasible;
            const auto& w = r.witness();
            double total = 0.0;
            for (double x : w.weights) {
                o.require(x >= 0.0, "negative witness weight");
                total += x;
            }
            o.require(std::abs(total - 1.0) <= 1e-9, "witness weights do not sum to 1");
            const auto rebuilt = dmc::degrade(a, w.pairs, w.weights);
            const double res = (rebuilt.entries() - b.entries()).cwiseAbs().maxCoeff();
            worst_residual = std::max(worst_residual, res);
            o.require(res <= 1e-9, "witness replay residual > 1e-9");
        } else {
            ++infeasible;
            const auto& s = r.separator().functional;
            double target = 0.0;
            for (Index i = 0; i < b.inputs(); ++i)
                for (Index y = 0; y < b.outputs(); ++y) target += s(i, y) * b.entries()(i, y);
            const double margin = target - max_over_products(a, b.inputs(), b.outputs(), s);
            min_margin = std::min(min_margin, margin);
            o.require(margin > 0.0, "separator margin not positive");
        }
        o.require(trial % 2 == 1 || r.included(), "degraded channel reported as not included");
    }
    o.detail << feasible << " feasible (max replay residual " << worst_residual << "), " << infeasible
             << " infeasible (min recomputed margin " << min_margin << ")";
}

// 4 ---------------------------------------------------------------------------
void noise_lattice(Outcome& o) {
    using noise::Relation;
    Rng rng(20260004);
    auto below = [](const noise::MonotoneProfile& x, const noise::MonotoneProfile& y) {
        const auto r = noise::check_order(x, y).relation;
        return r == Relation::SecondWorse || r == Relation::Equal;
    };
    int strict_pairs = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = testing::random_profile(rng);
        const auto b = testing::random_profile(rng);
        const auto j = noise::lub(a, b), m = noise::glb(a, b);
        o.require(noise::approx_equal(j, noise::lub(b, a), 1e-9), "lub not commutative");
        o.require(noise::approx_equal(m, noise::glb(b, a), 1e-9), "glb not commutative");
        o.require(noise::approx_equal(noise::lub(a, a), a, 1e-9), "lub not idempotent");
        o.require(noise::approx_equal(noise::glb(a, a), a, 1e-9), "glb not idempotent");
        o.require(noise::approx_equal(noise::lub(a, m), a, 1e-9), "absorption lub(a, glb(a,b)) fails");
        o.require(noise::approx_equal(noise::glb(a, j), a, 1e-9), "absorption glb(a, lub(a,b)) fails");
        o.require(below(m, a) && below(m, b), "glb not below both");
        o.require(below(a, j) && below(b, j), "lub not above both");
        for (const auto& [x, y] : {std::pair{&a, &b}, std::pair{&m, &a}, std::pair{&a, &j}, std::pair{&m, &j}}) {
            const auto r = noise::check_order(*x, *y).relation;
            if (r == Relation::SecondWorse) {
                ++strict_pairs;
                o.require(noise::variance(*y) > noise::variance(*x), "strict order without larger variance");
            } else if (r == Relation::FirstWorse) {
                ++strict_pairs;
                o.require(noise::variance(*x) > noise::variance(*y), "strict order without larger variance");
            }
        }
    }
    auto atom = [](double loc, double mass) { return noise::MonotoneProfile::atoms_only({{loc, mass}}); };
    auto atoms_equal = [](const noise::MonotoneProfile& p, std::vector<noise::Atom> want) {
        if (p.atoms().size() != want.size()) return false;
        for (std::size_t i = 0; i < want.size(); ++i)
            if (p.atoms()[i].location != want[i].location || p.atoms()[i].mass != want[i].mass) return false;
        return true;
    };
    o.require(atoms_equal(noise::lub(atom(0, 1), atom(0, 2)), {{0, 2}}), "lub same location");
    o.require(atoms_equal(noise::lub(atom(0, 1), atom(1, 2)), {{0, 1}, {1, 2}}), "lub different locations");
    o.require(atoms_equal(noise::glb(atom(0, 1), atom(0, 2)), {{0, 1}}), "glb same location");
    o.require(atoms_equal(noise::glb(atom(0, 1), atom(1, 2)), {}), "glb different locations");
    o.detail << "100 random pairs, " << strict_pairs << " strictly ordered comparisons checked, 4 atom rules exact";
}

// 5 ---------------------------------------------------------------------------
void cf_quadrature(Outcome& o) {
    using C = std::complex<double>;
    double worst_rel = 0.0;
    for (double s2 : {0.1, 1.0, 2.5, 7.0})
        for (int k = -30; k <= 30; ++k) {
            const double z = 0.1 * k;
            const C got = noise::log_cf(noise::MonotoneProfile::gaussian(s2), z);
            const double want = -s2 * z * z / 2;
            const double rel = want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
            worst_rel = std::max(worst_rel, rel);
        }
    o.require(worst_rel <= 1e-12, "Gaussian log_cf relative error > 1e-12");

    // hat density on [0.5, 1.5], peak 1 at u = 1
    auto hat = [](double u) { return std::max(0.0, 1.0 - 2.0 * std::abs(u - 1.0)); };
    const auto grid = noise::uniform_grid(0.0, 2.0, 4001);
    std::vector<double> dens(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) dens[i] = hat(grid[i]);
    const noise::MonotoneProfile profile(grid, dens, {});

    // Compound Poisson with Levy measure nu(du) = hat(u) / u^2 du, compensated by its mean.
    const int table = 20001;
    std::vector<double> us(table), cdf(table, 0.0);
    for (int i = 0; i < table; ++i) us[i] = 0.5 + static_cast<double>(i) / (table - 1);
    for (int i = 1; i < table; ++i) {
        const double f0 = hat(us[i - 1]) / (us[i - 1] * us[i - 1]), f1 = hat(us[i]) / (us[i] * us[i]);
        cdf[i] = cdf[i - 1] + 0.5 * (f0 + f1) * (us[i] - us[i - 1]);
    }
    const double rate = cdf.back();
    double drift = 0.0;
    for (int i = 1; i < table; ++i) {
        const double g0 = hat(us[i - 1]) / us[i - 1], g1 = hat(us[i]) / us[i];
        drift += 0.5 * (g0 + g1) * (us[i] - us[i - 1]);
    }
    Rng rng(20260005);
    std::poisson_distribution<int> counts(rate);
    std::uniform_real_distribution<double> unit(0.0, rate);
    auto jump = [&] {
        const double target = unit(rng);
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
        const auto hi = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - cdf.begin(), 1, table - 1));
        const double span = cdf[hi] - cdf[hi - 1];
        const double frac = span > 0 ? (target - cdf[hi - 1]) / span : 0.0;
        return us[hi - 1] + frac * (us[hi] - us[hi - 1]);
    };
    const int samples = 1000000;
    std::vector<double> xs(samples);
    for (auto& x : xs) {
        const int n = counts(rng);
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += jump();
        x = s - drift;
    }
    double worst_mc = 0.0;
    for (int k = -12; k <= 12; ++k) {
        const double z = 0.25 * k;
        C emp = 0.0;
        for (double x : xs) emp += std::polar(1.0, z * x);
        emp /= static_cast<double>(samples);
        worst_mc = std::max(worst_mc, std::abs(std::exp(noise::log_cf(profile, z)) - emp));
    }
    o.require(worst_mc <= 1e-2, "density quadrature differs from Monte Carlo by > 1e-2");
    o.detail << "Gaussian max rel err " << worst_rel << "; density vs 1e6-sample compound Poisson, max |dphi| "
             << worst_mc << " over 25 zeta in [-3,3]";
}

// 6 ---------------------------------------------------------------------------
double spectrum_gap(const phase::TorusSpectrum& a, const phase::TorusSpectrum& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) worst = std::max(worst, std::abs(a.coeffs()[i] - b.coeffs()[i]));
    return worst;
}

void phase_duality(Outcome& o) {
    using namespace phase;
    const int M = 16, N = 128;
    Rng rng(20260006);
    double worst = 0.0;
    bool extremal_exact = true;
    double marginal_gap = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix channel_pdf = testing::random_torus_pdf(rng, N);
        const Matrix joint_pdf = testing::random_torus_pdf(rng, N);
        const auto ch = from_grid(channel_pdf, M);
        const auto d = degradation_coeffs(PhaseDegradation{from_grid(joint_pdf, 2 * M, SpectrumRole::Degradation)}, M);
        const auto direct = from_grid(testing::circular_convolve(channel_pdf, testing::shear_grid(joint_pdf)), M);
        worst = std::max(worst, spectrum_gap(degrade(ch, d), direct));

        const auto out_u = degrade(ch, degradation_coeffs(output_uniformizer(2 * M), M));
        const auto in_u = degrade(ch, degradation_coeffs(input_uniformizer(2 * M), M));
        const Eigen::VectorXd h_marg = channel_pdf.rowwise().sum(), v_marg = channel_pdf.colwise().sum().transpose();
        for (int m = -M; m <= M; ++m)
            for (int n = -M; n <= M; ++n) {
                const Complex want_out = n == 0 ? ch.at(m, 0) : Complex(0.0);
                const Complex want_in = m == 0 ? ch.at(0, n) : Complex(0.0);
                extremal_exact = extremal_exact && out_u.at(m, n) == want_out && in_u.at(m, n) == want_in;
            }
        // phi[m,0] is E[e^{j m Theta_H}] of the marginal
        for (int m = -M; m <= M; ++m) {
            Complex eh = 0.0, ev = 0.0;
            for (int i = 0; i < N; ++i) {
                eh += h_marg(i) * std::polar(1.0, 2 * std::numbers::pi * m * i / N);
                ev += v_marg(i) * std::polar(1.0, 2 * std::numbers::pi * m * i / N);
            }
            marginal_gap = std::max({marginal_gap, std::abs(eh - ch.at(m, 0)), std::abs(ev - ch.at(0, m))});
        }
    }
    o.require(worst <= 1e-8, "coefficient product differs from direct convolution by > 1e-8");
    o.require(extremal_exact, "uniformizer identities not exact");
    o.require(marginal_gap <= 1e-12, "phi[m,0] / phi[0,n] differ from the marginal coefficients");
    o.detail << "20 pairs (M=16, 128^2): max |degrade - conv| " << worst << "; uniformizers exact: "
             << (extremal_exact ? "yes" : "no") << "; marginal gap " << marginal_gap;
}

// 7 ---------------------------------------------------------------------------
/// Closed-form characteristic coefficient of a wrapped family, written out
/// independently of the library.
std::complex<double> family_coeff(int kind, double mean, double scale, int m) {
    switch (kind) {
    case 0: return std::polar(std::exp(-0.5 * scale * m * m), m * mean);   // wrapped Gaussian
    case 1: return std::polar(std::exp(-scale * std::abs(m)), m * mean);   // wrapped Cauchy
    case 2: return m == 0 ? 1.0 : 0.0;                                     // uniform
    default: return std::polar(1.0, m * mean);                             // point
    }
}

phase::WrappedFamily family(int kind, double mean, double scale) {
    switch (kind) {
    case 0: return phase::WrappedGaussian{mean, scale};
    case 1: return phase::WrappedCauchy{mean, scale};
    case 2: return phase::UniformPhase{};
    default: return phase::PointPhase{mean};
    }
}

void strictness(Outcome& o) {
    using namespace phase;
    const int M = 12;
    const double eps = 1e-9;
    Rng rng(20260007);
    int agree = 0, cases = 0, det_undoable = 0, wg_strict = 0, null_count = 0;
    for (int trial = 0; trial < 50; ++trial) {
        // channel: worst every tenth case, otherwise a product of random families
        const bool worst = trial % 10 == 0;
        const int hk = testing::uniform_int(rng, 0, 1), vk = testing::uniform_int(rng, 0, 1);
        const double hm = testing::uniform(rng, -3, 3), vm = testing::uniform(rng, -3, 3);
        const double hs = testing::uniform(rng, 0.0, 0.1), vs = testing::uniform(rng, 0.0, 0.1);
        const auto ch = worst ? worst_channel(M)
                              : product_channel(from_wrapped(family(hk, hm, hs), M), from_wrapped(family(vk, vm, vs), M));

        // degradation kind cycles: deterministic, independent WG(0,0.5), random independent families
        const int dk = trial % 3;
        int ik = 3, ok = 3;
        double im = testing::uniform(rng, -3, 3), om = testing::uniform(rng, -3, 3), is = 0.5, os = 0.5;
        if (dk == 1) {
            ik = ok = 0;
            im = om = 0.0;
        } else if (dk == 2) {
            ik = testing::uniform_int(rng, 0, 3);
            ok = testing::uniform_int(rng, 0, 3);
            is = testing::uniform(rng, 0.0, 1.0);
            os = testing::uniform(rng, 0.0, 1.0);
        }
        const auto d = degradation_coeffs(independent_degradation(family(ik, im, is), family(ok, om, os), 2 * M), M);
        const auto got = is_strict(ch, d, eps);

        // oracle: d[m,n] = c_i(m) c_o(m+n) from the closed forms
        bool support = false, all_unit = true;
        for (int m = -M; m <= M; ++m)
            for (int n = -M; n <= M; ++n) {
                if ((m == 0 && n == 0) || std::abs(ch.at(m, n)) <= eps) continue;
                support = true;
                const double mag = std::abs(family_coeff(ik, im, is, m) * family_coeff(ok, om, os, m + n));
                all_unit = all_unit && mag >= 1.0 - eps;
            }
        const int expect = !support ? 2 : (all_unit ? 1 : 0);
        const int have = std::holds_alternative<NullChannel>(got) ? 2 : (std::holds_alternative<Undoable>(got) ? 1 : 0);
        agree += expect == have;
        ++cases;
        if (worst) {
            o.require(have == 2, "worst channel not NullChannel");
            null_count += have == 2;
        } else if (dk == 0) {
            o.require(have == 1, "deterministic degradation not Undoable");
            det_undoable += have == 1;
        } else if (dk == 1) {
            o.require(have == 0, "WG(0,0.5) degradation not Strict");
            wg_strict += have == 0;
        }
    }
    o.require(agree == cases, "disagreement with |d| oracle");
    o.detail << agree << "/" << cases << " agree with |d| oracle; deterministic->Undoable " << det_undoable
             << ", WG(0,0.5)->Strict " << wg_strict << ", worst->NullChannel " << null_count;
}

// 8 ---------------------------------------------------------------------------
void lgc_invariance(Outcome& o) {
    using namespace lgc;
    Rng rng(20260008);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int out = testing::uniform_int(rng, 1, 5), in = testing::uniform_int(rng, 1, 5);
        const GaussianChannel ch(numerics::sample_gaussian_matrix(out, in, rng()), testing::random_spd(rng, out));
        const int wide = in + testing::uniform_int(rng, 0, 2);
        const Matrix b = sample_haar_orthogonal(wide, rng()).topRows(in);
        Matrix c = numerics::sample_gaussian_matrix(out, out, rng());
        c += 0.5 * Matrix::Identity(out, out) * (c.determinant() >= 0 ? 1.0 : -1.0);
        const auto before = canonicalize(ch);
        const auto after = canonicalize(GaussianChannel(c * ch.h() * b, c * ch.sigma() * c.transpose()));
        const auto pa = before.padded(std::max(before.size(), after.size()));
        const auto pb = after.padded(std::max(before.size(), after.size()));
        for (std::size_t k = 0; k < pa.size(); ++k) worst = std::max(worst, std::abs(pa.values()[k] - pb.values()[k]));
        o.require(std::holds_alternative<Equivalent>(verify_equivalence_transform(ch, b, c, 1e-8)),
                  "verify_equivalence_transform rejected an admissible transform");
    }
    o.require(worst <= 1e-8, "canonical spectrum moved by > 1e-8");

    const SingularSpectrum s1({2, 0.5}), s2({1, 1});
    o.require(!is_included(includes(s1, s2)) && !is_included(includes(s2, s1)), "incomparable pair ordered");
    o.require(lub(s1, s2).values() == std::vector<double>{2, 1}, "lub of incomparable pair");
    o.require(glb(s1, s2).values() == std::vector<double>{1, 0.5}, "glb of incomparable pair");

    for (int trial = 0; trial < 100; ++trial) {
        const int n = testing::uniform_int(rng, 1, 5);
        const auto a = testing::random_spectrum(rng, n);
        const auto b = testing::random_spectrum(rng, testing::uniform_int(rng, 1, 5));
        const auto j = lub(a, b), m = glb(a, b);
        o.require(spectra_match(j, lub(b, a), 0.0) && spectra_match(m, glb(b, a), 0.0), "commutativity");
        o.require(spectra_match(lub(a, a), a, 0.0) && spectra_match(glb(a, a), a, 0.0), "idempotence");
        o.require(spectra_match(lub(a, m), a, 0.0) && spectra_match(glb(a, j), a, 0.0), "absorption");
        o.require(is_included(includes(a, m)) && is_included(includes(b, m)), "glb below both");
        o.require(is_included(includes(j, a)) && is_included(includes(j, b)), "lub above both");
    }
    o.detail << "100 transforms, max spectrum change " << worst << "; incomparable pair resolved to (2,1)/(1,0.5); "
             << "100 lattice pairs";
}

// 9 ---------------------------------------------------------------------------
void haar_sampler(Outcome& o) {
    double worst_orth = 0.0;
    for (int n = 1; n <= 16; ++n)
        for (int s = 0; s < 5; ++s) {
            const Matrix q = lgc::sample_haar_orthogonal(n, numerics::derive_seed(900 + n, s));
            worst_orth = std::max(worst_orth, (q.transpose() * q - Matrix::Identity(n, n)).cwiseAbs().maxCoeff());
        }
    o.require(worst_orth <= 1e-10, "Q^T Q != I within 1e-10");

    Matrix a(3, 3);
    a << 3, 1, 0, -1, 2, 0.5, 0.25, 0, 1;
    const auto ref = numerics::singular_values(a);
    const int samples = 10000;
    double sum = 0.0, sum2 = 0.0, worst_spec = 0.0;
    int positive = 0;
    for (int s = 0; s < samples; ++s) {
        const Matrix q = lgc::sample_haar_orthogonal(3, numerics::derive_seed(20260009, s));
        const double x = q(0, 0);
        sum += x;
        sum2 += x * x;
        positive += x > 0;
        worst_spec = std::max(worst_spec, (numerics::singular_values(q * a) - ref).cwiseAbs().maxCoeff());
    }
    const double mean = sum / samples;
    const double sd = std::sqrt(sum2 / samples - mean * mean);
    const double z = std::abs(mean) / (sd / std::sqrt(double(samples)));
    o.require(z <= 3.0, "(1,1) entry mean more than 3 sigma from 0");
    const double sign_z = std::abs(positive - samples / 2.0) / std::sqrt(samples / 4.0);
    o.require(sign_z <= 3.0, "(1,1) sign imbalance beyond 3 sigma");
    // equal up to floating rounding of the SVD
    o.require(worst_spec <= 1e-12 * ref(0), "spectra of QA differ from spectra of A");
    o.detail << "max |Q^TQ - I| " << worst_orth << "; (1,1) mean " << mean << " (z=" << z << "), var " << sd * sd
             << " (1/3 expected), sign z=" << sign_z << "; max spectrum change " << worst_spec;
}

// 10 --------------------------------------------------------------------------
void ensemble_order(Outcome& o) {
    using namespace lgc;
    const auto t0 = Clock::now();
    const auto h = ensemble_from_sampler(GaussianEntries{2, 2, 1.0}, 10000, 20260010);
    const auto h2 = ensemble_from_sampler(GaussianEntries{2, 2, 2.0}, 10000, 20260010);
    const auto r = lgc::ensemble_order(h2, h);
    const auto* ord = std::get_if<Ordered>(&r);
    o.require(ord && ord->direction == OrderDirection::FirstDominates, "2H does not dominate H");
    o.require(ord && ord->violations == 0, "band violations in the paired-scaling case");

    Matrix da = Matrix::Zero(2, 2), db = Matrix::Identity(2, 2);
    da.diagonal() << 2, 0.5;
    const auto ea = ensemble_from_sampler(HaarRotated{da, true, true}, 10000, 101);
    const auto eb = ensemble_from_sampler(HaarRotated{db, true, true}, 10000, 202);
    const auto r2 = lgc::ensemble_order(ea, eb);
    o.require(std::holds_alternative<NotOrdered>(r2), "diag(2,0.5) vs diag(1,1) reported ordered");
    const double dt = seconds_since(t0);
    o.require(dt < 30.0, "runtime >= 30 s");
    o.detail << "2H vs H: " << (ord ? to_string(ord->direction) : "not ordered") << ", violations "
             << (ord ? ord->violations : 0) << "; incomparable designs: "
             << (std::holds_alternative<NotOrdered>(r2) ? "NotOrdered" : "Ordered") << " (max violation "
             << (std::holds_alternative<NotOrdered>(r2) ? std::get<NotOrdered>(r2).max_violation : 0.0) << "); " << dt
             << " s";
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"BSC characterization", bsc_characterization},
        {"Shannon-sense monotonicity", shannon_monotonicity},
        {"feasibility certificates", feasibility_certificates},
        {"noise lattice", noise_lattice},
        {"characteristic-function quadrature", cf_quadrature},
        {"phase duality and extremal identities", phase_duality},
        {"strictness classification", strictness},
        {"LGC invariance and lattice", lgc_invariance},
        {"Haar sampler", haar_sampler},
        {"ensemble order", ensemble_order},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        failed += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
