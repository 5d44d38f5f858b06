// SPDX-License-Identifier: Apache-2.0
#include "chorder/cli.hpp"

#include "chorder/errors.hpp"
#include "chorder/io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace chorder::cli {

namespace {

using io::json;

const char* const kDmcConvention =
    "better includes worse: worse = sum_a g_a R_a K_better T_a over deterministic input maps R_a and output maps T_a";
const char* const kNoiseConvention =
    "worse = larger K-function = more noise; the including (better) channel has the smaller K; "
    "SecondWorse means the second argument is included in the first";
const char* const kPhaseConvention =
    "phi[m,n] = E[exp(j(m Theta_H + n Theta_V))], coeffs row-major over (m,n) in [-M,M]^2; "
    "degradation d[m,n] = E[exp(j(m(Theta_o+Theta_i) + n Theta_o))]";
const char* const kLgcConvention =
    "channels compared by sorted singular values of Sigma^{-1/2} H, zero-padded; "
    "better includes worse iff worse[k] <= better[k] + tolerance for all k";

struct Options {
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
    int order = phase::kDefaultOrder;
    std::string out;
    std::string format = "json";
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Outcome {
    json result;
    int code = kExitHolds;
    std::optional<Table> table;
};

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

json with_notes(json j, const char* convention, const Options& opt, json extra_params = json::object()) {
    json params = {{"tolerance", opt.tolerance}, {"seed", opt.seed}, {"order", opt.order}};
    params.update(extra_params);
    j["conventions"] = json::array({convention});
    j["parameters"] = params;
    return j;
}

template <typename T>
const T& payload_as(const io::ChannelDocument& doc, const std::string& path) {
    if (const auto* p = std::get_if<T>(&doc.payload)) return *p;
    throw InputError("'" + path + "' has type '" + doc.type() + "', which this command does not accept");
}

template <typename T>
T load_as(const std::string& path) {
    const auto doc = io::load_document(path);
    return payload_as<T>(doc, path);
}

Table spectrum_table(const phase::TorusSpectrum& s) {
    Table t{{"m", "n", "re", "im"}, {}};
    for (int m = -s.order(); m <= s.order(); ++m)
        for (int n = -s.order(); n <= s.order(); ++n) {
            const auto c = s.at(m, n);
            t.rows.push_back({std::to_string(m), std::to_string(n), num(c.real()), num(c.imag())});
        }
    return t;
}

Table profile_table(const noise::MonotoneProfile& p) {
    Table t{{"kind", "u", "value"}, {}};
    for (std::size_t i = 0; i < p.grid().size(); ++i) t.rows.push_back({"density", num(p.grid()[i]), num(p.density()[i])});
    for (const auto& a : p.atoms()) t.rows.push_back({"atom", num(a.location), num(a.mass)});
    return t;
}

Table values_table(const std::vector<double>& v) {
    Table t{{"k", "value"}, {}};
    for (std::size_t k = 0; k < v.size(); ++k) t.rows.push_back({std::to_string(k), num(v[k])});
    return t;
}

json spectrum_document(const lgc::SingularSpectrum& s) {
    const auto n = static_cast<numerics::Index>(std::max<std::size_t>(1, s.size()));
    numerics::Matrix h = numerics::Matrix::Zero(n, n);
    for (std::size_t k = 0; k < s.size(); ++k) h(static_cast<numerics::Index>(k), static_cast<numerics::Index>(k)) = s.values()[k];
    json doc = io::to_json(lgc::GaussianChannel(h, numerics::Matrix::Identity(n, n)));
    doc["spectrum"] = s.values();
    return doc;
}

void emit(const Outcome& outcome, const Options& opt, std::ostream& out) {
    std::ostringstream text;
    if (opt.format == "csv") {
        Table t;
        if (outcome.table) {
            t = *outcome.table;
        } else {
            t.header = {"key", "value"};
            for (const auto& [k, v] : outcome.result.items()) {
                if (v.is_primitive()) t.rows.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
            }
        }
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) text << (i ? "," : "") << cells[i];
            text << '\n';
        };
        line(t.header);
        for (const auto& r : t.rows) line(r);
    } else {
        text << outcome.result.dump(2) << '\n';
    }
    if (opt.out.empty()) {
        out << text.str();
    } else {
        std::ofstream file(opt.out);
        if (!file) throw InputError("cannot write '" + opt.out + "'");
        file << text.str();
    }
}

// ---------------------------------------------------------------- dmc

Outcome dmc_check(const std::string& better_path, const std::string& worse_path, double cap, const Options& opt) {
    const auto better = load_as<dmc::StochasticMatrix>(better_path);
    const auto worse = load_as<dmc::StochasticMatrix>(worse_path);
    const auto r = dmc::includes(better, worse, {opt.tolerance, cap});
    json j = {{"command", "dmc check"}, {"included", r.included()}, {"enumeration_size", dmc::enumeration_size(better, worse)}};
    if (r.included()) j["witness"] = io::witness_to_json(r.witness());
    else j["separator"] = {{"functional", io::matrix_to_json(r.separator().functional)}, {"margin", r.separator().margin}};
    return {with_notes(j, kDmcConvention, opt, {{"cap", cap}}), r.included() ? kExitHolds : kExitFails, std::nullopt};
}

Outcome dmc_equiv(const std::string& a_path, const std::string& b_path, double cap, const Options& opt) {
    const auto a = load_as<dmc::StochasticMatrix>(a_path);
    const auto b = load_as<dmc::StochasticMatrix>(b_path);
    const auto ab = dmc::includes(a, b, {opt.tolerance, cap});
    const auto ba = dmc::includes(b, a, {opt.tolerance, cap});
    const bool eq = ab.included() && ba.included();
    json j = {{"command", "dmc equiv"}, {"equivalent", eq}, {"first_includes_second", ab.included()},
              {"second_includes_first", ba.included()}};
    if (ab.included()) j["witness_first_includes_second"] = io::witness_to_json(ab.witness());
    if (ba.included()) j["witness_second_includes_first"] = io::witness_to_json(ba.witness());
    return {with_notes(j, kDmcConvention, opt, {{"cap", cap}}), eq ? kExitHolds : kExitFails, std::nullopt};
}

Outcome dmc_degrade(const std::string& channel_path, const std::string& witness_path, const Options& opt) {
    const auto channel = load_as<dmc::StochasticMatrix>(channel_path);
    const auto w = io::witness_from_json(io::read_json_file(witness_path));
    const auto degraded = dmc::degrade(channel, w.pairs, w.weights);
    return {with_notes(io::to_json(degraded), kDmcConvention, opt), kExitHolds, std::nullopt};
}

Outcome dmc_error_prob(const std::string& channel_path, int messages, int block_length, double cap, const Options& opt) {
    const auto channel = load_as<dmc::StochasticMatrix>(channel_path);
    const double pe = dmc::best_error_probability(channel, messages, block_length, cap);
    json j = {{"command", "dmc error-prob"}, {"error_probability", pe}, {"messages", messages}, {"block_length", block_length}};
    return {with_notes(j, kDmcConvention, opt, {{"cap", cap}}), kExitHolds, std::nullopt};
}

// ---------------------------------------------------------------- noise

Outcome noise_check(const std::string& a_path, const std::string& b_path, const Options& opt) {
    const auto a = load_as<noise::MonotoneProfile>(a_path);
    const auto b = load_as<noise::MonotoneProfile>(b_path);
    const auto r = noise::check_order(a, b, opt.tolerance);
    json j = {{"command", "noise check"}, {"relation", noise::to_string(r.relation)}, {"max_violation", r.max_violation},
              {"variance_first", noise::variance(a)}, {"variance_second", noise::variance(b)}};
    return {with_notes(j, kNoiseConvention, opt), r.relation == noise::Relation::Incomparable ? kExitFails : kExitHolds,
            std::nullopt};
}

Outcome noise_lattice(const std::string& a_path, const std::string& b_path, bool upper, const Options& opt) {
    const auto a = load_as<noise::MonotoneProfile>(a_path);
    const auto b = load_as<noise::MonotoneProfile>(b_path);
    const auto p = upper ? noise::lub(a, b) : noise::glb(a, b);
    return {with_notes(io::to_json(p), kNoiseConvention, opt), kExitHolds, profile_table(p)};
}

Outcome noise_cf(const std::string& path, std::optional<double> zeta, double zmin, double zmax, int points,
                 const Options& opt) {
    const auto p = load_as<noise::MonotoneProfile>(path);
    std::vector<double> zetas;
    if (zeta) {
        zetas.push_back(*zeta);
    } else {
        if (points < 1) throw InputError("--points must be >= 1");
        for (int i = 0; i < points; ++i)
            zetas.push_back(points == 1 ? zmin : zmin + (zmax - zmin) * i / (points - 1));
    }
    json values = json::array();
    Table t{{"zeta", "re", "im"}, {}};
    for (double z : zetas) {
        const auto c = noise::log_cf(p, z);
        values.push_back({{"zeta", z}, {"re", c.real()}, {"im", c.imag()}});
        t.rows.push_back({num(z), num(c.real()), num(c.imag())});
    }
    json j = {{"command", "noise cf"}, {"log_cf", values}};
    return {with_notes(j, kNoiseConvention, opt), kExitHolds, t};
}

Outcome noise_variance(const std::string& path, const Options& opt) {
    const auto p = load_as<noise::MonotoneProfile>(path);
    json j = {{"command", "noise variance"}, {"variance", noise::variance(p)}};
    return {with_notes(j, kNoiseConvention, opt), kExitHolds, std::nullopt};
}

// ---------------------------------------------------------------- phase

Outcome phase_build(const std::string& h, const std::string& v, const std::string& input, const std::string& output,
                    const std::string& grid_path, const std::string& role, const Options& opt) {
    phase::TorusSpectrum s = phase::worst_channel(opt.order);
    if (role == "degradation") {
        if (input.empty() || output.empty())
            throw InputError("building a degradation needs --input and --output families");
        s = phase::degradation_coeffs(phase::independent_degradation(phase::parse_family(input),
                                                                     phase::parse_family(output), 2 * opt.order),
                                      opt.order);
    } else if (role == "channel") {
        if (!grid_path.empty()) {
            s = phase::from_grid(io::matrix_from_json(io::read_json_file(grid_path).at("pdf")), opt.order);
        } else {
            if (h.empty() || v.empty()) throw InputError("building a channel needs --channel-phase and --noise-phase (or --grid)");
            s = phase::product_channel(phase::from_wrapped(phase::parse_family(h), opt.order),
                                       phase::from_wrapped(phase::parse_family(v), opt.order));
        }
    } else {
        throw InputError("--role must be 'channel' or 'degradation'");
    }
    return {with_notes(io::to_json(s), kPhaseConvention, opt), kExitHolds, spectrum_table(s)};
}

Outcome phase_degrade(const std::string& channel_path, const std::string& d_path, const Options& opt) {
    const auto ch = load_as<phase::TorusSpectrum>(channel_path);
    const auto d = load_as<phase::TorusSpectrum>(d_path);
    const auto s = phase::degrade(ch, d);
    return {with_notes(io::to_json(s), kPhaseConvention, opt), kExitHolds, spectrum_table(s)};
}

Outcome phase_strict(const std::string& channel_path, const std::string& d_path, double epsilon,
                     const std::string& query, const Options& opt) {
    if (query != "strict" && query != "undoable") throw InputError("--query must be 'strict' or 'undoable'");
    const auto ch = load_as<phase::TorusSpectrum>(channel_path);
    const auto d = load_as<phase::TorusSpectrum>(d_path);
    const auto r = phase::is_strict(ch, d, epsilon);
    json j = {{"command", "phase strict"}, {"classification", phase::to_string(r)}, {"query", query}};
    if (const auto* u = std::get_if<phase::Undoable>(&r))
        j["witness"] = {{"m", u->m}, {"n", u->n}, {"a", u->a}, {"b", u->b}, {"gamma", u->gamma}};
    const bool strict = std::holds_alternative<phase::Strict>(r);
    const bool holds = query == "strict" ? strict : !strict;
    return {with_notes(j, kPhaseConvention, opt, {{"epsilon", epsilon}}), holds ? kExitHolds : kExitFails, std::nullopt};
}

Outcome phase_extremal(const std::string& kind, double gamma_i, double gamma_o, const std::string& channel_path,
                       const Options& opt) {
    std::optional<phase::PhaseDegradation> joint;
    if (kind == "output-uniform") joint = phase::output_uniformizer(2 * opt.order);
    else if (kind == "input-uniform") joint = phase::input_uniformizer(2 * opt.order);
    else if (kind == "deterministic") joint = phase::deterministic_degradation(gamma_i, gamma_o, 2 * opt.order);
    else if (kind != "worst") throw InputError("--kind must be worst, output-uniform, input-uniform or deterministic");

    phase::TorusSpectrum s = joint ? phase::degradation_coeffs(*joint, opt.order) : phase::worst_channel(opt.order);
    if (!channel_path.empty()) {
        const auto ch = load_as<phase::TorusSpectrum>(channel_path);
        if (ch.order() != opt.order) throw InputError("channel order differs from --order");
        // the worst channel absorbs every input, so "worst" maps any channel to it
        s = joint ? phase::degrade(ch, s) : phase::worst_channel(opt.order);
    }
    return {with_notes(io::to_json(s), kPhaseConvention, opt, {{"kind", kind}}), kExitHolds, spectrum_table(s)};
}

// ---------------------------------------------------------------- lgc

Outcome lgc_canon(const std::string& path, const Options& opt) {
    const auto s = lgc::canonicalize(load_as<lgc::GaussianChannel>(path));
    json j = {{"command", "lgc canon"}, {"spectrum", s.values()}};
    return {with_notes(j, kLgcConvention, opt), kExitHolds, values_table(s.values())};
}

Outcome lgc_check(const std::string& better_path, const std::string& worse_path, const Options& opt) {
    const auto b = lgc::canonicalize(load_as<lgc::GaussianChannel>(better_path));
    const auto w = lgc::canonicalize(load_as<lgc::GaussianChannel>(worse_path));
    const auto r = lgc::includes(b, w, opt.tolerance);
    json j = {{"command", "lgc check"}, {"included", lgc::is_included(r)}, {"better_spectrum", b.values()},
              {"worse_spectrum", w.values()}};
    if (const auto* ni = std::get_if<lgc::NotIncluded>(&r)) {
        j["violating_index"] = ni->index;
        j["excess"] = ni->excess;
    }
    return {with_notes(j, kLgcConvention, opt), lgc::is_included(r) ? kExitHolds : kExitFails, std::nullopt};
}

Outcome lgc_lattice(const std::string& a_path, const std::string& b_path, bool upper, const Options& opt) {
    const auto a = lgc::canonicalize(load_as<lgc::GaussianChannel>(a_path));
    const auto b = lgc::canonicalize(load_as<lgc::GaussianChannel>(b_path));
    const auto s = upper ? lgc::lub(a, b) : lgc::glb(a, b);
    return {with_notes(spectrum_document(s), kLgcConvention, opt), kExitHolds, values_table(s.values())};
}

Outcome lgc_verify(const std::string& channel_path, const std::string& transform_path, const Options& opt) {
    const auto ch = load_as<lgc::GaussianChannel>(channel_path);
    const auto t = io::read_json_file(transform_path);
    if (!t.contains("B") || !t.contains("C")) throw InputError("transform file needs \"B\" and \"C\" matrices");
    const auto r = lgc::verify_equivalence_transform(ch, io::matrix_from_json(t.at("B")), io::matrix_from_json(t.at("C")),
                                                     opt.tolerance);
    const bool eq = std::holds_alternative<lgc::Equivalent>(r);
    json j = {{"command", "lgc verify-equiv"}, {"equivalent", eq}, {"original_spectrum", lgc::canonicalize(ch).values()}};
    if (const auto* ne = std::get_if<lgc::NotEquivalent>(&r)) {
        j["failed_conditions"] = ne->failed_conditions;
        if (ne->transformed) j["transformed_spectrum"] = ne->transformed->values();
    }
    return {with_notes(j, kLgcConvention, opt), eq ? kExitHolds : kExitFails, std::nullopt};
}

Outcome lgc_haar(int n, const Options& opt) {
    const auto q = lgc::sample_haar_orthogonal(n, opt.seed);
    json j = {{"command", "lgc sample-haar"}, {"matrix", io::matrix_to_json(q)}};
    Table t{{"row", "col", "value"}, {}};
    for (numerics::Index i = 0; i < q.rows(); ++i)
        for (numerics::Index k = 0; k < q.cols(); ++k) t.rows.push_back({std::to_string(i), std::to_string(k), num(q(i, k))});
    return {with_notes(j, kLgcConvention, opt), kExitHolds, t};
}

Outcome lgc_ensemble(const std::string& sampler, int rows, int cols, double scale, const std::string& fixed_path,
                     int samples, const Options& opt) {
    lgc::EnsembleSampler s;
    if (sampler == "gaussian") {
        s = lgc::GaussianEntries{rows, cols, scale};
    } else if (sampler == "haar") {
        if (fixed_path.empty()) throw InputError("the haar sampler needs --fixed");
        s = lgc::HaarRotated{load_as<lgc::GaussianChannel>(fixed_path).h(), true, true};
    } else {
        throw InputError("--sampler must be 'gaussian' or 'haar'");
    }
    if (samples < 1) throw InputError("--samples must be >= 1");
    const auto e = lgc::ensemble_from_sampler(s, static_cast<std::size_t>(samples), opt.seed);
    Table t{{"sample", "k", "value"}, {}};
    for (std::size_t i = 0; i < e.samples.size(); ++i)
        for (std::size_t k = 0; k < e.dimension(); ++k)
            t.rows.push_back({std::to_string(i), std::to_string(k), num(e.samples[i].values()[k])});
    return {with_notes(io::to_json(e), kLgcConvention, opt), kExitHolds, t};
}

Outcome lgc_ensemble_order(const std::string& a_path, const std::string& b_path, int grid, double delta,
                           const Options& opt) {
    const auto a = load_as<lgc::SingularEnsemble>(a_path);
    const auto b = load_as<lgc::SingularEnsemble>(b_path);
    if (grid < 2) throw InputError("--grid must be >= 2");
    const auto r = lgc::ensemble_order(a, b, static_cast<std::size_t>(grid), delta);
    json j = {{"command", "lgc ensemble-order"},
              {"band", lgc::dkw_band(std::min(a.samples.size(), b.samples.size()), delta)},
              {"copula_assumption", "caller asserts a common copula; notes: [" + a.copula_note + "] [" + b.copula_note + "]"}};
    int code = kExitHolds;
    if (const auto* o = std::get_if<lgc::Ordered>(&r)) {
        j["ordered"] = true;
        j["direction"] = lgc::to_string(o->direction);
        j["max_margin"] = o->max_margin;
        j["violations"] = o->violations;
    } else {
        j["ordered"] = false;
        j["max_violation"] = std::get<lgc::NotOrdered>(r).max_violation;
        code = kExitFails;
    }
    return {with_notes(j, kLgcConvention, opt, {{"grid", grid}, {"delta", delta}}), code, std::nullopt};
}

void error_line(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    if (const char* env = std::getenv("CHORDER_SEED")) {
        try {
            opt.seed = std::stoull(env);
        } catch (const std::exception&) {
            error_line(err, "usage", "CHORDER_SEED is not an unsigned integer");
            return kExitError;
        }
    }

    CLI::App app{"Channel inclusion orders: decide, certify and combine", "chorder"};
    app.require_subcommand(1);
    app.add_option("--tolerance", opt.tolerance, "Numerical tolerance")->capture_default_str();
    app.add_option("--seed", opt.seed, "Random seed (default from CHORDER_SEED or 0)")->capture_default_str();
    app.add_option("--order", opt.order, "Torus truncation order M")->capture_default_str();
    app.add_option("--out", opt.out, "Write the result to this file instead of standard output");
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    std::function<Outcome()> action;
    auto leaf = [](CLI::App* parent, const std::string& name, const std::string& help) {
        auto* s = parent->add_subcommand(name, help);
        s->fallthrough();
        return s;
    };

    // dmc
    auto* dmc_cmd = leaf(&app, "dmc", "Discrete memoryless channels");
    dmc_cmd->require_subcommand(1);
    std::string better, worse, channel_path, witness_path, pos_a, pos_b;
    double cap = 1e6;
    int messages = 2, block_length = 1;
    {
        auto* c = leaf(dmc_cmd, "check", "Does --better include --worse?");
        c->add_option("--better", better)->required();
        c->add_option("--worse", worse)->required();
        c->add_option("--cap", cap)->capture_default_str();
        c->callback([&] { action = [&] { return dmc_check(better, worse, cap, opt); }; });

        auto* e = leaf(dmc_cmd, "equiv", "Mutual inclusion");
        e->add_option("first", pos_a)->required();
        e->add_option("second", pos_b)->required();
        e->add_option("--cap", cap)->capture_default_str();
        e->callback([&] { action = [&] { return dmc_equiv(pos_a, pos_b, cap, opt); }; });

        auto* d = leaf(dmc_cmd, "degrade", "Apply a witness (weights + deterministic pairs) to a channel");
        d->add_option("--channel", channel_path)->required();
        d->add_option("--witness", witness_path)->required();
        d->callback([&] { action = [&] { return dmc_degrade(channel_path, witness_path, opt); }; });

        auto* p = leaf(dmc_cmd, "error-prob", "Exhaustive best-code error probability");
        p->add_option("--channel", channel_path)->required();
        p->add_option("--messages", messages)->capture_default_str();
        p->add_option("--block-length", block_length)->capture_default_str();
        p->add_option("--cap", cap)->capture_default_str();
        p->callback([&] { action = [&] { return dmc_error_prob(channel_path, messages, block_length, cap, opt); }; });
    }

    // noise
    auto* noise_cmd = leaf(&app, "noise", "Additive infinitely divisible noise (K-functions)");
    noise_cmd->require_subcommand(1);
    std::optional<double> zeta;
    double zmin = -3.0, zmax = 3.0;
    int points = 61;
    {
        auto* c = leaf(noise_cmd, "check", "Order two profiles");
        c->add_option("first", pos_a)->required();
        c->add_option("second", pos_b)->required();
        c->callback([&] { action = [&] { return noise_check(pos_a, pos_b, opt); }; });

        auto* l = leaf(noise_cmd, "lub", "Least upper bound");
        l->add_option("first", pos_a)->required();
        l->add_option("second", pos_b)->required();
        l->callback([&] { action = [&] { return noise_lattice(pos_a, pos_b, true, opt); }; });

        auto* g = leaf(noise_cmd, "glb", "Greatest lower bound");
        g->add_option("first", pos_a)->required();
        g->add_option("second", pos_b)->required();
        g->callback([&] { action = [&] { return noise_lattice(pos_a, pos_b, false, opt); }; });

        auto* f = leaf(noise_cmd, "cf", "Log characteristic function");
        f->add_option("profile", pos_a)->required();
        f->add_option("--zeta", zeta, "Single evaluation point");
        f->add_option("--zeta-min", zmin)->capture_default_str();
        f->add_option("--zeta-max", zmax)->capture_default_str();
        f->add_option("--points", points)->capture_default_str();
        f->callback([&] { action = [&] { return noise_cf(pos_a, zeta, zmin, zmax, points, opt); }; });

        auto* v = leaf(noise_cmd, "variance", "Total mass of the K-function");
        v->add_option("profile", pos_a)->required();
        v->callback([&] { action = [&] { return noise_variance(pos_a, opt); }; });
    }

    // phase
    auto* phase_cmd = leaf(&app, "phase", "Phase-degraded torus channels");
    phase_cmd->require_subcommand(1);
    std::string fam_h, fam_v, fam_in, fam_out, grid_path, role = "channel", degradation_path, kind,
                query = "strict";
    double gamma_i = 0.0, gamma_o = 0.0, epsilon = 1e-9;
    {
        auto* b = leaf(phase_cmd, "build", "Build a channel or degradation spectrum");
        b->add_option("--role", role)->check(CLI::IsMember({"channel", "degradation"}))->capture_default_str();
        b->add_option("--channel-phase", fam_h, "Channel phase family, e.g. wrapped_gaussian:0:0.5");
        b->add_option("--noise-phase", fam_v, "Noise phase family");
        b->add_option("--input", fam_in, "Input degradation phase family");
        b->add_option("--output", fam_out, "Output degradation phase family");
        b->add_option("--grid", grid_path, "JSON file {\"pdf\": [[...]]} sampled on [0,2pi)^2");
        b->callback([&] { action = [&] { return phase_build(fam_h, fam_v, fam_in, fam_out, grid_path, role, opt); }; });

        auto* d = leaf(phase_cmd, "degrade", "Apply a degradation spectrum");
        d->add_option("--channel", channel_path)->required();
        d->add_option("--degradation", degradation_path)->required();
        d->callback([&] { action = [&] { return phase_degrade(channel_path, degradation_path, opt); }; });

        auto* s = leaf(phase_cmd, "strict", "Can the degradation be undone?");
        s->add_option("--channel", channel_path)->required();
        s->add_option("--degradation", degradation_path)->required();
        s->add_option("--epsilon", epsilon)->capture_default_str();
        s->add_option("--query", query)->check(CLI::IsMember({"strict", "undoable"}))->capture_default_str();
        s->callback([&] { action = [&] { return phase_strict(channel_path, degradation_path, epsilon, query, opt); }; });

        auto* x = leaf(phase_cmd, "extremal", "Extremal degradations and the worst channel");
        x->add_option("--kind", kind)->required();
        x->add_option("--gamma-i", gamma_i)->capture_default_str();
        x->add_option("--gamma-o", gamma_o)->capture_default_str();
        x->add_option("--channel", channel_path, "Apply to this channel");
        x->callback([&] { action = [&] { return phase_extremal(kind, gamma_i, gamma_o, channel_path, opt); }; });
    }

    // lgc
    auto* lgc_cmd = leaf(&app, "lgc", "Linear Gaussian channels");
    lgc_cmd->require_subcommand(1);
    std::string transform_path, sampler = "gaussian", fixed_path;
    int haar_n = 2, rows = 2, cols = 2, samples = 1000, grid = 200;
    double scale = 1.0, delta = 0.05;
    {
        auto* c = leaf(lgc_cmd, "canon", "Canonical spectrum");
        c->add_option("channel", pos_a)->required();
        c->callback([&] { action = [&] { return lgc_canon(pos_a, opt); }; });

        auto* k = leaf(lgc_cmd, "check", "Does --better include --worse?");
        k->add_option("--better", better)->required();
        k->add_option("--worse", worse)->required();
        k->callback([&] { action = [&] { return lgc_check(better, worse, opt); }; });

        auto* l = leaf(lgc_cmd, "lub", "Element-wise max of canonical spectra");
        l->add_option("first", pos_a)->required();
        l->add_option("second", pos_b)->required();
        l->callback([&] { action = [&] { return lgc_lattice(pos_a, pos_b, true, opt); }; });

        auto* g = leaf(lgc_cmd, "glb", "Element-wise min of canonical spectra");
        g->add_option("first", pos_a)->required();
        g->add_option("second", pos_b)->required();
        g->callback([&] { action = [&] { return lgc_lattice(pos_a, pos_b, false, opt); }; });

        auto* v = leaf(lgc_cmd, "verify-equiv", "Check an equivalence transform (C H B, C Sigma C^T)");
        v->add_option("--channel", channel_path)->required();
        v->add_option("--transform", transform_path, "JSON file {\"B\": [[...]], \"C\": [[...]]}")->required();
        v->callback([&] { action = [&] { return lgc_verify(channel_path, transform_path, opt); }; });

        auto* h = leaf(lgc_cmd, "sample-haar", "Haar orthogonal matrix");
        h->add_option("--n", haar_n)->capture_default_str();
        h->callback([&] { action = [&] { return lgc_haar(haar_n, opt); }; });

        auto* e = leaf(lgc_cmd, "ensemble", "Sample a singular-value ensemble");
        e->add_option("--sampler", sampler)->check(CLI::IsMember({"gaussian", "haar"}))->capture_default_str();
        e->add_option("--rows", rows)->capture_default_str();
        e->add_option("--cols", cols)->capture_default_str();
        e->add_option("--scale", scale)->capture_default_str();
        e->add_option("--fixed", fixed_path, "lgc document whose H is rotated (haar sampler)");
        e->add_option("--samples", samples)->capture_default_str();
        e->callback([&] { action = [&] { return lgc_ensemble(sampler, rows, cols, scale, fixed_path, samples, opt); }; });

        auto* o = leaf(lgc_cmd, "ensemble-order", "Empirical usual stochastic order of two ensembles");
        o->add_option("first", pos_a)->required();
        o->add_option("second", pos_b)->required();
        o->add_option("--grid", grid)->capture_default_str();
        o->add_option("--delta", delta)->capture_default_str();
        o->callback([&] { action = [&] { return lgc_ensemble_order(pos_a, pos_b, grid, delta, opt); }; });
    }

    std::vector<const char*> argv{"chorder"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitHolds;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitHolds;
    } catch (const CLI::ParseError& e) {
        error_line(err, "usage", e.what());
        return kExitError;
    }
    if (!action) {
        error_line(err, "usage", "no command given");
        return kExitError;
    }
    if (opt.order < 1) {
        error_line(err, "usage", "--order must be >= 1");
        return kExitError;
    }
    if (!(opt.tolerance >= 0.0)) {
        error_line(err, "usage", "--tolerance must be nonnegative");
        return kExitError;
    }

    try {
        const Outcome outcome = action();
        emit(outcome, opt, out);
        return outcome.code;
    } catch (const EnumerationTooLarge& e) {
        error_line(err, "enumeration_too_large", e.what());
    } catch (const InputError& e) {
        error_line(err, "input", e.what());
    } catch (const DomainError& e) {
        error_line(err, "domain", e.what());
    } catch (const io::json::exception& e) {
        error_line(err, "input", e.what());
    }
    return kExitError;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace chorder::cli
