// SPDX-License-Identifier: Apache-2.0
#include "chorder/io.hpp"

#include "chorder/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace chorder::io {

namespace {

template <typename T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InputError(std::string("field '") + key + "' has the wrong type");
    }
}

bool is_uniform(const std::vector<double>& g) {
    if (g.size() < 2) return false;
    const double step = (g.back() - g.front()) / static_cast<double>(g.size() - 1);
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::abs(g[i] - (g.front() + step * static_cast<double>(i))) > 1e-12 * (g.back() - g.front()))
            return false;
    return true;
}

std::vector<double> grid_from_json(const json& g) {
    if (g.contains("values")) return field<std::vector<double>>(g, "values");
    return noise::uniform_grid(field<double>(g, "min"), field<double>(g, "max"), field<int>(g, "points"));
}

noise::MonotoneProfile profile_from_json(const json& j) {
    const auto kind = noise::profile_kind_from_string(j.value("flag", std::string("noise_K")));
    auto grid = j.contains("grid") ? grid_from_json(j.at("grid")) : noise::default_grid();
    std::vector<double> density = j.contains("density") ? field<std::vector<double>>(j, "density")
                                                        : std::vector<double>(grid.size(), 0.0);
    std::vector<noise::Atom> atoms;
    if (j.contains("atoms")) {
        for (const auto& a : j.at("atoms")) {
            if (!a.is_array() || a.size() != 2) throw InputError("atoms must be [location, mass] pairs");
            atoms.push_back({a[0].get<double>(), a[1].get<double>()});
        }
    }
    return noise::MonotoneProfile(std::move(grid), std::move(density), std::move(atoms), kind);
}

phase::TorusSpectrum torus_from_json(const json& j) {
    const int order = field<int>(j, "order");
    const auto role = phase::spectrum_role_from_string(j.value("role", std::string("channel")));
    std::vector<phase::Complex> coeffs;
    for (const auto& c : j.at("coeffs")) {
        if (!c.is_array() || c.size() != 2) throw InputError("torus coefficients must be [re, im] pairs");
        coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    return phase::TorusSpectrum(order, std::move(coeffs), role);
}

lgc::SingularEnsemble ensemble_from_json(const json& j) {
    lgc::SingularEnsemble e;
    for (const auto& s : j.at("samples")) e.samples.emplace_back(s.get<std::vector<double>>());
    e.seed = j.value("seed", std::uint64_t{0});
    e.copula_note = j.value("copula_note", std::string());
    if (e.samples.empty()) throw InputError("ensemble has no samples");
    for (const auto& s : e.samples)
        if (s.size() != e.dimension()) throw InputError("ensemble samples differ in length");
    return e;
}

} // namespace

std::string ChannelDocument::type() const {
    switch (payload.index()) {
    case 0: return "dmc";
    case 1: return "kfunction";
    case 2: return "torus";
    case 3: return "lgc";
    default: return "lgc_ensemble";
    }
}

numerics::Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("matrix must be a nonempty array of rows");
    const auto rows = static_cast<numerics::Index>(j.size());
    const auto cols = static_cast<numerics::Index>(j[0].size());
    numerics::Matrix m(rows, cols);
    for (numerics::Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<numerics::Index>(row.size()) != cols)
            throw InputError("matrix rows have unequal lengths");
        for (numerics::Index k = 0; k < cols; ++k) {
            if (!row[static_cast<std::size_t>(k)].is_number()) throw InputError("matrix entries must be numbers");
            m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
        }
    }
    return m;
}

json matrix_to_json(const numerics::Matrix& m) {
    json rows = json::array();
    for (numerics::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (numerics::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

ChannelDocument parse_document(const json& doc) {
    if (!doc.is_object()) throw InputError("document must be a JSON object");
    const auto type = field<std::string>(doc, "type");
    Metadata meta;
    if (doc.contains("metadata")) {
        meta.name = doc.at("metadata").value("name", std::string());
        meta.description = doc.at("metadata").value("description", std::string());
    }
    try {
        if (type == "dmc") return {dmc::StochasticMatrix(matrix_from_json(doc.at("matrix"))), meta};
        if (type == "kfunction") return {profile_from_json(doc), meta};
        if (type == "torus") return {torus_from_json(doc), meta};
        if (type == "lgc")
            return {lgc::GaussianChannel(matrix_from_json(doc.at("H")), matrix_from_json(doc.at("Sigma"))), meta};
        if (type == "lgc_ensemble") return {ensemble_from_json(doc), meta};
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed ") + type + " document: " + e.what());
    } catch (const DomainError& e) {
        throw InputError(std::string("invalid ") + type + " document: " + e.what());
    }
    throw InputError("unknown document type '" + type + "'");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

ChannelDocument load_document(const std::string& path) { return parse_document(read_json_file(path)); }

json to_json(const dmc::StochasticMatrix& m) { return {{"type", "dmc"}, {"matrix", matrix_to_json(m.entries())}}; }

json to_json(const noise::MonotoneProfile& p) {
    json grid;
    const auto& g = p.grid();
    if (is_uniform(g)) grid = {{"min", g.front()}, {"max", g.back()}, {"points", g.size()}};
    else grid = {{"values", g}};
    json atoms = json::array();
    for (const auto& a : p.atoms()) atoms.push_back({a.location, a.mass});
    return {{"type", "kfunction"}, {"flag", noise::to_string(p.kind())}, {"grid", grid},
            {"density", p.density()}, {"atoms", atoms}};
}

json to_json(const phase::TorusSpectrum& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back({c.real(), c.imag()});
    return {{"type", "torus"}, {"order", s.order()}, {"coeffs", coeffs}, {"role", phase::to_string(s.role())}};
}

json to_json(const lgc::GaussianChannel& c) {
    return {{"type", "lgc"}, {"H", matrix_to_json(c.h())}, {"Sigma", matrix_to_json(c.sigma())}};
}

json to_json(const lgc::SingularEnsemble& e) {
    json samples = json::array();
    for (const auto& s : e.samples) samples.push_back(s.values());
    return {{"type", "lgc_ensemble"}, {"samples", samples}, {"seed", e.seed}, {"copula_note", e.copula_note}};
}

json to_json(const ChannelDocument& doc) {
    json j = std::visit([](const auto& p) { return to_json(p); }, doc.payload);
    if (!doc.metadata.name.empty() || !doc.metadata.description.empty())
        j["metadata"] = {{"name", doc.metadata.name}, {"description", doc.metadata.description}};
    return j;
}

json witness_to_json(const dmc::InclusionWitness& w) {
    json pairs = json::array();
    for (const auto& p : w.pairs)
        pairs.push_back({{"input_map", p.input_map}, {"output_map", p.output_map}, {"output_size", p.output_size}});
    return {{"weights", w.weights}, {"pairs", pairs}, {"residual", w.residual}};
}

dmc::InclusionWitness witness_from_json(const json& j) {
    dmc::InclusionWitness w;
    try {
        w.weights = field<std::vector<double>>(j, "weights");
        numerics::Index max_out = -1;
        for (const auto& p : j.at("pairs")) {
            dmc::DeterministicPair pair;
            pair.input_map = field<std::vector<numerics::Index>>(p, "input_map");
            pair.output_map = field<std::vector<numerics::Index>>(p, "output_map");
            pair.output_size = p.value("output_size", numerics::Index{0});
            for (numerics::Index y : pair.output_map) max_out = std::max(max_out, y);
            w.pairs.push_back(std::move(pair));
        }
        // without an explicit codomain, the largest output label fixes it
        for (auto& p : w.pairs)
            if (p.output_size == 0) p.output_size = max_out + 1;
        w.residual = j.value("residual", 0.0);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed witness: ") + e.what());
    }
    if (w.weights.size() != w.pairs.size()) throw InputError("witness weights and pairs differ in length");
    return w;
}

} // namespace chorder::io
