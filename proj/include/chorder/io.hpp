// SPDX-License-Identifier: Apache-2.0
//
// JSON documents for channels, witnesses and results.
#pragma once

#include "chorder/dmc.hpp"
#include "chorder/lgc.hpp"
#include "chorder/noise.hpp"
#include "chorder/phase.hpp"

#include "json.hpp"

#include <string>
#include <variant>

namespace chorder::io {

using json = nlohmann::json;

struct Metadata {
    std::string name;
    std::string description;
};

/// A channel file: exactly one payload plus optional {"metadata": {...}}.
struct ChannelDocument {
    std::variant<dmc::StochasticMatrix, noise::MonotoneProfile, phase::TorusSpectrum, lgc::GaussianChannel,
                 lgc::SingularEnsemble>
        payload;
    Metadata metadata;

    std::string type() const;
};

/// Parses and validates a document. Throws InputError on unknown "type",
/// missing fields, or a payload that fails its module's validation.
ChannelDocument parse_document(const json& doc);
ChannelDocument load_document(const std::string& path);
json to_json(const ChannelDocument& doc);

json to_json(const dmc::StochasticMatrix& m);
json to_json(const noise::MonotoneProfile& p);
json to_json(const phase::TorusSpectrum& s);
json to_json(const lgc::GaussianChannel& c);
json to_json(const lgc::SingularEnsemble& e);

json witness_to_json(const dmc::InclusionWitness& w);
dmc::InclusionWitness witness_from_json(const json& j);

numerics::Matrix matrix_from_json(const json& j);
json matrix_to_json(const numerics::Matrix& m);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

} // namespace chorder::io
