/*
 * Copyright 2026 The photonmesh Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <string>

#include "json.hpp"
#include "photonmesh/circuits.h"
#include "photonmesh/errors.h"

namespace photonmesh {

namespace {

constexpr const char *kCircuitFormat = "photonmesh-circuit";
constexpr int kCircuitVersion = 1;

nlohmann::json element_to_json(const Element &e) {
    return {
        {"kind", std::string(kind_name(e.kind))},
        {"modes", e.modes()},
        {"theta", e.theta},
        {"phi", e.phi},
    };
}

Element element_from_json(const nlohmann::json &j) {
    Element e;
    e.kind = parse_kind(j.at("kind").get<std::string>());
    const auto modes = j.at("modes").get<std::vector<int>>();
    if (modes.size() != (e.two_mode() ? 2u : 1u)) {
        throw ParseError("element of kind " + std::string(kind_name(e.kind)) + " has the wrong number of modes");
    }
    e.mode_a = modes[0];
    e.mode_b = e.two_mode() ? modes[1] : -1;
    e.theta = j.at("theta").get<double>();
    e.phi = j.at("phi").get<double>();
    return e;
}

}  // namespace

std::string serialize_circuit(const Circuit &c) {
    nlohmann::json layers = nlohmann::json::array();
    for (const auto &layer : c.layers()) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto &e : layer) {
            row.push_back(element_to_json(e));
        }
        layers.push_back(std::move(row));
    }
    nlohmann::json j = {
        {"format", kCircuitFormat},
        {"version", kCircuitVersion},
        {"label", c.label},
        {"mode_count", c.mode_count()},
        {"input_permutation", c.input_permutation},
        {"auxiliary_modes", c.auxiliary_modes},
        {"layers", std::move(layers)},
    };
    return j.dump(2) + "\n";
}

Circuit parse_circuit(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &ex) {
        throw ParseError(std::string("circuit text is not valid JSON: ") + ex.what());
    }
    try {
        if (j.at("format").get<std::string>() != kCircuitFormat) {
            throw ParseError("not a photonmesh circuit");
        }
        if (j.at("version").get<int>() != kCircuitVersion) {
            throw ParseError("unsupported circuit version " + j.at("version").dump());
        }
        Circuit c(j.at("mode_count").get<int>());
        for (const auto &row : j.at("layers")) {
            std::vector<Element> layer;
            for (const auto &e : row) {
                layer.push_back(element_from_json(e));
            }
            c.append_layer(std::move(layer));
        }
        c.label = j.value("label", "");
        c.input_permutation = j.value("input_permutation", std::vector<int>{});
        c.auxiliary_modes = j.value("auxiliary_modes", std::vector<int>{});
        c.validate();
        return c;
    } catch (const nlohmann::json::exception &ex) {
        throw ParseError(std::string("malformed circuit: ") + ex.what());
    } catch (const LayoutError &ex) {
        throw ParseError(std::string("invalid circuit layout: ") + ex.what());
    } catch (const DimensionError &ex) {
        throw ParseError(std::string("invalid circuit: ") + ex.what());
    }
}

}  // namespace photonmesh
