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
#include "photonmesh/errors.h"
#include "photonmesh/mesh.h"

namespace photonmesh {

namespace {

constexpr const char *kMeshFormat = "photonmesh-mesh";
constexpr const char *kPlacementFormat = "photonmesh-placement";
constexpr int kVersion = 1;

nlohmann::json parse_json(std::string_view text, const char *what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &ex) {
        throw ParseError(std::string(what) + " text is not valid JSON: " + ex.what());
    }
}

void check_header(const nlohmann::json &j, const char *format) {
    if (j.at("format").get<std::string>() != format) {
        throw ParseError(std::string("expected format ") + format);
    }
    if (j.at("version").get<int>() != kVersion) {
        throw ParseError("unsupported version " + j.at("version").dump());
    }
}

nlohmann::json mesh_json(const BricksMesh &mesh) {
    return {{"rows", mesh.rows()}, {"cols", mesh.cols()}};
}

BricksMesh mesh_from_json(const nlohmann::json &j) {
    try {
        return build_bricks_mesh(j.at("rows").get<int>(), j.at("cols").get<int>());
    } catch (const RangeError &ex) {
        throw ParseError(std::string("invalid mesh size: ") + ex.what());
    }
}

}  // namespace

std::string serialize_mesh(const BricksMesh &mesh) {
    nlohmann::json j = {{"format", kMeshFormat}, {"version", kVersion}};
    j.update(mesh_json(mesh));
    return j.dump(2) + "\n";
}

BricksMesh parse_mesh(std::string_view text) {
    const nlohmann::json j = parse_json(text, "mesh");
    try {
        check_header(j, kMeshFormat);
        return mesh_from_json(j);
    } catch (const nlohmann::json::exception &ex) {
        throw ParseError(std::string("malformed mesh: ") + ex.what());
    }
}

std::string serialize_placement(const Placement &p) {
    nlohmann::json assignment = nlohmann::json::array();
    for (const auto &a : p.assignment) {
        assignment.push_back({{"element", a.element}, {"unit", a.unit}, {"input_end", a.input_end}});
    }
    nlohmann::json routes = nlohmann::json::array();
    for (const auto &r : p.routes) {
        routes.push_back(
            {{"mode", r.mode}, {"source", r.source}, {"target", r.target}, {"links", r.links}, {"units", r.units}});
    }
    nlohmann::json j = {
        {"format", kPlacementFormat},
        {"version", kVersion},
        {"strategy", std::string(strategy_name(p.strategy))},
        {"mesh", mesh_json(p.mesh)},
        {"circuit", nlohmann::json::parse(serialize_circuit(p.circuit))},
        {"assignment", std::move(assignment)},
        {"routes", std::move(routes)},
        {"input_ports", p.input_ports},
        {"output_ports", p.output_ports},
    };
    return j.dump(2) + "\n";
}

Placement parse_placement(std::string_view text) {
    const nlohmann::json j = parse_json(text, "placement");
    Placement p;
    try {
        check_header(j, kPlacementFormat);
        p.strategy = parse_strategy(j.at("strategy").get<std::string>());
        p.mesh = mesh_from_json(j.at("mesh"));
        p.circuit = parse_circuit(j.at("circuit").dump());
        for (const auto &a : j.at("assignment")) {
            p.assignment.push_back(
                {a.at("element").get<int>(), a.at("unit").get<int>(), a.at("input_end").get<int>()});
        }
        for (const auto &r : j.at("routes")) {
            p.routes.push_back({r.at("mode").get<int>(), r.at("source").get<int>(), r.at("target").get<int>(),
                                r.at("links").get<std::vector<int>>(), r.at("units").get<std::vector<int>>()});
        }
        p.input_ports = j.at("input_ports").get<std::vector<int>>();
        p.output_ports = j.at("output_ports").get<std::vector<int>>();
    } catch (const nlohmann::json::exception &ex) {
        throw ParseError(std::string("malformed placement: ") + ex.what());
    }
    if (const std::string why = placement_violation(p); !why.empty()) {
        throw ParseError("invalid placement: " + why);
    }
    return p;
}

}  // namespace photonmesh
