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

#include "photonmesh/records.h"

#include "json.hpp"

namespace photonmesh {

namespace {

nlohmann::ordered_json header(const char *kind) {
    return {{"schema_version", kRecordSchemaVersion}, {"record", kind}};
}

}  // namespace

std::string distillation_record(
    const std::string &protocol, int m, const DistillationOutcome &outcome, std::optional<double> slope) {
    nlohmann::ordered_json j = header("distillation");
    j["protocol"] = protocol;
    j["m"] = m;
    j["epsilon_in"] = outcome.epsilon_in;
    j["herald"] = herald_label(outcome.herald);
    j["success_probability"] = outcome.success_probability;
    j["epsilon_out"] = outcome.epsilon_out;
    j["visibility_out"] = outcome.visibility_out;
    j["slope"] = slope ? nlohmann::ordered_json(*slope) : nlohmann::ordered_json(nullptr);
    return j.dump();
}

std::vector<std::string> suppression_records(const SuppressionReport &report) {
    std::vector<std::string> lines;
    for (const auto &e : report.entries) {
        nlohmann::ordered_json j = header("ztl");
        j["m"] = report.m;
        j["outcome"] = e.outcome.counts();
        j["allowed"] = e.allowed;
        j["indistinguishable"] = e.indistinguishable;
        j["distinguishable"] = e.distinguishable;
        lines.push_back(j.dump());
    }
    return lines;
}

std::vector<std::string> comparison_records(const ComparisonReport &report) {
    std::vector<std::string> lines;
    for (const auto &r : report.rows) {
        nlohmann::ordered_json j = header("architecture");
        j["m"] = report.modes;
        j["architecture"] = r.architecture;
        j["strategy"] = std::string(strategy_name(r.strategy));
        j["pairs"] = r.pairs;
        j["depth_layers"] = r.depth_layers;
        j["placed"] = r.placed;
        j["mesh_rows"] = r.mesh_rows;
        j["mesh_cols"] = r.mesh_cols;
        j["mesh_active_mzis"] = r.mesh_active_mzis;
        j["mesh_depth"] = r.mesh_depth;
        j["mesh_layers"] = r.mesh_layers;
        lines.push_back(j.dump());
    }
    return lines;
}

}  // namespace photonmesh
