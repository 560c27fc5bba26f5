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

#include "photonmesh/compare.h"

#include <bit>
#include <cstdio>

#include "photonmesh/errors.h"

namespace photonmesh {

namespace {

void add_rows(ComparisonReport &report, const Circuit &c, const std::string &architecture) {
    const ComponentReport counts = component_report(c);
    for (Strategy s : {Strategy::kFeedForward, Strategy::kRecirculating}) {
        ArchitectureRow row;
        row.architecture = architecture;
        row.strategy = s;
        row.pairs = counts.pairs;
        row.depth_layers = counts.depth_layers;
        try {
            const Placement p = place_circuit_auto(c, s);
            const PlacementMetrics m = placement_metrics(p);
            row.placed = true;
            row.mesh_rows = p.mesh.rows();
            row.mesh_cols = p.mesh.cols();
            row.mesh_active_mzis = m.active_mzis;
            row.mesh_depth = m.optical_depth;
            row.mesh_layers = m.layer_depth;
        } catch (const CapacityError &ex) {
            row.note = ex.what();
        }
        report.rows.push_back(std::move(row));
    }
}

}  // namespace

ComparisonReport compare_architectures(const ComplexMatrix &u) {
    ComparisonReport report;
    report.modes = static_cast<int>(u.rows());
    add_rows(report, reck_decompose(u), "reck");
    add_rows(report, clements_decompose(u), "clements");
    const int m = report.modes;
    if (std::has_single_bit(static_cast<unsigned>(m)) && m <= 16 &&
        phase_insensitive_distance(u, qft_matrix(m)) < 1e-10) {
        add_rows(report, cooley_tukey_qfft(std::countr_zero(static_cast<unsigned>(m))), "qfft");
    }
    return report;
}

ComparisonReport compare_architectures(const Circuit &c, const std::string &architecture) {
    c.validate();
    ComparisonReport report;
    report.modes = c.mode_count();
    add_rows(report, c, architecture);
    return report;
}

std::string format_comparison(const ComparisonReport &report) {
    std::string out;
    char line[200];
    std::snprintf(line, sizeof line, "%-14s %-14s %5s %6s %6s %7s %6s %6s\n", "architecture", "strategy", "pairs",
                  "depth", "mesh", "active", "odepth", "layers");
    out += line;
    for (const auto &r : report.rows) {
        const std::string size = r.placed ? std::to_string(r.mesh_rows) + "x" + std::to_string(r.mesh_cols) : "-";
        if (r.placed) {
            std::snprintf(line, sizeof line, "%-14s %-14s %5d %6d %6s %7d %6d %6d\n", r.architecture.c_str(),
                          std::string(strategy_name(r.strategy)).c_str(), r.pairs, r.depth_layers, size.c_str(),
                          r.mesh_active_mzis, r.mesh_depth, r.mesh_layers);
        } else {
            std::snprintf(line, sizeof line, "%-14s %-14s %5d %6d %6s %7s %6s %6s\n", r.architecture.c_str(),
                          std::string(strategy_name(r.strategy)).c_str(), r.pairs, r.depth_layers, size.c_str(), "-",
                          "-", "-");
        }
        out += line;
    }
    return out;
}

}  // namespace photonmesh
