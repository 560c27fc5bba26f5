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
#include <vector>

#include "photonmesh/distillation.h"
#include "photonmesh/errors.h"
#include "photonmesh/mesh.h"

namespace photonmesh {

namespace {

struct Fixture {
    const char *name;
    int rows;
    int cols;
    Strategy strategy;
    std::vector<ElementAssignment> assignment;
};

// Element index, unit id, input end. Unit ids follow build_bricks_mesh.
const std::vector<Fixture> &fixtures() {
    static const std::vector<Fixture> table = {
        {"hom-feed-forward", 3, 1, Strategy::kFeedForward, {{0, 4, 0}, {1, 5, 0}}},
        // The second splitter sits above the first and runs right to left.
        {"hom-one-layer", 3, 1, Strategy::kRecirculating, {{0, 7, 0}, {1, 4, 1}}},
        {"tree-feed-forward", 4, 2, Strategy::kFeedForward, {{0, 7, 0}, {1, 13, 0}, {2, 9, 0}, {3, 15, 0}, {4, 10, 0}}},
        // All five splitters share one column of horizontal units.
        {"tree-recirculating", 7, 1, Strategy::kRecirculating, {{0, 22, 1}, {1, 1, 0}, {2, 19, 0}, {3, 5, 1}, {4, 8, 0}}},
        {"qfft4", 4, 1, Strategy::kFeedForward, {{0, 4, 0}, {1, 7, 0}, {2, 5, 0}, {3, 8, 0}}},
        {"qfft8", 6, 4, Strategy::kFeedForward,
         {{0, 13, 0}, {1, 25, 0}, {2, 38, 0}, {3, 50, 0}, {4, 14, 0}, {5, 26, 0},
          {6, 39, 0}, {7, 51, 0}, {8, 16, 0}, {9, 41, 0}, {10, 31, 0}, {11, 56, 0}}},
    };
    return table;
}

Circuit fixture_circuit(std::string_view name) {
    if (name.starts_with("hom")) {
        return protocol_cascaded_hom().circuit;
    }
    if (name.starts_with("tree")) {
        return protocol_tree().circuit;
    }
    return cooley_tukey_qfft(name == "qfft4" ? 2 : 3);
}

}  // namespace

std::vector<std::string> fixture_names() {
    std::vector<std::string> names;
    for (const auto &f : fixtures()) {
        names.emplace_back(f.name);
    }
    return names;
}

Placement fixture_placement(std::string_view name) {
    for (const auto &f : fixtures()) {
        if (name == f.name) {
            return place_with_assignment(fixture_circuit(name), build_bricks_mesh(f.rows, f.cols), f.strategy, f.assignment);
        }
    }
    throw RangeError("unknown placement fixture " + std::string(name));
}

}  // namespace photonmesh
