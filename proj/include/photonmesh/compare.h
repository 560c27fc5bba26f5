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

#ifndef PHOTONMESH_COMPARE_H
#define PHOTONMESH_COMPARE_H

#include <string>
#include <vector>

#include "photonmesh/circuits.h"
#include "photonmesh/mesh.h"

namespace photonmesh {

/// One (architecture, strategy) pair.
struct ArchitectureRow {
    std::string architecture;
    Strategy strategy = Strategy::kFeedForward;
    int pairs = 0;
    int depth_layers = 0;
    /// False when no mesh up to the search limit fits; mesh fields are then 0.
    bool placed = false;
    int mesh_rows = 0;
    int mesh_cols = 0;
    int mesh_active_mzis = 0;
    /// Optical depth in traversed units.
    int mesh_depth = 0;
    /// Distinct layer coordinates of assigned units.
    int mesh_layers = 0;
    std::string note;
};

struct ComparisonReport {
    int modes = 0;
    std::vector<ArchitectureRow> rows;
};

/// Reck and Clements decompositions of `u`, plus the qFFT network when u is
/// QFT_m (up to a global phase) for m a power of two up to 16, each placed
/// feed-forward and recirculating. Throws ValidationError for non-unitary input.
ComparisonReport compare_architectures(const ComplexMatrix &u);

/// A single explicit circuit under both strategies.
ComparisonReport compare_architectures(const Circuit &c, const std::string &architecture);

/// Fixed-width text table.
std::string format_comparison(const ComparisonReport &report);

}  // namespace photonmesh

#endif
