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

#ifndef PHOTONMESH_MESH_H
#define PHOTONMESH_MESH_H

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "photonmesh/circuits.h"

namespace photonmesh {

// Geometry. Junctions sit at (r, k) for r in [0, rows) and k in [0, 2 cols].
// Horizontal unit H(r, k) joins (r, k) to (r, k+1); vertical unit V(r, k)
// joins (r, k) to (r+1, k) when r + k is even, giving a brick wall where every
// interior junction meets exactly three units. Every junction has three
// slots; slots without a unit on the perimeter become ports. Each pair of
// slots at a junction is joined by a one-lane link, so a unit end has two
// links and a unit carries two lanes.

enum class UnitKind { kHorizontal, kVertical };
enum class Side { kLeft, kRight, kTop, kBottom };
enum class Strategy { kFeedForward, kRecirculating };

std::string_view side_name(Side side);
std::string_view strategy_name(Strategy strategy);
/// Accepts "feed-forward" / "recirculating"; throws ParseError otherwise.
Strategy parse_strategy(std::string_view name);

struct Junction {
    int id = 0;
    int row = 0;
    int k = 0;
};

struct MeshUnit {
    int id = 0;
    UnitKind kind = UnitKind::kHorizontal;
    int row = 0;
    int k = 0;
    /// Cell (row, col) that owns this unit.
    int cell_row = 0;
    int cell_col = 0;
    /// End 0 is the left (horizontal) or upper (vertical) junction.
    std::array<int, 2> junction{};
    /// Two links at each end.
    std::array<std::array<int, 2>, 2> links{};
    /// Horizontal: 2k+1, vertical: 2k. Units sharing it act in parallel.
    int layer_coordinate() const { return kind == UnitKind::kHorizontal ? 2 * k + 1 : 2 * k; }
};

/// One side of a link: a unit end, or a perimeter port slot.
struct Attachment {
    int unit = -1;
    int end = -1;
    /// Port id when unit < 0.
    int port = -1;
};

struct MeshLink {
    int id = 0;
    int junction = 0;
    Attachment a;
    Attachment b;
};

struct MeshPort {
    int id = 0;
    int link = 0;
    int junction = 0;
    Side side = Side::kLeft;
};

class BricksMesh {
   public:
    BricksMesh() = default;

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<Junction> &junctions() const { return junctions_; }
    const std::vector<MeshUnit> &units() const { return units_; }
    const std::vector<MeshLink> &links() const { return links_; }
    const std::vector<MeshPort> &ports() const { return ports_; }

    /// -1 when (r, k) is outside the lattice.
    int junction_id(int row, int k) const;
    /// Units meeting at a junction.
    int degree(int junction) const;
    /// Units owned by cell (row, col).
    int units_in_cell(int row, int col) const;
    int ports_on_side(Side side) const;
    /// The attachment on the far side of `link` as seen from `from`.
    const Attachment &other_side(int link, const Attachment &from) const;
    /// True when the unit/port graph is connected.
    bool connected() const;

    bool operator==(const BricksMesh &other) const { return rows_ == other.rows_ && cols_ == other.cols_; }

   private:
    friend BricksMesh build_bricks_mesh(int rows, int cols);
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Junction> junctions_;
    std::vector<MeshUnit> units_;
    std::vector<MeshLink> links_;
    std::vector<MeshPort> ports_;
};

/// Throws RangeError when rows or cols is below 1.
BricksMesh build_bricks_mesh(int rows, int cols);

/// Two-mode element `element` (index among the circuit's two-mode elements)
/// placed on `unit`, taking inputs at `input_end` and emitting at the other end.
struct ElementAssignment {
    int element = 0;
    int unit = 0;
    int input_end = 0;
    bool operator==(const ElementAssignment &) const = default;
};

/// One circuit connection. source/target are two-mode element indices, or -1
/// for the input/output terminal of `mode`.
struct Route {
    int mode = 0;
    int source = -1;
    int target = -1;
    /// Links in travel order; first leaves the source, last enters the target.
    std::vector<int> links;
    /// Pass-through units between consecutive links.
    std::vector<int> units;
    bool operator==(const Route &) const = default;
};

struct Placement {
    Circuit circuit;
    BricksMesh mesh;
    Strategy strategy = Strategy::kFeedForward;
    std::vector<ElementAssignment> assignment;
    std::vector<Route> routes;
    /// Per mode; -1 for modes no two-mode element touches (they bypass the mesh).
    std::vector<int> input_ports;
    std::vector<int> output_ports;
};

struct PlacementMetrics {
    /// Assigned units plus distinct pass-through units.
    int active_mzis = 0;
    /// Longest input-to-output path counted in traversed units.
    int optical_depth = 0;
    /// Distinct layer coordinates among assigned units.
    int layer_depth = 0;
    int assigned = 0;
    int pass_through = 0;
};

/// Two-mode elements of `c` in layer order; the index into this list is the
/// element index used by placements.
std::vector<Element> mesh_elements(const Circuit &c);

/// Greedy layered placement: elements in order, each on the free unit that
/// minimizes (distinct layers, route length, unit id, orientation).
/// Feed-forward keeps elements on horizontal units facing right, never sends
/// light leftward through a horizontal unit, and uses left/right ports only.
///
/// Throws CapacityError, with the smallest mesh that works, when it fails.
Placement place_circuit(const Circuit &c, const BricksMesh &mesh, Strategy strategy);

/// Grows the mesh until place_circuit succeeds. A recirculating result never
/// reports more layers than the feed-forward one: the latter is reused when
/// the greedy search does worse.
Placement place_circuit_auto(const Circuit &c, Strategy strategy);

/// Routes a fixed assignment. Throws CapacityError if routing fails.
Placement place_with_assignment(
    const Circuit &c, const BricksMesh &mesh, Strategy strategy, std::vector<ElementAssignment> assignment);

PlacementMetrics placement_metrics(const Placement &p);

/// Empty string when the placement is valid, otherwise the first violation.
std::string placement_violation(const Placement &p);
/// Throws ValidationError with placement_violation's message.
void verify_placement(const Placement &p);

/// Text grid: '#' assigned unit, '+' pass-through, '.' idle.
std::string render_mesh(const Placement &p);
std::string render_mesh(const BricksMesh &mesh);

/// Reference placements with fixed element assignments; routes are computed.
/// Names: hom-feed-forward, hom-one-layer, tree-feed-forward,
/// tree-recirculating, qfft4, qfft8. Throws RangeError for other names.
std::vector<std::string> fixture_names();
Placement fixture_placement(std::string_view name);

std::string serialize_mesh(const BricksMesh &mesh);
BricksMesh parse_mesh(std::string_view text);
std::string serialize_placement(const Placement &p);
Placement parse_placement(std::string_view text);

}  // namespace photonmesh

#endif
