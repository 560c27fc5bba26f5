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

#include "photonmesh/mesh.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "photonmesh/errors.h"

namespace photonmesh {

std::string_view side_name(Side side) {
    switch (side) {
        case Side::kLeft:
            return "left";
        case Side::kRight:
            return "right";
        case Side::kTop:
            return "top";
        case Side::kBottom:
            return "bottom";
    }
    return "?";
}

std::string_view strategy_name(Strategy strategy) {
    return strategy == Strategy::kFeedForward ? "feed-forward" : "recirculating";
}

Strategy parse_strategy(std::string_view name) {
    if (name == "feed-forward" || name == "feedforward" || name == "ff") {
        return Strategy::kFeedForward;
    }
    if (name == "recirculating" || name == "recirc") {
        return Strategy::kRecirculating;
    }
    throw ParseError("unknown strategy '" + std::string(name) + "'");
}

int BricksMesh::junction_id(int row, int k) const {
    if (row < 0 || row >= rows_ || k < 0 || k > 2 * cols_) {
        return -1;
    }
    return row * (2 * cols_ + 1) + k;
}

int BricksMesh::degree(int junction) const {
    std::set<int> units;
    for (const auto &l : links_) {
        if (l.junction == junction) {
            for (const Attachment *at : {&l.a, &l.b}) {
                if (at->unit >= 0) {
                    units.insert(at->unit);
                }
            }
        }
    }
    return static_cast<int>(units.size());
}

int BricksMesh::units_in_cell(int row, int col) const {
    int n = 0;
    for (const auto &u : units_) {
        n += (u.cell_row == row && u.cell_col == col) ? 1 : 0;
    }
    return n;
}

int BricksMesh::ports_on_side(Side side) const {
    int n = 0;
    for (const auto &p : ports_) {
        n += p.side == side ? 1 : 0;
    }
    return n;
}

const Attachment &BricksMesh::other_side(int link, const Attachment &from) const {
    const MeshLink &l = links_[link];
    const bool is_a = from.unit >= 0 ? (l.a.unit == from.unit && l.a.end == from.end) : l.a.port == from.port;
    return is_a ? l.b : l.a;
}

bool BricksMesh::connected() const {
    // Union-find over units followed by ports.
    const int nu = static_cast<int>(units_.size());
    std::vector<int> parent(nu + ports_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto node = [&](const Attachment &a) { return a.unit >= 0 ? a.unit : nu + a.port; };
    for (const auto &l : links_) {
        parent[find(node(l.a))] = find(node(l.b));
    }
    for (size_t i = 1; i < parent.size(); i++) {
        if (find(static_cast<int>(i)) != find(0)) {
            return false;
        }
    }
    return true;
}

BricksMesh build_bricks_mesh(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw RangeError("a bricks mesh needs at least one row and one column");
    }
    BricksMesh mesh;
    mesh.rows_ = rows;
    mesh.cols_ = cols;
    const int width = 2 * cols;
    for (int r = 0; r < rows; r++) {
        for (int k = 0; k <= width; k++) {
            mesh.junctions_.push_back(Junction{static_cast<int>(mesh.junctions_.size()), r, k});
        }
    }

    std::map<std::tuple<int, int, int>, int> unit_at;  // (kind, r, k) -> id
    for (int r = 0; r < rows; r++) {
        for (int k = 0; k < width; k++) {
            MeshUnit u;
            u.id = static_cast<int>(mesh.units_.size());
            u.kind = UnitKind::kHorizontal;
            u.row = r;
            u.k = k;
            u.cell_row = r;
            u.cell_col = k / 2;
            u.junction = {mesh.junction_id(r, k), mesh.junction_id(r, k + 1)};
            unit_at[{0, r, k}] = u.id;
            mesh.units_.push_back(u);
        }
        if (r + 1 < rows) {
            for (int k = 0; k <= width; k++) {
                if ((r + k) % 2 != 0) {
                    continue;
                }
                MeshUnit u;
                u.id = static_cast<int>(mesh.units_.size());
                u.kind = UnitKind::kVertical;
                u.row = r;
                u.k = k;
                u.cell_row = r;
                u.cell_col = std::min(k / 2, cols - 1);
                u.junction = {mesh.junction_id(r, k), mesh.junction_id(r + 1, k)};
                unit_at[{1, r, k}] = u.id;
                mesh.units_.push_back(u);
            }
        }
    }
    auto find_unit = [&](int kind, int r, int k) {
        auto it = unit_at.find({kind, r, k});
        return it == unit_at.end() ? -1 : it->second;
    };

    std::vector<int> link_fill(mesh.units_.size() * 2, 0);
    for (const auto &j : mesh.junctions_) {
        const int r = j.row;
        const int k = j.k;
        struct Slot {
            Attachment at;
            Side side;
            bool port;
        };
        std::vector<Slot> slots;
        // Left, right, then the vertical slot (up when r + k is odd, else down).
        const int left = find_unit(0, r, k - 1);
        slots.push_back(left >= 0 ? Slot{{left, 1, -1}, Side::kLeft, false} : Slot{{}, Side::kLeft, true});
        const int right = find_unit(0, r, k);
        slots.push_back(right >= 0 ? Slot{{right, 0, -1}, Side::kRight, false} : Slot{{}, Side::kRight, true});
        if ((r + k) % 2 != 0) {
            const int up = find_unit(1, r - 1, k);
            slots.push_back(up >= 0 ? Slot{{up, 1, -1}, Side::kTop, false} : Slot{{}, Side::kTop, true});
        } else {
            const int down = find_unit(1, r, k);
            slots.push_back(down >= 0 ? Slot{{down, 0, -1}, Side::kBottom, false} : Slot{{}, Side::kBottom, true});
        }
        for (size_t x = 0; x < slots.size(); x++) {
            for (size_t y = x + 1; y < slots.size(); y++) {
                if (slots[x].port && slots[y].port) {
                    continue;
                }
                MeshLink l;
                l.id = static_cast<int>(mesh.links_.size());
                l.junction = j.id;
                l.a = slots[x].at;
                l.b = slots[y].at;
                for (Slot *s : {&slots[x], &slots[y]}) {
                    Attachment &at = (s == &slots[x]) ? l.a : l.b;
                    if (s->port) {
                        MeshPort p;
                        p.id = static_cast<int>(mesh.ports_.size());
                        p.link = l.id;
                        p.junction = j.id;
                        p.side = s->side;
                        at = Attachment{-1, -1, p.id};
                        mesh.ports_.push_back(p);
                    }
                }
                for (const Attachment *at : {&l.a, &l.b}) {
                    if (at->unit >= 0) {
                        int &fill = link_fill[at->unit * 2 + at->end];
                        mesh.units_[at->unit].links[at->end][fill++] = l.id;
                    }
                }
                mesh.links_.push_back(l);
            }
        }
    }
    return mesh;
}

std::vector<Element> mesh_elements(const Circuit &c) {
    std::vector<Element> out;
    for (const auto &e : c.elements()) {
        if (e.two_mode()) {
            out.push_back(e);
        }
    }
    return out;
}

namespace {

struct Connection {
    int mode;
    int source;
    int target;
    bool operator<(const Connection &o) const {
        return std::tie(mode, source, target) < std::tie(o.mode, o.source, o.target);
    }
};

std::vector<Connection> circuit_dataflow(const Circuit &c) {
    const auto elems = mesh_elements(c);
    std::vector<int> last(c.mode_count(), -2);
    std::vector<Connection> out;
    for (int i = 0; i < static_cast<int>(elems.size()); i++) {
        for (int m : elems[i].modes()) {
            out.push_back({m, last[m] == -2 ? -1 : last[m], i});
            last[m] = i;
        }
    }
    for (int m = 0; m < c.mode_count(); m++) {
        if (last[m] != -2) {
            out.push_back({m, last[m], -1});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool side_allowed(Strategy s, Side side, bool input) {
    if (s == Strategy::kRecirculating) {
        return true;
    }
    return input ? side == Side::kLeft : side == Side::kRight;
}

}  // namespace

std::string placement_violation(const Placement &p) {
    const BricksMesh &mesh = p.mesh;
    const auto elems = mesh_elements(p.circuit);
    const int n = static_cast<int>(elems.size());
    const int nu = static_cast<int>(mesh.units().size());
    if (static_cast<int>(p.assignment.size()) != n) {
        return "assignment covers " + std::to_string(p.assignment.size()) + " of " + std::to_string(n) + " elements";
    }
    std::vector<int> unit_of(n, -1);
    std::vector<int> in_end(n, 0);
    std::vector<int> unit_element(nu, -1);
    for (const auto &a : p.assignment) {
        if (a.element < 0 || a.element >= n || unit_of[a.element] >= 0) {
            return "element " + std::to_string(a.element) + " assigned twice or out of range";
        }
        if (a.unit < 0 || a.unit >= nu) {
            return "unit " + std::to_string(a.unit) + " does not exist";
        }
        if (unit_element[a.unit] >= 0) {
            return "unit " + std::to_string(a.unit) + " holds two elements";
        }
        if (a.input_end != 0 && a.input_end != 1) {
            return "bad input end";
        }
        if (p.strategy == Strategy::kFeedForward &&
            (mesh.units()[a.unit].kind != UnitKind::kHorizontal || a.input_end != 0)) {
            return "feed-forward element " + std::to_string(a.element) + " is not on a rightward horizontal unit";
        }
        unit_of[a.element] = a.unit;
        in_end[a.element] = a.input_end;
        unit_element[a.unit] = a.element;
    }

    std::vector<int> link_uses(mesh.links().size(), 0);
    std::vector<int> lanes(nu, 0);
    std::vector<Connection> induced;
    std::vector<int> in_port(p.circuit.mode_count(), -1);
    std::vector<int> out_port(p.circuit.mode_count(), -1);
    for (size_t ri = 0; ri < p.routes.size(); ri++) {
        const Route &r = p.routes[ri];
        const std::string tag = "route " + std::to_string(ri);
        if (r.links.size() != r.units.size() + 1) {
            return tag + " has inconsistent link/unit counts";
        }
        for (int l : r.links) {
            if (l < 0 || l >= static_cast<int>(mesh.links().size())) {
                return tag + " uses a missing link";
            }
            link_uses[l]++;
        }
        // Where the lane is before each link.
        Attachment at;
        if (r.source >= 0) {
            if (r.source >= n) {
                return tag + " has a bad source";
            }
            at = Attachment{unit_of[r.source], 1 - in_end[r.source], -1};
            const auto &ls = mesh.units()[at.unit].links[at.end];
            if (r.links[0] != ls[0] && r.links[0] != ls[1]) {
                return tag + " does not leave its source element";
            }
        } else {
            const MeshLink &l0 = mesh.links()[r.links[0]];
            const Attachment &port = l0.a.unit < 0 ? l0.a : l0.b;
            if (port.unit >= 0) {
                return tag + " does not start at a port";
            }
            if (!side_allowed(p.strategy, mesh.ports()[port.port].side, true)) {
                return tag + " starts at a port on a forbidden side";
            }
            at = port;
            in_port[r.mode] = port.port;
        }
        for (size_t i = 0; i < r.units.size(); i++) {
            const Attachment next = mesh.other_side(r.links[i], at);
            if (next.unit != r.units[i]) {
                return tag + " jumps between unconnected units";
            }
            const MeshUnit &u = mesh.units()[next.unit];
            if (unit_element[u.id] >= 0) {
                return tag + " passes through an assigned unit";
            }
            if (p.strategy == Strategy::kFeedForward && u.kind == UnitKind::kHorizontal && next.end != 0) {
                return tag + " runs leftward through a horizontal unit";
            }
            lanes[u.id]++;
            const auto &exits = u.links[1 - next.end];
            if (r.links[i + 1] != exits[0] && r.links[i + 1] != exits[1]) {
                return tag + " leaves a unit through the wrong end";
            }
            at = Attachment{u.id, 1 - next.end, -1};
        }
        const Attachment last = mesh.other_side(r.links.back(), at);
        if (r.target >= 0) {
            if (r.target >= n || last.unit != unit_of[r.target] || last.end != in_end[r.target]) {
                return tag + " does not enter its target element";
            }
        } else {
            if (last.unit >= 0) {
                return tag + " does not end at a port";
            }
            if (!side_allowed(p.strategy, mesh.ports()[last.port].side, false)) {
                return tag + " ends at a port on a forbidden side";
            }
            out_port[r.mode] = last.port;
        }
        induced.push_back({r.mode, r.source, r.target});
    }
    for (size_t l = 0; l < link_uses.size(); l++) {
        if (link_uses[l] > 1) {
            return "link " + std::to_string(l) + " carries more than one lane";
        }
    }
    for (int u = 0; u < nu; u++) {
        if (lanes[u] > 2) {
            return "unit " + std::to_string(u) + " carries more than two lanes";
        }
    }
    std::sort(induced.begin(), induced.end());
    const auto expected = circuit_dataflow(p.circuit);
    if (induced.size() != expected.size()) {
        return "placement has " + std::to_string(induced.size()) + " connections, circuit has " +
               std::to_string(expected.size());
    }
    for (size_t i = 0; i < induced.size(); i++) {
        if (induced[i].mode != expected[i].mode || induced[i].source != expected[i].source ||
            induced[i].target != expected[i].target) {
            return "induced dataflow differs from the circuit at mode " + std::to_string(expected[i].mode);
        }
    }
    if (in_port != p.input_ports || out_port != p.output_ports) {
        return "io map disagrees with the routes";
    }
    return {};
}

void verify_placement(const Placement &p) {
    const std::string v = placement_violation(p);
    if (!v.empty()) {
        throw ValidationError("invalid placement: " + v);
    }
}

PlacementMetrics placement_metrics(const Placement &p) {
    PlacementMetrics m;
    const auto elems = mesh_elements(p.circuit);
    const int n = static_cast<int>(elems.size());
    std::set<int> pass;
    std::set<int> layers;
    for (const auto &a : p.assignment) {
        layers.insert(p.mesh.units()[a.unit].layer_coordinate());
    }
    for (const auto &r : p.routes) {
        pass.insert(r.units.begin(), r.units.end());
    }
    m.assigned = n;
    m.pass_through = static_cast<int>(pass.size());
    m.active_mzis = m.assigned + m.pass_through;
    m.layer_depth = static_cast<int>(layers.size());

    // Longest path: routes are ordered so every element's inputs precede its outputs.
    std::vector<int> depth(n, 0);
    std::vector<std::vector<const Route *>> into(n);
    std::vector<const Route *> outputs;
    for (const auto &r : p.routes) {
        if (r.target >= 0) {
            into[r.target].push_back(&r);
        } else {
            outputs.push_back(&r);
        }
    }
    for (int e = 0; e < n; e++) {
        int d = 0;
        for (const Route *r : into[e]) {
            const int base = r->source >= 0 ? depth[r->source] : 0;
            d = std::max(d, base + static_cast<int>(r->units.size()));
        }
        depth[e] = d + 1;
    }
    for (const Route *r : outputs) {
        const int base = r->source >= 0 ? depth[r->source] : 0;
        m.optical_depth = std::max(m.optical_depth, base + static_cast<int>(r->units.size()));
    }
    return m;
}

namespace {

std::string render(const BricksMesh &mesh, const std::vector<char> &state) {
    std::ostringstream out;
    const int width = 2 * mesh.cols();
    std::map<std::pair<int, int>, int> h;
    std::map<std::pair<int, int>, int> v;
    for (const auto &u : mesh.units()) {
        (u.kind == UnitKind::kHorizontal ? h : v)[{u.row, u.k}] = u.id;
    }
    for (int r = 0; r < mesh.rows(); r++) {
        std::string line;
        for (int k = 0; k <= width; k++) {
            line += 'o';
            if (k < width) {
                line += '-';
                line += state[h.at({r, k})];
                line += '-';
            }
        }
        out << line << "\n";
        if (r + 1 < mesh.rows()) {
            std::string below;
            for (int k = 0; k <= width; k++) {
                auto it = v.find({r, k});
                below += it == v.end() ? ' ' : state[it->second];
                if (k < width) {
                    below += "   ";
                }
            }
            while (!below.empty() && below.back() == ' ') {
                below.pop_back();
            }
            out << below << "\n";
        }
    }
    return out.str();
}

}  // namespace

std::string render_mesh(const BricksMesh &mesh) {
    return render(mesh, std::vector<char>(mesh.units().size(), '.'));
}

std::string render_mesh(const Placement &p) {
    std::vector<char> state(p.mesh.units().size(), '.');
    for (const auto &r : p.routes) {
        for (int u : r.units) {
            state[u] = '+';
        }
    }
    for (const auto &a : p.assignment) {
        state[a.unit] = '#';
    }
    std::ostringstream out;
    out << p.mesh.rows() << "x" << p.mesh.cols() << " mesh, " << strategy_name(p.strategy) << "\n";
    out << render(p.mesh, state);
    const auto elems = mesh_elements(p.circuit);
    for (const auto &a : p.assignment) {
        const MeshUnit &u = p.mesh.units()[a.unit];
        const Element &e = elems[a.element];
        out << "e" << a.element << " " << kind_name(e.kind) << "(" << e.mode_a + 1 << "," << e.mode_b + 1 << ") -> "
            << (u.kind == UnitKind::kHorizontal ? "H" : "V") << "[r" << u.row << ",k" << u.k << "]"
            << (a.input_end == 0 ? " fwd" : " rev") << "\n";
    }
    const PlacementMetrics m = placement_metrics(p);
    out << "active " << m.active_mzis << ", optical depth " << m.optical_depth << ", layers " << m.layer_depth
        << "\n";
    return out.str();
}

}  // namespace photonmesh
