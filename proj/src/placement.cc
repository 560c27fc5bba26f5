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

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include "photonmesh/errors.h"
#include "photonmesh/mesh.h"

namespace photonmesh {

namespace {

constexpr int kMaxAutoArea = 64;
// Layer packing retries the greedy O(cols^2) times; skip it for large circuits.
constexpr std::size_t kMaxPackedElements = 8;

class Router {
   public:
    Router(const Circuit &c, const BricksMesh &mesh, Strategy strategy)
        : mesh_(mesh),
          strategy_(strategy),
          elems_(mesh_elements(c)),
          link_used_(mesh.links().size(), false),
          unit_element_(mesh.units().size(), -1),
          lanes_(mesh.units().size(), 0),
          unit_of_(elems_.size(), -1),
          in_end_(elems_.size(), 0),
          pending_out_(elems_.size(), 0) {
        // Source of each element input and of each mode's output terminal.
        std::vector<int> last(c.mode_count(), -2);
        for (int i = 0; i < static_cast<int>(elems_.size()); i++) {
            for (int m : elems_[i].modes()) {
                inputs_.push_back({m, last[m] == -2 ? -1 : last[m], i});
                last[m] = i;
            }
        }
        for (int m = 0; m < c.mode_count(); m++) {
            if (last[m] != -2) {
                outputs_.push_back({m, last[m], -1});
            }
        }
    }

    struct Need {
        int mode;
        int source;
        int target;
    };

    int element_count() const { return static_cast<int>(elems_.size()); }

    std::vector<Need> needs_of(int element) const {
        std::vector<Need> out;
        for (const auto &n : inputs_) {
            if (n.target == element) {
                out.push_back(n);
            }
        }
        return out;
    }
    const std::vector<Need> &outputs() const { return outputs_; }

    bool unit_free(int unit) const {
        if (unit_element_[unit] >= 0 || lanes_[unit] > 0) {
            return false;
        }
        for (const auto &end : mesh_.units()[unit].links) {
            for (int l : end) {
                if (link_used_[l]) {
                    return false;
                }
            }
        }
        return true;
    }

    // An element at `unit` must not sit on another element's unrouted output
    // unless it is that element's direct successor through the input end.
    bool adjacency_ok(int element, int unit, int in_end) const {
        const MeshUnit &u = mesh_.units()[unit];
        for (int end = 0; end < 2; end++) {
            for (int l : u.links[end]) {
                const Attachment &o = mesh_.other_side(l, Attachment{unit, end, -1});
                if (o.unit < 0 || unit_element_[o.unit] < 0) {
                    continue;
                }
                const int f = unit_element_[o.unit];
                if (f == element) {
                    continue;
                }
                if (o.end == in_end_[f]) {
                    return false;
                }
                bool feeds = false;
                for (const auto &n : inputs_) {
                    feeds = feeds || (n.target == element && n.source == f);
                }
                if (end != in_end || !feeds) {
                    return false;
                }
            }
        }
        return true;
    }

    void assign(int element, int unit, int in_end) {
        unit_element_[unit] = element;
        unit_of_[element] = unit;
        in_end_[element] = in_end;
        pending_out_[element] = 2;
    }

    void unassign(int element) {
        unit_element_[unit_of_[element]] = -1;
        unit_of_[element] = -1;
        pending_out_[element] = 0;
    }

    std::optional<Route> find_route(const Need &need) const {
        const int nu = static_cast<int>(mesh_.units().size());
        const bool to_element = need.target >= 0;
        const int t_unit = to_element ? unit_of_[need.target] : -1;
        const int t_end = to_element ? in_end_[need.target] : -1;

        // Node = unit * 2 + entry end.
        std::vector<int> parent(nu * 2, -2);
        std::vector<int> via(nu * 2, -1);
        std::deque<int> queue;

        auto arrives = [&](const Attachment &o) {
            if (to_element) {
                return o.unit == t_unit && o.end == t_end;
            }
            return o.unit < 0 && side_ok(mesh_.ports()[o.port].side, false);
        };
        auto enterable = [&](const Attachment &o) {
            if (o.unit < 0 || unit_element_[o.unit] >= 0 || lanes_[o.unit] >= 2) {
                return false;
            }
            return !(strategy_ == Strategy::kFeedForward && mesh_.units()[o.unit].kind == UnitKind::kHorizontal &&
                     o.end != 0);
        };
        auto build = [&](int node, int final_link, int first_link) {
            Route r{need.mode, need.source, need.target, {}, {}};
            std::vector<int> chain;
            for (int x = node; x >= 0; x = parent[x]) {
                chain.push_back(x);
            }
            std::reverse(chain.begin(), chain.end());
            if (chain.empty()) {
                r.links.push_back(first_link);
            }
            for (int x : chain) {
                r.links.push_back(via[x]);
                r.units.push_back(x / 2);
            }
            r.links.push_back(final_link);
            return r;
        };

        // Seeds.
        if (need.source >= 0) {
            const int su = unit_of_[need.source];
            const int se = 1 - in_end_[need.source];
            for (int l : mesh_.units()[su].links[se]) {
                if (link_used_[l]) {
                    continue;
                }
                const Attachment &o = mesh_.other_side(l, Attachment{su, se, -1});
                if (arrives(o)) {
                    Route r{need.mode, need.source, need.target, {l}, {}};
                    return r;
                }
            }
            for (int l : mesh_.units()[su].links[se]) {
                if (link_used_[l]) {
                    continue;
                }
                const Attachment &o = mesh_.other_side(l, Attachment{su, se, -1});
                if (enterable(o) && parent[o.unit * 2 + o.end] == -2) {
                    parent[o.unit * 2 + o.end] = -1;
                    via[o.unit * 2 + o.end] = l;
                    queue.push_back(o.unit * 2 + o.end);
                }
            }
        } else {
            for (const auto &p : mesh_.ports()) {
                if (link_used_[p.link] || !side_ok(p.side, true)) {
                    continue;
                }
                const Attachment &o = mesh_.other_side(p.link, Attachment{-1, -1, p.id});
                if (arrives(o)) {
                    Route r{need.mode, need.source, need.target, {p.link}, {}};
                    return r;
                }
            }
            for (const auto &p : mesh_.ports()) {
                if (link_used_[p.link] || !side_ok(p.side, true)) {
                    continue;
                }
                const Attachment &o = mesh_.other_side(p.link, Attachment{-1, -1, p.id});
                if (enterable(o) && parent[o.unit * 2 + o.end] == -2) {
                    parent[o.unit * 2 + o.end] = -1;
                    via[o.unit * 2 + o.end] = p.link;
                    queue.push_back(o.unit * 2 + o.end);
                }
            }
        }

        while (!queue.empty()) {
            const int node = queue.front();
            queue.pop_front();
            const int unit = node / 2;
            const int exit = 1 - node % 2;
            for (int l : mesh_.units()[unit].links[exit]) {
                if (link_used_[l]) {
                    continue;
                }
                const Attachment &o = mesh_.other_side(l, Attachment{unit, exit, -1});
                if (arrives(o)) {
                    Route r = build(node, l, -1);
                    if (route_consistent(r)) {
                        return r;
                    }
                    continue;
                }
                if (enterable(o) && parent[o.unit * 2 + o.end] == -2) {
                    parent[o.unit * 2 + o.end] = node;
                    via[o.unit * 2 + o.end] = l;
                    queue.push_back(o.unit * 2 + o.end);
                }
            }
        }
        return std::nullopt;
    }

    void commit(const Route &r) {
        for (int l : r.links) {
            link_used_[l] = true;
        }
        for (int u : r.units) {
            lanes_[u]++;
        }
        if (r.source >= 0) {
            pending_out_[r.source]--;
        }
    }

    void release(const Route &r) {
        for (int l : r.links) {
            link_used_[l] = false;
        }
        for (int u : r.units) {
            lanes_[u]--;
        }
        if (r.source >= 0) {
            pending_out_[r.source]++;
        }
    }

    // Every element still owes pending_out_ lanes; each needs a distinct exit
    // link that leads somewhere usable.
    bool outputs_viable() const {
        for (int f = 0; f < element_count(); f++) {
            if (unit_of_[f] < 0 || pending_out_[f] == 0) {
                continue;
            }
            const int u = unit_of_[f];
            const int e = 1 - in_end_[f];
            int viable = 0;
            for (int l : mesh_.units()[u].links[e]) {
                if (link_used_[l]) {
                    continue;
                }
                const Attachment &o = mesh_.other_side(l, Attachment{u, e, -1});
                if (o.unit < 0) {
                    viable += side_ok(mesh_.ports()[o.port].side, false) ? 1 : 0;
                } else if (unit_element_[o.unit] >= 0) {
                    viable += o.end == in_end_[unit_element_[o.unit]] ? 1 : 0;
                } else if (lanes_[o.unit] < 2 &&
                           !(strategy_ == Strategy::kFeedForward &&
                             mesh_.units()[o.unit].kind == UnitKind::kHorizontal && o.end != 0)) {
                    viable++;
                }
            }
            if (viable < pending_out_[f]) {
                return false;
            }
        }
        return true;
    }

    int unit_of(int element) const { return unit_of_[element]; }
    int in_end(int element) const { return in_end_[element]; }
    bool side_ok(Side side, bool input) const {
        if (strategy_ == Strategy::kRecirculating) {
            return true;
        }
        return input ? side == Side::kLeft : side == Side::kRight;
    }

   private:
    bool route_consistent(const Route &r) const {
        std::set<int> links(r.links.begin(), r.links.end());
        if (links.size() != r.links.size()) {
            return false;
        }
        std::vector<int> extra(mesh_.units().size(), 0);
        for (int u : r.units) {
            if (lanes_[u] + ++extra[u] > 2) {
                return false;
            }
        }
        return true;
    }

    const BricksMesh &mesh_;
    Strategy strategy_;
    std::vector<Element> elems_;
    std::vector<Need> inputs_;
    std::vector<Need> outputs_;
    std::vector<bool> link_used_;
    std::vector<int> unit_element_;
    std::vector<int> lanes_;
    std::vector<int> unit_of_;
    std::vector<int> in_end_;
    std::vector<int> pending_out_;
};

Placement finish(const Circuit &c, const BricksMesh &mesh, Strategy strategy, Router &router, std::vector<Route> routes) {
    for (const auto &need : router.outputs()) {
        auto r = router.find_route(need);
        if (!r) {
            throw CapacityError("no free output port for mode " + std::to_string(need.mode + 1));
        }
        router.commit(*r);
        routes.push_back(std::move(*r));
    }
    Placement p;
    p.circuit = c;
    p.mesh = mesh;
    p.strategy = strategy;
    for (int e = 0; e < router.element_count(); e++) {
        p.assignment.push_back({e, router.unit_of(e), router.in_end(e)});
    }
    p.input_ports.assign(c.mode_count(), -1);
    p.output_ports.assign(c.mode_count(), -1);
    for (const auto &r : routes) {
        if (r.source < 0) {
            const MeshLink &l = mesh.links()[r.links.front()];
            p.input_ports[r.mode] = l.a.unit < 0 ? l.a.port : l.b.port;
        }
        if (r.target < 0) {
            const MeshLink &l = mesh.links()[r.links.back()];
            p.output_ports[r.mode] = l.a.unit < 0 ? l.a.port : l.b.port;
        }
    }
    p.routes = std::move(routes);
    return p;
}

// `allowed` restricts elements to units with these layer coordinates when non-empty.
std::optional<Placement> try_greedy(
    const Circuit &c, const BricksMesh &mesh, Strategy strategy, const std::set<int> &allowed = {}) {
    Router router(c, mesh, strategy);
    std::vector<Route> routes;
    std::multiset<int> layers;
    for (int e = 0; e < router.element_count(); e++) {
        using Cost = std::tuple<int, int, int, int>;
        std::optional<Cost> best;
        std::vector<Route> best_routes;
        const auto needs = router.needs_of(e);
        for (const auto &u : mesh.units()) {
            if (strategy == Strategy::kFeedForward && u.kind != UnitKind::kHorizontal) {
                continue;
            }
            if (!router.unit_free(u.id)) {
                continue;
            }
            if (!allowed.empty() && !allowed.contains(u.layer_coordinate())) {
                continue;
            }
            for (int in_end = 0; in_end < 2; in_end++) {
                if (strategy == Strategy::kFeedForward && in_end != 0) {
                    continue;
                }
                if (!router.adjacency_ok(e, u.id, in_end)) {
                    continue;
                }
                router.assign(e, u.id, in_end);
                std::vector<Route> trial;
                bool ok = true;
                for (const auto &need : needs) {
                    auto r = router.find_route(need);
                    if (!r) {
                        ok = false;
                        break;
                    }
                    router.commit(*r);
                    trial.push_back(std::move(*r));
                }
                ok = ok && router.outputs_viable();
                if (ok) {
                    std::set<int> distinct(layers.begin(), layers.end());
                    distinct.insert(u.layer_coordinate());
                    int length = 0;
                    for (const auto &r : trial) {
                        length += static_cast<int>(r.units.size());
                    }
                    const Cost cost{static_cast<int>(distinct.size()), length, u.id, in_end};
                    if (!best || cost < *best) {
                        best = cost;
                        best_routes = trial;
                    }
                }
                for (auto it = trial.rbegin(); it != trial.rend(); ++it) {
                    router.release(*it);
                }
                router.unassign(e);
            }
        }
        if (!best) {
            return std::nullopt;
        }
        const int unit = std::get<2>(*best);
        router.assign(e, unit, std::get<3>(*best));
        layers.insert(mesh.units()[unit].layer_coordinate());
        for (auto &r : best_routes) {
            router.commit(r);
            routes.push_back(std::move(r));
        }
    }
    try {
        return finish(c, mesh, strategy, router, std::move(routes));
    } catch (const CapacityError &) {
        return std::nullopt;
    }
}

bool enough_ports(const Circuit &c, const BricksMesh &mesh, Strategy strategy) {
    int used = 0;
    std::vector<bool> touched(c.mode_count(), false);
    for (const auto &e : mesh_elements(c)) {
        touched[e.mode_a] = touched[e.mode_b] = true;
    }
    for (bool t : touched) {
        used += t ? 1 : 0;
    }
    if (strategy == Strategy::kFeedForward) {
        return mesh.ports_on_side(Side::kLeft) >= used && mesh.ports_on_side(Side::kRight) >= used;
    }
    return static_cast<int>(mesh.ports().size()) >= 2 * used;
}

// Mesh sizes in order of area, then rows.
std::vector<std::pair<int, int>> candidate_sizes() {
    std::vector<std::pair<int, int>> sizes;
    for (int r = 1; r <= kMaxAutoArea; r++) {
        for (int c = 1; r * c <= kMaxAutoArea; c++) {
            sizes.emplace_back(r, c);
        }
    }
    std::sort(sizes.begin(), sizes.end(), [](auto a, auto b) {
        return std::make_tuple(a.first * a.second, a.first) < std::make_tuple(b.first * b.second, b.first);
    });
    return sizes;
}

std::tuple<int, int, int, int> quality(const Placement &p) {
    const PlacementMetrics m = placement_metrics(p);
    return {m.layer_depth, m.optical_depth, m.active_mzis, p.mesh.rows() * p.mesh.cols()};
}

// Recirculating meshes can chain elements within one layer coordinate, which
// the unconstrained greedy rarely finds. Retry restricted to one or two
// nearby coordinates and keep the result when it uses fewer layers.
void pack_layers(const Circuit &c, const BricksMesh &mesh, std::optional<Placement> &best) {
    const int coords = 4 * mesh.cols() + 1;
    auto layers = [](const std::optional<Placement> &p) {
        return p ? placement_metrics(*p).layer_depth : std::numeric_limits<int>::max();
    };
    for (int a = 0; a < coords && layers(best) > 1; a++) {
        for (int b = a; b < std::min(coords, a + 3) && layers(best) > (a == b ? 1 : 2); b++) {
            auto p = try_greedy(c, mesh, Strategy::kRecirculating, {a, b});
            if (p && (!best || quality(*p) < quality(*best))) {
                best = std::move(p);
            }
        }
    }
}

std::optional<Placement> search(const Circuit &c, Strategy strategy, int min_area) {
    std::optional<Placement> best;
    int first_area = -1;
    for (const auto &[r, k] : candidate_sizes()) {
        const int area = r * k;
        if (area < min_area) {
            continue;
        }
        // Keep looking a little past the first success for shallower layouts.
        if (first_area > 0 && area > 2 * first_area + 2) {
            break;
        }
        const BricksMesh mesh = build_bricks_mesh(r, k);
        if (!enough_ports(c, mesh, strategy)) {
            continue;
        }
        auto p = try_greedy(c, mesh, strategy);
        if (strategy == Strategy::kRecirculating && mesh_elements(c).size() <= kMaxPackedElements) {
            pack_layers(c, mesh, p);
        }
        if (!p) {
            continue;
        }
        if (first_area < 0) {
            first_area = area;
        }
        if (!best || quality(*p) < quality(*best)) {
            best = std::move(p);
        }
    }
    return best;
}

}  // namespace

Placement place_circuit(const Circuit &c, const BricksMesh &mesh, Strategy strategy) {
    c.validate();
    if (auto p = try_greedy(c, mesh, strategy)) {
        return *p;
    }
    std::string hint = "no mesh up to area " + std::to_string(kMaxAutoArea) + " works";
    if (auto p = search(c, strategy, 0)) {
        hint = "try at least " + std::to_string(p->mesh.rows()) + "x" + std::to_string(p->mesh.cols());
    }
    throw CapacityError(
        "circuit does not fit a " + std::to_string(mesh.rows()) + "x" + std::to_string(mesh.cols()) + " mesh (" +
        std::string(strategy_name(strategy)) + "); " + hint);
}

Placement place_circuit_auto(const Circuit &c, Strategy strategy) {
    c.validate();
    auto best = search(c, strategy, 0);
    if (strategy == Strategy::kRecirculating) {
        if (auto ff = search(c, Strategy::kFeedForward, 0)) {
            // A feed-forward layout is also a valid recirculating one.
            ff->strategy = Strategy::kRecirculating;
            if (!best || quality(*ff) < quality(*best)) {
                best = std::move(ff);
            }
        }
    }
    if (!best) {
        throw CapacityError("circuit does not fit any mesh up to area " + std::to_string(kMaxAutoArea));
    }
    return *best;
}

Placement place_with_assignment(
    const Circuit &c, const BricksMesh &mesh, Strategy strategy, std::vector<ElementAssignment> assignment) {
    c.validate();
    Router router(c, mesh, strategy);
    if (static_cast<int>(assignment.size()) != router.element_count()) {
        throw ValidationError("assignment must cover every two-mode element");
    }
    std::sort(assignment.begin(), assignment.end(), [](auto a, auto b) { return a.element < b.element; });
    for (const auto &a : assignment) {
        if (a.unit < 0 || a.unit >= static_cast<int>(mesh.units().size()) || !router.unit_free(a.unit)) {
            throw ValidationError("assignment uses a missing or shared unit " + std::to_string(a.unit));
        }
        router.assign(a.element, a.unit, a.input_end);
    }
    std::vector<Route> routes;
    for (int e = 0; e < router.element_count(); e++) {
        for (const auto &need : router.needs_of(e)) {
            auto r = router.find_route(need);
            if (!r) {
                throw CapacityError("cannot route mode " + std::to_string(need.mode + 1) + " into element " +
                                    std::to_string(e));
            }
            router.commit(*r);
            routes.push_back(std::move(*r));
        }
    }
    Placement p = finish(c, mesh, strategy, router, std::move(routes));
    verify_placement(p);
    return p;
}

}  // namespace photonmesh
