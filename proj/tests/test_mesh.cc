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

#include <set>
#include <string>

#include "doctest.h"
#include "photonmesh/circuits.h"
#include "photonmesh/distillation.h"
#include "photonmesh/errors.h"
#include "photonmesh/mesh.h"

using namespace photonmesh;

TEST_CASE("bricks geometry") {
    const BricksMesh one = build_bricks_mesh(1, 1);
    CHECK(one.units().size() == 2);
    CHECK(one.ports().size() == 6);
    CHECK(one.connected());
    for (int r = 1; r <= 5; r++) {
        for (int c = 1; c <= 5; c++) {
            const BricksMesh mesh = build_bricks_mesh(r, c);
            CHECK(mesh.connected());
            for (const auto &j : mesh.junctions()) {
                CHECK(mesh.degree(j.id) <= 3);
            }
            size_t owned = 0;
            for (int row = 0; row < r; row++) {
                for (int col = 0; col < c; col++) {
                    const int n = mesh.units_in_cell(row, col);
                    CHECK(n >= 2);
                    CHECK(n <= 4);
                    owned += n;
                }
            }
            CHECK(owned == mesh.units().size());
            CHECK(mesh.ports_on_side(Side::kLeft) == mesh.ports_on_side(Side::kRight));
            CHECK(mesh.ports_on_side(Side::kTop) == mesh.ports_on_side(Side::kBottom));
            for (const auto &link : mesh.links()) {
                CHECK(mesh.other_side(link.id, link.a).unit == link.b.unit);
            }
        }
    }
    CHECK_THROWS_AS(build_bricks_mesh(0, 2), RangeError);
}

TEST_CASE("interior junctions have three units") {
    const BricksMesh mesh = build_bricks_mesh(4, 4);
    int three = 0;
    for (const auto &j : mesh.junctions()) {
        three += mesh.degree(j.id) == 3;
    }
    CHECK(three > 0);
}

TEST_CASE("fixtures are valid and keep their depth") {
    const std::pair<const char *, int> expected[] = {
        {"hom-feed-forward", 2}, {"hom-one-layer", 1}, {"tree-feed-forward", 3},
        {"tree-recirculating", 1}, {"qfft4", 2},       {"qfft8", 4},
    };
    CHECK(fixture_names().size() == std::size(expected));
    for (const auto &[name, layers] : expected) {
        CAPTURE(name);
        const Placement p = fixture_placement(name);
        CHECK(placement_violation(p).empty());
        CHECK(placement_metrics(p).layer_depth == layers);
        CHECK(placement_metrics(p).assigned == static_cast<int>(mesh_elements(p.circuit).size()));
    }
    CHECK_THROWS_AS(fixture_placement("nope"), RangeError);
}

TEST_CASE("trivial circuits") {
    const Placement empty = place_circuit_auto(Circuit(3), Strategy::kRecirculating);
    CHECK(placement_metrics(empty).active_mzis == 0);
    CHECK(placement_metrics(empty).optical_depth == 0);
    Circuit one(2);
    one.append(Element::mzi(0, 1, 0.3, 0.1));
    const PlacementMetrics m = placement_metrics(place_circuit_auto(one, Strategy::kFeedForward));
    CHECK(m.layer_depth == 1);
    CHECK(m.assigned == 1);
}

TEST_CASE("recirculating never needs more layers than feed-forward") {
    for (const Circuit &c : {protocol_cascaded_hom().circuit, protocol_tree().circuit, cooley_tukey_qfft(2)}) {
        const Placement ff = place_circuit_auto(c, Strategy::kFeedForward);
        const Placement rc = place_circuit_auto(c, Strategy::kRecirculating);
        CHECK(placement_violation(ff).empty());
        CHECK(placement_violation(rc).empty());
        CHECK(placement_metrics(rc).layer_depth <= placement_metrics(ff).layer_depth);
    }
    CHECK(placement_metrics(place_circuit_auto(protocol_tree().circuit, Strategy::kRecirculating)).layer_depth <
          placement_metrics(place_circuit_auto(protocol_tree().circuit, Strategy::kFeedForward)).layer_depth);
}

TEST_CASE("feed-forward placements face right") {
    const Placement p = place_circuit_auto(cooley_tukey_qfft(2), Strategy::kFeedForward);
    for (const auto &a : p.assignment) {
        CHECK(p.mesh.units()[a.unit].kind == UnitKind::kHorizontal);
        CHECK(a.input_end == 0);
    }
}

TEST_CASE("placement is deterministic") {
    const Circuit c = protocol_tree().circuit;
    CHECK(serialize_placement(place_circuit_auto(c, Strategy::kRecirculating)) ==
          serialize_placement(place_circuit_auto(c, Strategy::kRecirculating)));
}

TEST_CASE("capacity errors name a mesh that works") {
    try {
        place_circuit(cooley_tukey_qfft(3), build_bricks_mesh(1, 1), Strategy::kFeedForward);
        FAIL("expected CapacityError");
    } catch (const CapacityError &e) {
        CHECK(std::string(e.what()).find("x") != std::string::npos);
    }
}

TEST_CASE("violations are detected") {
    Placement p = fixture_placement("hom-feed-forward");
    p.assignment[1].unit = p.assignment[0].unit;
    CHECK_FALSE(placement_violation(p).empty());
    CHECK_THROWS_AS(verify_placement(p), ValidationError);

    Placement q = fixture_placement("tree-feed-forward");
    q.routes.front().links.clear();
    CHECK_FALSE(placement_violation(q).empty());
}

TEST_CASE("mesh and placement serialization") {
    const BricksMesh mesh = build_bricks_mesh(3, 2);
    CHECK(parse_mesh(serialize_mesh(mesh)) == mesh);
    for (const auto &name : fixture_names()) {
        const Placement p = fixture_placement(name);
        const std::string text = serialize_placement(p);
        const Placement back = parse_placement(text);
        CHECK(back.circuit == p.circuit);
        CHECK(back.assignment == p.assignment);
        CHECK(back.routes == p.routes);
        CHECK(serialize_placement(back) == text);
    }
    CHECK_THROWS_AS(parse_mesh("{}"), ParseError);
    CHECK_THROWS_AS(parse_placement("[1,2"), ParseError);
    CHECK_THROWS_AS(parse_strategy("sideways"), ParseError);
}

TEST_CASE("tampered placement text is rejected") {
    std::string text = serialize_placement(fixture_placement("hom-feed-forward"));
    const auto pos = text.find("\"unit\"");
    REQUIRE(pos != std::string::npos);
    const auto digit = text.find_first_of("0123456789", pos);
    text[digit] = text[digit] == '9' ? '8' : '9';
    CHECK_THROWS_AS(parse_placement(text), ParseError);
}

TEST_CASE("rendering") {
    const std::string r = render_mesh(fixture_placement("hom-one-layer"));
    CHECK(r.find('#') != std::string::npos);
    CHECK(render_mesh(build_bricks_mesh(2, 2)).find('#') == std::string::npos);
}
