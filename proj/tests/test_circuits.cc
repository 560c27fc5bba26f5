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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "photonmesh/circuits.h"
#include "photonmesh/errors.h"

using namespace photonmesh;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("element conventions") {
    const ComplexMatrix bs = beam_splitter_matrix(kPi / 4);
    CHECK(std::abs(bs(0, 1) - Complex(0, std::sqrt(0.5))) < 1e-15);
    const Element e = Element::beam_splitter(0, 1, 0.3, 0.7);
    ComplexMatrix phase = ComplexMatrix::Identity(2, 2);
    phase(0, 0) = std::polar(1.0, 0.7);
    CHECK(max_abs_diff(e.block(), beam_splitter_matrix(0.3) * phase) < 1e-15);
    const Element z = Element::mzi(2, 3, 0.0, 0.5);
    CHECK(std::abs(z.block()(0, 0) - std::polar(1.0, 0.5)) < 1e-15);
    CHECK(std::abs(Element::mzi(0, 1, kPi / 2, 0.0).block()(0, 0)) < 1e-15);
    CHECK(Element::phase_shifter(1, 0.2).modes() == std::vector<int>{1});
    CHECK_FALSE(Element::phase_shifter(1, 0.2).two_mode());
    CHECK(parse_kind(kind_name(ElementKind::kMzi)) == ElementKind::kMzi);
    CHECK_THROWS_AS(parse_kind("laser"), ParseError);
}

TEST_CASE("append packs elements into the earliest layer") {
    Circuit c(4);
    c.append(Element::beam_splitter(0, 1, 0.1));
    c.append(Element::beam_splitter(2, 3, 0.1));
    c.append(Element::beam_splitter(1, 2, 0.1));
    c.append(Element::phase_shifter(0, 0.1));
    REQUIRE(c.layers().size() == 2);
    CHECK(c.layers()[0].size() == 2);
    CHECK(c.layers()[1].size() == 2);
    const ComponentReport r = component_report(c);
    CHECK(r.pairs == 3);
    CHECK(r.depth_layers == 2);
    CHECK_THROWS_AS(c.append_layer({Element::beam_splitter(0, 1, 0.1), Element::phase_shifter(1, 0.1)}), LayoutError);
    CHECK_THROWS_AS(c.append(Element::beam_splitter(0, 4, 0.1)), LayoutError);
    CHECK_THROWS_AS(Circuit(0), DimensionError);
}

TEST_CASE("circuit unitary: later elements act last") {
    Circuit c(2);
    c.append(Element::phase_shifter(0, 0.4));
    c.append(Element::beam_splitter(0, 1, 0.3));
    ComplexMatrix phase = ComplexMatrix::Identity(2, 2);
    phase(0, 0) = std::polar(1.0, 0.4);
    CHECK(max_abs_diff(circuit_to_unitary(c), beam_splitter_matrix(0.3) * phase) < 1e-15);
}

TEST_CASE("QFT matrix") {
    const ComplexMatrix f = qft_matrix(4);
    CHECK(is_unitary(f));
    CHECK(std::abs(f(1, 1) - Complex(0, 0.5)) < 1e-15);
    CHECK(std::abs(f(3, 3) - std::polar(0.5, 2 * kPi * 9 / 4)) < 1e-15);
    CHECK_THROWS_AS(qft_matrix(0), DimensionError);
}

TEST_CASE("Reck and Clements reconstruct random unitaries") {
    for (int m = 2; m <= 8; m++) {
        for (int seed = 0; seed < 5; seed++) {
            const ComplexMatrix u = random_unitary(m, 300 + seed);
            const Circuit reck = reck_decompose(u);
            const Circuit clem = clements_decompose(u);
            CHECK(max_abs_diff(circuit_to_unitary(reck), u) < 1e-10);
            CHECK(max_abs_diff(circuit_to_unitary(clem), u) < 1e-10);
            CHECK(component_report(reck).pairs == m * (m - 1) / 2);
            CHECK(component_report(clem).pairs == m * (m - 1) / 2);
            CHECK(component_report(reck).depth_layers == (m == 2 ? 1 : 2 * m - 3));
            CHECK(component_report(clem).depth_layers == (m == 2 ? 1 : m));
        }
    }
}

TEST_CASE("decompositions reject bad input") {
    CHECK_THROWS_AS(reck_decompose(ComplexMatrix::Ones(2, 2)), ValidationError);
    CHECK_THROWS_AS(clements_decompose(ComplexMatrix::Ones(2, 3)), DimensionError);
}

TEST_CASE("identity decomposes into bar-state MZIs") {
    const Circuit c = clements_decompose(ComplexMatrix::Identity(4, 4));
    for (const auto &e : c.elements()) {
        if (e.two_mode()) {
            CHECK(std::abs(e.theta) < 1e-12);
        }
    }
}

TEST_CASE("qFFT networks") {
    const int pairs[] = {1, 4, 12, 32};
    for (int n = 1; n <= 4; n++) {
        const Circuit c = cooley_tukey_qfft(n);
        const ComponentReport r = component_report(c);
        CHECK(r.pairs == pairs[n - 1]);
        CHECK(r.depth_layers == n);
        CHECK(phase_insensitive_distance(logical_unitary(c), qft_matrix(1 << n)) < 1e-12);
        CHECK(c.input_permutation.size() == static_cast<size_t>(1 << n));
    }
    CHECK(cooley_tukey_qfft(3).input_permutation == std::vector<int>{0, 4, 2, 6, 1, 5, 3, 7});
    CHECK_THROWS_AS(cooley_tukey_qfft(0), DimensionError);
    CHECK_THROWS_AS(cooley_tukey_qfft(5), RangeError);
}

TEST_CASE("concatenate and embed") {
    Circuit a(2);
    a.append(Element::beam_splitter(0, 1, 0.2));
    Circuit b(2);
    b.append(Element::phase_shifter(1, 0.3));
    const Circuit ab = concatenate(a, b);
    CHECK(max_abs_diff(circuit_to_unitary(ab), circuit_to_unitary(b) * circuit_to_unitary(a)) < 1e-15);
    const Circuit big = embed(a, 4, {3, 1});
    CHECK(big.mode_count() == 4);
    CHECK(big.elements()[0].mode_a == 3);
    CHECK(big.elements()[0].mode_b == 1);
    CHECK_THROWS_AS(concatenate(a, Circuit(3)), DimensionError);
    CHECK_THROWS_AS(embed(a, 4, {0}), DimensionError);
}

TEST_CASE("serialization round trips exactly") {
    for (const Circuit &c : {reck_decompose(random_unitary(5, 2)), clements_decompose(random_unitary(6, 3)),
                             cooley_tukey_qfft(3)}) {
        const std::string text = serialize_circuit(c);
        CHECK(parse_circuit(text) == c);
        CHECK(serialize_circuit(parse_circuit(text)) == text);
    }
    Circuit aux(3);
    aux.auxiliary_modes = {2};
    aux.label = "aux";
    CHECK(parse_circuit(serialize_circuit(aux)) == aux);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_circuit("not json"), ParseError);
    CHECK_THROWS_AS(parse_circuit(R"({"format":"other","version":1})"), ParseError);
    CHECK_THROWS_AS(parse_circuit(R"({"format":"photonmesh-circuit","version":9})"), ParseError);
    CHECK_THROWS_AS(parse_circuit(R"({"format":"photonmesh-circuit","version":1,"mode_count":2,
        "layers":[[{"kind":"bs","modes":[0,0],"theta":0,"phi":0}]]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_circuit(R"({"format":"photonmesh-circuit","version":1,"mode_count":2,
        "layers":[[{"kind":"bs","modes":[0],"theta":0,"phi":0}]]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_circuit(R"({"format":"photonmesh-circuit","version":1,"mode_count":2,
        "input_permutation":[0,0],"layers":[]})"),
                    ParseError);
}
