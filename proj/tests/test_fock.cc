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
#include <set>

#include "doctest.h"
#include "photonmesh/circuits.h"
#include "photonmesh/errors.h"
#include "photonmesh/fock.h"

using namespace photonmesh;

TEST_CASE("occupation vectors") {
    const OccupationVector v{2, 0, 1};
    CHECK(v.modes() == 3);
    CHECK(v.photons() == 3);
    CHECK(v.photon_modes() == std::vector<int>{0, 0, 2});
    CHECK(v.to_string() == "(2,0,1)");
    CHECK(OccupationVector::ones(4, 2) == OccupationVector{1, 1, 0, 0});
    CHECK(OccupationVector::vacuum(2).photons() == 0);
    CHECK_THROWS_AS(OccupationVector(std::vector<int>{}), DimensionError);
    CHECK_THROWS_AS(OccupationVector({1, -1}), ValidationError);
    CHECK_THROWS_AS(OccupationVector::ones(2, 3), DimensionError);
}

TEST_CASE("outcome enumeration") {
    const auto outs = enumerate_outcomes(3, 2);
    REQUIRE(outs.size() == 6);
    CHECK(outs.front() == OccupationVector{2, 0, 0});
    CHECK(outs.back() == OccupationVector{0, 0, 2});
    CHECK(std::set<OccupationVector>(outs.begin(), outs.end()).size() == 6);
    for (const auto &s : outs) {
        CHECK(s.photons() == 2);
    }
    CHECK(count_outcomes(4, 4) == 35);
    CHECK(count_outcomes(6, 4) == 126);
    CHECK(enumerate_outcomes(2, 0).size() == 1);
    CHECK_THROWS_AS(enumerate_outcomes(0, 1), DimensionError);
}

// Frozen values from an independent Python evaluation of permanents.
TEST_CASE("transition amplitudes: frozen values") {
    const ComplexMatrix bs = beam_splitter_matrix(std::numbers::pi / 4);
    CHECK(std::abs(transition_amplitude(bs, {1, 1}, {1, 1})) < 1e-15);
    CHECK(std::abs(transition_amplitude(bs, {2, 0}, {1, 1}) - Complex(0, std::sqrt(0.5))) < 1e-12);
    CHECK(std::abs(transition_amplitude(bs, {2, 0}, {2, 0}) - 0.5) < 1e-12);

    const ComplexMatrix f3 = qft_matrix(3);
    CHECK(std::norm(transition_amplitude(f3, {1, 1, 1}, {1, 1, 1})) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(std::norm(transition_amplitude(f3, {1, 1, 1}, {3, 0, 0})) == doctest::Approx(2.0 / 9).epsilon(1e-12));
    const ComplexMatrix f4 = qft_matrix(4);
    CHECK(std::norm(transition_amplitude(f4, {1, 1, 1, 1}, {4, 0, 0, 0})) == doctest::Approx(0.09375).epsilon(1e-12));
    CHECK(std::norm(transition_amplitude(f4, {1, 1, 1, 1}, {2, 1, 0, 1})) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(std::norm(transition_amplitude(f4, {1, 1, 1, 1}, {0, 2, 0, 2})) == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(std::norm(transition_amplitude(f4, {1, 1, 1, 1}, {1, 1, 1, 1})) < 1e-20);
}

TEST_CASE("transition amplitude errors") {
    const ComplexMatrix u = qft_matrix(2);
    CHECK_THROWS_AS(transition_amplitude(u, {1, 1}, {2, 1}), ConservationError);
    CHECK_THROWS_AS(transition_amplitude(u, {1, 1, 0}, {1, 1, 0}), DimensionError);
    CHECK_THROWS_AS(transition_amplitude(ComplexMatrix::Ones(2, 3), {1, 1}, {1, 1}), DimensionError);
}

TEST_CASE("output distributions normalize") {
    for (int m = 2; m <= 5; m++) {
        const ComplexMatrix u = random_unitary(m, 10 + m);
        for (int n = 1; n <= m; n++) {
            const Distribution d = output_distribution(u, OccupationVector::ones(m, n));
            CHECK(d.size() == static_cast<size_t>(count_outcomes(m, n)));
            CHECK(std::abs(d.total() - 1.0) < 1e-10);
        }
    }
    // Bunched input.
    const Distribution d = output_distribution(random_unitary(3, 4), {2, 0, 1});
    CHECK(std::abs(d.total() - 1.0) < 1e-10);
    CHECK(d.probability({1, 1}) == 0.0);
}

TEST_CASE("output distribution rejects non-unitary input") {
    CHECK_THROWS_AS(output_distribution(ComplexMatrix::Ones(2, 2), {1, 1}), ValidationError);
    // The unchecked variant accepts sub-blocks.
    const Distribution d = output_distribution_unchecked(ComplexMatrix::Ones(2, 2) * 0.5, {1, 1});
    CHECK(d.size() == 3);
}

TEST_CASE("factorial helper") {
    CHECK(sqrt_factorial_product({3, 2}) == doctest::Approx(std::sqrt(12.0)));
    CHECK(sqrt_factorial_product({0, 0}) == 1.0);
    CHECK(sqrt_factorial_product({14}) == doctest::Approx(std::sqrt(87178291200.0)).epsilon(1e-12));
}
