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
#include "photonmesh/interference.h"
#include "photonmesh/oracle.h"

using namespace photonmesh;

TEST_CASE("internal states validate") {
    CHECK_NOTHROW(InternalState(ComplexMatrix::Identity(2, 2) * 0.5));
    CHECK_THROWS_AS(InternalState(ComplexMatrix::Identity(2, 2)), ValidationError);
    ComplexMatrix skew = ComplexMatrix::Identity(2, 2) * 0.5;
    skew(0, 1) = 0.1;
    CHECK_THROWS_AS(InternalState{skew}, ValidationError);
    ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(InternalState{negative}, ValidationError);
    CHECK_THROWS_AS(InternalState(ComplexMatrix(0, 0)), DimensionError);
    CHECK_THROWS_AS(InternalState::pure(ComplexVector::Zero(2)), ValidationError);
    CHECK_THROWS_AS(InternalState::basis(2, 2), DimensionError);
    const InternalState e = InternalState::basis(2, 1).embedded(4);
    CHECK(e.dim() == 4);
    CHECK(e.population(1) == 1.0);
    CHECK_THROWS_AS(e.embedded(3), DimensionError);
}

TEST_CASE("noisy photons and visibility") {
    const InternalState a = noisy_photon(0.2, 1, 3);
    const InternalState b = noisy_photon(0.2, 2, 3);
    CHECK(a.population(0) == doctest::Approx(0.8));
    CHECK(hom_visibility(a, b) == doctest::Approx(0.64).epsilon(1e-14));
    CHECK(hom_visibility(a, a) == doctest::Approx(0.68).epsilon(1e-14));
    CHECK_THROWS_AS(noisy_photon(1.5, 1, 3), RangeError);
    CHECK_THROWS_AS(noisy_photon(0.1, 0, 3), DimensionError);
}

TEST_CASE("noisy source layout and Gram matrix") {
    const PhotonEnsemble e = make_noisy_source(3, 0.1);
    CHECK(e.size() == 3);
    CHECK(e.internal_dim() == 4);
    CHECK(e.input_modes == OccupationVector{1, 1, 1});
    CHECK(e.model == NoiseModel::kCanonical);
    const Eigen::MatrixXd g = e.gram();
    CHECK(g(0, 0) == 1.0);
    CHECK(g(0, 1) == doctest::Approx(0.81));
    const PhotonEnsemble placed = make_noisy_source(2, 0.1, OccupationVector{0, 2, 0});
    CHECK(placed.input_modes == OccupationVector{0, 2, 0});
    CHECK_THROWS_AS(make_noisy_source(2, 0.1, OccupationVector{1, 0, 0}), DimensionError);
    CHECK_THROWS_AS(make_noisy_source(0, 0.1), DimensionError);
    CHECK_THROWS_AS(make_noisy_source(2, -0.1), RangeError);
}

TEST_CASE("HOM coincidence follows the visibility") {
    const ComplexMatrix u = qft_matrix(2);
    for (double eps : {0.0, 0.2, 0.5, 1.0}) {
        const Distribution d = output_distribution_partial(u, make_noisy_source(2, eps));
        const double v = (1 - eps) * (1 - eps);
        CHECK(d.probability({1, 1}) == doctest::Approx((1 - v) / 2).epsilon(1e-12));
        CHECK(std::abs(d.total() - 1.0) < 1e-12);
    }
    CHECK(output_distribution_partial(u, make_noisy_source(2, 0.2)).probability({1, 1}) ==
          doctest::Approx(0.18).epsilon(1e-12));
}

TEST_CASE("limits: identical and fully distinguishable photons") {
    const ComplexMatrix u = random_unitary(4, 21);
    const OccupationVector r{1, 1, 1, 0};
    const Distribution ideal = output_distribution(u, r);
    const Distribution pure = output_distribution_partial(u, make_noisy_source(3, 0.0, r));
    CHECK(ideal.max_abs_diff(pure) < 1e-12);
    const Distribution classical = distinguishable_distribution(u, r);
    const Distribution mixed = output_distribution_partial(u, make_noisy_source(3, 1.0, r));
    CHECK(classical.max_abs_diff(mixed) < 1e-12);
}

TEST_CASE("canonical and explicit paths agree with the oracle") {
    const ComplexMatrix u = random_unitary(4, 8);
    const OccupationVector r{1, 1, 0, 1};
    PhotonEnsemble canonical = make_noisy_source(3, 0.3, r);
    PhotonEnsemble explicit_ensemble = canonical;
    explicit_ensemble.model = NoiseModel::kExplicit;
    const Distribution a = output_distribution_partial(u, canonical);
    const Distribution b = output_distribution_partial(u, explicit_ensemble);
    const Distribution c = brute_force_oracle(u, canonical).spatial();
    CHECK(a.max_abs_diff(b) < 1e-12);
    CHECK(a.max_abs_diff(c) < 1e-12);
}

TEST_CASE("explicit ensembles with coherent internal states") {
    // Two photons with overlap |<a|b>|^2 = cos^2(0.4) on a balanced splitter.
    ComplexVector a(2), b(2);
    a << 1.0, 0.0;
    b << std::cos(0.4), Complex(0.0, std::sin(0.4));
    const PhotonEnsemble e =
        make_explicit_ensemble({InternalState::pure(a), InternalState::pure(b)}, OccupationVector{1, 1});
    const double overlap = std::pow(std::cos(0.4), 2);
    const Distribution d = output_distribution_partial(qft_matrix(2), e);
    CHECK(d.probability({1, 1}) == doctest::Approx((1 - overlap) / 2).epsilon(1e-12));
    CHECK(d.max_abs_diff(brute_force_oracle(qft_matrix(2), e).spatial()) < 1e-12);
    CHECK_THROWS_AS(make_explicit_ensemble({InternalState::pure(a)}, OccupationVector{1, 1}), DimensionError);
    CHECK_THROWS_AS(make_explicit_ensemble({InternalState::pure(a), InternalState::basis(3, 0)}, OccupationVector{1, 1}),
                    DimensionError);
}

TEST_CASE("pure-state kernel") {
    ComplexVector zero(2), one(2);
    zero << 1.0, 0.0;
    one << 0.0, 1.0;
    const ComplexMatrix u = qft_matrix(2);
    CHECK(pure_state_outcome_probability(u, {0, 1}, {zero, zero}, {1, 1}) < 1e-15);
    CHECK(pure_state_outcome_probability(u, {0, 1}, {zero, one}, {1, 1}) == doctest::Approx(0.5));
}

TEST_CASE("canonical branch expansion") {
    const auto branches = canonical_branches(make_noisy_source(3, 0.1));
    CHECK(branches.size() == 8);
    double total = 0.0;
    for (const auto &b : branches) {
        total += b.weight;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(branches.front().classes.size() == 1);
    CHECK(branches.back().classes.size() == 3);
    CHECK(canonical_branches(make_noisy_source(3, 0.0)).size() == 1);
    PhotonEnsemble e = make_noisy_source(2, 0.1);
    e.model = NoiseModel::kExplicit;
    CHECK_THROWS_AS(canonical_branches(e), ValidationError);
}

TEST_CASE("level-resolved probabilities sum to the spatial probability") {
    const ComplexMatrix u = random_unitary(4, 31);
    const PhotonEnsemble e = make_noisy_source(3, 0.25, OccupationVector{1, 1, 1, 0});
    const Distribution d = output_distribution_partial(u, e);
    for (const auto &s : d.outcomes) {
        for (int mode = 0; mode < 4; mode++) {
            if (s[mode] != 1) {
                CHECK_THROWS_AS(level_resolved_probability(u, e, s, mode), ValidationError);
                continue;
            }
            const auto levels = level_resolved_probability(u, e, s, mode);
            double sum = 0.0;
            for (double p : levels) {
                sum += p;
            }
            CHECK(std::abs(sum - d.probability(s)) < 1e-12);
        }
    }
}

TEST_CASE("convolution of independent outcomes") {
    Distribution a = empty_distribution(2, 1);
    a.probabilities = {0.25, 0.75};
    Distribution b = empty_distribution(2, 1);
    b.probabilities = {0.5, 0.5};
    const Distribution c = convolve(a, b);
    CHECK(c.probability({2, 0}) == doctest::Approx(0.125));
    CHECK(c.probability({1, 1}) == doctest::Approx(0.5));
    CHECK(c.probability({0, 2}) == doctest::Approx(0.375));
}

TEST_CASE("output_distribution_partial validates input") {
    CHECK_THROWS_AS(output_distribution_partial(ComplexMatrix::Ones(2, 2), make_noisy_source(2, 0.1)),
                    ValidationError);
    CHECK_THROWS_AS(output_distribution_partial(qft_matrix(3), make_noisy_source(2, 0.1)), DimensionError);
}
