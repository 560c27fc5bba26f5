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
#include <cmath>

#include "doctest.h"
#include "photonmesh/errors.h"
#include "photonmesh/numerics.h"

using namespace photonmesh;

TEST_CASE("permanent of the all-ones matrix is n factorial") {
    double factorial = 1.0;
    for (int n = 1; n <= 7; n++) {
        factorial *= n;
        const Complex p = permanent(ComplexMatrix::Ones(n, n));
        CHECK(std::abs(p - factorial) < 1e-9 * factorial);
    }
}

TEST_CASE("permanent small cases") {
    CHECK(permanent(ComplexMatrix(0, 0)) == Complex(1.0, 0.0));
    ComplexMatrix m(2, 2);
    m << Complex(1, 2), Complex(3, 0), Complex(0, 1), Complex(4, -1);
    const Complex expected = m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);
    CHECK(std::abs(permanent(m) - expected) < 1e-12);
    // Identity permanent is 1; a permutation matrix too.
    CHECK(std::abs(permanent(ComplexMatrix::Identity(5, 5)) - 1.0) < 1e-12);
}

TEST_CASE("permanent matches the naive expansion for a 4x4 matrix") {
    const ComplexMatrix u = random_unitary(4, 9);
    Complex naive = 0.0;
    int p[4] = {0, 1, 2, 3};
    do {
        Complex term = 1.0;
        for (int i = 0; i < 4; i++) {
            term *= u(i, p[i]);
        }
        naive += term;
    } while (std::next_permutation(p, p + 4));
    CHECK(std::abs(permanent(u) - naive) < 1e-12);
}

TEST_CASE("permanent rejects bad shapes") {
    CHECK_THROWS_AS(permanent(ComplexMatrix::Ones(2, 3)), DimensionError);
    CHECK_THROWS_AS(permanent(ComplexMatrix::Ones(kMaxPermanentSize + 1, kMaxPermanentSize + 1)), DimensionError);
}

TEST_CASE("random unitaries are unitary and deterministic") {
    for (int m = 1; m <= 8; m++) {
        const ComplexMatrix u = random_unitary(m, 42);
        CHECK(is_unitary(u));
        CHECK(max_abs_diff(u, random_unitary(m, 42)) == 0.0);
    }
    CHECK(max_abs_diff(random_unitary(4, 1), random_unitary(4, 2)) > 1e-3);
    CHECK_THROWS_AS(random_unitary(0, 1), DimensionError);
}

TEST_CASE("is_unitary") {
    CHECK(is_unitary(ComplexMatrix::Identity(3, 3)));
    CHECK_FALSE(is_unitary(ComplexMatrix::Ones(2, 2)));
    CHECK_FALSE(is_unitary(ComplexMatrix::Identity(2, 3)));
    ComplexMatrix almost = ComplexMatrix::Identity(2, 2);
    almost(0, 0) = 1.0 + 1e-6;
    CHECK_FALSE(is_unitary(almost));
    CHECK(is_unitary(almost, 1e-5));
}

TEST_CASE("phase-insensitive comparison") {
    const ComplexMatrix u = random_unitary(3, 5);
    const ComplexMatrix v = std::polar(1.0, 0.7) * u;
    CHECK(phase_insensitive_distance(u, v) < 1e-12);
    CHECK(max_abs_diff(normalize_global_phase(u), normalize_global_phase(v)) < 1e-12);
    CHECK(phase_insensitive_distance(u, random_unitary(3, 6)) > 1e-3);
    CHECK_THROWS_AS(max_abs_diff(u, ComplexMatrix::Identity(2, 2)), DimensionError);
}
