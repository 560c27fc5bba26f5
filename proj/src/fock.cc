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

#include "photonmesh/fock.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "photonmesh/errors.h"

namespace photonmesh {

OccupationVector::OccupationVector(std::vector<int> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) {
        throw DimensionError("an occupation vector needs at least one mode");
    }
    for (int c : counts_) {
        if (c < 0) {
            throw ValidationError("negative photon count in occupation vector");
        }
        photons_ += c;
    }
}

OccupationVector::OccupationVector(std::initializer_list<int> counts)
    : OccupationVector(std::vector<int>(counts)) {
}

OccupationVector OccupationVector::vacuum(int modes) {
    return OccupationVector(std::vector<int>(modes, 0));
}

OccupationVector OccupationVector::ones(int modes, int photons) {
    if (photons > modes) {
        throw DimensionError("cannot place more single photons than modes");
    }
    std::vector<int> counts(modes, 0);
    std::fill(counts.begin(), counts.begin() + photons, 1);
    return OccupationVector(std::move(counts));
}

std::vector<int> OccupationVector::photon_modes() const {
    std::vector<int> out;
    out.reserve(photons_);
    for (int mode = 0; mode < modes(); mode++) {
        for (int k = 0; k < counts_[mode]; k++) {
            out.push_back(mode);
        }
    }
    return out;
}

std::string OccupationVector::to_string() const {
    std::string out = "(";
    for (size_t i = 0; i < counts_.size(); i++) {
        if (i > 0) {
            out += ",";
        }
        out += std::to_string(counts_[i]);
    }
    out += ")";
    return out;
}

namespace {

void enumerate_into(int mode, int remaining, std::vector<int> &scratch, std::vector<OccupationVector> &out) {
    const int m = static_cast<int>(scratch.size());
    if (mode == m - 1) {
        scratch[mode] = remaining;
        out.emplace_back(scratch);
        return;
    }
    for (int k = remaining; k >= 0; k--) {
        scratch[mode] = k;
        enumerate_into(mode + 1, remaining - k, scratch, out);
    }
}

}  // namespace

std::vector<OccupationVector> enumerate_outcomes(int m, int n) {
    if (m < 1) {
        throw DimensionError("enumerate_outcomes requires m >= 1");
    }
    if (n < 0) {
        throw DimensionError("enumerate_outcomes requires n >= 0");
    }
    std::vector<OccupationVector> out;
    out.reserve(static_cast<size_t>(count_outcomes(m, n)));
    std::vector<int> scratch(m, 0);
    enumerate_into(0, n, scratch, out);
    return out;
}

long long count_outcomes(int m, int n) {
    // C(n + m - 1, m - 1), multiplicative form stays exact in 64 bits here.
    long long result = 1;
    for (int k = 1; k <= m - 1; k++) {
        result = result * (n + k) / k;
    }
    return result;
}

double Distribution::probability(const OccupationVector &s) const {
    auto it = std::lower_bound(outcomes.begin(), outcomes.end(), s, std::greater<>());
    if (it == outcomes.end() || *it != s) {
        return 0.0;
    }
    return probabilities[static_cast<size_t>(it - outcomes.begin())];
}

double Distribution::total() const {
    double t = 0.0;
    for (double p : probabilities) {
        t += p;
    }
    return t;
}

double Distribution::max_abs_diff(const Distribution &other) const {
    double worst = 0.0;
    for (size_t i = 0; i < outcomes.size(); i++) {
        worst = std::max(worst, std::abs(probabilities[i] - other.probability(outcomes[i])));
    }
    for (size_t i = 0; i < other.outcomes.size(); i++) {
        worst = std::max(worst, std::abs(other.probabilities[i] - probability(other.outcomes[i])));
    }
    return worst;
}

Distribution empty_distribution(int m, int n) {
    Distribution d;
    d.outcomes = enumerate_outcomes(m, n);
    d.probabilities.assign(d.outcomes.size(), 0.0);
    return d;
}

double sqrt_factorial_product(const OccupationVector &v) {
    if (v.photons() <= 12) {
        double prod = 1.0;
        for (int c : v.counts()) {
            for (int k = 2; k <= c; k++) {
                prod *= k;
            }
        }
        return std::sqrt(prod);
    }
    double log_sum = 0.0;
    for (int c : v.counts()) {
        log_sum += std::lgamma(c + 1.0);
    }
    return std::exp(0.5 * log_sum);
}

ComplexMatrix repeated_submatrix(const ComplexMatrix &u, const OccupationVector &r, const OccupationVector &s) {
    const std::vector<int> rows = s.photon_modes();
    const std::vector<int> cols = r.photon_modes();
    ComplexMatrix sub(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); i++) {
        for (size_t j = 0; j < cols.size(); j++) {
            sub(i, j) = u(rows[i], cols[j]);
        }
    }
    return sub;
}

Complex transition_amplitude(const ComplexMatrix &u, const OccupationVector &r, const OccupationVector &s) {
    if (u.rows() != u.cols()) {
        throw DimensionError("transition_amplitude requires a square matrix");
    }
    if (r.modes() != u.cols() || s.modes() != u.rows()) {
        throw DimensionError(
            "occupation vectors have " + std::to_string(r.modes()) + "/" + std::to_string(s.modes()) +
            " modes but the matrix is " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
    }
    if (r.photons() != s.photons()) {
        throw ConservationError(
            "photon number not conserved: input " + std::to_string(r.photons()) + ", output " +
            std::to_string(s.photons()));
    }
    const Complex p = permanent(repeated_submatrix(u, r, s));
    return p / (sqrt_factorial_product(r) * sqrt_factorial_product(s));
}

Distribution output_distribution_unchecked(const ComplexMatrix &u, const OccupationVector &r) {
    Distribution d = empty_distribution(r.modes(), r.photons());
    for (size_t i = 0; i < d.outcomes.size(); i++) {
        d.probabilities[i] = std::norm(transition_amplitude(u, r, d.outcomes[i]));
    }
    return d;
}

Distribution output_distribution(const ComplexMatrix &u, const OccupationVector &r) {
    if (!is_unitary(u)) {
        throw ValidationError("output_distribution requires a unitary matrix");
    }
    return output_distribution_unchecked(u, r);
}

}  // namespace photonmesh
