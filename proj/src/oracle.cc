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

#include "photonmesh/oracle.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "photonmesh/errors.h"

namespace photonmesh {

namespace {

constexpr double kDegenerateHerald = 1e-15;
constexpr double kSpectralFloor = 1e-14;

// Keys pack a sorted (descending) species list in base `radix`, one digit
// per photon; digit value is species + 1 so shorter lists stay distinct.
std::uint64_t pack(const std::vector<int> &species, int radix) {
    std::uint64_t key = 0;
    for (int s : species) {
        key = key * static_cast<std::uint64_t>(radix) + static_cast<std::uint64_t>(s + 1);
    }
    return key;
}

long long binomial(long long n, long long k) {
    long long r = 1;
    for (long long i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return r;
}

}  // namespace

OracleResult::OracleResult(int modes, int photons, int internal_dim, std::vector<PureBranch> branches)
    : modes_(modes), photons_(photons), dim_(internal_dim), branches_(std::move(branches)) {
    spatial_ = empty_distribution(modes_, photons_);
    std::map<std::vector<int>, double> spatial_acc;
    for (const auto &b : branches_) {
        for (const auto &[key, amp] : b.amplitudes) {
            std::vector<int> counts = decode(key);
            const double p = b.weight * std::norm(amp);
            joint_[counts] += p;
        }
    }
    for (const auto &[counts, p] : joint_) {
        std::vector<int> spatial(modes_, 0);
        for (int x = 0; x < modes_ * dim_; x++) {
            spatial[x / dim_] += counts[x];
        }
        spatial_acc[spatial] += p;
    }
    for (size_t i = 0; i < spatial_.size(); i++) {
        auto it = spatial_acc.find(spatial_.outcomes[i].counts());
        if (it != spatial_acc.end()) {
            spatial_.probabilities[i] = it->second;
        }
    }
}

std::vector<int> OracleResult::decode(std::uint64_t key) const {
    const int radix = modes_ * dim_ + 1;
    std::vector<int> counts(modes_ * dim_, 0);
    while (key > 0) {
        counts[static_cast<int>(key % radix) - 1]++;
        key /= radix;
    }
    return counts;
}

double OracleResult::herald_probability(const std::vector<int> &measured, const std::vector<int> &pattern) const {
    if (measured.size() != pattern.size()) {
        throw DimensionError("herald pattern length differs from the measured mode list");
    }
    double total = 0.0;
    for (size_t i = 0; i < spatial_.size(); i++) {
        bool match = true;
        for (size_t j = 0; j < measured.size() && match; j++) {
            match = spatial_.outcomes[i][measured[j]] == pattern[j];
        }
        if (match) {
            total += spatial_.probabilities[i];
        }
    }
    return total;
}

ConditionalState OracleResult::condition(
    const std::vector<int> &measured, const std::vector<int> &pattern, int output_mode) const {
    if (measured.size() != pattern.size()) {
        throw DimensionError("herald pattern length differs from the measured mode list");
    }
    if (output_mode < 0 || output_mode >= modes_) {
        throw DimensionError("output mode out of range");
    }
    ComplexMatrix rho = ComplexMatrix::Zero(dim_, dim_);
    for (const auto &b : branches_) {
        // Environment = every species count except those of output_mode.
        std::map<std::vector<int>, ComplexVector> by_env;
        for (const auto &[key, amp] : b.amplitudes) {
            std::vector<int> counts = decode(key);
            int out_level = -1;
            int out_photons = 0;
            for (int l = 0; l < dim_; l++) {
                if (counts[output_mode * dim_ + l] > 0) {
                    out_photons += counts[output_mode * dim_ + l];
                    out_level = l;
                }
            }
            if (out_photons != 1) {
                continue;
            }
            bool match = true;
            for (size_t j = 0; j < measured.size() && match; j++) {
                int c = 0;
                for (int l = 0; l < dim_; l++) {
                    c += counts[measured[j] * dim_ + l];
                }
                match = c == pattern[j];
            }
            if (!match) {
                continue;
            }
            counts[output_mode * dim_ + out_level] = 0;
            auto [it, inserted] = by_env.try_emplace(counts, ComplexVector::Zero(dim_));
            it->second(out_level) += amp;
        }
        for (const auto &[env, v] : by_env) {
            rho += b.weight * (v * v.adjoint());
        }
    }
    const double p = rho.trace().real();
    if (p < kDegenerateHerald) {
        throw DegenerateHeraldError("herald probability " + std::to_string(p) + " is below 1e-15");
    }
    rho /= p;
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return ConditionalState{p, InternalState::unchecked(std::move(rho))};
}

OracleResult brute_force_oracle(const ComplexMatrix &u, const PhotonEnsemble &ensemble) {
    ensemble.validate();
    const int m = ensemble.input_modes.modes();
    const int n = ensemble.size();
    const int d = ensemble.internal_dim();
    if (u.rows() != m || u.cols() != m) {
        throw DimensionError("matrix does not match the ensemble's mode count");
    }
    if (!is_unitary(u)) {
        throw ValidationError("interferometer matrix is not unitary");
    }
    if (n > kOracleMaxPhotons || m > kOracleMaxModes || d > kOracleMaxInternalDim ||
        binomial(n + m * d - 1, n) > kOracleMaxAmplitudes) {
        throw CapacityError(
            "oracle state space too large: n=" + std::to_string(n) + ", m=" + std::to_string(m) +
            ", d=" + std::to_string(d));
    }
    const int species = m * d;
    const int radix = species + 1;
    const std::vector<int> modes = ensemble.input_modes.photon_modes();

    std::vector<std::vector<std::pair<double, ComplexVector>>> spectra(n);
    for (int k = 0; k < n; k++) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(ensemble.photons[k].density());
        for (int t = 0; t < d; t++) {
            if (eig.eigenvalues()(t) > kSpectralFloor) {
                spectra[k].emplace_back(eig.eigenvalues()(t), eig.eigenvectors().col(t));
            }
        }
    }

    std::vector<OracleResult::PureBranch> branches;
    std::vector<size_t> choice(n, 0);
    while (true) {
        // Output creation operator of photon k: sum_o sum_l U[o, in_k] psi_k[l] a_{o,l}^dagger.
        std::unordered_map<std::uint64_t, std::pair<std::vector<int>, Complex>> poly;
        poly.emplace(0, std::make_pair(std::vector<int>{}, Complex{1.0, 0.0}));
        double weight = 1.0;
        for (int k = 0; k < n; k++) {
            const auto &[lambda, psi] = spectra[k][choice[k]];
            weight *= lambda;
            std::unordered_map<std::uint64_t, std::pair<std::vector<int>, Complex>> next;
            for (const auto &[key, term] : poly) {
                for (int o = 0; o < m; o++) {
                    for (int l = 0; l < d; l++) {
                        const Complex c = u(o, modes[k]) * psi(l);
                        if (c == Complex{0.0, 0.0}) {
                            continue;
                        }
                        std::vector<int> mono = term.first;
                        mono.insert(std::upper_bound(mono.begin(), mono.end(), o * d + l, std::greater<>()), o * d + l);
                        auto [it, inserted] = next.try_emplace(pack(mono, radix), mono, Complex{0.0, 0.0});
                        it->second.second += term.second * c;
                    }
                }
            }
            poly = std::move(next);
        }
        OracleResult::PureBranch branch;
        branch.weight = weight;
        double norm = 0.0;
        for (const auto &[key, term] : poly) {
            double root = 1.0;
            const auto &mono = term.first;
            for (size_t i = 0; i < mono.size();) {
                size_t j = i;
                while (j < mono.size() && mono[j] == mono[i]) {
                    j++;
                }
                for (size_t f = 2; f <= j - i; f++) {
                    root *= static_cast<double>(f);
                }
                i = j;
            }
            const Complex amp = term.second * std::sqrt(root);
            if (std::norm(amp) == 0.0) {
                continue;
            }
            branch.amplitudes.emplace(key, amp);
            norm += std::norm(amp);
        }
        if (norm > 0.0) {
            const double scale = 1.0 / std::sqrt(norm);
            for (auto &[key, amp] : branch.amplitudes) {
                amp *= scale;
            }
            branches.push_back(std::move(branch));
        }
        int k = 0;
        while (k < n && ++choice[k] == spectra[k].size()) {
            choice[k] = 0;
            k++;
        }
        if (k == n) {
            break;
        }
    }
    return OracleResult(m, n, d, std::move(branches));
}

}  // namespace photonmesh
