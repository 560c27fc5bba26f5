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

#ifndef PHOTONMESH_ORACLE_H
#define PHOTONMESH_ORACLE_H

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "photonmesh/fock.h"
#include "photonmesh/interference.h"

namespace photonmesh {

/// Oracle limits. The Fock space of n photons in m*d species is capped too.
inline constexpr int kOracleMaxPhotons = 4;
inline constexpr int kOracleMaxModes = 6;
inline constexpr int kOracleMaxInternalDim = 5;
inline constexpr long long kOracleMaxAmplitudes = 1000000;

/// Reduced state of the photon left in one output mode after a detection.
struct ConditionalState {
    double probability = 0.0;
    InternalState state = InternalState::basis(1, 0);
};

/// Output of the brute-force evolution. Species index x = mode * d + level.
class OracleResult {
   public:
    struct PureBranch {
        double weight = 0.0;
        /// Normalized Fock amplitudes keyed by the sorted species list.
        std::unordered_map<std::uint64_t, Complex> amplitudes;
    };

    OracleResult(int modes, int photons, int internal_dim, std::vector<PureBranch> branches);

    int modes() const { return modes_; }
    int photons() const { return photons_; }
    int internal_dim() const { return dim_; }

    /// Detector-level statistics (internal levels traced out).
    const Distribution &spatial() const { return spatial_; }
    /// Species-resolved probabilities: key has m*d counts.
    const std::map<std::vector<int>, double> &joint() const { return joint_; }

    /// Probability of `pattern` on `measured` modes, summed over the rest.
    double herald_probability(const std::vector<int> &measured, const std::vector<int> &pattern) const;

    /// Detects `pattern` on `measured` and keeps events with exactly one photon
    /// in `output_mode`; returns the joint probability of that event and the
    /// normalized internal state of the remaining photon.
    ///
    /// Throws DegenerateHeraldError if the event probability is below 1e-15.
    ConditionalState condition(
        const std::vector<int> &measured, const std::vector<int> &pattern, int output_mode) const;

   private:
    std::vector<int> decode(std::uint64_t key) const;

    int modes_;
    int photons_;
    int dim_;
    std::vector<PureBranch> branches_;
    Distribution spatial_;
    std::map<std::vector<int>, double> joint_;
};

/// Evolves every pure branch of the ensemble's spectral decomposition through
/// U by expanding products of creation operators over (mode, level) species.
/// Independent of the permanent kernels.
///
/// Throws CapacityError beyond n <= 4, m <= 6, d <= 5 or 1e6 amplitudes.
OracleResult brute_force_oracle(const ComplexMatrix &u, const PhotonEnsemble &ensemble);

}  // namespace photonmesh

#endif
