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

#ifndef PHOTONMESH_INTERFERENCE_H
#define PHOTONMESH_INTERFERENCE_H

#include <map>
#include <optional>
#include <vector>

#include "photonmesh/fock.h"
#include "photonmesh/numerics.h"

namespace photonmesh {

/// Density matrix of one photon's internal degrees of freedom (polarization,
/// spectrum, arrival time, ... collapsed into an abstract d-level space).
class InternalState {
   public:
    /// Validates Hermiticity (1e-12), unit trace (1e-12) and eigenvalues >= -1e-10.
    explicit InternalState(ComplexMatrix density);
    /// Skips validation; `validate()` can be called later.
    static InternalState unchecked(ComplexMatrix density);
    /// |psi><psi| / <psi|psi>.
    static InternalState pure(const ComplexVector &psi);
    /// |level><level| in a `dim`-level space.
    static InternalState basis(int dim, int level);

    int dim() const { return static_cast<int>(rho_.rows()); }
    const ComplexMatrix &density() const { return rho_; }
    /// <level| rho |level>.
    double population(int level) const { return rho_(level, level).real(); }
    /// Zero-pads to a larger internal space.
    InternalState embedded(int dim) const;
    /// Throws ValidationError describing the first violated invariant.
    void validate() const;

   private:
    struct NoCheck {};
    InternalState(ComplexMatrix density, NoCheck);
    ComplexMatrix rho_;
};

enum class NoiseModel {
    /// rho(eps) = (1-eps)|0><0| + eps|j><j| with a private noise level j per photon.
    kCanonical,
    /// Arbitrary per-photon density matrices.
    kExplicit,
};

/// Photons with their internal states and input placement. Photon k sits in
/// mode input_modes.photon_modes()[k].
struct PhotonEnsemble {
    std::vector<InternalState> photons;
    OccupationVector input_modes;
    NoiseModel model = NoiseModel::kExplicit;
    /// Only meaningful for the canonical model.
    double epsilon = 0.0;

    int size() const { return static_cast<int>(photons.size()); }
    int internal_dim() const { return photons.empty() ? 1 : photons.front().dim(); }
    /// Gram matrix: 1 on the diagonal, Tr[rho_j rho_k] off it.
    Eigen::MatrixXd gram() const;
    /// Checks photon count, equal internal dims, state validity and Gram PSD.
    void validate() const;
};

/// n copies of rho(eps) in a (n+1)-level internal space. Photon k (0-based)
/// uses noise level k+1. Photons default to one per mode in n modes; pass
/// `placement` to put them elsewhere (its photon count must be n).
PhotonEnsemble make_noisy_source(int n, double epsilon, std::optional<OccupationVector> placement = std::nullopt);

/// Explicit ensemble. Throws DimensionError if counts or dims disagree.
PhotonEnsemble make_explicit_ensemble(std::vector<InternalState> photons, OccupationVector placement);

/// rho(eps) with its noise component on `noise_level` of a `dim`-level space.
InternalState noisy_photon(double epsilon, int noise_level, int dim);

/// Tr[a b]. Equals the two-photon HOM visibility 1 - 2 P(1,1) on a balanced splitter.
double hom_visibility(const InternalState &a, const InternalState &b);

/// Exact output statistics for partially distinguishable photons.
/// Canonical ensembles expand into 2^n classical branches of mutually
/// distinguishable photon classes and convolve per-class distributions.
/// Explicit ensembles are spectrally decomposed into pure branches and
/// evaluated with the Gram-weighted permutation sum.
Distribution output_distribution_partial(const ComplexMatrix &u, const PhotonEnsemble &ensemble);

/// Statistics for fully distinguishable photons: perm(|U[s,r]|^2) / prod s!.
Distribution distinguishable_distribution(const ComplexMatrix &u, const OccupationVector &r);

/// Pure-state kernel: probability of spatial outcome s when photon k sits in
/// `photon_modes[k]` with internal vector `states[k]`. Cost O(n! 2^n n).
double pure_state_outcome_probability(
    const ComplexMatrix &u,
    const std::vector<int> &photon_modes,
    const std::vector<ComplexVector> &states,
    const OccupationVector &s);

/// Group of photons that share one internal level within a canonical branch.
struct PhotonClass {
    OccupationVector input;
    int level = 0;
};

/// One term of the canonical mixture: each photon is either good (level 0,
/// weight 1-eps) or in its private noise level (weight eps).
struct MixtureBranch {
    double weight = 0.0;
    std::vector<PhotonClass> classes;
};

/// The 2^n branches with nonzero weight, in bitmask order (bit k = photon k bad).
std::vector<MixtureBranch> canonical_branches(const PhotonEnsemble &ensemble);

/// Per-class outcome probabilities with memoization, shared across branches.
class ClassProbabilityCache {
   public:
    explicit ClassProbabilityCache(const ComplexMatrix &u) : u_(u) {
    }
    double probability(const OccupationVector &input, const OccupationVector &output);
    const Distribution &distribution(const OccupationVector &input);

   private:
    ComplexMatrix u_;
    std::map<std::pair<OccupationVector, OccupationVector>, double> single_;
    std::map<OccupationVector, Distribution> full_;
};

/// For a canonical ensemble, the joint probability of spatial outcome s and of
/// the internal level carried by the single photon found in `mode`. Entry l
/// of the result is P(s, level l); the entries sum to P(s).
///
/// Throws ValidationError unless s[mode] == 1 and the ensemble is canonical.
std::vector<double> level_resolved_probability(
    const ComplexMatrix &u, const PhotonEnsemble &ensemble, const OccupationVector &s, int mode);

/// Sums of independent outcomes: P(a + b) += P(a) P(b).
Distribution convolve(const Distribution &a, const Distribution &b);

}  // namespace photonmesh

#endif
