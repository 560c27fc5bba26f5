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

#ifndef PHOTONMESH_DISTILLATION_H
#define PHOTONMESH_DISTILLATION_H

#include <string>
#include <vector>

#include "photonmesh/circuits.h"
#include "photonmesh/fock.h"
#include "photonmesh/interference.h"

namespace photonmesh {

/// Zero-transmission rule for QFT_m with m = s.modes(): the 1-based output
/// labels of all photons must sum to 0 mod m.
bool ztl_allowed(const OccupationVector &s);

struct SuppressionEntry {
    OccupationVector outcome;
    bool allowed = true;
    double indistinguishable = 0.0;
    double distinguishable = 0.0;
};

/// Input (1,...,1) through QFT_m, for identical and fully distinguishable photons.
struct SuppressionReport {
    int m = 0;
    std::vector<SuppressionEntry> entries;
    /// Largest probability among forbidden outcomes.
    double max_forbidden_indistinguishable = 0.0;
    double max_forbidden_distinguishable = 0.0;
    /// Forbidden outcomes stay below 1e-10 for identical photons.
    bool suppressed() const { return max_forbidden_indistinguishable < 1e-10; }
    /// Some forbidden outcome reaches 0.01 for distinguishable photons.
    bool distinguishable_violates() const { return max_forbidden_distinguishable >= 0.01; }
    bool passed() const { return suppressed() && distinguishable_violates(); }
};

/// Throws RangeError unless 2 <= m <= 6.
SuppressionReport verify_suppression(int m);

/// Detect `pattern` on `measured_modes` and keep the photon in `output_mode`.
/// Unlisted modes are summed over.
struct HeraldSpec {
    std::vector<int> measured_modes;
    std::vector<int> pattern;
    int output_mode = 0;
    bool operator==(const HeraldSpec &) const = default;
};

/// "(0,1)@[2,3]->1" with 1-based modes.
std::string herald_label(const HeraldSpec &h);

struct DistillationOutcome {
    HeraldSpec herald;
    double epsilon_in = 0.0;
    double success_probability = 0.0;
    InternalState conditional_state = InternalState::basis(1, 0);
    /// 1 - <0|rho'|0>: infidelity with the ideal internal level 0.
    double epsilon_out = 0.0;
    /// Tr[rho' rho(eps)] against a fresh photon whose noise level is new.
    double visibility_out = 0.0;
};

/// Herald-conditioned state of the photon in herald.output_mode.
/// Canonical ensembles use the exact branch expansion; explicit ones go
/// through the brute-force oracle. The ensemble's epsilon sets the
/// reference photon for visibility_out.
///
/// Throws ValidationError for an inconsistent herald and
/// DegenerateHeraldError when the herald probability is below 1e-15.
DistillationOutcome run_heralded(const ComplexMatrix &u, const PhotonEnsemble &ensemble, const HeraldSpec &herald);
DistillationOutcome run_heralded(const Circuit &c, const PhotonEnsemble &ensemble, const HeraldSpec &herald);

/// A circuit, where its photons enter, and the heralds to evaluate.
struct Protocol {
    std::string name;
    Circuit circuit;
    OccupationVector input;
    std::vector<HeraldSpec> heralds;
    /// ztl_allowed of the full outcome each herald implies.
    std::vector<bool> herald_allowed;
};

/// rho(eps) photons placed per protocol.input.
PhotonEnsemble protocol_ensemble(const Protocol &p, double epsilon);

/// One photon, no optics, no detection: eps' = eps.
Protocol protocol_identity();

/// Two photons bunch on a balanced splitter; the bunched pair is split by a
/// second balanced splitter and one photon is detected in its monitor arm.
/// Modes: 0 signal, 1 anti-bunched port, 2 monitor arm.
Protocol protocol_cascaded_hom();

/// Two cascaded-HOM stages on modes {0,1,2} and {3,4,5}, whose outputs meet
/// on a final balanced splitter between modes 0 and 3.
struct TreeProtocol {
    Circuit circuit;
    OccupationVector input;
    /// Both sub-heralds, on modes {1,2,4,5}.
    std::vector<int> measured_modes;
    std::vector<int> pattern;
    /// The two distilled photons, before and after the final splitter.
    std::vector<int> output_modes;
    /// Stage circuit without the final splitter.
    Circuit stages;
};

/// Throws RangeError unless n_copies == 2.
TreeProtocol protocol_tree(int n_copies = 2);

struct TreeOutcome {
    double epsilon_in = 0.0;
    /// Probability of both sub-heralds.
    double success_probability = 0.0;
    /// Distilled photon of each stage.
    DistillationOutcome first;
    DistillationOutcome second;
    /// P(one photon in each output | herald) after the final splitter.
    double coincidence = 0.0;
    /// 1 - 2 * coincidence.
    double final_visibility = 0.0;
    /// (1 - eps)^2: two undistilled photons.
    double raw_visibility = 0.0;
};

TreeOutcome run_tree(const TreeProtocol &p, double epsilon);

/// QFT_m (qFFT network for m in {2, 4, 8}, dense otherwise) with every
/// pattern of m-1 photons on modes 0..m-2, keeping the last mode.
/// Throws RangeError unless 2 <= m <= 6 or m == 8.
Protocol protocol_fourier(int m);

/// Default grid for slope fits.
std::vector<double> default_epsilon_grid();

struct SlopeFit {
    int herald_index = 0;
    /// Leading coefficient a of eps' = a eps + b eps^2 fitted by least squares.
    double slope = 0.0;
    double curvature = 0.0;
    /// Plain least-squares slope of eps' = c eps.
    double linear_slope = 0.0;
    std::vector<double> epsilons;
    std::vector<double> epsilon_out;
    std::vector<double> ratios;
    std::vector<DistillationOutcome> outcomes;
};

/// Slope for one herald. Grid values must lie in (0, 0.2], at least 3 of them.
/// Throws RangeError for a bad grid; DegenerateHeraldError propagates.
SlopeFit herald_slope(const Protocol &p, int herald_index, const std::vector<double> &grid);

/// Per-herald fits. Heralds that are degenerate somewhere on the grid are
/// left out.
std::vector<SlopeFit> herald_slopes(const Protocol &p, const std::vector<double> &grid);

/// Smallest slope among allowed heralds (ties: lowest index).
/// Throws ValidationError if no allowed herald survives.
SlopeFit error_slope(const Protocol &p, const std::vector<double> &grid);

/// Signal mode 0 couples to a noise mode 1 with theta = asin(sqrt(eps_multiphoton)),
/// then to a loss mode 2 with theta = asin(sqrt(eps_loss)). Modes 1 and 2
/// are auxiliary. Throws RangeError outside [0, 1].
Circuit noise_emulation_circuit(double eps_multiphoton, double eps_loss);

}  // namespace photonmesh

#endif
