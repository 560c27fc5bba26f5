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

#include "photonmesh/distillation.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <string>

#include "photonmesh/errors.h"
#include "photonmesh/oracle.h"

namespace photonmesh {

namespace {

constexpr double kBalanced = std::numbers::pi / 4;
constexpr double kDegenerateHerald = 1e-15;

void check_herald(const HeraldSpec &h, int modes, int photons) {
    if (h.measured_modes.size() != h.pattern.size()) {
        throw ValidationError("herald pattern and measured modes differ in length");
    }
    if (h.output_mode < 0 || h.output_mode >= modes) {
        throw ValidationError("herald output mode out of range");
    }
    std::set<int> seen{h.output_mode};
    int detected = 0;
    for (size_t i = 0; i < h.measured_modes.size(); i++) {
        const int mode = h.measured_modes[i];
        if (mode < 0 || mode >= modes || !seen.insert(mode).second) {
            throw ValidationError("herald measured modes must be distinct, in range and exclude the output mode");
        }
        if (h.pattern[i] < 0) {
            throw ValidationError("herald pattern counts must be non-negative");
        }
        detected += h.pattern[i];
    }
    if (detected > photons - 1) {
        throw ValidationError("herald detects more photons than can leave one in the output mode");
    }
    if (static_cast<int>(seen.size()) == modes && detected != photons - 1) {
        throw ValidationError("a full herald must detect exactly n - 1 photons");
    }
}

// Spatial outcomes consistent with the herald and one photon in the output mode.
std::vector<OccupationVector> herald_outcomes(const HeraldSpec &h, int modes, int photons) {
    std::vector<int> base(modes, 0);
    std::vector<bool> fixed(modes, false);
    int detected = 0;
    for (size_t i = 0; i < h.measured_modes.size(); i++) {
        base[h.measured_modes[i]] = h.pattern[i];
        fixed[h.measured_modes[i]] = true;
        detected += h.pattern[i];
    }
    base[h.output_mode] = 1;
    fixed[h.output_mode] = true;
    std::vector<int> free;
    for (int k = 0; k < modes; k++) {
        if (!fixed[k]) {
            free.push_back(k);
        }
    }
    const int rest = photons - 1 - detected;
    std::vector<OccupationVector> out;
    if (free.empty()) {
        out.emplace_back(base);
        return out;
    }
    for (const auto &f : enumerate_outcomes(static_cast<int>(free.size()), rest)) {
        std::vector<int> counts = base;
        for (size_t i = 0; i < free.size(); i++) {
            counts[free[i]] = f[static_cast<int>(i)];
        }
        out.emplace_back(counts);
    }
    return out;
}

void finish_outcome(DistillationOutcome &o, const InternalState &rho, double epsilon) {
    o.conditional_state = rho;
    o.epsilon_out = std::clamp(1.0 - rho.population(0), 0.0, 1.0);
    const int dim = rho.dim() + 1;
    o.visibility_out = hom_visibility(rho.embedded(dim), noisy_photon(epsilon, dim - 1, dim));
}

std::vector<int> iota_modes(int from, int to) {
    std::vector<int> v;
    for (int k = from; k < to; k++) {
        v.push_back(k);
    }
    return v;
}

}  // namespace

bool ztl_allowed(const OccupationVector &s) {
    const int m = s.modes();
    if (m == 0) {
        return true;
    }
    long long total = 0;
    for (int k = 0; k < m; k++) {
        total += static_cast<long long>(k + 1) * s[k];
    }
    return total % m == 0;
}

SuppressionReport verify_suppression(int m) {
    if (m < 2 || m > 6) {
        throw RangeError("verify_suppression requires 2 <= m <= 6");
    }
    const ComplexMatrix u = qft_matrix(m);
    const OccupationVector input = OccupationVector::ones(m, m);
    const Distribution ideal = output_distribution(u, input);
    const Distribution classical = distinguishable_distribution(u, input);
    SuppressionReport report;
    report.m = m;
    for (size_t i = 0; i < ideal.size(); i++) {
        SuppressionEntry e{ideal.outcomes[i], ztl_allowed(ideal.outcomes[i]), ideal.probabilities[i],
                           classical.probability(ideal.outcomes[i])};
        if (!e.allowed) {
            report.max_forbidden_indistinguishable = std::max(report.max_forbidden_indistinguishable, e.indistinguishable);
            report.max_forbidden_distinguishable = std::max(report.max_forbidden_distinguishable, e.distinguishable);
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

std::string herald_label(const HeraldSpec &h) {
    std::string s = "(";
    for (size_t i = 0; i < h.pattern.size(); i++) {
        s += (i ? "," : "") + std::to_string(h.pattern[i]);
    }
    s += ")@[";
    for (size_t i = 0; i < h.measured_modes.size(); i++) {
        s += (i ? "," : "") + std::to_string(h.measured_modes[i] + 1);
    }
    return s + "]->" + std::to_string(h.output_mode + 1);
}

DistillationOutcome run_heralded(const ComplexMatrix &u, const PhotonEnsemble &ensemble, const HeraldSpec &herald) {
    ensemble.validate();
    if (u.rows() != u.cols() || u.rows() != ensemble.input_modes.modes()) {
        throw DimensionError("unitary size must match the ensemble's mode count");
    }
    const int m = static_cast<int>(u.rows());
    const int n = ensemble.size();
    check_herald(herald, m, n);

    DistillationOutcome o;
    o.herald = herald;
    o.epsilon_in = ensemble.epsilon;
    if (ensemble.model == NoiseModel::kCanonical) {
        const int dim = ensemble.internal_dim();
        std::vector<double> levels(dim, 0.0);
        for (const auto &s : herald_outcomes(herald, m, n)) {
            const auto p = level_resolved_probability(u, ensemble, s, herald.output_mode);
            for (int l = 0; l < dim; l++) {
                levels[l] += p[l];
            }
        }
        double total = 0.0;
        for (double p : levels) {
            total += p;
        }
        if (total < kDegenerateHerald) {
            throw DegenerateHeraldError("herald " + herald_label(herald) + " has probability below 1e-15");
        }
        // Each branch gives the kept photon a definite level, so rho' is diagonal.
        ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
        for (int l = 0; l < dim; l++) {
            rho(l, l) = levels[l] / total;
        }
        o.success_probability = total;
        finish_outcome(o, InternalState::unchecked(rho), ensemble.epsilon);
        return o;
    }
    const OracleResult oracle = brute_force_oracle(u, ensemble);
    const ConditionalState cs = oracle.condition(herald.measured_modes, herald.pattern, herald.output_mode);
    o.success_probability = cs.probability;
    finish_outcome(o, cs.state, ensemble.epsilon);
    return o;
}

DistillationOutcome run_heralded(const Circuit &c, const PhotonEnsemble &ensemble, const HeraldSpec &herald) {
    return run_heralded(logical_unitary(c), ensemble, herald);
}

PhotonEnsemble protocol_ensemble(const Protocol &p, double epsilon) {
    return make_noisy_source(p.input.photons(), epsilon, p.input);
}

Protocol protocol_identity() {
    Protocol p;
    p.name = "identity";
    p.circuit = Circuit(1);
    p.circuit.label = "identity";
    p.input = OccupationVector{1};
    p.heralds.push_back(HeraldSpec{{}, {}, 0});
    p.herald_allowed.push_back(true);
    return p;
}

Protocol protocol_cascaded_hom() {
    Protocol p;
    p.name = "hom";
    p.circuit = Circuit(3);
    p.circuit.label = "cascaded-hom";
    p.circuit.append(Element::beam_splitter(0, 1, kBalanced));
    p.circuit.append(Element::beam_splitter(0, 2, kBalanced));
    p.input = OccupationVector{1, 1, 0};
    p.heralds.push_back(HeraldSpec{{1, 2}, {0, 1}, 0});
    p.herald_allowed.push_back(true);
    return p;
}

TreeProtocol protocol_tree(int n_copies) {
    if (n_copies != 2) {
        throw RangeError("protocol_tree supports exactly two copies");
    }
    const Protocol stage = protocol_cascaded_hom();
    TreeProtocol t;
    t.stages = concatenate(embed(stage.circuit, 6, {0, 1, 2}), embed(stage.circuit, 6, {3, 4, 5}));
    t.stages.label = "tree-stages";
    t.circuit = t.stages;
    t.circuit.append(Element::beam_splitter(0, 3, kBalanced));
    t.circuit.label = "tree";
    t.input = OccupationVector{1, 1, 0, 1, 1, 0};
    t.measured_modes = {1, 2, 4, 5};
    t.pattern = {0, 1, 0, 1};
    t.output_modes = {0, 3};
    return t;
}

TreeOutcome run_tree(const TreeProtocol &p, double epsilon) {
    const PhotonEnsemble ensemble = make_noisy_source(p.input.photons(), epsilon, p.input);
    TreeOutcome t;
    t.epsilon_in = epsilon;
    t.first = run_heralded(p.stages, ensemble, HeraldSpec{p.measured_modes, p.pattern, p.output_modes[0]});
    t.second = run_heralded(p.stages, ensemble, HeraldSpec{p.measured_modes, p.pattern, p.output_modes[1]});
    t.success_probability = t.first.success_probability;

    const Distribution d = output_distribution_partial(logical_unitary(p.circuit), ensemble);
    double heralded = 0.0;
    double both = 0.0;
    for (size_t i = 0; i < d.size(); i++) {
        const OccupationVector &s = d.outcomes[i];
        bool match = true;
        for (size_t k = 0; k < p.measured_modes.size(); k++) {
            match = match && s[p.measured_modes[k]] == p.pattern[k];
        }
        if (!match) {
            continue;
        }
        heralded += d.probabilities[i];
        if (s[p.output_modes[0]] == 1 && s[p.output_modes[1]] == 1) {
            both += d.probabilities[i];
        }
    }
    if (heralded < kDegenerateHerald) {
        throw DegenerateHeraldError("tree herald has probability below 1e-15");
    }
    t.coincidence = both / heralded;
    t.final_visibility = 1.0 - 2.0 * t.coincidence;
    t.raw_visibility = (1.0 - epsilon) * (1.0 - epsilon);
    return t;
}

Protocol protocol_fourier(int m) {
    if (m < 2 || (m > 6 && m != 8)) {
        throw RangeError("protocol_fourier supports 2 <= m <= 6 and m = 8");
    }
    Protocol p;
    p.name = "fourier";
    if ((m & (m - 1)) == 0) {
        p.circuit = cooley_tukey_qfft(std::countr_zero(static_cast<unsigned>(m)));
    } else {
        // Dense QFT_m through the rectangular decomposition.
        p.circuit = clements_decompose(qft_matrix(m));
        p.circuit.label = "qft";
    }
    p.input = OccupationVector::ones(m, m);
    const std::vector<int> measured = iota_modes(0, m - 1);
    for (const auto &pattern : enumerate_outcomes(m - 1, m - 1)) {
        p.heralds.push_back(HeraldSpec{measured, pattern.counts(), m - 1});
        std::vector<int> full = pattern.counts();
        full.push_back(1);
        p.herald_allowed.push_back(ztl_allowed(OccupationVector(full)));
    }
    return p;
}

std::vector<double> default_epsilon_grid() {
    return {0.001, 0.005, 0.01, 0.05, 0.1};
}

SlopeFit herald_slope(const Protocol &p, int herald_index, const std::vector<double> &grid) {
    if (grid.size() < 3) {
        throw RangeError("a slope fit needs at least 3 epsilon values");
    }
    for (double e : grid) {
        if (!(e > 0.0 && e <= 0.2)) {
            throw RangeError("slope grid values must lie in (0, 0.2]");
        }
    }
    if (herald_index < 0 || herald_index >= static_cast<int>(p.heralds.size())) {
        throw RangeError("herald index out of range");
    }
    SlopeFit fit;
    fit.herald_index = herald_index;
    fit.epsilons = grid;
    for (double e : grid) {
        fit.outcomes.push_back(run_heralded(p.circuit, protocol_ensemble(p, e), p.heralds[herald_index]));
        fit.epsilon_out.push_back(fit.outcomes.back().epsilon_out);
        fit.ratios.push_back(fit.epsilon_out.back() / e);
    }
    const int k = static_cast<int>(grid.size());
    Eigen::MatrixXd a(k, 2);
    Eigen::VectorXd y(k);
    for (int i = 0; i < k; i++) {
        a(i, 0) = grid[i];
        a(i, 1) = grid[i] * grid[i];
        y(i) = fit.epsilon_out[i];
    }
    const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(y);
    fit.slope = coef(0);
    fit.curvature = coef(1);
    fit.linear_slope = a.col(0).dot(y) / a.col(0).squaredNorm();
    return fit;
}

std::vector<SlopeFit> herald_slopes(const Protocol &p, const std::vector<double> &grid) {
    std::vector<SlopeFit> fits;
    for (int h = 0; h < static_cast<int>(p.heralds.size()); h++) {
        try {
            fits.push_back(herald_slope(p, h, grid));
        } catch (const DegenerateHeraldError &) {
        }
    }
    return fits;
}

SlopeFit error_slope(const Protocol &p, const std::vector<double> &grid) {
    std::optional<SlopeFit> best;
    for (auto &fit : herald_slopes(p, grid)) {
        if (!p.herald_allowed[fit.herald_index]) {
            continue;
        }
        if (!best || fit.slope < best->slope - 1e-12) {
            best = std::move(fit);
        }
    }
    if (!best) {
        throw ValidationError("protocol " + p.name + " has no allowed non-degenerate herald");
    }
    return *best;
}

Circuit noise_emulation_circuit(double eps_multiphoton, double eps_loss) {
    for (double e : {eps_multiphoton, eps_loss}) {
        if (!(e >= 0.0 && e <= 1.0)) {
            throw RangeError("noise emulation parameters must lie in [0, 1]");
        }
    }
    Circuit c(3);
    c.label = "noise-emulation";
    c.append(Element::beam_splitter(0, 1, std::asin(std::sqrt(eps_multiphoton))));
    c.append(Element::beam_splitter(0, 2, std::asin(std::sqrt(eps_loss))));
    c.auxiliary_modes = {1, 2};
    return c;
}

}  // namespace photonmesh
