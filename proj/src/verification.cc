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

#include "photonmesh/verification.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "photonmesh/circuits.h"
#include "photonmesh/distillation.h"
#include "photonmesh/errors.h"
#include "photonmesh/fock.h"
#include "photonmesh/interference.h"
#include "photonmesh/mesh.h"
#include "photonmesh/oracle.h"

namespace photonmesh {

namespace {

struct Verdict {
    bool passed = true;
    std::string detail;

    // Records a condition and its explanation.
    void require(bool ok, const std::string &what) {
        passed = passed && ok;
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += (ok ? "" : "FAILED ") + what;
    }
};

std::string fmt(const char *format, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, a);
    return buf;
}

std::string sci(double a) {
    return fmt("%.2e", a);
}

std::string fix(double a) {
    return fmt("%.4f", a);
}

Verdict hom_limits() {
    Verdict v;
    const ComplexMatrix u = qft_matrix(2);
    const OccupationVector coincidence{1, 1};
    const double p0 = output_distribution_partial(u, make_noisy_source(2, 0.0)).probability(coincidence);
    const double p1 = output_distribution_partial(u, make_noisy_source(2, 1.0)).probability(coincidence);
    v.require(std::abs(p0) <= 1e-12, "P(1,1) at eps=0 is " + sci(p0));
    v.require(std::abs(p1 - 0.5) <= 1e-12, "P(1,1) at eps=1 is " + fix(p1));
    return v;
}

Verdict zero_transmission() {
    Verdict v;
    for (int m = 2; m <= 5; m++) {
        const SuppressionReport r = verify_suppression(m);
        v.require(r.suppressed(), "m=" + std::to_string(m) + " max forbidden " + sci(r.max_forbidden_indistinguishable));
    }
    // Fully distinguishable photons through the partial-distinguishability engine.
    const Distribution d = output_distribution_partial(qft_matrix(4), make_noisy_source(4, 1.0));
    double worst = 0.0;
    for (size_t i = 0; i < d.size(); i++) {
        if (!ztl_allowed(d.outcomes[i])) {
            worst = std::max(worst, d.probabilities[i]);
        }
    }
    const double p1111 = d.probability(OccupationVector{1, 1, 1, 1});
    v.require(worst >= 0.01, "m=4 eps=1 largest forbidden " + fix(worst));
    v.require(std::abs(p1111 - 3.0 / 32.0) <= 1e-12, "P(1,1,1,1) at eps=1 is " + fix(p1111));
    return v;
}

// Oracle replay of a canonical run with the explicit path.
double oracle_epsilon_out(const Protocol &p, int herald, double eps) {
    PhotonEnsemble e = protocol_ensemble(p, eps);
    e.model = NoiseModel::kExplicit;
    return run_heralded(p.circuit, e, p.heralds[herald]).epsilon_out;
}

Verdict fourier_slope() {
    Verdict v;
    const Protocol p = protocol_fourier(4);
    const SlopeFit fit = error_slope(p, default_epsilon_grid());
    v.require(std::abs(fit.slope - 0.25) <= 0.02,
              "best herald " + herald_label(p.heralds[fit.herald_index]) + " slope " + fix(fit.slope));
    double worst = 0.0;
    for (size_t i = 0; i < fit.epsilons.size(); i++) {
        worst = std::max(worst, std::abs(oracle_epsilon_out(p, fit.herald_index, fit.epsilons[i]) - fit.epsilon_out[i]));
    }
    v.require(worst <= 1e-9, "oracle agreement " + sci(worst));
    return v;
}

Verdict visibility_identity() {
    Verdict v;
    double worst = 0.0;
    int runs = 0;
    std::vector<double> grid = default_epsilon_grid();
    grid.insert(grid.end(), {0.0, 0.2, 0.3, 0.5});
    auto check = [&](const DistillationOutcome &o) {
        worst = std::max(worst, std::abs(o.visibility_out - (1 - o.epsilon_in) * (1 - o.epsilon_out)));
        runs++;
    };
    for (const Protocol &p : {protocol_identity(), protocol_cascaded_hom(), protocol_fourier(3), protocol_fourier(4)}) {
        for (const auto &h : p.heralds) {
            for (double eps : grid) {
                try {
                    check(run_heralded(p.circuit, protocol_ensemble(p, eps), h));
                } catch (const DegenerateHeraldError &) {
                }
            }
        }
    }
    const TreeProtocol tree = protocol_tree();
    for (double eps : grid) {
        const TreeOutcome t = run_tree(tree, eps);
        check(t.first);
        check(t.second);
    }
    v.require(worst <= 1e-9, std::to_string(runs) + " runs, max deviation " + sci(worst));
    return v;
}

Verdict cascaded_hom() {
    Verdict v;
    const Protocol p = protocol_cascaded_hom();
    bool improved = true;
    double worst_ratio = 0.0;
    for (int i = 1; i <= 30; i++) {
        const double eps = 0.01 * i;
        const double out = run_heralded(p.circuit, protocol_ensemble(p, eps), p.heralds[0]).epsilon_out;
        improved = improved && out < eps;
        worst_ratio = std::max(worst_ratio, out / eps);
    }
    v.require(improved, "eps' < eps on 30 points in (0, 0.3], max ratio " + fix(worst_ratio));
    const SlopeFit fit = error_slope(p, default_epsilon_grid());
    v.require(std::abs(fit.slope - 0.5) <= 0.02, "slope " + fix(fit.slope));
    double worst = 0.0;
    for (size_t i = 0; i < fit.epsilons.size(); i++) {
        worst = std::max(worst, std::abs(oracle_epsilon_out(p, 0, fit.epsilons[i]) - fit.epsilon_out[i]));
    }
    v.require(worst <= 1e-9, "oracle agreement " + sci(worst));
    return v;
}

Verdict component_counts() {
    Verdict v;
    for (int n = 1; n <= 4; n++) {
        const int m = 1 << n;
        const int q = component_report(cooley_tukey_qfft(n)).pairs;
        const int r = component_report(reck_decompose(qft_matrix(m))).pairs;
        const int c = component_report(clements_decompose(qft_matrix(m))).pairs;
        const int law_q = n * (1 << (n - 1));
        const int law_g = (1 << (n - 1)) * (m - 1);
        v.require(q == law_q && r == law_g && c == law_g, "m=" + std::to_string(m) + " qfft " + std::to_string(q) +
                                                                " reck " + std::to_string(r) + " clements " +
                                                                std::to_string(c));
    }
    return v;
}

Verdict round_trips() {
    Verdict v;
    double worst_reck = 0.0;
    double worst_clements = 0.0;
    for (int m = 2; m <= 8; m++) {
        for (int k = 0; k < 50; k++) {
            const ComplexMatrix u = random_unitary(m, 1000 * m + k);
            worst_reck = std::max(worst_reck, max_abs_diff(circuit_to_unitary(reck_decompose(u)), u));
            worst_clements = std::max(worst_clements, max_abs_diff(circuit_to_unitary(clements_decompose(u)), u));
        }
    }
    v.require(worst_reck <= 1e-8, "reck " + sci(worst_reck));
    v.require(worst_clements <= 1e-8, "clements " + sci(worst_clements));
    double worst_q = 0.0;
    for (int n = 1; n <= 4; n++) {
        const Circuit c = cooley_tukey_qfft(n);
        worst_q = std::max(worst_q, phase_insensitive_distance(logical_unitary(c), qft_matrix(1 << n)));
    }
    v.require(worst_q <= 1e-10, "qfft " + sci(worst_q));
    return v;
}

Verdict mesh_depth() {
    Verdict v;
    auto layers = [](const Placement &p) { return placement_metrics(p).layer_depth; };
    auto optical = [](const Placement &p) { return placement_metrics(p).optical_depth; };
    const Circuit hom = protocol_cascaded_hom().circuit;
    const Circuit tree = protocol_tree().circuit;
    const Placement hom_ff = place_circuit_auto(hom, Strategy::kFeedForward);
    const Placement hom_rc = place_circuit_auto(hom, Strategy::kRecirculating);
    const Placement tree_ff = place_circuit_auto(tree, Strategy::kFeedForward);
    const Placement tree_rc = place_circuit_auto(tree, Strategy::kRecirculating);
    v.require(layers(hom_ff) == 2 && layers(hom_rc) == 1,
              "cascaded HOM layers " + std::to_string(layers(hom_ff)) + " vs " + std::to_string(layers(hom_rc)) +
                  " (optical depth " + std::to_string(optical(hom_ff)) + " vs " + std::to_string(optical(hom_rc)) +
                  ")");
    v.require(layers(tree_ff) == 3 && layers(tree_rc) <= 2,
              "tree layers " + std::to_string(layers(tree_ff)) + " vs " + std::to_string(layers(tree_rc)) +
                  " (optical depth " + std::to_string(optical(tree_ff)) + " vs " + std::to_string(optical(tree_rc)) +
                  ")");
    for (const auto &p : {hom_ff, hom_rc, tree_ff, tree_rc}) {
        const std::string why = placement_violation(p);
        v.require(why.empty(), why.empty() ? "placement valid" : why);
    }
    const bool fixtures_ok = layers(fixture_placement("hom-feed-forward")) == 2 &&
                             layers(fixture_placement("hom-one-layer")) == 1 &&
                             layers(fixture_placement("tree-feed-forward")) == 3 &&
                             layers(fixture_placement("tree-recirculating")) <= 2;
    v.require(fixtures_ok, "reference placements agree");
    return v;
}

// A rank-two mixture of random pure states.
InternalState random_state(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> w(0.0, 1.0);
    auto vec = [&] {
        ComplexVector x(dim);
        for (int i = 0; i < dim; i++) {
            x(i) = Complex(g(rng), g(rng));
        }
        return ComplexVector(x / x.norm());
    };
    const ComplexVector a = vec();
    const ComplexVector b = vec();
    const double p = w(rng);
    ComplexMatrix rho = p * a * a.adjoint() + (1 - p) * b * b.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return InternalState(rho);
}

std::vector<std::pair<ComplexMatrix, PhotonEnsemble>> oracle_cases() {
    std::vector<std::pair<ComplexMatrix, PhotonEnsemble>> cases;
    std::mt19937_64 rng(2026);
    const std::vector<std::pair<int, int>> shapes = {{2, 2}, {3, 2}, {3, 3}, {4, 2}, {4, 3}, {4, 4}, {5, 3}, {5, 4},
                                                     {6, 2}, {6, 3}, {6, 4}};
    int seed = 1;
    for (const auto &[m, n] : shapes) {
        const ComplexMatrix u = random_unitary(m, 500 + seed++);
        const double eps = 0.05 * seed;
        cases.emplace_back(u, make_noisy_source(n, std::min(eps, 1.0), OccupationVector::ones(m, n)));
        std::vector<InternalState> photons;
        const int dim = std::min(n + 1, kOracleMaxInternalDim);
        for (int k = 0; k < n; k++) {
            photons.push_back(random_state(dim, rng));
        }
        // Bunched inputs exercise repeated columns.
        std::vector<int> counts(m, 0);
        for (int k = 0; k < n; k++) {
            counts[k % (m - 1)]++;
        }
        cases.emplace_back(u, make_explicit_ensemble(std::move(photons), OccupationVector(counts)));
    }
    return cases;
}

Verdict oracle_equivalence() {
    Verdict v;
    double worst = 0.0;
    const auto cases = oracle_cases();
    for (const auto &[u, e] : cases) {
        const Distribution fast = output_distribution_partial(u, e);
        const OracleResult slow = brute_force_oracle(u, e);
        worst = std::max(worst, fast.max_abs_diff(slow.spatial()));
    }
    v.require(cases.size() >= 20, std::to_string(cases.size()) + " cases");
    v.require(worst <= 1e-9, "max deviation " + sci(worst));
    return v;
}

Verdict probability_hygiene() {
    Verdict v;
    double worst = 0.0;
    int count = 0;
    auto norm = [&](const Distribution &d) {
        worst = std::max(worst, std::abs(d.total() - 1.0));
        count++;
    };
    for (int m = 2; m <= 5; m++) {
        const ComplexMatrix u = random_unitary(m, 77 + m);
        norm(output_distribution(u, OccupationVector::ones(m, m)));
        norm(distinguishable_distribution(u, OccupationVector::ones(m, m)));
        for (double eps : {0.0, 0.1, 0.5, 1.0}) {
            norm(output_distribution_partial(u, make_noisy_source(m, eps)));
        }
    }
    for (const auto &[u, e] : oracle_cases()) {
        norm(output_distribution_partial(u, e));
        norm(brute_force_oracle(u, e).spatial());
    }
    v.require(worst <= 1e-9, std::to_string(count) + " distributions, max deviation " + sci(worst));

    // Heralded events and their complement, from separate code paths.
    double worst_split = 0.0;
    for (const Protocol &p : {protocol_cascaded_hom(), protocol_fourier(3), protocol_fourier(4)}) {
        for (double eps : {0.0, 0.05, 0.3}) {
            const PhotonEnsemble e = protocol_ensemble(p, eps);
            double heralded = 0.0;
            for (const auto &h : p.heralds) {
                try {
                    heralded += run_heralded(p.circuit, e, h).success_probability;
                } catch (const DegenerateHeraldError &) {
                }
            }
            const Distribution d = output_distribution_partial(logical_unitary(p.circuit), e);
            double complement = 0.0;
            for (size_t i = 0; i < d.size(); i++) {
                const OccupationVector &s = d.outcomes[i];
                bool any = false;
                for (const auto &h : p.heralds) {
                    bool match = s[h.output_mode] == 1;
                    for (size_t k = 0; k < h.measured_modes.size(); k++) {
                        match = match && s[h.measured_modes[k]] == h.pattern[k];
                    }
                    any = any || match;
                }
                complement += any ? 0.0 : d.probabilities[i];
            }
            worst_split = std::max(worst_split, std::abs(heralded + complement - 1.0));
        }
    }
    v.require(worst_split <= 1e-9, "herald + complement deviation " + sci(worst_split));
    return v;
}

struct CheckEntry {
    const char *name;
    double budget;
    std::function<Verdict()> run;
};

const std::vector<CheckEntry> &checks() {
    static const std::vector<CheckEntry> table = {
        {"HOM limits", 1.0, hom_limits},
        {"zero-transmission law", 10.0, zero_transmission},
        {"Fourier distillation slope", 60.0, fourier_slope},
        {"visibility identity", 0.0, visibility_identity},
        {"cascaded HOM distillation", 0.0, cascaded_hom},
        {"component counts", 5.0, component_counts},
        {"decomposition round-trips", 60.0, round_trips},
        {"mesh depth", 5.0, mesh_depth},
        {"oracle equivalence", 120.0, oracle_equivalence},
        {"probability hygiene", 0.0, probability_hygiene},
    };
    return table;
}

}  // namespace

int check_count() {
    return static_cast<int>(checks().size());
}

CheckResult run_check(int id) {
    if (id < 1 || id > check_count()) {
        throw RangeError("unknown check " + std::to_string(id));
    }
    const CheckEntry &entry = checks()[id - 1];
    CheckResult r;
    r.id = id;
    r.name = entry.name;
    r.budget_seconds = entry.budget;
    const auto start = std::chrono::steady_clock::now();
    try {
        const Verdict v = entry.run();
        r.passed = v.passed;
        r.detail = v.detail;
    } catch (const std::exception &ex) {
        r.passed = false;
        r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.budget_seconds > 0 && r.seconds > r.budget_seconds) {
        r.passed = false;
        r.detail += "; FAILED runtime " + fix(r.seconds) + " s over budget " + fix(r.budget_seconds) + " s";
    }
    return r;
}

std::vector<CheckResult> run_all_checks(bool fail_fast) {
    std::vector<CheckResult> results;
    for (int id = 1; id <= check_count(); id++) {
        results.push_back(run_check(id));
        if (fail_fast && !results.back().passed) {
            break;
        }
    }
    return results;
}

}  // namespace photonmesh
