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

#include "doctest.h"
#include "photonmesh/circuits.h"
#include "photonmesh/distillation.h"
#include "photonmesh/errors.h"
#include "photonmesh/oracle.h"

using namespace photonmesh;

TEST_CASE("zero-transmission rule") {
    CHECK(ztl_allowed({1, 1, 1}));
    CHECK(ztl_allowed({3, 0, 0}));
    CHECK_FALSE(ztl_allowed({2, 1, 0}));
    CHECK(ztl_allowed({0, 2, 0, 2}));
    CHECK_FALSE(ztl_allowed({2, 0, 0, 2}));
    CHECK_FALSE(ztl_allowed({1, 1, 1, 1}));
    for (int m = 2; m <= 5; m++) {
        const SuppressionReport r = verify_suppression(m);
        CAPTURE(m);
        CHECK(r.suppressed());
        CHECK(r.distinguishable_violates());
        for (const auto &e : r.entries) {
            CHECK(e.allowed == ztl_allowed(e.outcome));
        }
    }
    CHECK_THROWS_AS(verify_suppression(1), RangeError);
    CHECK_THROWS_AS(verify_suppression(7), RangeError);
}

TEST_CASE("herald labels") {
    CHECK(herald_label({{2, 3}, {0, 1}, 0}) == "(0,1)@[3,4]->1");
}

TEST_CASE("cascaded HOM closed form") {
    const Protocol p = protocol_cascaded_hom();
    REQUIRE(p.heralds.size() == 1);
    for (double eps : {0.0, 0.01, 0.1, 0.3, 1.0}) {
        const DistillationOutcome o = run_heralded(p.circuit, protocol_ensemble(p, eps), p.heralds[0]);
        const double q = 1 + (1 - eps) * (1 - eps);
        CAPTURE(eps);
        CHECK(o.success_probability == doctest::Approx(q / 8).epsilon(1e-12));
        CHECK(o.epsilon_out == doctest::Approx(eps / q).epsilon(1e-12));
        CHECK(o.visibility_out == doctest::Approx((1 - eps) * (1 - o.epsilon_out)).epsilon(1e-12));
    }
    const DistillationOutcome o = run_heralded(p.circuit, protocol_ensemble(p, 0.1), p.heralds[0]);
    CHECK(o.success_probability == doctest::Approx(0.22625).epsilon(1e-9));
    CHECK(o.epsilon_out == doctest::Approx(0.0552486).epsilon(1e-6));
}

TEST_CASE("canonical path agrees with the oracle") {
    const Protocol p = protocol_cascaded_hom();
    const PhotonEnsemble ens = protocol_ensemble(p, 0.2);
    const DistillationOutcome fast = run_heralded(p.circuit, ens, p.heralds[0]);
    const ConditionalState slow = brute_force_oracle(circuit_to_unitary(p.circuit), ens)
                                      .condition(p.heralds[0].measured_modes, p.heralds[0].pattern, 0);
    CHECK(fast.success_probability == doctest::Approx(slow.probability).epsilon(1e-12));
    CHECK(fast.epsilon_out == doctest::Approx(1 - slow.state.population(0)).epsilon(1e-12));
}

TEST_CASE("identity protocol leaves the error unchanged") {
    const Protocol p = protocol_identity();
    const DistillationOutcome o = run_heralded(p.circuit, protocol_ensemble(p, 0.07), p.heralds[0]);
    CHECK(o.success_probability == doctest::Approx(1.0));
    CHECK(o.epsilon_out == doctest::Approx(0.07).epsilon(1e-12));
}

TEST_CASE("bad heralds") {
    const Protocol p = protocol_cascaded_hom();
    const PhotonEnsemble ens = protocol_ensemble(p, 0.1);
    CHECK_THROWS_AS(run_heralded(p.circuit, ens, HeraldSpec{{1, 2}, {0, 1}, 1}), ValidationError);
    CHECK_THROWS_AS(run_heralded(p.circuit, ens, HeraldSpec{{1, 2}, {0}, 0}), ValidationError);
    CHECK_THROWS_AS(run_heralded(p.circuit, ens, HeraldSpec{{1, 2}, {3, 3}, 0}), ValidationError);
    CHECK_THROWS_AS(run_heralded(p.circuit, protocol_ensemble(p, 0.0), HeraldSpec{{1, 2}, {1, 0}, 0}),
                    DegenerateHeraldError);
}

TEST_CASE("Fourier protocol on four modes") {
    const Protocol p = protocol_fourier(4);
    CHECK(p.heralds.size() == 10);
    const SlopeFit best = error_slope(p, default_epsilon_grid());
    const std::string label = herald_label(p.heralds[best.herald_index]);
    CHECK((label == "(2,1,0)@[1,2,3]->4" || label == "(0,1,2)@[1,2,3]->4"));
    CHECK(p.herald_allowed[best.herald_index]);
    CHECK(best.slope == doctest::Approx(0.2418).epsilon(1e-3));
    CHECK(best.linear_slope > best.slope);
    CHECK(best.slope < 0.5);
    CHECK(best.outcomes.front().success_probability == doctest::Approx(0.124626).epsilon(1e-5));
}

TEST_CASE("Fourier conditional states match the oracle") {
    const Protocol p = protocol_fourier(4);
    const SlopeFit best = error_slope(p, default_epsilon_grid());
    const HeraldSpec &h = p.heralds[best.herald_index];
    const ComplexMatrix u = circuit_to_unitary(p.circuit);
    const double frozen[] = {0.25125, 0.26269, 0.39379};
    const double eps[] = {1e-3, 1e-2, 1e-1};
    for (int i = 0; i < 3; i++) {
        const PhotonEnsemble ens = protocol_ensemble(p, eps[i]);
        const ConditionalState c = brute_force_oracle(u, ens).condition(h.measured_modes, h.pattern, h.output_mode);
        const DistillationOutcome o = run_heralded(p.circuit, ens, h);
        CHECK(o.epsilon_out == doctest::Approx(1 - c.state.population(0)).epsilon(1e-10));
        CHECK(o.epsilon_out / eps[i] == doctest::Approx(frozen[i]).epsilon(1e-4));
    }
}

TEST_CASE("Fourier on two modes has no allowed herald") {
    const Protocol p = protocol_fourier(2);
    CHECK_THROWS_AS(error_slope(p, default_epsilon_grid()), ValidationError);
    CHECK_THROWS_AS(protocol_fourier(7), RangeError);
}

TEST_CASE("Fourier on three modes") {
    const SlopeFit f = error_slope(protocol_fourier(3), default_epsilon_grid());
    CHECK(f.slope == doctest::Approx(0.3284).epsilon(1e-3));
}

TEST_CASE("slope grid checks") {
    const Protocol p = protocol_cascaded_hom();
    CHECK_THROWS_AS(herald_slope(p, 0, {0.01, 0.02}), RangeError);
    CHECK_THROWS_AS(herald_slope(p, 0, {0.0, 0.01, 0.02}), RangeError);
    CHECK_THROWS_AS(herald_slope(p, 0, {0.01, 0.02, 0.5}), RangeError);
    const SlopeFit f = herald_slope(p, 0, default_epsilon_grid());
    CHECK(f.slope == doctest::Approx(0.4989).epsilon(1e-3));
    CHECK(f.ratios.size() == default_epsilon_grid().size());
}

TEST_CASE("visibility identity") {
    const Protocol p = protocol_fourier(3);
    for (double eps : {0.01, 0.1}) {
        for (const auto &h : p.heralds) {
            try {
                const DistillationOutcome o = run_heralded(p.circuit, protocol_ensemble(p, eps), h);
                CHECK(o.visibility_out == doctest::Approx((1 - eps) * (1 - o.epsilon_out)).epsilon(1e-10));
            } catch (const DegenerateHeraldError &) {
            }
        }
    }
}

TEST_CASE("tree of two cascaded stages") {
    const TreeProtocol t = protocol_tree();
    const TreeOutcome o = run_tree(t, 0.2);
    CHECK(o.first.epsilon_out == doctest::Approx(0.121951).epsilon(1e-5));
    CHECK(o.second.epsilon_out == doctest::Approx(o.first.epsilon_out));
    CHECK(o.coincidence == doctest::Approx(0.114515).epsilon(1e-5));
    CHECK(o.final_visibility == doctest::Approx(0.77097).epsilon(1e-4));
    CHECK(o.final_visibility ==
          doctest::Approx(hom_visibility(o.first.conditional_state, o.second.conditional_state)).epsilon(1e-10));
    CHECK(o.raw_visibility == doctest::Approx(0.64));
    CHECK(o.final_visibility > o.raw_visibility);
    CHECK(run_tree(t, 0.0).coincidence == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(protocol_tree(3), RangeError);
}

TEST_CASE("noise emulation circuit") {
    const Circuit c = noise_emulation_circuit(0.1, 0.2);
    CHECK(c.mode_count() == 3);
    CHECK(c.auxiliary_modes == std::vector<int>{1, 2});
    const ComplexMatrix u = circuit_to_unitary(c);
    CHECK(std::norm(u(1, 0)) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(noise_emulation_circuit(-0.1, 0.0), RangeError);
    CHECK_THROWS_AS(noise_emulation_circuit(0.1, 1.5), RangeError);
}
