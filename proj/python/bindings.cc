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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>

#include "photonmesh/circuits.h"
#include "photonmesh/compare.h"
#include "photonmesh/distillation.h"
#include "photonmesh/errors.h"
#include "photonmesh/fock.h"
#include "photonmesh/interference.h"
#include "photonmesh/mesh.h"
#include "photonmesh/oracle.h"
#include "photonmesh/verification.h"

namespace py = pybind11;
namespace pm = photonmesh;

namespace {

pm::OccupationVector occupation(const std::vector<int> &counts) {
    return pm::OccupationVector(counts);
}

py::dict to_dict(const pm::Distribution &d) {
    py::dict out;
    for (size_t i = 0; i < d.size(); i++) {
        out[py::tuple(py::cast(d.outcomes[i].counts()))] = d.probabilities[i];
    }
    return out;
}

py::dict outcome_dict(const pm::DistillationOutcome &o) {
    py::dict d;
    d["herald"] = pm::herald_label(o.herald);
    d["epsilon_in"] = o.epsilon_in;
    d["success_probability"] = o.success_probability;
    d["epsilon_out"] = o.epsilon_out;
    d["visibility_out"] = o.visibility_out;
    d["conditional_state"] = o.conditional_state.density();
    return d;
}

pm::Protocol protocol_by_name(const std::string &name, int m) {
    if (name == "hom") {
        return pm::protocol_cascaded_hom();
    }
    if (name == "fourier") {
        return pm::protocol_fourier(m);
    }
    if (name == "identity") {
        return pm::protocol_identity();
    }
    throw pm::RangeError("unknown protocol " + name);
}

}  // namespace

PYBIND11_MODULE(_photonmesh, m) {
    m.doc() = "Partially distinguishable photon interference, distillation and mesh placement";

    py::register_exception<pm::DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<pm::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<pm::ConservationError>(m, "ConservationError", PyExc_ValueError);
    py::register_exception<pm::RangeError>(m, "RangeError", PyExc_ValueError);
    py::register_exception<pm::LayoutError>(m, "LayoutError", PyExc_ValueError);
    py::register_exception<pm::CapacityError>(m, "CapacityError", PyExc_RuntimeError);
    py::register_exception<pm::DegenerateHeraldError>(m, "DegenerateHeraldError", PyExc_RuntimeError);
    py::register_exception<pm::ParseError>(m, "ParseError", PyExc_ValueError);

    m.def("permanent", &pm::permanent, py::arg("matrix"));
    m.def("is_unitary", &pm::is_unitary, py::arg("matrix"), py::arg("tol") = pm::kUnitaryTolerance);
    m.def("random_unitary", &pm::random_unitary, py::arg("m"), py::arg("seed"));
    m.def("qft_matrix", &pm::qft_matrix, py::arg("m"));

    m.def(
        "transition_amplitude",
        [](const pm::ComplexMatrix &u, const std::vector<int> &r, const std::vector<int> &s) {
            return pm::transition_amplitude(u, occupation(r), occupation(s));
        },
        py::arg("u"), py::arg("r"), py::arg("s"));
    m.def(
        "output_distribution",
        [](const pm::ComplexMatrix &u, const std::vector<int> &r) {
            return to_dict(pm::output_distribution(u, occupation(r)));
        },
        py::arg("u"), py::arg("r"));
    m.def(
        "noisy_distribution",
        [](const pm::ComplexMatrix &u, double eps, std::vector<int> r) {
            const pm::OccupationVector input = occupation(r);
            return to_dict(pm::output_distribution_partial(u, pm::make_noisy_source(input.photons(), eps, input)));
        },
        py::arg("u"), py::arg("epsilon"), py::arg("r"),
        "Output statistics for rho(eps) photons placed per r.");
    m.def(
        "oracle_distribution",
        [](const pm::ComplexMatrix &u, double eps, std::vector<int> r) {
            const pm::OccupationVector input = occupation(r);
            return to_dict(pm::brute_force_oracle(u, pm::make_noisy_source(input.photons(), eps, input)).spatial());
        },
        py::arg("u"), py::arg("epsilon"), py::arg("r"));
    m.def(
        "hom_visibility",
        [](const pm::ComplexMatrix &a, const pm::ComplexMatrix &b) {
            return pm::hom_visibility(pm::InternalState(a), pm::InternalState(b));
        },
        py::arg("rho_a"), py::arg("rho_b"));

    py::class_<pm::Circuit>(m, "Circuit")
        .def_property_readonly("mode_count", &pm::Circuit::mode_count)
        .def_readwrite("label", &pm::Circuit::label)
        .def_readonly("input_permutation", &pm::Circuit::input_permutation)
        .def("unitary", [](const pm::Circuit &c) { return pm::circuit_to_unitary(c); })
        .def("logical_unitary", [](const pm::Circuit &c) { return pm::logical_unitary(c); })
        .def("pairs", [](const pm::Circuit &c) { return pm::component_report(c).pairs; })
        .def("depth_layers", [](const pm::Circuit &c) { return pm::component_report(c).depth_layers; })
        .def("to_json", &pm::serialize_circuit)
        .def_static("from_json", [](const std::string &text) { return pm::parse_circuit(text); })
        .def("__eq__", [](const pm::Circuit &a, const pm::Circuit &b) { return a == b; });

    m.def("reck_decompose", &pm::reck_decompose, py::arg("u"));
    m.def("clements_decompose", &pm::clements_decompose, py::arg("u"));
    m.def("cooley_tukey_qfft", &pm::cooley_tukey_qfft, py::arg("n_qubits"));

    m.def(
        "ztl_allowed", [](const std::vector<int> &s) { return pm::ztl_allowed(occupation(s)); }, py::arg("s"));
    m.def(
        "verify_suppression",
        [](int mm) {
            const pm::SuppressionReport r = pm::verify_suppression(mm);
            py::dict d;
            d["m"] = r.m;
            d["max_forbidden_indistinguishable"] = r.max_forbidden_indistinguishable;
            d["max_forbidden_distinguishable"] = r.max_forbidden_distinguishable;
            d["passed"] = r.passed();
            return d;
        },
        py::arg("m"));
    m.def(
        "distill",
        [](const std::string &name, double eps, int mm) {
            const pm::Protocol p = protocol_by_name(name, mm);
            py::list out;
            for (const auto &h : p.heralds) {
                try {
                    out.append(outcome_dict(pm::run_heralded(p.circuit, pm::protocol_ensemble(p, eps), h)));
                } catch (const pm::DegenerateHeraldError &) {
                }
            }
            return out;
        },
        py::arg("protocol"), py::arg("epsilon"), py::arg("m") = 4,
        "Heralded outcomes of 'hom', 'fourier' or 'identity'; degenerate heralds are skipped.");
    m.def(
        "error_slope",
        [](const std::string &name, std::vector<double> grid, int mm) {
            const pm::Protocol p = protocol_by_name(name, mm);
            const pm::SlopeFit f = pm::error_slope(p, grid.empty() ? pm::default_epsilon_grid() : grid);
            py::dict d;
            d["herald"] = pm::herald_label(p.heralds[f.herald_index]);
            d["slope"] = f.slope;
            d["linear_slope"] = f.linear_slope;
            d["ratios"] = f.ratios;
            return d;
        },
        py::arg("protocol"), py::arg("grid") = std::vector<double>{}, py::arg("m") = 4);
    m.def(
        "run_tree",
        [](double eps) {
            const pm::TreeOutcome t = pm::run_tree(pm::protocol_tree(), eps);
            py::dict d;
            d["success_probability"] = t.success_probability;
            d["epsilon_out"] = t.first.epsilon_out;
            d["coincidence"] = t.coincidence;
            d["final_visibility"] = t.final_visibility;
            d["raw_visibility"] = t.raw_visibility;
            return d;
        },
        py::arg("epsilon"));
    m.def("protocol_circuit", [](const std::string &name) {
        if (name == "tree") {
            return pm::protocol_tree().circuit;
        }
        return protocol_by_name(name, 4).circuit;
    });

    m.def(
        "place",
        [](const pm::Circuit &c, const std::string &strategy) {
            const pm::Placement p = pm::place_circuit_auto(c, pm::parse_strategy(strategy));
            const pm::PlacementMetrics mt = pm::placement_metrics(p);
            py::dict d;
            d["rows"] = p.mesh.rows();
            d["cols"] = p.mesh.cols();
            d["active_mzis"] = mt.active_mzis;
            d["optical_depth"] = mt.optical_depth;
            d["layer_depth"] = mt.layer_depth;
            d["valid"] = pm::placement_violation(p).empty();
            d["render"] = pm::render_mesh(p);
            d["json"] = pm::serialize_placement(p);
            return d;
        },
        py::arg("circuit"), py::arg("strategy") = "recirculating");
    m.def("fixture_names", &pm::fixture_names);
    m.def(
        "fixture_metrics",
        [](const std::string &name) {
            const pm::PlacementMetrics mt = pm::placement_metrics(pm::fixture_placement(name));
            return std::make_tuple(mt.active_mzis, mt.optical_depth, mt.layer_depth);
        },
        py::arg("name"));
    m.def(
        "render_mesh", [](int rows, int cols) { return pm::render_mesh(pm::build_bricks_mesh(rows, cols)); },
        py::arg("rows"), py::arg("cols"));

    m.def(
        "compare_architectures",
        [](const pm::ComplexMatrix &u) {
            py::list rows;
            for (const auto &r : pm::compare_architectures(u).rows) {
                py::dict d;
                d["architecture"] = r.architecture;
                d["strategy"] = std::string(pm::strategy_name(r.strategy));
                d["pairs"] = r.pairs;
                d["depth_layers"] = r.depth_layers;
                d["placed"] = r.placed;
                d["mesh_active_mzis"] = r.mesh_active_mzis;
                d["mesh_depth"] = r.mesh_depth;
                d["mesh_layers"] = r.mesh_layers;
                rows.append(d);
            }
            return rows;
        },
        py::arg("u"));

    m.def("check_count", &pm::check_count);
    m.def(
        "run_check",
        [](int id) {
            const pm::CheckResult r = pm::run_check(id);
            return std::make_tuple(r.passed, r.name, r.detail);
        },
        py::arg("id"));
}
