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

// photonmesh command-line tool. Exit codes: 0 success, 1 a verification
// failed, 2 usage error.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "photonmesh/circuits.h"
#include "photonmesh/compare.h"
#include "photonmesh/distillation.h"
#include "photonmesh/errors.h"
#include "photonmesh/mesh.h"
#include "photonmesh/records.h"
#include "photonmesh/verification.h"

namespace pm = photonmesh;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<int> m;
    std::optional<int> n;
    std::optional<double> eps;
    std::vector<double> eps_grid;
    std::uint64_t seed = 1;
    std::string method = "clements";
    std::string strategy = "recirculating";
    std::string format = "table";
    std::string output_path;
    std::string circuit_path;
    std::string source;
    std::string target;
    int rows = 2;
    int cols = 2;
    bool keep_going = false;
};

bool records(const Options &o) {
    return o.format == "records";
}

std::string fmt(const char *format, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, a);
    return buf;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write " + path);
    }
    out << text;
}

std::string record_line(nlohmann::ordered_json fields, const char *kind) {
    nlohmann::ordered_json j = {{"schema_version", pm::kRecordSchemaVersion}, {"record", kind}};
    for (auto &[k, v] : fields.items()) {
        j[k] = v;
    }
    return j.dump();
}

int cmd_ztl(const Options &o, std::string &out) {
    const int m = o.m.value_or(4);
    if (m < 2 || m > 6) {
        throw UsageError("ztl requires 2 <= --m <= 6");
    }
    const pm::SuppressionReport r = pm::verify_suppression(m);
    if (records(o)) {
        for (const auto &line : pm::suppression_records(r)) {
            out += line + "\n";
        }
    } else {
        out += "QFT_" + std::to_string(m) + " with input " + pm::OccupationVector::ones(m, m).to_string() + "\n";
        char line[160];
        std::snprintf(line, sizeof line, "%-20s %-10s %18s %18s\n", "outcome", "status", "indistinguishable",
                      "distinguishable");
        out += line;
        for (const auto &e : r.entries) {
            std::snprintf(line, sizeof line, "%-20s %-10s %18.3e %18.3e\n", e.outcome.to_string().c_str(),
                          e.allowed ? "allowed" : "forbidden", e.indistinguishable, e.distinguishable);
            out += line;
        }
        out += "largest forbidden probability: " + fmt("%.3e", r.max_forbidden_indistinguishable) +
               " (identical), " + fmt("%.4f", r.max_forbidden_distinguishable) + " (distinguishable)\n";
        out += std::string("suppression ") + (r.passed() ? "holds" : "FAILS") + "\n";
    }
    return r.passed() ? kOk : kVerificationFailed;
}

std::vector<double> epsilons(const Options &o) {
    if (o.eps && !o.eps_grid.empty()) {
        throw UsageError("give either --eps or --eps-grid");
    }
    if (o.eps) {
        if (*o.eps < 0.0 || *o.eps > 1.0) {
            throw UsageError("--eps must lie in [0, 1]");
        }
        return {*o.eps};
    }
    return o.eps_grid.empty() ? pm::default_epsilon_grid() : o.eps_grid;
}

std::string distill_header() {
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %8s %12s %12s %12s %10s\n", "herald", "eps", "success", "eps_out",
                  "V_out", "allowed");
    return line;
}

std::string distill_row(const pm::DistillationOutcome &d, bool allowed) {
    char line[200];
    std::snprintf(line, sizeof line, "%-22s %8.4f %12.6f %12.6e %12.6f %10s\n", pm::herald_label(d.herald).c_str(),
                  d.epsilon_in, d.success_probability, d.epsilon_out, d.visibility_out, allowed ? "yes" : "no");
    return line;
}

int distill_tree(const Options &o, std::string &out) {
    const pm::TreeProtocol t = pm::protocol_tree();
    for (double eps : epsilons(o)) {
        const pm::TreeOutcome r = pm::run_tree(t, eps);
        if (records(o)) {
            out += pm::distillation_record("tree", 6, r.first, std::nullopt) + "\n";
            out += pm::distillation_record("tree", 6, r.second, std::nullopt) + "\n";
            out += record_line({{"protocol", "tree"},
                                {"epsilon_in", eps},
                                {"success_probability", r.success_probability},
                                {"coincidence", r.coincidence},
                                {"final_visibility", r.final_visibility},
                                {"raw_visibility", r.raw_visibility}},
                               "tree") +
                   "\n";
        } else {
            out += "eps " + fmt("%.4f", eps) + ": success " + fmt("%.6f", r.success_probability) + ", eps_out " +
                   fmt("%.6e", r.first.epsilon_out) + ", final visibility " + fmt("%.6f", r.final_visibility) +
                   " vs raw " + fmt("%.6f", r.raw_visibility) + "\n";
        }
    }
    return kOk;
}

int cmd_distill(const Options &o, std::string &out) {
    if (o.target == "tree") {
        return distill_tree(o, out);
    }
    pm::Protocol p;
    int m = 0;
    if (o.target == "hom") {
        p = pm::protocol_cascaded_hom();
        m = 3;
    } else if (o.target == "fourier") {
        m = o.m.value_or(4);
        if (m < 2 || (m > 6 && m != 8)) {
            throw UsageError("fourier requires 2 <= --m <= 6 or --m 8");
        }
        p = pm::protocol_fourier(m);
    } else {
        throw UsageError("unknown protocol '" + o.target + "'; expected hom, tree or fourier");
    }
    const std::vector<double> grid = epsilons(o);

    if (grid.size() == 1) {
        if (!records(o)) {
            out += distill_header();
        }
        for (size_t h = 0; h < p.heralds.size(); h++) {
            try {
                const auto d = pm::run_heralded(p.circuit, pm::protocol_ensemble(p, grid[0]), p.heralds[h]);
                out += records(o) ? pm::distillation_record(p.name, m, d, std::nullopt) + "\n"
                                  : distill_row(d, p.herald_allowed[h]);
            } catch (const pm::DegenerateHeraldError &) {
                if (!records(o)) {
                    out += pm::herald_label(p.heralds[h]) + "  degenerate (probability < 1e-15)\n";
                }
            }
        }
        return kOk;
    }

    try {
        const std::vector<pm::SlopeFit> fits = pm::herald_slopes(p, grid);
        if (!records(o)) {
            out += distill_header();
        }
        for (const auto &f : fits) {
            for (const auto &d : f.outcomes) {
                out += records(o) ? pm::distillation_record(p.name, m, d, f.slope) + "\n"
                                  : distill_row(d, p.herald_allowed[f.herald_index]);
            }
        }
        const pm::SlopeFit best = pm::error_slope(p, grid);
        if (!records(o)) {
            out += "\nslopes (eps_out = a eps + b eps^2):\n";
            for (const auto &f : fits) {
                out += "  " + pm::herald_label(p.heralds[f.herald_index]) + "  a = " + fmt("%.4f", f.slope) +
                       "  linear = " + fmt("%.4f", f.linear_slope) +
                       (p.herald_allowed[f.herald_index] ? "" : "  (forbidden)") + "\n";
            }
            out += "best allowed herald " + pm::herald_label(p.heralds[best.herald_index]) + ": slope " +
                   fmt("%.4f", best.slope) + "\n";
        } else {
            out += record_line({{"protocol", p.name},
                                {"m", m},
                                {"herald", pm::herald_label(p.heralds[best.herald_index])},
                                {"slope", best.slope},
                                {"linear_slope", best.linear_slope},
                                {"epsilons", best.epsilons},
                                {"ratios", best.ratios}},
                               "slope") +
                   "\n";
        }
    } catch (const pm::RangeError &ex) {
        throw UsageError(ex.what());
    }
    return kOk;
}

int cmd_decompose(const Options &o, std::string &out) {
    const std::string source = o.source.empty() ? "qft" : o.source;
    pm::ComplexMatrix u;
    int m = o.m.value_or(o.n ? (1 << *o.n) : 4);
    if (o.n && (*o.n < 1 || *o.n > 4)) {
        throw UsageError("--n must lie in [1, 4]");
    }
    if (m < 1 || m > 16) {
        throw UsageError("--m must lie in [1, 16]");
    }
    if (source == "qft") {
        u = pm::qft_matrix(m);
    } else if (source == "random") {
        u = pm::random_unitary(m, o.seed);
    } else {
        u = pm::circuit_to_unitary(pm::parse_circuit(read_file(source)));
        m = static_cast<int>(u.rows());
    }

    pm::Circuit c;
    double error = 0.0;
    double tolerance = 1e-8;
    if (o.method == "reck") {
        c = pm::reck_decompose(u);
        error = pm::max_abs_diff(pm::circuit_to_unitary(c), u);
    } else if (o.method == "clements") {
        c = pm::clements_decompose(u);
        error = pm::max_abs_diff(pm::circuit_to_unitary(c), u);
    } else if (o.method == "qfft") {
        if (!std::has_single_bit(static_cast<unsigned>(m)) || m < 2) {
            throw UsageError("qfft needs a power-of-two mode count, got " + std::to_string(m));
        }
        c = pm::cooley_tukey_qfft(std::countr_zero(static_cast<unsigned>(m)));
        // Up to the stored input permutation and a global phase.
        error = pm::phase_insensitive_distance(pm::logical_unitary(c), u);
        tolerance = 1e-10;
    } else {
        throw UsageError("unknown method '" + o.method + "'; expected reck, clements or qfft");
    }
    const pm::ComponentReport rep = pm::component_report(c);
    const bool ok = error <= tolerance;
    const std::string text = pm::serialize_circuit(c);
    if (!o.circuit_path.empty()) {
        write_file(o.circuit_path, text);
    }
    const bool round_trip = pm::parse_circuit(text) == c;
    if (records(o)) {
        out += record_line({{"source", source},
                            {"m", m},
                            {"method", o.method},
                            {"pairs", rep.pairs},
                            {"depth_layers", rep.depth_layers},
                            {"reconstruction_error", error},
                            {"serialization_round_trip", round_trip}},
                           "decomposition") +
               "\n";
    } else {
        out += "source " + source + ", m " + std::to_string(m) + ", method " + o.method + "\n";
        out += "pairs " + std::to_string(rep.pairs) + ", depth layers " + std::to_string(rep.depth_layers) + "\n";
        out += "max reconstruction error " + fmt("%.3e", error) + (ok ? "" : " (FAILS)") + "\n";
        out += std::string("serialization round trip ") + (round_trip ? "exact" : "FAILS") + "\n";
        if (o.circuit_path.empty()) {
            out += text;
        } else {
            out += "circuit written to " + o.circuit_path + "\n";
        }
    }
    return ok && round_trip ? kOk : kVerificationFailed;
}

// Named protocol circuit, or a circuit file.
pm::Circuit named_circuit(const std::string &name, const Options &o) {
    if (name == "hom") {
        return pm::protocol_cascaded_hom().circuit;
    }
    if (name == "tree") {
        return pm::protocol_tree().circuit;
    }
    if (name == "qfft") {
        const int n = o.n.value_or(2);
        if (n < 1 || n > 4) {
            throw UsageError("--n must lie in [1, 4]");
        }
        return pm::cooley_tukey_qfft(n);
    }
    return pm::parse_circuit(read_file(name));
}

int cmd_compare(const Options &o, std::string &out) {
    pm::ComparisonReport r;
    if (o.source.empty() || o.source == "qft") {
        const int m = o.m.value_or(4);
        if (m < 2 || m > 8) {
            throw UsageError("compare requires 2 <= --m <= 8");
        }
        r = pm::compare_architectures(pm::qft_matrix(m));
    } else {
        r = pm::compare_architectures(named_circuit(o.source, o), o.source);
    }
    if (records(o)) {
        for (const auto &line : pm::comparison_records(r)) {
            out += line + "\n";
        }
    } else {
        out += pm::format_comparison(r);
    }
    return kOk;
}

int cmd_mesh_render(const Options &o, std::string &out) {
    const std::string target = o.target.empty() ? "mesh" : o.target;
    if (target == "mesh") {
        if (o.rows < 1 || o.cols < 1) {
            throw UsageError("--rows and --cols must be at least 1");
        }
        const pm::BricksMesh mesh = pm::build_bricks_mesh(o.rows, o.cols);
        if (records(o)) {
            out += record_line({{"rows", mesh.rows()},
                                {"cols", mesh.cols()},
                                {"units", mesh.units().size()},
                                {"ports", mesh.ports().size()},
                                {"mesh", nlohmann::json::parse(pm::serialize_mesh(mesh))}},
                               "mesh") +
                   "\n";
        } else {
            out += pm::render_mesh(mesh);
        }
        return kOk;
    }
    pm::Placement p;
    const auto names = pm::fixture_names();
    if (std::find(names.begin(), names.end(), target) != names.end()) {
        p = pm::fixture_placement(target);
    } else {
        pm::Strategy s;
        try {
            s = pm::parse_strategy(o.strategy);
        } catch (const pm::ParseError &ex) {
            throw UsageError(ex.what());
        }
        p = pm::place_circuit_auto(named_circuit(target, o), s);
    }
    const std::string why = pm::placement_violation(p);
    const pm::PlacementMetrics m = pm::placement_metrics(p);
    if (records(o)) {
        out += record_line({{"target", target},
                            {"strategy", std::string(pm::strategy_name(p.strategy))},
                            {"rows", p.mesh.rows()},
                            {"cols", p.mesh.cols()},
                            {"active_mzis", m.active_mzis},
                            {"optical_depth", m.optical_depth},
                            {"layer_depth", m.layer_depth},
                            {"valid", why.empty()},
                            {"placement", nlohmann::json::parse(pm::serialize_placement(p))}},
                           "placement") +
               "\n";
    } else {
        out += pm::render_mesh(p);
        if (!why.empty()) {
            out += "INVALID: " + why + "\n";
        }
    }
    return why.empty() ? kOk : kVerificationFailed;
}

int cmd_verify_all(const Options &o, std::string &out) {
    bool all = true;
    for (int id = 1; id <= pm::check_count(); id++) {
        const pm::CheckResult r = pm::run_check(id);
        all = all && r.passed;
        if (records(o)) {
            out += record_line({{"check", r.id},
                                {"name", r.name},
                                {"passed", r.passed},
                                {"seconds", r.seconds},
                                {"detail", r.detail}},
                               "check") +
                   "\n";
        } else {
            out += std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + " (" +
                   fmt("%.2f", r.seconds) + " s): " + r.detail + "\n";
        }
        if (!r.passed && !o.keep_going) {
            out += records(o) ? "" : "stopping after the first failure\n";
            break;
        }
    }
    if (!records(o)) {
        out += all ? "all checks passed\n" : "verification FAILED\n";
    }
    return all ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Photonic distillation and mesh-placement toolkit"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--output-format", o.format, "table or records")
            ->check(CLI::IsMember({"table", "records"}));
        sub->add_option("--output-path", o.output_path, "Write the report here instead of stdout");
    };

    CLI::App *ztl = app.add_subcommand("ztl", "Zero-transmission table for QFT_m");
    ztl->add_option("--m", o.m, "Mode count, 2..6");
    common(ztl);

    CLI::App *distill = app.add_subcommand("distill", "Run a distillation protocol");
    distill->add_option("protocol", o.target, "hom, tree or fourier")->required();
    distill->add_option("--m", o.m, "Fourier mode count");
    distill->add_option("--eps", o.eps, "Single input error");
    distill->add_option("--eps-grid", o.eps_grid, "Comma-separated grid for a slope fit")->delimiter(',');
    common(distill);

    CLI::App *decompose = app.add_subcommand("decompose", "Decompose a unitary into a circuit");
    decompose->add_option("source", o.source, "qft, random or a circuit file");
    decompose->add_option("--m", o.m, "Mode count");
    decompose->add_option("--n", o.n, "Qubit count; sets m = 2^n");
    decompose->add_option("--method", o.method, "reck, clements or qfft");
    decompose->add_option("--seed", o.seed, "Seed for random unitaries");
    decompose->add_option("--circuit-path", o.circuit_path, "Write the circuit file here");
    common(decompose);

    CLI::App *compare = app.add_subcommand("compare", "Compare architectures and mesh placements");
    compare->add_option("source", o.source, "qft (with --m), hom, tree, qfft (with --n) or a circuit file");
    compare->add_option("--m", o.m, "Mode count for qft");
    compare->add_option("--n", o.n, "Qubit count for qfft");
    common(compare);

    CLI::App *render = app.add_subcommand("mesh-render", "Draw a mesh or a placement");
    render->add_option("target", o.target, "mesh, a fixture name, hom, tree, qfft or a circuit file");
    render->add_option("--rows", o.rows, "Rows for an empty mesh");
    render->add_option("--cols", o.cols, "Columns for an empty mesh");
    render->add_option("--n", o.n, "Qubit count for qfft");
    render->add_option("--strategy", o.strategy, "feed-forward or recirculating");
    common(render);

    CLI::App *verify = app.add_subcommand("verify-all", "Run every reproduction check");
    verify->add_flag("--keep-going", o.keep_going, "Run the remaining checks after a failure");
    common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    std::string out;
    int status = kOk;
    try {
        if (ztl->parsed()) {
            status = cmd_ztl(o, out);
        } else if (distill->parsed()) {
            status = cmd_distill(o, out);
        } else if (decompose->parsed()) {
            status = cmd_decompose(o, out);
        } else if (compare->parsed()) {
            status = cmd_compare(o, out);
        } else if (render->parsed()) {
            status = cmd_mesh_render(o, out);
        } else {
            status = cmd_verify_all(o, out);
        }
    } catch (const UsageError &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kUsage;
    } catch (const pm::ParseError &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kUsage;
    } catch (const pm::RangeError &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kUsage;
    } catch (const std::exception &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kVerificationFailed;
    }

    if (o.output_path.empty()) {
        std::cout << out;
    } else {
        try {
            write_file(o.output_path, out);
        } catch (const UsageError &ex) {
            std::cerr << "error: " << ex.what() << "\n";
            return kUsage;
        }
    }
    return status;
}
