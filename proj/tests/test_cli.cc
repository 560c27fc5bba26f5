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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string &args) {
    const std::string cmd = std::string("\"") + PHOTONMESH_CLI_PATH + "\" " + args + " 2>/dev/null";
    Run r;
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<nlohmann::json> lines(const std::string &text) {
    std::vector<nlohmann::json> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            out.push_back(nlohmann::json::parse(line));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run("").status == 2);
    CHECK(run("frobnicate").status == 2);
    CHECK(run("ztl --m 7").status == 2);
    CHECK(run("ztl --m abc").status == 2);
    CHECK(run("distill teleport --eps 0.1").status == 2);
    CHECK(run("distill hom --eps 0.1 --eps-grid 0.01,0.02,0.03").status == 2);
    CHECK(run("distill hom --eps-grid 0.01,0.02").status == 2);
    CHECK(run("distill hom --eps 2").status == 2);
    CHECK(run("decompose qft --m 6 --method qfft").status == 2);
    CHECK(run("decompose qft --method lu").status == 2);
    CHECK(run("ztl --output-format yaml").status == 2);
    CHECK(run("mesh-render hom --strategy sideways").status == 2);
    CHECK(run("decompose /nonexistent/circuit.json").status == 2);
}

TEST_CASE("ztl") {
    const Run t = run("ztl --m 3");
    CHECK(t.status == 0);
    CHECK(t.out.find("suppression holds") != std::string::npos);
    const Run r = run("ztl --m 4 --output-format records");
    CHECK(r.status == 0);
    CHECK(lines(r.out).size() == 35);
}

TEST_CASE("distill") {
    const auto hom = lines(run("distill hom --eps 0 --output-format records").out);
    REQUIRE(hom.size() == 1);
    CHECK(hom[0]["epsilon_out"].get<double>() == 0.0);
    CHECK(hom[0]["success_probability"].get<double>() == doctest::Approx(0.25));

    const Run f = run("distill fourier --m 4 --output-format records");
    CHECK(f.status == 0);
    const auto rec = lines(f.out);
    REQUIRE_FALSE(rec.empty());
    CHECK(rec.back()["record"] == "slope");
    CHECK(rec.back()["slope"].get<double>() == doctest::Approx(0.2418).epsilon(1e-3));

    const Run tree = run("distill tree --eps 0.2");
    CHECK(tree.status == 0);
    CHECK(tree.out.find("final visibility 0.77") != std::string::npos);
}

TEST_CASE("decompose") {
    const auto q = lines(run("decompose qft --n 3 --method qfft --output-format records").out);
    REQUIRE(q.size() == 1);
    CHECK(q[0]["pairs"] == 12);
    CHECK(q[0]["depth_layers"] == 3);
    CHECK(q[0]["serialization_round_trip"] == true);
    const auto c = lines(run("decompose qft --m 8 --method clements --output-format records").out);
    REQUIRE(c.size() == 1);
    CHECK(c[0]["pairs"] == 28);
    CHECK(c[0]["reconstruction_error"].get<double>() < 1e-8);

    const auto dir = std::filesystem::temp_directory_path() / "photonmesh_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "c.json").string();
    CHECK(run("decompose random --m 5 --seed 9 --method reck --circuit-path " + path).status == 0);
    const Run again = run("decompose " + path + " --method clements --output-format records");
    CHECK(again.status == 0);
    CHECK(lines(again.out)[0]["m"] == 5);
    std::ofstream(dir / "bad.json") << "{not json";
    CHECK(run("decompose " + (dir / "bad.json").string()).status == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("records are deterministic") {
    const std::string a = run("decompose random --m 4 --seed 3 --output-format records").out;
    CHECK(a == run("decompose random --m 4 --seed 3 --output-format records").out);
    CHECK(a != run("decompose random --m 4 --seed 4 --output-format records").out);
}

TEST_CASE("output path") {
    const auto path = (std::filesystem::temp_directory_path() / "photonmesh_cli_out.txt").string();
    CHECK(run("ztl --m 2 --output-path " + path).status == 0);
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str().find("QFT_2") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("mesh-render and compare") {
    const Run m = run("mesh-render mesh --rows 2 --cols 3");
    CHECK(m.status == 0);
    CHECK_FALSE(m.out.empty());
    const auto fx = lines(run("mesh-render tree-recirculating --output-format records").out);
    REQUIRE(fx.size() == 1);
    CHECK(fx[0]["layer_depth"] == 1);
    CHECK(fx[0]["valid"] == true);
    const auto hom = lines(run("mesh-render hom --output-format records").out);
    REQUIRE(hom.size() == 1);
    CHECK(hom[0]["layer_depth"] == 1);
    const Run cmp = run("compare qfft --n 2 --output-format records");
    CHECK(cmp.status == 0);
    CHECK_FALSE(lines(cmp.out).empty());
}
