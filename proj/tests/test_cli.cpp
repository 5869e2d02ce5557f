// Copyright 2026 The fcqst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <openssl/evp.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Run run(const std::string& args) {
    const std::string err_path = "cli_stderr.txt";
    const std::string cmd = std::string(FCQST_CLI_PATH) + " " + args + " 2>" + err_path;
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    return r;
}

std::string sha256(const std::string& path) {
    const std::string data = slurp(path);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::string hex;
    char h[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(h, sizeof h, "%02x", md[i]);
        hex += h;
    }
    return hex;
}

void check_manifest(const std::string& primary, std::size_t outputs) {
    const auto m = json::parse(slurp(primary + ".manifest.json"));
    CHECK(m.contains("command_line"));
    CHECK(m.contains("tool_version"));
    CHECK(m.contains("seeds"));
    CHECK(m["wall_time_s"].get<double>() >= 0.0);
    REQUIRE(m["outputs"].size() == outputs);
    for (const auto& o : m["outputs"]) CHECK(o["sha256"] == sha256(o["path"].get<std::string>()));
}

}  // namespace

TEST_CASE("verify") {
    auto r = run("verify --n 8 --j0 1 --hamiltonian opt");
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["fidelity"].get<double>() >= 1.0 - 1e-10);
    CHECK(j["pass"] == true);
    CHECK(j["boundary"]["valid"] == true);
    CHECK(j["time"].get<double>() == doctest::Approx(std::numbers::pi / 4));

    r = run("verify --n 8 --hamiltonian opt-prime");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["pass"] == true);

    r = run("verify --n 5 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.starts_with("n,j0,hamiltonian,time,fidelity,theta,alpha,beta,phi,boundary_valid,threshold,pass\n5,"));
    CHECK(r.out.ends_with(",true\n"));

    CHECK(run("verify --n 2").code == 2);
    CHECK(run("verify --hamiltonian foo").code == 2);
    CHECK(run("verify --j0 -1").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("case-table") {
    auto r = run("case-table --n 8 --j0 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("\n8,-,1A;AN;1N,true,0.785398") != std::string::npos);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    for (int i = 0; i < 5; ++i) {
        std::getline(in, line);
        CHECK(line.ends_with(",none"));
    }
    r = run("case-table --j1n-bar 1.2 --j0 1");
    CHECK(r.code == 2);
    CHECK(r.err.find("constraint-violation") != std::string::npos);
}

TEST_CASE("qb-check") {
    auto r = run("qb-check --case 8 --n 8");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["pass"] == true);
    r = run("qb-check --case 7 --n 8");
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["note"].get<std::string>().find("case 8") != std::string::npos);
    CHECK(run("qb-check --case 6 --n 5 --grid 200").code == 0);
    r = run("qb-check --case 3");
    CHECK(r.code == 3);
    CHECK(r.err.find("unsupported-case") != std::string::npos);
    CHECK(run("qb-check --case 9").code == 2);
    CHECK(run("qb-check --n 8").code == 2);
}

TEST_CASE("speed-scan") {
    std::filesystem::remove("scan.csv");
    // Real controls: the search bottoms out at the stated limit. The default
    // complex family goes below it; the acceptance run reports that.
    auto r = run("speed-scan --n 4 --target 1e-6 --seed 1 --controls real --out scan.csv");
    CHECK(r.code == 0);
    const auto s = json::parse(r.out);
    CHECK(std::abs(s["ratio"].get<double>() - 1.0) <= 0.02);
    CHECK(slurp("scan.csv").starts_with("T,best_fidelity,evaluations,restarts_hit_bound\n"));
    check_manifest("scan.csv", 1);
    CHECK(json::parse(slurp("scan.csv.manifest.json"))["seeds"][0] == 1);

    r = run("speed-scan --n 3 --target 1e-6 --controls real");
    CHECK(r.code == 0);
    CHECK(r.out.starts_with("T,best_fidelity"));
    const auto summary = json::parse(r.err.substr(0, r.err.find('\n')));
    CHECK(std::abs(summary["ratio"].get<double>() - 1.0) <= 0.02);

    // A budget of 1 accepts any pulse.
    r = run("speed-scan --n 4 --target 1");
    CHECK(r.code == 0);
    CHECK(json::parse(r.err.substr(0, r.err.find('\n')))["t_star"] == 0.0);
    CHECK(run("speed-scan --n 4 --target 0").code == 2);
    CHECK(run("speed-scan --n 4 --segments 0").code == 2);
}

TEST_CASE("noise and fit") {
    auto r = run("noise --n 50 --sigma-c 0 --sigma-f 0 --trials 10");
    CHECK(r.code == 0);
    CHECK(r.out == "n,sigma_c,sigma_f,trials,seed,mean_infidelity,std_error\n50,0,0,10,42,0,0\n");

    r = run("noise --n 25,50,100,200 --sigma-c 0.1 --sigma-f 0 --trials 100 --seed 7 --out sweep.csv");
    CHECK(r.code == 0);
    check_manifest("sweep.csv", 1);
    const std::string first = sha256("sweep.csv");
    CHECK(run("noise --n 25,50,100,200 --sigma-c 0.1 --sigma-f 0 --trials 100 --seed 7 --out sweep.csv --threads 3").code == 0);
    CHECK(sha256("sweep.csv") == first);

    r = run("fit --input sweep.csv --model power --out fit.json --svg fit.svg");
    CHECK(r.code == 0);
    const auto f = json::parse(r.out);
    CHECK(f["model"] == "power");
    CHECK(f["params"][0].get<double>() > -0.65);
    CHECK(f["params"][0].get<double>() < -0.35);
    CHECK(json::parse(slurp("fit.json")) == f);
    CHECK(slurp("fit.svg").starts_with("<svg"));
    check_manifest("fit.json", 2);

    CHECK(run("noise --n 100 --sigma-c 0.02,0.05,0.1 --sigma-f 0 --trials 50 --out lin.csv").code == 0);
    r = run("fit --input lin.csv --model linear");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["model"] == "linear");

    CHECK(run("fit --input missing.csv").code == 2);
    CHECK(run("fit --input sweep.csv --model cubic").code == 2);
    CHECK(run("noise --n 2").code == 2);
    CHECK(run("noise --sigma-c -0.1").code == 2);
}
