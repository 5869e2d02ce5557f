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

// fcqst command-line harness. Exit codes: 0 pass, 1 quantitative fail,
// 2 usage or invalid input, 3 unsupported case.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fcqst/brachistochrone.hpp"
#include "fcqst/effective3.hpp"
#include "fcqst/error.hpp"
#include "fcqst/noise_mc.hpp"
#include "fcqst/propagator.hpp"
#include "fcqst/speed_search.hpp"
#include "fcqst/spin_model.hpp"
#include "svg_plot.hpp"

#ifndef FCQST_VERSION
#define FCQST_VERSION "unknown"
#endif

namespace {

using fcqst::Error;
using fcqst::ErrorKind;
using nlohmann::json;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kUnsupported = 3 };

constexpr double kVerifyThreshold = 1.0 - 1e-9;
constexpr double kResidualThreshold = 1e-8;

std::string g_command_line;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string sha256_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ContractViolation, "cannot read " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    std::string hex;
    char h[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(h, sizeof h, "%02x", md[i]);
        hex += h;
    }
    return hex;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ContractViolation, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorKind::ContractViolation, "write failed: " + path);
}

// One manifest per invocation, stored next to the primary output file.
class Manifest {
public:
    Manifest() : start_(std::chrono::steady_clock::now()) {}

    void add_output(const std::string& path) { outputs_.push_back(path); }
    json& seeds() { return seeds_; }
    json& details() { return details_; }

    void write(const std::string& primary) const {
        json m;
        m["command_line"] = g_command_line;
        m["tool_version"] = FCQST_VERSION;
        m["seeds"] = seeds_.is_null() ? json::array() : seeds_;
        m["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        m["outputs"] = json::array();
        for (const auto& p : outputs_) m["outputs"].push_back({{"path", p}, {"sha256", sha256_hex(p)}});
        if (!details_.is_null()) m["details"] = details_;
        write_file(primary + ".manifest.json", m.dump(2) + "\n");
    }

private:
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> outputs_;
    json seeds_;
    json details_;
};

// ---------------------------------------------------------------- verify

struct VerifyOpts {
    int n = 8;
    double j0 = 1.0;
    std::string hamiltonian = "opt";
    std::string format = "json";
};

int cmd_verify(const VerifyOpts& o) {
    const auto model = o.hamiltonian == "opt" ? fcqst::build_h_opt(o.n, o.j0) : fcqst::build_h_opt_prime(o.n, o.j0);
    const double t = fcqst::optimal_time(o.n, o.j0);
    const auto u = fcqst::evolve_constant(fcqst::project_single_excitation(model), t);
    const fcqst::Complex amp = fcqst::transfer_amplitude(u, fcqst::Basis::SingleExcitation);
    const double fidelity = std::abs(amp);

    const auto red = fcqst::reduce_to_effective(model);
    const fcqst::Matrix3c u3 = fcqst::evolve_constant(red.h.sector(), t);
    const auto b = fcqst::boundary_form_check(u3);
    const bool pass = fidelity >= kVerifyThreshold;

    if (o.format == "json") {
        json r = {{"n", o.n},
                  {"j0", o.j0},
                  {"hamiltonian", o.hamiltonian},
                  {"time", t},
                  {"fidelity", fidelity},
                  {"amplitude", {amp.real(), amp.imag()}},
                  {"boundary", {{"theta", b.theta}, {"alpha", b.alpha}, {"beta", b.beta}, {"phi", b.phi}, {"valid", b.valid}}},
                  {"threshold", kVerifyThreshold},
                  {"pass", pass}};
        std::cout << r.dump(2) << "\n";
    } else {
        std::cout << "n,j0,hamiltonian,time,fidelity,theta,alpha,beta,phi,boundary_valid,threshold,pass\n"
                  << o.n << ',' << fmt(o.j0) << ',' << o.hamiltonian << ',' << fmt(t) << ',' << fmt(fidelity) << ','
                  << fmt(b.theta) << ',' << fmt(b.alpha) << ',' << fmt(b.beta) << ',' << fmt(b.phi) << ','
                  << (b.valid ? "true" : "false") << ',' << fmt(kVerifyThreshold) << ',' << (pass ? "true" : "false")
                  << "\n";
    }
    return pass ? kPass : kFail;
}

// ------------------------------------------------------------ case-table

struct CaseTableOpts {
    int n = 8;
    double j0 = 1.0;
    std::optional<double> j1n_bar;
};

int cmd_case_table(const CaseTableOpts& o) {
    std::cout << fcqst::case_table_csv(o.n, o.j0, o.j1n_bar);
    return kPass;
}

// -------------------------------------------------------------- qb-check

struct QbOpts {
    int case_id = 8;
    int n = 8;
    double j0 = 1.0;
    int grid = 1000;
    std::optional<double> j1n_bar;
};

int cmd_qb_check(const QbOpts& o) {
    const auto& spec = fcqst::case_spec(o.case_id);
    if (!spec.has_minimum) {
        throw Error(ErrorKind::UnsupportedCase,
                    "case " + std::to_string(o.case_id) + " has no stationary solution (no minimum)");
    }
    const double jbar = o.j1n_bar.value_or(o.j0);
    const auto traj = fcqst::case_trajectory(o.case_id, o.n, o.j0, jbar, o.grid);
    const auto rep = fcqst::qb_residuals(traj, o.n, o.j0);
    const auto tmin = fcqst::case_minimum_time(o.case_id, o.n, o.j0, jbar);
    const bool pass = rep.max() <= kResidualThreshold;
    json r = {{"case", o.case_id},
              {"n", o.n},
              {"j0", o.j0},
              {"grid", o.grid},
              {"t_min", tmin ? json(*tmin) : json(nullptr)},
              {"residuals",
               {{"qb", rep.qb}, {"normalization", rep.normalization}, {"constraint", rep.constraint},
                {"complementarity", rep.complementarity}}},
              {"threshold", kResidualThreshold},
              {"pass", pass}};
    if (o.case_id == 7) {
        r["j1n_bar"] = jbar;
        if (std::abs(std::abs(jbar) - o.j0) <= 1e-12 * o.j0) r["note"] = "saturating j1n_bar: reduces to case 8";
    }
    std::cout << r.dump(2) << "\n";
    return pass ? kPass : kFail;
}

// ------------------------------------------------------------ speed-scan

struct SpeedOpts {
    int n = 4;
    int segments = 1;
    int restarts = 8;
    double target = 1e-6;
    std::uint64_t seed = 0;
    std::string out;
    std::string controls = "complex";
    double time_tol = 1e-4;
};

fcqst::Controls parse_controls(const std::string& s) {
    if (s == "real") return fcqst::Controls::Real;
    if (s == "real-symmetric") return fcqst::Controls::RealSymmetric;
    return fcqst::Controls::Complex;
}

int cmd_speed_scan(const SpeedOpts& o) {
    if (o.target <= 0.0) {
        throw Error(ErrorKind::DomainError, "--target is an infidelity budget and must be positive");
    }
    Manifest manifest;
    fcqst::OptimizerConfig cfg;
    cfg.n_segments = o.segments;
    cfg.restarts = o.restarts;
    cfg.seed = o.seed;
    cfg.controls = parse_controls(o.controls);
    const double j0 = 1.0;
    const auto r = fcqst::min_time_bisection(o.n, j0, 1.0 - o.target, o.time_tol, cfg);
    const double tmin = fcqst::optimal_time(o.n, j0);
    const std::string csv = fcqst::bisection_csv(r);

    json summary = {{"n", o.n},
                    {"segments", o.segments},
                    {"restarts", o.restarts},
                    {"controls", o.controls},
                    {"target_infidelity", o.target},
                    {"t_star", std::isnan(r.t_star) ? json(nullptr) : json(r.t_star)},
                    {"t_min", tmin},
                    {"ratio", std::isnan(r.t_star) ? json(nullptr) : json(r.t_star / tmin)},
                    {"monotonicity_warning", r.monotonicity_warning}};
    if (o.out.empty()) {
        std::cout << csv;
        std::cerr << summary.dump() << "\n";
    } else {
        write_file(o.out, csv);
        manifest.add_output(o.out);
        manifest.seeds() = json::array({o.seed});
        manifest.details() = summary;
        manifest.write(o.out);
        std::cout << summary.dump(2) << "\n";
    }
    if (r.monotonicity_warning) std::cerr << "warning: best fidelity is not monotone in T\n";
    return std::isnan(r.t_star) ? kFail : kPass;
}

// ----------------------------------------------------------------- noise

struct NoiseOpts {
    std::vector<int> n{100};
    std::vector<double> sigma_c{0.1};
    std::vector<double> sigma_f{0.0};
    int trials = 1000;
    std::uint64_t seed = 42;
    std::string out;
    std::string hamiltonian = "opt";
    std::string definition = "abs-one-minus-f";
    unsigned threads = 0;
};

fcqst::InfidelityDef parse_definition(const std::string& s) {
    if (s == "one-minus-abs-f") return fcqst::InfidelityDef::OneMinusAbsF;
    if (s == "one-minus-re-f") return fcqst::InfidelityDef::OneMinusReF;
    if (s == "one-minus-abs-f2") return fcqst::InfidelityDef::OneMinusAbsF2;
    return fcqst::InfidelityDef::AbsOneMinusF;
}

int cmd_noise(const NoiseOpts& o) {
    Manifest manifest;
    std::ostringstream csv;
    csv << fcqst::kSweepHeader << "\n";
    json details = json::array();
    for (int n : o.n) {
        for (double sc : o.sigma_c) {
            for (double sf : o.sigma_f) {
                fcqst::NoiseConfig cfg;
                cfg.n = n;
                cfg.j0 = 1.0;
                cfg.sigma_c = sc;
                cfg.sigma_f = sf;
                cfg.trials = o.trials;
                cfg.seed = o.seed;
                cfg.hamiltonian = o.hamiltonian == "opt" ? fcqst::HamiltonianKind::Opt : fcqst::HamiltonianKind::OptPrime;
                cfg.definition = parse_definition(o.definition);
                const auto s = fcqst::run_mc(cfg, o.threads);
                csv << fcqst::sweep_csv_row({n, sc, sf, s.trials, s.seed, s.mean_infidelity, s.std_error}) << "\n";
                json by_def;
                for (int d = 0; d < 4; ++d) {
                    by_def[fcqst::to_string(static_cast<fcqst::InfidelityDef>(d))] = s.mean_by_definition[d];
                }
                details.push_back({{"n", n},
                                   {"sigma_c", sc},
                                   {"sigma_f", sf},
                                   {"definition", fcqst::to_string(s.infidelity_definition)},
                                   {"mean_by_definition", by_def},
                                   {"mean_first_order", s.mean_first_order},
                                   {"mean_first_order_field", s.mean_first_order_field}});
            }
        }
    }
    if (o.out.empty()) {
        std::cout << csv.str();
    } else {
        write_file(o.out, csv.str());
        manifest.add_output(o.out);
        manifest.seeds() = json::array({o.seed});
        manifest.details() = {{"hamiltonian", o.hamiltonian}, {"rows", details}};
        manifest.write(o.out);
        std::cout << csv.str();
    }
    return kPass;
}

// ------------------------------------------------------------------- fit

struct FitOpts {
    std::string input;
    std::string model = "power";
    std::string x = "auto";
    std::string out;
    std::string svg;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ContractViolation, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

double column(const fcqst::SweepRow& r, const std::string& name) {
    if (name == "n") return r.n;
    if (name == "sigma_c") return r.sigma_c;
    return r.sigma_f;
}

// The swept column is the one that varies; exactly one must.
std::string pick_x(const std::vector<fcqst::SweepRow>& rows, const std::string& requested) {
    if (requested != "auto") return requested;
    std::vector<std::string> varying;
    for (const char* c : {"n", "sigma_c", "sigma_f"}) {
        for (const auto& r : rows) {
            if (column(r, c) != column(rows.front(), c)) {
                varying.emplace_back(c);
                break;
            }
        }
    }
    if (varying.size() != 1) {
        throw Error(ErrorKind::ContractViolation, "cannot infer the swept column; pass --x n|sigma_c|sigma_f");
    }
    return varying.front();
}

int cmd_fit(const FitOpts& o) {
    Manifest manifest;
    const auto rows = fcqst::parse_sweep_csv(read_file(o.input));
    if (rows.empty()) throw Error(ErrorKind::ContractViolation, "no data rows in " + o.input);
    const std::string x = pick_x(rows, o.x);
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) pts.emplace_back(column(r, x), r.mean_infidelity);
    const auto fit = o.model == "power" ? fcqst::fit_power_law(pts) : fcqst::fit_linear(pts);
    const std::string text = fcqst::fit_json(fit) + "\n";
    std::cout << text;
    if (!o.out.empty()) {
        write_file(o.out, text);
        manifest.add_output(o.out);
    }
    if (!o.svg.empty()) {
        write_file(o.svg, fcqst::cli::render_fit_svg(pts, fit, x, "mean infidelity"));
        manifest.add_output(o.svg);
    }
    if (!o.out.empty() || !o.svg.empty()) {
        manifest.details() = {{"input", o.input}, {"input_sha256", sha256_hex(o.input)}, {"x", x}};
        manifest.write(o.out.empty() ? o.svg : o.out);
    }
    return fit.degenerate ? kFail : kPass;
}

int exit_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::UnsupportedCase:
        case ErrorKind::UnsupportedBasis: return kUnsupported;
        default: return kUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) g_command_line += (i ? " " : "") + std::string(argv[i]);

    CLI::App app{"fcqst: fast quantum state transfer on fully connected networks"};
    app.set_version_flag("--version", FCQST_VERSION);
    app.require_subcommand(1);
    const auto size_check = CLI::Range(3, 1 << 16);

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "evolve the optimal Hamiltonian for T and check transfer");
    verify->add_option("--n", vo.n, "number of qubits")->check(size_check);
    verify->add_option("--j0", vo.j0, "coupling bound")->check(CLI::PositiveNumber);
    verify->add_option("--hamiltonian", vo.hamiltonian)->check(CLI::IsMember({"opt", "opt-prime"}));
    verify->add_option("--format", vo.format)->check(CLI::IsMember({"json", "csv"}));

    CaseTableOpts co;
    auto* table = app.add_subcommand("case-table", "minimum times for every stationary case");
    table->add_option("--n", co.n)->check(size_check);
    table->add_option("--j0", co.j0)->check(CLI::PositiveNumber);
    table->add_option("--j1n-bar", co.j1n_bar, "direct coupling for case 7 (default j0)");

    QbOpts qo;
    auto* qb = app.add_subcommand("qb-check", "residuals of a stationary solution");
    qb->add_option("--case", qo.case_id)->required()->check(CLI::Range(1, 8));
    qb->add_option("--n", qo.n)->check(size_check);
    qb->add_option("--j0", qo.j0)->check(CLI::PositiveNumber);
    qb->add_option("--grid", qo.grid, "time samples")->check(CLI::Range(4, 10000000));
    qb->add_option("--j1n-bar", qo.j1n_bar, "direct coupling for case 7 (default j0)");

    SpeedOpts so;
    auto* speed = app.add_subcommand("speed-scan", "bisect the shortest time a pulse search can reach");
    speed->add_option("--n", so.n)->check(size_check);
    speed->add_option("--segments", so.segments)->check(CLI::Range(1, 1024));
    speed->add_option("--restarts", so.restarts)->check(CLI::Range(1, 100000));
    speed->add_option("--target", so.target, "infidelity budget; the fidelity target is 1 - target")
        ->check(CLI::NonNegativeNumber);
    speed->add_option("--seed", so.seed);
    speed->add_option("--out", so.out, "CSV output path");
    speed->add_option("--controls", so.controls)->check(CLI::IsMember({"complex", "real", "real-symmetric"}));
    speed->add_option("--time-tol", so.time_tol, "bisection tolerance on T")->check(CLI::PositiveNumber);

    NoiseOpts no;
    auto* noise = app.add_subcommand("noise", "Monte Carlo infidelity under static noise");
    noise->add_option("--n", no.n, "comma-separated sizes")->delimiter(',')->check(size_check);
    noise->add_option("--sigma-c", no.sigma_c, "comma-separated coupling noise levels")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);
    noise->add_option("--sigma-f", no.sigma_f, "comma-separated field noise levels")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);
    noise->add_option("--trials", no.trials)->check(CLI::Range(1, 100000000));
    noise->add_option("--seed", no.seed);
    noise->add_option("--out", no.out, "CSV output path");
    noise->add_option("--hamiltonian", no.hamiltonian)->check(CLI::IsMember({"opt", "opt-prime"}));
    noise->add_option("--definition", no.definition)
        ->check(CLI::IsMember({"abs-one-minus-f", "one-minus-abs-f", "one-minus-re-f", "one-minus-abs-f2"}));
    noise->add_option("--threads", no.threads, "worker threads (0 = hardware)");

    FitOpts fo;
    auto* fit = app.add_subcommand("fit", "fit a sweep CSV");
    fit->add_option("--input", fo.input)->required();
    fit->add_option("--model", fo.model)->check(CLI::IsMember({"power", "linear"}));
    fit->add_option("--x", fo.x, "swept column")->check(CLI::IsMember({"auto", "n", "sigma_c", "sigma_f"}));
    fit->add_option("--out", fo.out, "JSON output path");
    fit->add_option("--svg", fo.svg, "SVG chart path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(vo);
        if (table->parsed()) return cmd_case_table(co);
        if (qb->parsed()) return cmd_qb_check(qo);
        if (speed->parsed()) return cmd_speed_scan(so);
        if (noise->parsed()) return cmd_noise(no);
        if (fit->parsed()) return cmd_fit(fo);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
