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

#include "fcqst/noise_mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "fcqst/error.hpp"
#include "fcqst/propagator.hpp"

namespace fcqst {

const char* to_string(HamiltonianKind k) noexcept { return k == HamiltonianKind::Opt ? "opt" : "opt-prime"; }

const char* to_string(InfidelityDef d) noexcept {
    switch (d) {
        case InfidelityDef::AbsOneMinusF: return "|1-F|";
        case InfidelityDef::OneMinusAbsF: return "1-|F|";
        case InfidelityDef::OneMinusReF: return "1-Re(F)";
        case InfidelityDef::OneMinusAbsF2: return "1-|F|^2";
    }
    return "?";
}

void NoiseConfig::validate() const {
    if (n < 3) throw Error(ErrorKind::InvalidSize, "need n >= 3");
    if (!(j0 > 0.0)) throw Error(ErrorKind::DomainError, "j0 must be positive");
    if (!(sigma_c >= 0.0) || !(sigma_f >= 0.0)) throw Error(ErrorKind::DomainError, "noise levels must be nonnegative");
    if (trials < 1) throw Error(ErrorKind::ContractViolation, "need at least one trial");
}

double optimal_time(int n, double j0) { return std::numbers::pi / (j0 * std::sqrt(2.0 * n)); }

SectorMatrix base_hamiltonian(const NoiseConfig& cfg) {
    cfg.validate();
    const SpinModel model = cfg.hamiltonian == HamiltonianKind::Opt ? build_h_opt(cfg.n, cfg.j0)
                                                                    : build_h_opt_prime(cfg.n, cfg.j0);
    return project_single_excitation(model);
}

NoiseDraw sample_noise(const NoiseConfig& cfg, Rng& rng) {
    NoiseDraw d;
    const auto n = static_cast<std::size_t>(cfg.n);
    d.pair.resize(n * (n - 1) / 2);
    for (auto& e : d.pair) e = cfg.sigma_c * rng.normal();
    d.eps1 = cfg.sigma_f * rng.normal();
    d.epsn = cfg.sigma_f * rng.normal();
    return d;
}

SectorMatrix apply_noise(const SectorMatrix& base, const NoiseDraw& draw) {
    if (base.basis != Basis::SingleExcitation) throw Error(ErrorKind::UnsupportedBasis, "noise acts in the single-excitation basis");
    const Eigen::Index n = base.dim();
    if (draw.pair.size() != static_cast<std::size_t>(n * (n - 1) / 2)) {
        throw Error(ErrorKind::ContractViolation, "noise draw does not match the matrix size");
    }
    SectorMatrix out = base;
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j, ++k) {
            out.entries(i, j) += draw.pair[k];
            out.entries(j, i) += draw.pair[k];
        }
    }
    // Z = +1 on |0>, -1 on the excitation.
    for (Eigen::Index i = 0; i < n; ++i) {
        const double z1 = i == 0 ? -1.0 : 1.0;
        const double zn = i == n - 1 ? -1.0 : 1.0;
        out.entries(i, i) += draw.eps1 * z1 + draw.epsn * zn;
    }
    out.vacuum_phase_rate += draw.eps1 + draw.epsn;
    return out;
}

SectorMatrix sample_noisy_hamiltonian(const NoiseConfig& cfg, Rng& rng) {
    return apply_noise(base_hamiltonian(cfg), sample_noise(cfg, rng));
}

namespace {

CVector source_state(Eigen::Index n) {
    CVector v = CVector::Zero(n);
    v[0] = 1.0;
    return v;
}

}  // namespace

Complex trial_fidelity(const SectorMatrix& noisy, const SectorMatrix& base, double t) {
    if (noisy.dim() != base.dim() || noisy.basis != base.basis) {
        throw Error(ErrorKind::ContractViolation, "noisy and base matrices differ in shape");
    }
    // A zero draw leaves the propagators identical; skip the round-off.
    if (noisy.entries == base.entries) return {1.0, 0.0};
    const CVector phi1 = source_state(base.dim());
    return evolve_state(base, t, phi1).dot(evolve_state(noisy, t, phi1));
}

double infidelity(Complex f, InfidelityDef def) {
    switch (def) {
        case InfidelityDef::AbsOneMinusF: return std::abs(1.0 - f);
        case InfidelityDef::OneMinusAbsF: return 1.0 - std::abs(f);
        case InfidelityDef::OneMinusReF: return 1.0 - f.real();
        case InfidelityDef::OneMinusAbsF2: return 1.0 - std::norm(f);
    }
    return 0.0;
}

double first_order_infidelity(double eps1, double epsn, int n, double j0) {
    return std::abs((eps1 - epsn) * optimal_time(n, j0));
}

double first_order_field_infidelity(double eps1, double epsn, int n, double j0) {
    return std::abs(eps1 + epsn) * (n - 2) * optimal_time(n, j0) / (4.0 * n);
}

NoiseTrialStats run_mc(const NoiseConfig& cfg, unsigned threads) {
    cfg.validate();
    const SectorMatrix base = base_hamiltonian(cfg);
    const double t = optimal_time(cfg.n, cfg.j0);
    const CVector target = evolve_state(base, t, source_state(base.dim()));

    struct Trial {
        Complex f;
        double first_order = 0.0;
        double first_order_field = 0.0;
    };
    std::vector<Trial> results(static_cast<std::size_t>(cfg.trials));
    const auto run_range = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t k = begin; k < results.size(); k += stride) {
            Rng rng = Rng::stream(cfg.seed, k);
            const NoiseDraw draw = sample_noise(cfg, rng);
            const SectorMatrix noisy = apply_noise(base, draw);
            const Complex f = noisy.entries == base.entries
                                  ? Complex{1.0, 0.0}
                                  : target.dot(evolve_state(noisy, t, source_state(base.dim())));
            results[k] = {f, first_order_infidelity(draw.eps1, draw.epsn, cfg.n, cfg.j0),
                          first_order_field_infidelity(draw.eps1, draw.epsn, cfg.n, cfg.j0)};
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(results.size()));
    if (threads <= 1) {
        run_range(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(run_range, w, threads);
        for (auto& th : pool) th.join();
    }

    NoiseTrialStats s;
    s.trials = cfg.trials;
    s.seed = cfg.seed;
    s.infidelity_definition = cfg.definition;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& r : results) {
        const double x = infidelity(r.f, cfg.definition);
        sum += x;
        sum_sq += x * x;
        for (int d = 0; d < 4; ++d) s.mean_by_definition[d] += infidelity(r.f, static_cast<InfidelityDef>(d));
        s.mean_first_order += r.first_order;
        s.mean_first_order_field += r.first_order_field;
        s.max_abs_f = std::max(s.max_abs_f, std::abs(r.f));
    }
    const double m = static_cast<double>(cfg.trials);
    s.mean_infidelity = sum / m;
    for (auto& v : s.mean_by_definition) v /= m;
    s.mean_first_order /= m;
    s.mean_first_order_field /= m;
    if (cfg.trials > 1) {
        const double var = std::max(0.0, (sum_sq - sum * sum / m) / (m - 1.0));
        s.std_error = std::sqrt(var / m);
    }
    return s;
}

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    bool degenerate = false;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double m = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    // Repeated x: judged on the spread, since sxx keeps rounding noise from the mean.
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (*hi - *lo <= 1e-12 * std::max(std::abs(*lo), std::abs(*hi))) {
        f.degenerate = true;
        f.intercept = my;
        f.r2 = std::numeric_limits<double>::quiet_NaN();
        return f;
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += e * e;
    }
    f.r2 = syy > 0.0 ? 1.0 - ss_res / syy : (ss_res <= 1e-300 ? 1.0 : 0.0);
    if (syy > 0.0 && ss_res <= 1e-24 * syy) f.r2 = 1.0;
    return f;
}

}  // namespace

FitResult fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw Error(ErrorKind::ContractViolation, "need at least three points");
    std::vector<double> lx, ly;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0)) throw Error(ErrorKind::DomainError, "power-law fit needs positive data");
        lx.push_back(std::log(x));
        ly.push_back(std::log(y));
    }
    const LineFit f = least_squares(lx, ly);
    return {"power", {f.slope, std::exp(f.intercept)}, f.r2, f.degenerate};
}

FitResult fit_linear(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw Error(ErrorKind::ContractViolation, "need at least three points");
    std::vector<double> x, y;
    for (const auto& [a, b] : points) {
        x.push_back(a);
        y.push_back(b);
    }
    const LineFit f = least_squares(x, y);
    return {"linear", {f.slope, f.intercept}, f.r2, f.degenerate};
}

std::string fit_json(const FitResult& fit) {
    nlohmann::json j;
    j["model"] = fit.model;
    j["params"] = fit.params;
    if (std::isnan(fit.r2)) {
        j["r2"] = nullptr;
    } else {
        j["r2"] = fit.r2;
    }
    if (fit.degenerate) j["degenerate"] = true;
    return j.dump(2);
}

std::string sweep_csv_row(const SweepRow& row) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%d,%llu,%.17g,%.17g", row.n, row.sigma_c, row.sigma_f, row.trials,
                  static_cast<unsigned long long>(row.seed), row.mean_infidelity, row.std_error);
    return buf;
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    const auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream cells(s);
        while (std::getline(cells, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
            out.push_back(cell);
        }
        return out;
    };
    if (!std::getline(in, line)) throw Error(ErrorKind::ContractViolation, "empty sweep file");
    const auto header = split(line);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    for (const char* name : {"n", "sigma_c", "sigma_f", "trials", "seed", "mean_infidelity", "std_error"}) {
        if (!col.count(name)) throw Error(ErrorKind::ContractViolation, std::string("sweep file lacks column ") + name);
    }
    std::vector<SweepRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) {
            throw Error(ErrorKind::ContractViolation, "malformed sweep row at line " + std::to_string(line_no));
        }
        try {
            SweepRow r;
            r.n = std::stoi(cells[col["n"]]);
            r.sigma_c = std::stod(cells[col["sigma_c"]]);
            r.sigma_f = std::stod(cells[col["sigma_f"]]);
            r.trials = std::stoi(cells[col["trials"]]);
            r.seed = std::stoull(cells[col["seed"]]);
            r.mean_infidelity = std::stod(cells[col["mean_infidelity"]]);
            r.std_error = std::stod(cells[col["std_error"]]);
            rows.push_back(r);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::ContractViolation, "unparsable sweep row at line " + std::to_string(line_no));
        }
    }
    return rows;
}

}  // namespace fcqst
