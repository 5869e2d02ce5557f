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

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "fcqst/error.hpp"
#include "fcqst/noise_mc.hpp"
#include "fcqst/propagator.hpp"

using namespace fcqst;
using std::numbers::pi;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an fcqst::Error");
    return ErrorKind::DomainError;
}

NoiseConfig config(int n, double sc, double sf, int trials = 1, std::uint64_t seed = 1) {
    NoiseConfig c;
    c.n = n;
    c.sigma_c = sc;
    c.sigma_f = sf;
    c.trials = trials;
    c.seed = seed;
    return c;
}

// The same draw applied at the spin-model level and projected: an
// independent route to the noisy single-excitation matrix.
SectorMatrix noisy_via_model(const NoiseConfig& cfg, const NoiseDraw& d) {
    SpinModel m = cfg.hamiltonian == HamiltonianKind::Opt ? build_h_opt(cfg.n, cfg.j0) : build_h_opt_prime(cfg.n, cfg.j0);
    std::size_t k = 0;
    for (int i = 1; i <= cfg.n; ++i)
        for (int j = i + 1; j <= cfg.n; ++j) m.set_coupling(i, j, m.coupling(i, j) + d.pair[k++]);
    m.set_field(1, m.field(1) + d.eps1);
    m.set_field(cfg.n, m.field(cfg.n) + d.epsn);
    return project_single_excitation(m);
}

}  // namespace

TEST_CASE("configuration validation") {
    CHECK(kind_of([] { config(2, 0.1, 0.1).validate(); }) == ErrorKind::InvalidSize);
    CHECK(kind_of([] { config(5, -0.1, 0.1).validate(); }) == ErrorKind::DomainError);
    CHECK(kind_of([] { config(5, 0.1, 0.1, 0).validate(); }) == ErrorKind::ContractViolation);
    CHECK(optimal_time(8, 1.0) == doctest::Approx(pi / 4));
    CHECK(optimal_time(100, 2.0) == doctest::Approx(pi / (2.0 * std::sqrt(200.0))));
}

TEST_CASE("noise sampling") {
    const auto cfg0 = config(6, 0.0, 0.0);
    Rng r0(3);
    const auto s0 = sample_noisy_hamiltonian(cfg0, r0);
    CHECK((s0.entries - base_hamiltonian(cfg0).entries).norm() == 0.0);
    CHECK(s0.vacuum_phase_rate == base_hamiltonian(cfg0).vacuum_phase_rate);

    const auto cfg = config(6, 0.2, 0.0);
    Rng r1(3);
    const auto s1 = sample_noisy_hamiltonian(cfg, r1);
    const auto base = base_hamiltonian(cfg);
    CHECK((s1.entries.diagonal() - base.entries.diagonal()).norm() == 0.0);
    CHECK((s1.entries - base.entries).norm() > 0.0);
    CHECK(hermiticity_defect(s1.entries) == 0.0);
    CHECK(s1.entries.imag().norm() == 0.0);

    Rng a(99), b(99);
    CHECK((sample_noisy_hamiltonian(config(7, 0.1, 0.1), a).entries -
           sample_noisy_hamiltonian(config(7, 0.1, 0.1), b).entries)
              .norm() == 0.0);
}

TEST_CASE("draw order: pairs row-major, then eps1, then epsN") {
    const auto cfg = config(5, 0.3, 0.7);
    Rng rng(11), replay(11);
    const auto d = sample_noise(cfg, rng);
    REQUIRE(d.pair.size() == 10);
    for (double e : d.pair) CHECK(e == 0.3 * replay.normal());
    CHECK(d.eps1 == 0.7 * replay.normal());
    CHECK(d.epsn == 0.7 * replay.normal());
}

TEST_CASE("apply_noise matches the spin-model route") {
    for (auto kind : {HamiltonianKind::Opt, HamiltonianKind::OptPrime}) {
        for (int n : {3, 6, 40}) {
            auto cfg = config(n, 0.15, 0.25);
            cfg.hamiltonian = kind;
            Rng rng(5);
            const auto d = sample_noise(cfg, rng);
            const auto direct = apply_noise(base_hamiltonian(cfg), d);
            const auto ref = noisy_via_model(cfg, d);
            CHECK((direct.entries - ref.entries).cwiseAbs().maxCoeff() < 1e-13);
            CHECK(direct.vacuum_phase_rate == doctest::Approx(ref.vacuum_phase_rate).epsilon(1e-13));
        }
    }
    NoiseDraw wrong;
    wrong.pair.resize(2);
    CHECK(kind_of([&] { apply_noise(base_hamiltonian(config(5, 0, 0)), wrong); }) == ErrorKind::ContractViolation);
}

TEST_CASE("trial fidelity") {
    const auto cfg = config(20, 0.0, 0.0);
    const auto base = base_hamiltonian(cfg);
    const double t = optimal_time(20, 1.0);
    CHECK(trial_fidelity(base, base, t) == Complex(1.0, 0.0));

    SectorMatrix shifted = base;
    shifted.entries += 0.37 * CMatrix::Identity(20, 20);
    CHECK(std::abs(std::abs(trial_fidelity(shifted, base, t)) - 1.0) < 1e-12);

    CHECK(kind_of([&] { trial_fidelity(base_hamiltonian(config(5, 0, 0)), base, t); }) == ErrorKind::ContractViolation);

    // One field-noise trial at n = 100: |1 - F| is first order in eps, 1 - |F| second order.
    auto c100 = config(100, 0.0, 0.1);
    Rng rng = Rng::stream(2024, 0);
    const auto d = sample_noise(c100, rng);
    const auto f = trial_fidelity(apply_noise(base_hamiltonian(c100), d), base_hamiltonian(c100), optimal_time(100, 1.0));
    const double first = first_order_field_infidelity(d.eps1, d.epsn, 100, 1.0);
    CHECK(first > 1e-3);
    CHECK(infidelity(f, InfidelityDef::AbsOneMinusF) == doctest::Approx(first).epsilon(0.05));
    CHECK(infidelity(f, InfidelityDef::OneMinusAbsF) < 0.1 * first);
}

TEST_CASE("infidelity definitions") {
    const Complex f = std::polar(0.9, 0.2);
    CHECK(infidelity(f, InfidelityDef::AbsOneMinusF) == doctest::Approx(std::abs(1.0 - f)));
    CHECK(infidelity(f, InfidelityDef::OneMinusAbsF) == doctest::Approx(0.1));
    CHECK(infidelity(f, InfidelityDef::OneMinusReF) == doctest::Approx(1.0 - 0.9 * std::cos(0.2)));
    CHECK(infidelity(f, InfidelityDef::OneMinusAbsF2) == doctest::Approx(1.0 - 0.81));
    CHECK(infidelity(Complex(1.0, 0.0), InfidelityDef::AbsOneMinusF) == 0.0);
}

TEST_CASE("first-order formulas") {
    CHECK(first_order_infidelity(0.05, 0.05, 100, 1.0) == 0.0);
    CHECK(first_order_infidelity(0.1, -0.1, 100, 1.0) == doctest::Approx(0.2 * pi / std::sqrt(200.0)));
    CHECK(first_order_infidelity(0.1, -0.1, 100, 1.0) == doctest::Approx(0.04443).epsilon(1e-4));
    CHECK(first_order_field_infidelity(0.1, -0.1, 100, 1.0) == 0.0);
    CHECK(first_order_field_infidelity(0.01, 0.01, 8, 1.0) == doctest::Approx(0.02 * 6 * (pi / 4) / 32));
}

TEST_CASE("paired agreement with the first-order field formula") {
    for (int n : {8, 100}) {
        const auto s = run_mc(config(n, 0.0, 0.02, 400, 17));
        const double mc = s.mean_by_definition[static_cast<int>(InfidelityDef::AbsOneMinusF)];
        CHECK(std::abs(mc - s.mean_first_order_field) <= 0.2 * s.mean_first_order_field);
    }
}

TEST_CASE("Monte Carlo runs") {
    const auto zero = run_mc(config(50, 0.0, 0.0, 20, 1));
    CHECK(zero.mean_infidelity == 0.0);
    CHECK(zero.std_error == 0.0);
    for (double v : zero.mean_by_definition) CHECK(v == 0.0);

    const auto cfg = config(30, 0.1, 0.05, 200, 9);
    const auto a = run_mc(cfg, 1);
    const auto b = run_mc(cfg, 4);
    CHECK(a.mean_infidelity == b.mean_infidelity);
    CHECK(a.std_error == b.std_error);
    CHECK(a.max_abs_f <= 1.0 + 1e-12);
    CHECK(a.seed == 9);
    CHECK(a.trials == 200);
    CHECK(a.mean_infidelity == a.mean_by_definition[0]);

    auto doubled = cfg;
    doubled.trials = 800;
    const double ratio = a.std_error / run_mc(doubled).std_error;
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.2));

    auto other = cfg;
    other.definition = InfidelityDef::OneMinusAbsF;
    const auto c = run_mc(other);
    CHECK(c.mean_infidelity == a.mean_by_definition[1]);
    CHECK(c.infidelity_definition == InfidelityDef::OneMinusAbsF);

    auto prime = cfg;
    prime.hamiltonian = HamiltonianKind::OptPrime;
    CHECK(run_mc(prime).mean_infidelity > 0.0);
}

TEST_CASE("1 - |F| ignores a uniform diagonal shift, |1 - F| does not") {
    // A shift of the excitation sector alone is a relative phase between the
    // vacuum and the transferred excitation, a real error for state transfer.
    const auto cfg = config(12, 0.1, 0.1);
    Rng rng(4);
    const auto noisy = sample_noisy_hamiltonian(cfg, rng);
    const auto base = base_hamiltonian(cfg);
    SectorMatrix shifted = noisy;
    shifted.entries += 0.3 * CMatrix::Identity(12, 12);
    const double t = optimal_time(12, 1.0);
    const Complex f0 = trial_fidelity(noisy, base, t);
    const Complex f1 = trial_fidelity(shifted, base, t);
    CHECK(std::abs(infidelity(f0, InfidelityDef::OneMinusAbsF) - infidelity(f1, InfidelityDef::OneMinusAbsF)) < 1e-12);
    CHECK(std::abs(infidelity(f0, InfidelityDef::AbsOneMinusF) - infidelity(f1, InfidelityDef::AbsOneMinusF)) > 1e-3);
}

TEST_CASE("mean infidelity grows with the noise level") {
    double prev = 0.0, prev_se = 0.0;
    for (double s : {0.02, 0.05, 0.1, 0.2}) {
        const auto r = run_mc(config(40, s, s, 200, 3));
        CHECK(r.mean_infidelity + 3 * (r.std_error + prev_se) >= prev);
        prev = r.mean_infidelity;
        prev_se = r.std_error;
    }
}

TEST_CASE("power-law fit") {
    std::vector<std::pair<double, double>> pts;
    for (double n : {25.0, 50.0, 100.0, 200.0, 400.0}) pts.emplace_back(n, 3.0 * std::pow(n, -0.5));
    const auto f = fit_power_law(pts);
    CHECK(f.model == "power");
    CHECK(std::abs(f.params[0] + 0.5) < 1e-12);
    CHECK(f.params[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.r2 == 1.0);

    for (auto& p : pts) p.second = 0.7;
    CHECK(std::abs(fit_power_law(pts).params[0]) < 1e-14);

    pts[1].second = 0.0;
    CHECK(kind_of([&] { fit_power_law(pts); }) == ErrorKind::DomainError);
    CHECK(kind_of([] { fit_power_law({{1, 1}, {2, 2}}); }) == ErrorKind::ContractViolation);
}

TEST_CASE("linear fit") {
    std::vector<std::pair<double, double>> pts;
    for (double s : {0.02, 0.05, 0.1, 0.15, 0.2}) pts.emplace_back(s, 2.0 * s);
    const auto f = fit_linear(pts);
    CHECK(f.params[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(f.params[1]) < 1e-14);
    CHECK(f.r2 == 1.0);

    const auto d = fit_linear({{0.1, 1.0}, {0.1, 2.0}, {0.1, 3.0}});
    CHECK(d.degenerate);
    const auto j = nlohmann::json::parse(fit_json(d));
    CHECK(j["r2"].is_null());
    CHECK(j["degenerate"] == true);

    const auto jf = nlohmann::json::parse(fit_json(f));
    CHECK(jf["model"] == "linear");
    CHECK(jf["params"].size() == 2);
    CHECK(jf["r2"] == 1.0);
    CHECK_FALSE(jf.contains("degenerate"));
}

TEST_CASE("sweep CSV") {
    const SweepRow r{100, 0.1, 0.0, 1000, 42, 0.0079, 0.0004};
    const std::string text = std::string(kSweepHeader) + "\n" + sweep_csv_row(r) + "\n";
    const auto rows = parse_sweep_csv(text);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n == 100);
    CHECK(rows[0].sigma_c == 0.1);
    CHECK(rows[0].seed == 42);
    CHECK(rows[0].mean_infidelity == 0.0079);

    // Columns are found by name.
    const auto shuffled = parse_sweep_csv("seed,n,mean_infidelity,std_error,trials,sigma_f,sigma_c\n3,7,0.5,0.1,10,0.2,0.3\n");
    CHECK(shuffled[0].n == 7);
    CHECK(shuffled[0].sigma_c == 0.3);
    CHECK(kind_of([] { parse_sweep_csv("n,sigma_c\n1,2\n"); }) == ErrorKind::ContractViolation);
    CHECK(kind_of([&] { parse_sweep_csv(std::string(kSweepHeader) + "\n1,2,3\n"); }) == ErrorKind::ContractViolation);
    CHECK(kind_of([&] { parse_sweep_csv(std::string(kSweepHeader) + "\nx,1,1,1,1,1,1\n"); }) == ErrorKind::ContractViolation);
}
