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
#include <random>

#include "fcqst/effective3.hpp"
#include "fcqst/error.hpp"
#include "fcqst/propagator.hpp"
#include "oracles.hpp"

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

CMatrix random_hermitian(int n, unsigned seed, bool real = false) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> g;
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Complex(g(gen), real ? 0.0 : g(gen));
    return (a + a.adjoint()) / 2.0;
}

SectorMatrix eq24_sector(int n) { return optimal_effective(n, 1.0).sector(); }

}  // namespace

TEST_CASE("evolve_constant: spec examples") {
    const CMatrix u0 = evolve_constant(CMatrix::Zero(4, 4), 5.0);
    CHECK((u0 - CMatrix::Identity(4, 4)).norm() == 0.0);

    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    const CMatrix u = evolve_constant(x, pi / 2);
    CHECK(std::abs(u(0, 0)) < 1e-14);
    CHECK(std::abs(u(1, 1)) < 1e-14);
    CHECK(std::abs(u(0, 1) - Complex(0, -1)) < 1e-14);
    CHECK(std::abs(u(1, 0) - Complex(0, -1)) < 1e-14);

    CHECK(std::abs(std::abs(evolve_constant(eq24_sector(8), pi / 4)(2, 0)) - 1.0) < 1e-10);
}

TEST_CASE("non-Hermitian input is rejected") {
    CMatrix a = CMatrix::Zero(3, 3);
    a(0, 1) = 1.0;
    CHECK(kind_of([&] { evolve_constant(a, 1.0); }) == ErrorKind::ContractViolation);
    CHECK(kind_of([&] { evolve_constant(CMatrix::Zero(2, 3), 1.0); }) == ErrorKind::ContractViolation);
}

TEST_CASE("eigendecomposition propagator matches a Taylor-series oracle") {
    for (int n : {3, 10, 24, 40}) {
        for (bool real : {true, false}) {
            const CMatrix h = random_hermitian(n, 11u * static_cast<unsigned>(n) + real, real);
            for (double t : {0.05, 0.7}) {
                CHECK((evolve_constant(h, t) - oracle::expm_minus_i(h, t)).cwiseAbs().maxCoeff() < 1e-11);
            }
        }
    }
}

TEST_CASE("unitarity, norm and energy conservation at large dimension") {
    for (int n : {100, 300, 500}) {
        for (bool real : {true, false}) {
            const CMatrix h = random_hermitian(n, static_cast<unsigned>(n) + real, real);
            const CMatrix u = evolve_constant(h, 0.37);
            CHECK(unitarity_defect(u) <= 1e-11);
            // Reconstruction guards against a misbehaving system LAPACK.
            const auto e = hermitian_eigen(h);
            CHECK((e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint() - h).cwiseAbs().maxCoeff() <
                  1e-10 * n);
        }
    }
    const auto h = SectorMatrix::create(Basis::SingleExcitation, 60, random_hermitian(60, 2));
    CVector psi = CVector::Zero(60);
    psi[0] = 1.0;
    const double e0 = psi.dot(h.entries * psi).real();
    for (double t : {0.3, 1.0, 4.0}) {
        const CVector s = evolve_state(h, t, psi);
        CHECK(std::abs(s.norm() - 1.0) < 1e-12);
        CHECK(std::abs(s.dot(h.entries * s).real() - e0) < 1e-10);
        CHECK((s - evolve_constant(h, t) * psi).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("time scaling") {
    const CMatrix h = random_hermitian(7, 4);
    for (double c : {0.5, 2.0, 3.0}) {
        CHECK((evolve_constant(CMatrix(c * h), 0.4) - evolve_constant(h, 0.4 * c)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("schedules") {
    const auto h = SectorMatrix::create(Basis::SingleExcitation, 5, random_hermitian(5, 8));
    const auto neg = SectorMatrix::create(Basis::SingleExcitation, 5, -h.entries);
    CHECK((evolve_schedule(ControlSchedule({{0.8, h}})) - evolve_constant(h, 0.8)).norm() == 0.0);
    CHECK((evolve_schedule(ControlSchedule({{0.3, h}, {0.5, h}})) - evolve_constant(h, 0.8)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((evolve_schedule(ControlSchedule({{0.3, h}, {0.3, neg}, {0.7, h}, {0.7, neg}})) - CMatrix::Identity(5, 5))
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    // Later segments act on the left.
    const auto g = SectorMatrix::create(Basis::SingleExcitation, 5, random_hermitian(5, 9));
    CHECK((evolve_schedule(ControlSchedule({{0.2, h}, {0.4, g}})) - evolve_constant(g, 0.4) * evolve_constant(h, 0.2))
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    const ControlSchedule s({{0.2, h}, {0.4, g}});
    CHECK(s.total_time() == doctest::Approx(0.6));
    CHECK(s.basis() == Basis::SingleExcitation);

    CHECK(kind_of([&] { ControlSchedule({{0.2, h}, {0.1, eq24_sector(5)}}); }) == ErrorKind::ContractViolation);
    CHECK(kind_of([&] { ControlSchedule({{0.0, h}}); }) == ErrorKind::ContractViolation);
    CHECK(kind_of([&] { ControlSchedule({}); }) == ErrorKind::ContractViolation);
}

TEST_CASE("transfer fidelity") {
    CHECK(transfer_fidelity(CMatrix::Identity(3, 3), Basis::Effective3) == 0.0);
    CHECK(transfer_fidelity(CMatrix::Identity(6, 6), Basis::SingleExcitation) == 0.0);
    const double theta = 0.8;
    CHECK(transfer_fidelity(transfer_form(theta, 0.1, 0.2, 0.3), Basis::Effective3) == doctest::Approx(std::sin(theta)));
    CHECK(transfer_fidelity(transfer_form(pi / 2, 0.1, 0.2, 0.3), Basis::Effective3) == doctest::Approx(1.0));
    CHECK(std::abs(transfer_fidelity(evolve_constant(eq24_sector(50), pi / 10), Basis::Effective3) - 1.0) < 1e-10);
    CHECK(kind_of([] { transfer_fidelity(CMatrix::Identity(8, 8), Basis::FullSpace); }) == ErrorKind::UnsupportedBasis);
    CHECK(kind_of([] { transfer_fidelity(CMatrix::Identity(2, 2), Basis::Effective3); }) == ErrorKind::ContractViolation);
}

TEST_CASE("full, single-excitation and three-level amplitudes agree") {
    for (int n = 3; n <= 8; ++n) {
        const auto model = build_h_opt(n, 1.0);
        const double t = pi / std::sqrt(2.0 * n);
        for (double s : {0.3 * t, t}) {
            const auto full = project_full_space(model);
            const auto se = project_single_excitation(model);
            const auto red = reduce_to_effective(model);
            const CMatrix uf = evolve_constant(full, s);
            const auto target = Eigen::Index{1} << (n - 1);
            // Amplitudes relative to the vacuum phase, which the full space carries explicitly.
            const Complex af = uf(target, 1) / uf(0, 0);
            const Complex as = transfer_amplitude(evolve_constant(se, s), Basis::SingleExcitation) *
                               std::polar(1.0, se.vacuum_phase_rate * s);
            const Complex ae = transfer_amplitude(evolve_constant(red.h.sector(), s), Basis::Effective3) *
                               std::polar(1.0, (se.vacuum_phase_rate - red.shift) * s);
            CHECK(std::abs(af - as) < 1e-10);
            CHECK(std::abs(af - ae) < 1e-10);
        }
    }
}

TEST_CASE("Lieb-Robinson commutator signature") {
    const auto model = build_h_opt(5, 1.0);
    CHECK(std::abs(lr_commutator_check(model, 0.0).raw) == 0.0);
    CHECK(std::abs(lr_commutator_check(SpinModel(4), 1.7).corrected) == 0.0);

    const double t = pi / std::sqrt(10.0);
    const auto lr = lr_commutator_check(model, t);
    CHECK(std::abs(std::abs(lr.corrected) - 2.0) < 1e-8);
    CHECK(std::abs(lr.corrected.real()) < 1e-8);

    // Oracle: dense Heisenberg operators from Kronecker products.
    const int n = 5;
    const auto h = oracle::full_hamiltonian(model);
    const auto u = oracle::expm_minus_i(h, t);
    const auto x1 = oracle::on_qubit(oracle::pauli_x(), 1, n);
    const auto yn = oracle::on_qubit(oracle::pauli_y(), n, n);
    const auto value = [&](const oracle::M& v) {
        const oracle::M y_t = v.adjoint() * yn * v;
        return Complex((y_t * x1 - x1 * y_t)(0, 0));
    };
    CHECK(std::abs(value(u) - lr.raw) < 1e-10);
    // Phase gate diag(1, e^{i chi}) on qubit N after the evolution.
    oracle::M gate = oracle::M::Identity(2, 2);
    gate(1, 1) = std::polar(1.0, lr.correction_phase);
    CHECK(std::abs(value(oracle::on_qubit(gate, n, n) * u) - lr.corrected) < 1e-10);

    CHECK(kind_of([] { lr_commutator_check(build_h_opt(11, 1.0), 0.1); }) == ErrorKind::SizeLimit);
}
