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

#include "fcqst/spin_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "fcqst/error.hpp"

namespace fcqst {

namespace {

constexpr double kHermitianTol = 1e-12;

std::string pair_name(int i, int j) { return "J_{" + std::to_string(i) + "," + std::to_string(j) + "}"; }

// z(q) is the Z eigenvalue of qubit q (1-based): +1 for |0>, -1 for |1>.
template <class ZValue>
double diagonal_energy(const SpinModel& model, ZValue z) {
    double e = 0.0;
    for (int q = 1; q <= model.n(); ++q) e += model.field(q) * z(q);
    for (const auto& [pair, u] : model.zz_terms()) e += u * z(pair.first) * z(pair.second);
    return e;
}

double diagonal_energy(const SpinModel& model, std::uint64_t x) {
    return diagonal_energy(model, [x](int q) { return ((x >> (q - 1)) & 1U) ? -1.0 : 1.0; });
}

// Energy with only qubit k excited; valid for any n, unlike the bit-mask form.
double excitation_energy(const SpinModel& model, int k) {
    return diagonal_energy(model, [k](int q) { return q == k ? -1.0 : 1.0; });
}

void require_opt_size(int n, double j0) {
    if (n < 3) {
        throw Error(ErrorKind::InvalidSize, "optimal Hamiltonians need n >= 3 (got " + std::to_string(n) + ")");
    }
    if (!(j0 > 0.0)) throw Error(ErrorKind::DomainError, "j0 must be positive");
}

}  // namespace

SpinModel::SpinModel(int n) : n_(n), fields_(n > 0 ? static_cast<std::size_t>(n) : 0U, 0.0) {
    if (n < 2) throw Error(ErrorKind::InvalidSize, "a spin model needs n >= 2 (got " + std::to_string(n) + ")");
}

SpinModel::Pair SpinModel::checked_pair(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_ || i == j) {
        throw Error(ErrorKind::ContractViolation,
                    "invalid qubit pair (" + std::to_string(i) + "," + std::to_string(j) + ") for n = " + std::to_string(n_));
    }
    return i < j ? Pair{i, j} : Pair{j, i};
}

void SpinModel::set_coupling(int i, int j, Complex value) {
    const auto key = checked_pair(i, j);
    couplings_[key] = i < j ? value : std::conj(value);
}

void SpinModel::set_zz(int i, int j, double value) { zz_[checked_pair(i, j)] = value; }

void SpinModel::set_field(int j, double value) {
    if (j < 1 || j > n_) throw Error(ErrorKind::ContractViolation, "field index out of range: " + std::to_string(j));
    fields_[static_cast<std::size_t>(j - 1)] = value;
}

Complex SpinModel::coupling(int i, int j) const {
    const auto key = checked_pair(i, j);
    const auto it = couplings_.find(key);
    if (it == couplings_.end()) return {};
    return i < j ? it->second : std::conj(it->second);
}

double SpinModel::zz(int i, int j) const {
    const auto it = zz_.find(checked_pair(i, j));
    return it == zz_.end() ? 0.0 : it->second;
}

double SpinModel::field(int j) const {
    if (j < 1 || j > n_) throw Error(ErrorKind::ContractViolation, "field index out of range: " + std::to_string(j));
    return fields_[static_cast<std::size_t>(j - 1)];
}

SpinModel SpinModel::scaled(double factor) const {
    SpinModel out = *this;
    for (auto& [_, v] : out.couplings_) v *= factor;
    for (auto& [_, v] : out.zz_) v *= factor;
    for (auto& b : out.fields_) b *= factor;
    return out;
}

SpinModel SpinModel::relabeled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_) throw Error(ErrorKind::ContractViolation, "permutation has wrong length");
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int q = 1; q <= n_; ++q) {
        if (sorted[static_cast<std::size_t>(q - 1)] != q) throw Error(ErrorKind::ContractViolation, "not a permutation of 1..n");
    }
    const auto map = [&](int q) { return perm[static_cast<std::size_t>(q - 1)]; };
    SpinModel out(n_);
    for (const auto& [p, v] : couplings_) out.set_coupling(map(p.first), map(p.second), v);
    for (const auto& [p, v] : zz_) out.set_zz(map(p.first), map(p.second), v);
    for (int q = 1; q <= n_; ++q) out.set_field(map(q), field(q));
    return out;
}

bool operator==(const SpinModel& a, const SpinModel& b) {
    if (a.n_ != b.n_ || a.fields_ != b.fields_) return false;
    // Absent entries and explicit zeros are the same operator.
    for (int i = 1; i <= a.n_; ++i) {
        for (int j = i + 1; j <= a.n_; ++j) {
            if (a.coupling(i, j) != b.coupling(i, j) || a.zz(i, j) != b.zz(i, j)) return false;
        }
    }
    return true;
}

SpinModel build_h_opt(int n, double j0) {
    require_opt_size(n, j0);
    SpinModel model(n);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) model.set_coupling(i, j, j0);
    }
    model.set_field(1, -0.5 * n * j0);
    model.set_field(n, -0.5 * n * j0);
    return model;
}

SpinModel build_h_opt_prime(int n, double j0) {
    require_opt_size(n, j0);
    SpinModel model(n);
    model.set_coupling(1, n, j0);
    for (int k = 2; k < n; ++k) {
        model.set_coupling(1, k, j0);
        model.set_coupling(k, n, j0);
    }
    model.set_field(1, -1.5 * j0);
    model.set_field(n, -1.5 * j0);
    return model;
}

const char* to_string(Basis basis) noexcept {
    switch (basis) {
        case Basis::SingleExcitation: return "single_excitation";
        case Basis::FullSpace: return "full_space";
        case Basis::Effective3: return "effective3";
    }
    return "unknown";
}

SectorMatrix SectorMatrix::create(Basis basis, int n_qubits, CMatrix entries, double vacuum_phase_rate) {
    Eigen::Index expected = 0;
    switch (basis) {
        case Basis::SingleExcitation: expected = n_qubits; break;
        case Basis::FullSpace: expected = n_qubits >= 0 && n_qubits < 31 ? (Eigen::Index{1} << n_qubits) : -1; break;
        case Basis::Effective3: expected = 3; break;
    }
    if (entries.rows() != expected || entries.cols() != expected) {
        throw Error(ErrorKind::ContractViolation, std::string("matrix shape does not match basis ") + to_string(basis));
    }
    const double scale = std::max(1.0, max_abs(entries));
    if (hermiticity_defect(entries) > kHermitianTol * scale) {
        throw Error(ErrorKind::ContractViolation, "sector matrix is not Hermitian");
    }
    return SectorMatrix{basis, n_qubits, std::move(entries), vacuum_phase_rate};
}

SectorMatrix project_single_excitation(const SpinModel& model) {
    const int n = model.n();
    CMatrix h = CMatrix::Zero(n, n);
    for (int q = 1; q <= n; ++q) {
        h(q - 1, q - 1) = excitation_energy(model, q);
    }
    for (const auto& [pair, j] : model.couplings()) {
        h(pair.first - 1, pair.second - 1) = j;
        h(pair.second - 1, pair.first - 1) = std::conj(j);
    }
    return SectorMatrix::create(Basis::SingleExcitation, n, std::move(h), diagonal_energy(model, std::uint64_t{0}));
}

SectorMatrix project_full_space(const SpinModel& model) {
    const int n = model.n();
    if (n > kFullSpaceMaxQubits) {
        throw Error(ErrorKind::SizeLimit, "full-space projection limited to n <= " + std::to_string(kFullSpaceMaxQubits));
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    CMatrix h = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t x = 0; x < dim; ++x) {
        const auto ix = static_cast<Eigen::Index>(x);
        h(ix, ix) = diagonal_energy(model, x);
        for (const auto& [pair, j] : model.couplings()) {
            const std::uint64_t bi = std::uint64_t{1} << (pair.first - 1);
            const std::uint64_t bj = std::uint64_t{1} << (pair.second - 1);
            // x has the excitation on i and not on j; y has it moved to j.
            if ((x & bi) && !(x & bj)) {
                const auto iy = static_cast<Eigen::Index>(x ^ bi ^ bj);
                h(ix, iy) += j;
                h(iy, ix) += std::conj(j);
            }
        }
    }
    const double vacuum = h(0, 0).real();
    return SectorMatrix::create(Basis::FullSpace, n, std::move(h), vacuum);
}

ConstraintReport check_coupling_bounds(const SpinModel& model, double j0) {
    ConstraintReport report;
    for (const auto& [pair, j] : model.couplings()) {
        const double mag = std::abs(j);
        report.max_ratio = std::max(report.max_ratio, mag / j0);
        if (mag > j0) report.violations.push_back({pair_name(pair.first, pair.second), mag, j0});
    }
    return report;
}

}  // namespace fcqst
