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
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fcqst/linalg.hpp"

namespace fcqst {

/// Fixed-time slice of a total-S^z conserving spin Hamiltonian on n qubits,
///
///   H = sum_{i<j} [ J_ij s_i^+ s_j^- + h.c. + U_ij Z_i Z_j ] + sum_j B_j Z_j,
///
/// with one amplitude per unordered pair. Qubits are labelled 1..n. The flip-flop
/// term moves a single excitation between qubits, with <i|H|j> = J_ij for i < j
/// where |i> carries the excitation on qubit i. Z|0> = +|0> and Z|1> = -|1>.
class SpinModel {
public:
    using Pair = std::pair<int, int>;

    explicit SpinModel(int n);

    int n() const noexcept { return n_; }

    /// Stores J_ij. Passing i > j stores the conjugate under (j, i).
    void set_coupling(int i, int j, Complex value);
    void set_zz(int i, int j, double value);
    void set_field(int j, double value);

    /// Zero when the pair is absent.
    Complex coupling(int i, int j) const;
    double zz(int i, int j) const;
    double field(int j) const;

    const std::map<Pair, Complex>& couplings() const noexcept { return couplings_; }
    const std::map<Pair, double>& zz_terms() const noexcept { return zz_; }
    const std::vector<double>& fields() const noexcept { return fields_; }

    SpinModel scaled(double factor) const;

    /// Relabels qubit q as perm[q-1]; perm is a permutation of 1..n.
    SpinModel relabeled(const std::vector<int>& perm) const;

    friend bool operator==(const SpinModel& a, const SpinModel& b);

private:
    Pair checked_pair(int i, int j) const;

    int n_;
    std::map<Pair, Complex> couplings_;
    std::map<Pair, double> zz_;
    std::vector<double> fields_;
};

/// H_opt = j0 [ sum_{i<j} (s_i^+ s_j^- + h.c.) - (n/2)(Z_1 + Z_n) ].
SpinModel build_h_opt(int n, double j0);

/// H'_opt: source-target and source/target-to-intermediate couplings only, with
/// a size-independent field -(3/2) j0 on qubits 1 and n.
SpinModel build_h_opt_prime(int n, double j0);

enum class Basis { SingleExcitation, FullSpace, Effective3 };

const char* to_string(Basis basis) noexcept;

/// Hermitian operator restricted to a conserved sector.
struct SectorMatrix {
    Basis basis = Basis::Effective3;
    int n_qubits = 0;
    CMatrix entries;
    double vacuum_phase_rate = 0.0;

    Eigen::Index dim() const noexcept { return entries.rows(); }

    /// Checks shape against the basis tag and Hermiticity to 1e-12.
    static SectorMatrix create(Basis basis, int n_qubits, CMatrix entries, double vacuum_phase_rate = 0.0);
};

/// N x N block of the one-excitation sector in qubit order, plus the vacuum energy.
SectorMatrix project_single_excitation(const SpinModel& model);

inline constexpr int kFullSpaceMaxQubits = 12;

/// Dense 2^N operator. Basis index bit q-1 holds the state of qubit q.
SectorMatrix project_full_space(const SpinModel& model);

struct BoundViolation {
    std::string name;
    double magnitude = 0.0;
    double bound = 0.0;
};

struct ConstraintReport {
    std::vector<BoundViolation> violations;
    double max_ratio = 0.0;

    bool ok() const noexcept { return violations.empty(); }
};

ConstraintReport check_coupling_bounds(const SpinModel& model, double j0);

}  // namespace fcqst
