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

#include <cstdint>
#include <string>
#include <vector>

#include "fcqst/linalg.hpp"
#include "fcqst/rng.hpp"
#include "fcqst/spin_model.hpp"

namespace fcqst {

enum class HamiltonianKind { Opt, OptPrime };

const char* to_string(HamiltonianKind k) noexcept;

/// Ways of reducing the complex overlap F to a real infidelity.
enum class InfidelityDef { AbsOneMinusF, OneMinusAbsF, OneMinusReF, OneMinusAbsF2 };

const char* to_string(InfidelityDef d) noexcept;

struct NoiseConfig {
    int n = 3;
    double j0 = 1.0;
    double sigma_c = 0.0;
    double sigma_f = 0.0;
    int trials = 1;
    std::uint64_t seed = 0;
    HamiltonianKind hamiltonian = HamiltonianKind::Opt;
    InfidelityDef definition = InfidelityDef::AbsOneMinusF;

    void validate() const;
};

/// Optimal transfer time pi / (j0 sqrt(2n)).
double optimal_time(int n, double j0);

SectorMatrix base_hamiltonian(const NoiseConfig& cfg);

/// One draw of the static disorder. pair holds one value per unordered pair
/// (i < j) in row-major order; eps1 and epsn follow, in that order.
struct NoiseDraw {
    std::vector<double> pair;
    double eps1 = 0.0;
    double epsn = 0.0;
};

NoiseDraw sample_noise(const NoiseConfig& cfg, Rng& rng);

/// Adds the draw to a single-excitation matrix: pair noise on the
/// off-diagonals, eps1 Z_1 + epsN Z_N on the diagonal.
SectorMatrix apply_noise(const SectorMatrix& base, const NoiseDraw& draw);

SectorMatrix sample_noisy_hamiltonian(const NoiseConfig& cfg, Rng& rng);

/// <phi_1| exp(i base t) exp(-i noisy t) |phi_1>.
Complex trial_fidelity(const SectorMatrix& noisy, const SectorMatrix& base, double t);

double infidelity(Complex f, InfidelityDef def);

/// |(eps1 - epsN) t| at the optimal time.
double first_order_infidelity(double eps1, double epsn, int n, double j0);

/// First-order |1 - F| for pure field noise on the optimal Hamiltonian:
/// |eps1 + epsN| (n - 2) t / (4 n).
double first_order_field_infidelity(double eps1, double epsn, int n, double j0);

struct NoiseTrialStats {
    double mean_infidelity = 0.0;
    double std_error = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    InfidelityDef infidelity_definition = InfidelityDef::AbsOneMinusF;
    /// Means under every definition, indexed by InfidelityDef.
    double mean_by_definition[4] = {0.0, 0.0, 0.0, 0.0};
    double mean_first_order = 0.0;
    double mean_first_order_field = 0.0;
    double max_abs_f = 0.0;
};

/// Trial k uses Rng::stream(seed, k). Trials may run on several threads; the
/// reduction is in trial order, so results do not depend on the thread count.
NoiseTrialStats run_mc(const NoiseConfig& cfg, unsigned threads = 0);

struct FitResult {
    std::string model;          ///< "power" or "linear"
    std::vector<double> params; ///< power: exponent, prefactor; linear: slope, intercept
    double r2 = 0.0;
    bool degenerate = false;
};

FitResult fit_power_law(const std::vector<std::pair<double, double>>& points);
FitResult fit_linear(const std::vector<std::pair<double, double>>& points);

std::string fit_json(const FitResult& fit);

struct SweepRow {
    int n = 0;
    double sigma_c = 0.0;
    double sigma_f = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    double mean_infidelity = 0.0;
    double std_error = 0.0;
};

inline constexpr const char* kSweepHeader = "n,sigma_c,sigma_f,trials,seed,mean_infidelity,std_error";

std::string sweep_csv_row(const SweepRow& row);
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

}  // namespace fcqst
