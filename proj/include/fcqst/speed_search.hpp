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

#include "fcqst/effective3.hpp"

namespace fcqst {

struct PulseSegment {
    Complex j1a{};
    Complex jan{};
    Complex j1n{};
    double d1 = 0.0;
    double da = 0.0;
    double dn = 0.0;
};

/// Piecewise-constant three-level pulse with equal-length segments.
struct PulseParams {
    int n = 3;
    double j0 = 1.0;
    double total_time = 0.0;
    std::vector<PulseSegment> segments;

    int n_segments() const noexcept { return static_cast<int>(segments.size()); }
    /// Coupling bounds (sqrt(n-2) j0, sqrt(n-2) j0, j0).
    double bound_1a() const;
    double bound_an() const { return bound_1a(); }
    double bound_1n() const { return j0; }
    Effective3Schedule schedule() const;
};

/// Scales every coupling that exceeds its bound back onto it, keeping its phase.
PulseParams project_to_bounds(PulseParams p);

/// True when some coupling sits on its bound to relative 1e-9.
bool touches_bound(const PulseParams& p);

/// |<phi_3|U|phi_1>| of the pulse, computed with the general propagator.
double pulse_fidelity(const PulseParams& p);

/// Control families searched by optimize_pulse.
enum class Controls {
    Complex,        ///< complex j1a, jan, j1n and real d1, da, dn
    Real,           ///< real j1a, jan, j1n and real d1, da, dn
    RealSymmetric,  ///< real j1a = jan, real j1n, d1 = dn, da
};

const char* to_string(Controls c) noexcept;

struct OptimizerConfig {
    int n_segments = 1;
    int restarts = 8;
    std::uint64_t seed = 0;
    Controls controls = Controls::Complex;
    int max_iterations = 2000;
    double fd_step = 1e-6;
    /// Stop a restart once 1 - |u31|^2 falls below this.
    double converged_infidelity = 1e-14;
};

struct SearchResult {
    double best_fidelity = 0.0;
    PulseParams best_pulse;
    long evaluations = 0;
    std::uint64_t seed = 0;
    int best_restart = -1;
    /// Restarts whose final pulse touches a coupling bound.
    int restarts_hit_bound = 0;
};

/// Multi-start projected gradient ascent on |u31|^2 with central-difference
/// gradients, backtracking, and a coordinate-search fallback when the gradient
/// stalls. Restart r draws its start from Rng::stream(seed, r); ties go to the
/// lower restart index.
SearchResult optimize_pulse(int n, double j0, double total_time, const OptimizerConfig& cfg);

struct BisectionSample {
    double total_time = 0.0;
    double best_fidelity = 0.0;
    long evaluations = 0;
    int restarts_hit_bound = 0;
};

struct BisectionResult {
    /// Smallest sampled time meeting the target; NaN when even the upper end fails.
    double t_star = 0.0;
    std::vector<BisectionSample> samples;
    bool monotonicity_warning = false;
};

/// Bisects total time on [0, 2 pi / (j0 sqrt(2n))] for the smallest T whose
/// best fidelity reaches fid_target.
BisectionResult min_time_bisection(int n, double j0, double fid_target, double time_tol, const OptimizerConfig& cfg);

inline constexpr const char* kBisectionHeader = "T,best_fidelity,evaluations,restarts_hit_bound";

std::string bisection_csv(const BisectionResult& r);

}  // namespace fcqst
