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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fcqst/effective3.hpp"
#include "fcqst/linalg.hpp"

namespace fcqst {

/// Lagrange multipliers and slack magnitudes of the three-coupling problem.
/// Couplings are unscaled: |J_1A|, |J_AN| <= sqrt(n-2) j0 and |J_1N| <= j0.
struct QBMultipliers {
    double lam1 = 0.0;
    double lam2 = 0.0;
    double lam1a = 0.0;
    double laman = 0.0;
    double lam1n = 0.0;
    double s1a = 0.0;
    double san = 0.0;
    double s1n = 0.0;
};

enum class Constraint { J1A, JAN, J1N };

struct CaseSpec {
    int id = 0;
    std::vector<Constraint> zero_multipliers;
    std::vector<Constraint> zero_slacks;
    bool has_minimum = false;
};

const char* to_string(Constraint c) noexcept;

/// The eight rows of the case table, ordered by id.
const std::array<CaseSpec, 8>& case_catalog();
const CaseSpec& case_spec(int case_id);

Matrix3c build_F(const QBMultipliers& m, const Effective3& h);

/// Samples on a uniform time grid: h[k], m[k] at times t0 + k dt.
struct QBTrajectory {
    double dt = 0.0;
    std::vector<Effective3> h;
    std::vector<QBMultipliers> m;
};

struct ResidualReport {
    double qb = 0.0;               ///< max ||i dF/dt - [F, H]||_F over interior midpoints
    double normalization = 0.0;    ///< max |Tr[F H] - 1|
    double constraint = 0.0;       ///< max ||J|^2 + s^2 - bound^2|
    double complementarity = 0.0;  ///< max |lambda s|

    double max() const;
};

/// Needs at least four samples. dF/dt uses the fourth-order centered stencil at
/// midpoints of the interior segments; the commutator is interpolated there at
/// the same order.
ResidualReport qb_residuals(const QBTrajectory& traj, int n, double j0);

/// Constant-phase stationary solution. Case 7 uses |j1n_bar| as the direct
/// coupling; case 8 is case 7 at |j1n_bar| = j0 with the lam1n = 0
/// representative; case 6 is the direct-coupling-only solution.
QBMultipliers stationary_multipliers(int case_id, int n, double j0, double j1n_bar = 0.0);

/// Interaction-picture Hamiltonian of the case's constant optimal protocol,
/// sampled on [0, T_min] together with the stationary multipliers.
QBTrajectory case_trajectory(int case_id, int n, double j0, double j1n_bar, int samples);

std::optional<double> case_minimum_time(int case_id, int n, double j0, std::optional<double> j1n_bar = std::nullopt);

struct CaseParams {
    int n = 3;
    double j0 = 1.0;
    double phi1n = 0.0;    ///< case 6
    double c1a = 0.0;      ///< case 7
    double j1n_bar = 0.0;  ///< case 7
};

/// Schroedinger-picture Hamiltonian whose propagator case_unitary returns.
/// Case 6: direct coupling j0 e^{-i phi1n}. Case 7: diagonal (c1a - j, 0, c1a - j),
/// couplings sqrt(n-2) j0 and j = |j1n_bar|. Case 8 is case 7 at j = j0, c1a = 4 j0.
Matrix3c case_hamiltonian(int case_id, const CaseParams& p);

Matrix3c case_unitary(int case_id, const CaseParams& p, double t);

/// exp(-i H t) for H = [[c, a, d], [a, 0, sigma a], [d, sigma a, c]], sigma = +-1.
Matrix3c mirror_family_unitary(double c, double a, double d, int sigma, double t);

struct LemmaScanRow {
    int x = 0;
    double g_plus = 0.0;   ///< gamma = (x+1)/x branch; NaN when infeasible
    double g_minus = 0.0;  ///< gamma = (x-1)/x branch; NaN when infeasible
};

struct LemmaScanReport {
    std::vector<LemmaScanRow> rows;
    int minimizer_x = 0;
    int minimizer_branch = 0;  ///< +1 or -1
    double minimum = 0.0;
};

LemmaScanReport lemma_grid_scan(double q, double r, int x_max);

/// CSV with header case_id,zero_multipliers,zero_slacks,has_minimum,T_min.
std::string case_table_csv(int n, double j0, std::optional<double> j1n_bar);

}  // namespace fcqst
