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

#include <vector>

#include "fcqst/linalg.hpp"
#include "fcqst/spin_model.hpp"

namespace fcqst {

/// Three-level Hamiltonian over {|phi_1>, |phi_2>, |phi_3>}: source excited,
/// W-state of the n-2 intermediate qubits, target excited.
///
///   [ d1       j1a      j1n ]
///   [ j1a*     da       jan ]
///   [ j1n*     jan*     dn  ]
struct Effective3 {
    Complex j1a{};
    Complex jan{};
    Complex j1n{};
    double d1 = 0.0;
    double da = 0.0;
    double dn = 0.0;

    Matrix3c matrix() const;
    SectorMatrix sector() const;

    /// Reads the upper triangle and real diagonal; the input must be Hermitian.
    static Effective3 from_matrix(const Matrix3c& m);
};

/// The time-independent optimum: couplings at their bounds, d_A = -3 j0.
Effective3 optimal_effective(int n, double j0);

/// N x 3 isometry whose columns are |phi_1>, |phi_2>, |phi_3> in the
/// single-excitation basis.
CMatrix symmetric_isometry(int n);

struct Reduction {
    Effective3 h;
    /// Energy subtracted from every diagonal entry (the |phi_3> energy).
    double shift = 0.0;
};

/// Restricts a model that is permutation-symmetric over qubits 2..n-1 to the
/// symmetric three-level sector. The result satisfies dn = 0.
Reduction reduce_to_effective(const SpinModel& model);

ConstraintReport check_effective_bounds(const Effective3& h, int n, double j0);

/// Angles of a transfer unitary
///
///   [ 0                   0                  e^{i phi} ]
///   [ cos(th) e^{-i al}  -sin(th) e^{-i be}  0         ]
///   [ sin(th) e^{ i be}   cos(th) e^{ i al}  0         ]
///
/// theta lies in [0, pi/2]; phases in (-pi, pi]. Phases that multiply a vanishing
/// modulus are reported as zero.
struct TransferDecomposition {
    double theta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double phi = 0.0;
    bool valid = false;
};

inline constexpr double kBoundaryTol = 1e-9;

Matrix3c transfer_form(double theta, double alpha, double beta, double phi);

/// Depends only on the moduli of the entries. Throws ContractViolation when u
/// is not unitary to 1e-10.
TransferDecomposition boundary_form_check(const Matrix3c& u, double tol = kBoundaryTol);

struct Effective3Segment {
    double duration = 0.0;
    Effective3 h;
};

using Effective3Schedule = std::vector<Effective3Segment>;

/// One segment in the frame rotating with the diagonal. coupling holds the
/// zero-diagonal couplings at the start of the segment; within the segment the
/// (r, c) entry keeps rotating at frame_rates[r] - frame_rates[c].
struct InteractionSegment {
    double duration = 0.0;
    Effective3 coupling;
    Eigen::Vector3d frame_rates = Eigen::Vector3d::Zero();
};

struct InteractionSchedule {
    std::vector<InteractionSegment> segments;
    /// Accumulated diagonal phase at the end; U_I(T) = exp(i diag(final_phase)) U(T).
    Eigen::Vector3d final_phase = Eigen::Vector3d::Zero();

    double total_time() const;

    /// Zero-diagonal interaction-picture Hamiltonian at time t in [0, total_time].
    Effective3 at(double t) const;
};

InteractionSchedule to_interaction_picture(const Effective3Schedule& schedule);

}  // namespace fcqst
