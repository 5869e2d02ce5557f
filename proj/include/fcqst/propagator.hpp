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

#include "fcqst/effective3.hpp"
#include "fcqst/linalg.hpp"
#include "fcqst/spin_model.hpp"

namespace fcqst {

/// Piecewise-constant Hamiltonian. All segments share one basis and dimension.
class ControlSchedule {
public:
    struct Segment {
        double duration = 0.0;
        SectorMatrix h;
    };

    explicit ControlSchedule(std::vector<Segment> segments);

    const std::vector<Segment>& segments() const noexcept { return segments_; }
    double total_time() const noexcept { return total_time_; }
    Basis basis() const noexcept { return segments_.front().h.basis; }
    Eigen::Index dim() const noexcept { return segments_.front().h.dim(); }

private:
    std::vector<Segment> segments_;
    double total_time_ = 0.0;
};

ControlSchedule to_control_schedule(const Effective3Schedule& schedule);

/// exp(-i h t) by Hermitian eigendecomposition.
CMatrix evolve_constant(const CMatrix& h, double t);
CMatrix evolve_constant(const SectorMatrix& h, double t);

/// exp(-i h t) psi without forming the propagator explicitly.
CVector evolve_state(const SectorMatrix& h, double t, const CVector& psi);

/// Time-ordered product, later segments on the left.
CMatrix evolve_schedule(const ControlSchedule& schedule);

/// Exact propagator of an interaction-picture schedule, including the rotation
/// of the couplings inside each segment.
Matrix3c evolve_interaction(const InteractionSchedule& schedule);

/// <phi_3|U|phi_1>: entry (2, 0) in the three-level basis, (N-1, 0) in the
/// single-excitation basis.
Complex transfer_amplitude(const CMatrix& u, Basis basis);

/// Modulus of transfer_amplitude.
double transfer_fidelity(const CMatrix& u, Basis basis);

inline constexpr int kCommutatorMaxQubits = 10;

/// <[Y_N(t), X_1]> on the all-|0> state, both as evolved and after the
/// single-qubit Z-phase gate on qubit N that aligns the phase of the
/// transferred excitation with the vacuum phase.
struct LrSignature {
    Complex raw{};
    Complex corrected{};
    double correction_phase = 0.0;
};

LrSignature lr_commutator_check(const SpinModel& model, double t);

}  // namespace fcqst
