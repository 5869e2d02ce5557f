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

#include "fcqst/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "fcqst/error.hpp"

namespace fcqst {

namespace {

void require_hermitian(const CMatrix& h) {
    if (h.rows() != h.cols()) throw Error(ErrorKind::ContractViolation, "Hamiltonian must be square");
    if (hermiticity_defect(h) > 1e-12 * std::max(1.0, max_abs(h))) {
        throw Error(ErrorKind::ContractViolation, "Hamiltonian is not Hermitian");
    }
}

CVector phases(const Eigen::VectorXd& values, double t) {
    CVector out(values.size());
    for (Eigen::Index k = 0; k < values.size(); ++k) out[k] = std::polar(1.0, -values[k] * t);
    return out;
}

// Y on qubit q of a full-space vector: Y|0> = i|1>, Y|1> = -i|0>.
CVector apply_y(const CVector& psi, int q) {
    const std::uint64_t bit = std::uint64_t{1} << (q - 1);
    CVector out(psi.size());
    for (Eigen::Index x = 0; x < psi.size(); ++x) {
        const auto ux = static_cast<std::uint64_t>(x);
        const auto partner = static_cast<Eigen::Index>(ux ^ bit);
        out[partner] = (ux & bit) ? -kI * psi[x] : kI * psi[x];
    }
    return out;
}

CVector apply_z_phase(const CVector& psi, int q, double angle) {
    const std::uint64_t bit = std::uint64_t{1} << (q - 1);
    const Complex phase = std::polar(1.0, angle);
    CVector out = psi;
    for (Eigen::Index x = 0; x < psi.size(); ++x) {
        if (static_cast<std::uint64_t>(x) & bit) out[x] *= phase;
    }
    return out;
}

}  // namespace

ControlSchedule::ControlSchedule(std::vector<Segment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw Error(ErrorKind::ContractViolation, "schedule has no segments");
    for (const auto& seg : segments_) {
        if (!(seg.duration > 0.0)) throw Error(ErrorKind::ContractViolation, "segment durations must be positive");
        if (seg.h.basis != segments_.front().h.basis || seg.h.dim() != segments_.front().h.dim() ||
            seg.h.n_qubits != segments_.front().h.n_qubits) {
            throw Error(ErrorKind::ContractViolation, "schedule segments mix bases");
        }
        total_time_ += seg.duration;
    }
}

ControlSchedule to_control_schedule(const Effective3Schedule& schedule) {
    std::vector<ControlSchedule::Segment> segments;
    segments.reserve(schedule.size());
    for (const auto& seg : schedule) segments.push_back({seg.duration, seg.h.sector()});
    return ControlSchedule(std::move(segments));
}

CMatrix evolve_constant(const CMatrix& h, double t) {
    require_hermitian(h);
    if (t == 0.0) return CMatrix::Identity(h.rows(), h.cols());
    const auto eig = hermitian_eigen(h);
    return eig.vectors * phases(eig.values, t).asDiagonal() * eig.vectors.adjoint();
}

CMatrix evolve_constant(const SectorMatrix& h, double t) { return evolve_constant(h.entries, t); }

CVector evolve_state(const SectorMatrix& h, double t, const CVector& psi) {
    require_hermitian(h.entries);
    if (psi.size() != h.dim()) throw Error(ErrorKind::ContractViolation, "state dimension mismatch");
    if (t == 0.0) return psi;
    const auto eig = hermitian_eigen(h.entries);
    const CVector coeffs = eig.vectors.adjoint() * psi;
    return eig.vectors * phases(eig.values, t).cwiseProduct(coeffs);
}

CMatrix evolve_schedule(const ControlSchedule& schedule) {
    CMatrix u = CMatrix::Identity(schedule.dim(), schedule.dim());
    for (const auto& seg : schedule.segments()) u = evolve_constant(seg.h, seg.duration) * u;
    return u;
}

Matrix3c evolve_interaction(const InteractionSchedule& schedule) {
    Matrix3c u = Matrix3c::Identity();
    for (const auto& seg : schedule.segments) {
        Effective3 generator = seg.coupling;
        generator.d1 = seg.frame_rates[0];
        generator.da = seg.frame_rates[1];
        generator.dn = seg.frame_rates[2];
        Matrix3c frame = Matrix3c::Zero();
        for (int r = 0; r < 3; ++r) frame(r, r) = std::polar(1.0, seg.frame_rates[r] * seg.duration);
        const Matrix3c step = frame * evolve_constant(CMatrix(generator.matrix()), seg.duration);
        u = step * u;
    }
    return u;
}

Complex transfer_amplitude(const CMatrix& u, Basis basis) {
    switch (basis) {
        case Basis::Effective3:
            if (u.rows() != 3 || u.cols() != 3) throw Error(ErrorKind::ContractViolation, "expected a 3x3 propagator");
            return u(2, 0);
        case Basis::SingleExcitation:
            if (u.rows() < 2 || u.rows() != u.cols()) throw Error(ErrorKind::ContractViolation, "expected a square propagator");
            return u(u.rows() - 1, 0);
        case Basis::FullSpace:
            break;
    }
    throw Error(ErrorKind::UnsupportedBasis, "transfer fidelity is defined in the three-level or single-excitation basis");
}

double transfer_fidelity(const CMatrix& u, Basis basis) { return std::abs(transfer_amplitude(u, basis)); }

LrSignature lr_commutator_check(const SpinModel& model, double t) {
    const int n = model.n();
    if (n > kCommutatorMaxQubits) {
        throw Error(ErrorKind::SizeLimit, "commutator check limited to n <= " + std::to_string(kCommutatorMaxQubits));
    }
    const SectorMatrix h = project_full_space(model);
    const auto eig = hermitian_eigen(h.entries);
    const CVector ph = phases(eig.values, t);
    const auto evolve = [&](Eigen::Index basis_state) -> CVector {
        if (t == 0.0) return CVector::Unit(h.dim(), basis_state);
        return eig.vectors * ph.cwiseProduct(eig.vectors.row(basis_state).adjoint());
    };

    // X_1 |0...0> is the excitation on qubit 1 (basis index 1).
    const CVector a = evolve(1);
    const CVector b = evolve(0);
    const auto commutator = [n](const CVector& excited, const CVector& vacuum) {
        const Complex m = vacuum.dot(apply_y(excited, n));
        return m - std::conj(m);
    };

    LrSignature out;
    out.raw = commutator(a, b);
    const Complex transferred = a[static_cast<Eigen::Index>(std::uint64_t{1} << (n - 1))];
    const Complex vacuum = b[0];
    if (std::abs(transferred) > 1e-12) out.correction_phase = std::arg(vacuum) - std::arg(transferred);
    out.corrected = commutator(apply_z_phase(a, n, out.correction_phase), apply_z_phase(b, n, out.correction_phase));
    return out;
}

}  // namespace fcqst
