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

#include "fcqst/effective3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fcqst/error.hpp"

namespace fcqst {

namespace {

constexpr double kSymmetryTol = 1e-12;

double wrap_phase(double angle) {
    // std::arg already lands in [-pi, pi]; fold the lower edge.
    return angle <= -std::numbers::pi ? angle + 2.0 * std::numbers::pi : angle;
}

double phase_of(Complex z) { return std::abs(z) > 1e-12 ? wrap_phase(std::arg(z)) : 0.0; }

Effective3 rotate(const Effective3& h, const Eigen::Vector3d& phase) {
    Effective3 out;
    out.j1a = h.j1a * std::polar(1.0, phase[0] - phase[1]);
    out.jan = h.jan * std::polar(1.0, phase[1] - phase[2]);
    out.j1n = h.j1n * std::polar(1.0, phase[0] - phase[2]);
    return out;
}

std::string qubit_pair(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

Matrix3c Effective3::matrix() const {
    Matrix3c m;
    m << d1, j1a, j1n,
         std::conj(j1a), da, jan,
         std::conj(j1n), std::conj(jan), dn;
    return m;
}

SectorMatrix Effective3::sector() const { return SectorMatrix::create(Basis::Effective3, 0, matrix()); }

Effective3 Effective3::from_matrix(const Matrix3c& m) {
    const double scale = std::max(1.0, max_abs(m));
    if (hermiticity_defect(m) > 1e-12 * scale) {
        throw Error(ErrorKind::ContractViolation, "three-level matrix is not Hermitian");
    }
    return Effective3{m(0, 1), m(1, 2), m(0, 2), m(0, 0).real(), m(1, 1).real(), m(2, 2).real()};
}

Effective3 optimal_effective(int n, double j0) {
    if (n < 3) throw Error(ErrorKind::InvalidSize, "three-level reduction needs n >= 3");
    const double collective = std::sqrt(static_cast<double>(n - 2)) * j0;
    return Effective3{collective, collective, j0, 0.0, -3.0 * j0, 0.0};
}

CMatrix symmetric_isometry(int n) {
    if (n < 3) throw Error(ErrorKind::InvalidSize, "three-level reduction needs n >= 3");
    CMatrix p = CMatrix::Zero(n, 3);
    p(0, 0) = 1.0;
    const double w = 1.0 / std::sqrt(static_cast<double>(n - 2));
    for (int k = 1; k < n - 1; ++k) p(k, 1) = w;
    p(n - 1, 2) = 1.0;
    return p;
}

Reduction reduce_to_effective(const SpinModel& model) {
    const int n = model.n();
    if (n < 3) throw Error(ErrorKind::InvalidSize, "three-level reduction needs n >= 3");
    const CMatrix h = project_single_excitation(model).entries;
    const double tol = kSymmetryTol * std::max(1.0, max_abs(h));
    const auto differs = [tol](Complex a, Complex b) { return std::abs(a - b) > tol; };
    const int last = n - 1;

    for (int k = 2; k < last; ++k) {
        if (differs(h(0, k), h(0, 1))) {
            throw Error(ErrorKind::NotSymmetric, "source coupling " + qubit_pair(1, k + 1) + " differs from " + qubit_pair(1, 2));
        }
        if (differs(h(k, last), h(1, last))) {
            throw Error(ErrorKind::NotSymmetric, "target coupling " + qubit_pair(k + 1, n) + " differs from " + qubit_pair(2, n));
        }
        if (differs(h(k, k), h(1, 1))) {
            throw Error(ErrorKind::NotSymmetric, "intermediate energy of qubit " + std::to_string(k + 1) + " differs from qubit 2");
        }
    }
    for (int k = 1; k < last; ++k) {
        for (int l = k + 1; l < last; ++l) {
            // A complex intermediate coupling breaks the W state's invariance.
            if (differs(h(k, l), h(1, 2)) || std::abs(h(k, l).imag()) > tol) {
                throw Error(ErrorKind::NotSymmetric, "intermediate coupling " + qubit_pair(k + 1, l + 1) + " is not uniform and real");
            }
        }
    }

    const double collective = std::sqrt(static_cast<double>(n - 2));
    const double mid_coupling = n > 3 ? h(1, 2).real() : 0.0;
    Reduction out;
    out.shift = h(last, last).real();
    out.h.j1a = collective * h(0, 1);
    out.h.jan = collective * h(1, last);
    out.h.j1n = h(0, last);
    out.h.d1 = h(0, 0).real() - out.shift;
    out.h.da = h(1, 1).real() + (n - 3) * mid_coupling - out.shift;
    out.h.dn = 0.0;
    return out;
}

ConstraintReport check_effective_bounds(const Effective3& h, int n, double j0) {
    if (n < 3) throw Error(ErrorKind::InvalidSize, "three-level reduction needs n >= 3");
    const double collective = std::sqrt(static_cast<double>(n - 2)) * j0;
    ConstraintReport report;
    const auto check = [&](const char* name, Complex value, double bound) {
        const double mag = std::abs(value);
        report.max_ratio = std::max(report.max_ratio, mag / bound);
        if (mag > bound * (1.0 + 1e-12)) report.violations.push_back({name, mag, bound});
    };
    check("J_1A", h.j1a, collective);
    check("J_AN", h.jan, collective);
    check("J_1N", h.j1n, j0);
    return report;
}

Matrix3c transfer_form(double theta, double alpha, double beta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Matrix3c u;
    u << 0.0, 0.0, std::polar(1.0, phi),
         c * std::polar(1.0, -alpha), -s * std::polar(1.0, -beta), 0.0,
         s * std::polar(1.0, beta), c * std::polar(1.0, alpha), 0.0;
    return u;
}

TransferDecomposition boundary_form_check(const Matrix3c& u, double tol) {
    if (unitarity_defect(u) > 1e-10) {
        throw Error(ErrorKind::ContractViolation, "boundary-form check needs a unitary matrix");
    }
    TransferDecomposition out;
    const bool zeros = std::abs(u(0, 0)) <= tol && std::abs(u(0, 1)) <= tol && std::abs(u(1, 2)) <= tol &&
                       std::abs(u(2, 2)) <= tol;
    const double slack = tol + 1e-10;
    const bool moduli = std::abs(std::abs(u(0, 2)) - 1.0) <= slack &&
                        std::abs(std::norm(u(1, 0)) - std::norm(u(2, 1))) <= slack &&
                        std::abs(std::norm(u(2, 0)) - std::norm(u(1, 1))) <= slack;
    out.valid = zeros && moduli;
    out.theta = std::atan2(std::abs(u(2, 0)), std::abs(u(1, 0)));
    out.phi = phase_of(u(0, 2));
    out.beta = phase_of(u(2, 0));
    out.alpha = phase_of(std::conj(u(1, 0)));
    return out;
}

double InteractionSchedule::total_time() const {
    double t = 0.0;
    for (const auto& seg : segments) t += seg.duration;
    return t;
}

Effective3 InteractionSchedule::at(double t) const {
    if (segments.empty()) throw Error(ErrorKind::ContractViolation, "empty interaction schedule");
    double start = 0.0;
    for (std::size_t k = 0; k < segments.size(); ++k) {
        const auto& seg = segments[k];
        if (t <= start + seg.duration || k + 1 == segments.size()) {
            return rotate(seg.coupling, seg.frame_rates * (t - start));
        }
        start += seg.duration;
    }
    return segments.back().coupling;
}

InteractionSchedule to_interaction_picture(const Effective3Schedule& schedule) {
    InteractionSchedule out;
    Eigen::Vector3d phase = Eigen::Vector3d::Zero();
    for (const auto& seg : schedule) {
        if (!(seg.duration > 0.0)) throw Error(ErrorKind::ContractViolation, "segment durations must be positive");
        const Eigen::Vector3d rates(seg.h.d1, seg.h.da, seg.h.dn);
        out.segments.push_back({seg.duration, rotate(seg.h, phase), rates});
        phase += rates * seg.duration;
    }
    out.final_phase = phase;
    return out;
}

}  // namespace fcqst
