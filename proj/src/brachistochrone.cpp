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

#include "fcqst/brachistochrone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "fcqst/error.hpp"

namespace fcqst {

namespace {

void require_problem(int n, double j0) {
    if (n < 3) throw Error(ErrorKind::InvalidSize, "need n >= 3");
    if (!(j0 > 0.0)) throw Error(ErrorKind::DomainError, "j0 must be positive");
}

double checked_j1n_bar(double j1n_bar, double j0) {
    const double j = std::abs(j1n_bar);
    if (j > j0 * (1.0 + 1e-12)) {
        throw Error(ErrorKind::ConstraintViolation, "|j1n_bar| exceeds j0");
    }
    return std::min(j, j0);
}

std::string join(const std::vector<Constraint>& cs) {
    if (cs.empty()) return "-";
    std::string out;
    for (const auto c : cs) {
        if (!out.empty()) out += ';';
        out += to_string(c);
    }
    return out;
}

}  // namespace

const char* to_string(Constraint c) noexcept {
    switch (c) {
        case Constraint::J1A: return "1A";
        case Constraint::JAN: return "AN";
        case Constraint::J1N: return "1N";
    }
    return "?";
}

const std::array<CaseSpec, 8>& case_catalog() {
    using C = Constraint;
    static const std::array<CaseSpec, 8> table{{
        {1, {C::J1A, C::JAN, C::J1N}, {}, false},
        {2, {C::JAN, C::J1N}, {C::J1A}, false},
        {3, {C::J1A, C::J1N}, {C::JAN}, false},
        {4, {C::JAN}, {C::J1A, C::J1N}, false},
        {5, {C::J1A}, {C::JAN, C::J1N}, false},
        {6, {C::J1A, C::JAN}, {C::J1N}, true},
        {7, {C::J1N}, {C::J1A, C::JAN}, true},
        {8, {}, {C::J1A, C::JAN, C::J1N}, true},
    }};
    return table;
}

const CaseSpec& case_spec(int case_id) {
    if (case_id < 1 || case_id > 8) throw Error(ErrorKind::UnsupportedCase, "case id must be 1..8");
    return case_catalog()[static_cast<std::size_t>(case_id - 1)];
}

Matrix3c build_F(const QBMultipliers& m, const Effective3& h) {
    Matrix3c f = Matrix3c::Zero();
    f(0, 0) = m.lam1 + m.lam2;
    f(1, 1) = -2.0 * m.lam2;
    f(2, 2) = -m.lam1 + m.lam2;
    f(0, 1) = m.lam1a * h.j1a;
    f(1, 2) = m.laman * h.jan;
    f(0, 2) = m.lam1n * h.j1n;
    f(1, 0) = std::conj(f(0, 1));
    f(2, 1) = std::conj(f(1, 2));
    f(2, 0) = std::conj(f(0, 2));
    return f;
}

double ResidualReport::max() const { return std::max({qb, normalization, constraint, complementarity}); }

ResidualReport qb_residuals(const QBTrajectory& traj, int n, double j0) {
    require_problem(n, j0);
    const std::size_t k_max = traj.h.size();
    if (traj.m.size() != k_max) throw Error(ErrorKind::ContractViolation, "multiplier samples do not match the Hamiltonian grid");
    if (k_max < 4) throw Error(ErrorKind::ContractViolation, "need at least four samples");
    if (!(traj.dt > 0.0)) throw Error(ErrorKind::ContractViolation, "grid spacing must be positive");

    const double bound_mid = (n - 2) * j0 * j0;
    const double bound_direct = j0 * j0;

    std::vector<Matrix3c> f(k_max), g(k_max);
    ResidualReport r;
    for (std::size_t k = 0; k < k_max; ++k) {
        const auto& h = traj.h[k];
        const auto& m = traj.m[k];
        const Matrix3c hm = h.matrix();
        f[k] = build_F(m, h);
        g[k] = f[k] * hm - hm * f[k];
        r.normalization = std::max(r.normalization, std::abs((f[k] * hm).trace() - 1.0));
        r.constraint = std::max({r.constraint, std::abs(std::norm(h.j1a) + m.s1a * m.s1a - bound_mid),
                                 std::abs(std::norm(h.jan) + m.san * m.san - bound_mid),
                                 std::abs(std::norm(h.j1n) + m.s1n * m.s1n - bound_direct)});
        r.complementarity = std::max({r.complementarity, std::abs(m.lam1a * m.s1a), std::abs(m.laman * m.san),
                                      std::abs(m.lam1n * m.s1n)});
    }
    const double h = traj.dt;
    for (std::size_t k = 1; k + 2 < k_max; ++k) {
        const Matrix3c df = (f[k - 1] - 27.0 * f[k] + 27.0 * f[k + 1] - f[k + 2]) / (24.0 * h);
        const Matrix3c gm = (-g[k - 1] + 9.0 * g[k] + 9.0 * g[k + 1] - g[k + 2]) / 16.0;
        r.qb = std::max(r.qb, (kI * df - gm).norm());
    }
    return r;
}

QBMultipliers stationary_multipliers(int case_id, int n, double j0, double j1n_bar) {
    require_problem(n, j0);
    QBMultipliers m;
    const double a = std::sqrt(static_cast<double>(n - 2)) * j0;
    switch (case_id) {
        case 6:
            m.lam1n = 1.0 / (2.0 * j0 * j0);
            m.s1a = a;
            m.san = a;
            return m;
        case 7:
        case 8: {
            const double j = case_id == 8 ? j0 : checked_j1n_bar(j1n_bar, j0);
            const double lam = 1.0 / (4.0 * (n - 2) * j0 * j0);
            m.lam1a = lam;
            m.laman = lam;
            m.lam2 = -2.0 * j * lam / 3.0;
            m.s1n = std::sqrt(std::max(0.0, j0 * j0 - j * j));
            return m;
        }
        default:
            break;
    }
    throw Error(ErrorKind::UnsupportedCase, "no constant stationary solution for case " + std::to_string(case_id));
}

QBTrajectory case_trajectory(int case_id, int n, double j0, double j1n_bar, int samples) {
    if (samples < 4) throw Error(ErrorKind::ContractViolation, "need at least four samples");
    const QBMultipliers m = stationary_multipliers(case_id, n, j0, j1n_bar);
    CaseParams p;
    p.n = n;
    p.j0 = j0;
    p.j1n_bar = j1n_bar;
    p.c1a = 4.0 * std::abs(j1n_bar);
    const double t_min = *case_minimum_time(case_id, n, j0, j1n_bar);

    Effective3 h = Effective3::from_matrix(case_hamiltonian(case_id, p));
    // The |phi_3> energy is a global phase; drop it so the frame is the one
    // where the target level is at rest.
    const double shift = h.dn;
    h.d1 -= shift;
    h.da -= shift;
    h.dn = 0.0;
    const InteractionSchedule frame = to_interaction_picture({{t_min, h}});

    QBTrajectory traj;
    traj.dt = t_min / (samples - 1);
    traj.h.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) traj.h.push_back(frame.at(k * traj.dt));
    traj.m.assign(static_cast<std::size_t>(samples), m);
    return traj;
}

std::optional<double> case_minimum_time(int case_id, int n, double j0, std::optional<double> j1n_bar) {
    require_problem(n, j0);
    const auto& spec = case_spec(case_id);
    if (!spec.has_minimum) return std::nullopt;
    constexpr double pi = std::numbers::pi;
    switch (case_id) {
        case 6: return pi / (2.0 * j0);
        case 7: {
            if (!j1n_bar) throw Error(ErrorKind::ContractViolation, "case 7 needs j1n_bar");
            const double j = checked_j1n_bar(*j1n_bar, j0);
            return pi / std::sqrt(2.0 * (n - 2) * j0 * j0 + 4.0 * j * j);
        }
        default: return pi / (j0 * std::sqrt(2.0 * n));
    }
}

Matrix3c case_hamiltonian(int case_id, const CaseParams& p) {
    require_problem(p.n, p.j0);
    const double a = std::sqrt(static_cast<double>(p.n - 2)) * p.j0;
    Matrix3c h = Matrix3c::Zero();
    switch (case_id) {
        case 6:
            h(0, 2) = std::polar(p.j0, -p.phi1n);
            h(2, 0) = std::conj(h(0, 2));
            return h;
        case 7:
        case 8: {
            const double j = case_id == 8 ? p.j0 : checked_j1n_bar(p.j1n_bar, p.j0);
            const double c = case_id == 8 ? 4.0 * p.j0 : p.c1a;
            h << c - j, a, j, a, 0.0, a, j, a, c - j;
            return h;
        }
        default:
            break;
    }
    throw Error(ErrorKind::UnsupportedCase, "no closed-form unitary for case " + std::to_string(case_id));
}

Matrix3c mirror_family_unitary(double c, double a, double d, int sigma, double t) {
    if (sigma != 1 && sigma != -1) throw Error(ErrorKind::ContractViolation, "sigma must be +1 or -1");
    const double s = sigma;
    const double kappa = c + s * d;
    const double mu = c - s * d;
    const double omega = std::sqrt(kappa * kappa + 8.0 * a * a);
    const Complex env = std::polar(1.0, -kappa * t / 2.0);
    const double cw = std::cos(omega * t / 2.0);
    const double sw = std::sin(omega * t / 2.0);
    const double k_ratio = omega > 0.0 ? kappa / omega : 0.0;
    const double a_ratio = omega > 0.0 ? 2.0 * std::sqrt(2.0) * a / omega : 0.0;
    const Complex bqq = env * Complex(cw, -k_ratio * sw);
    const Complex bq2 = env * Complex(0.0, -a_ratio * sw);
    const Complex b22 = env * Complex(cw, k_ratio * sw);
    const Complex iso = std::polar(1.0, -mu * t);

    const Complex u11 = 0.5 * (bqq + iso);
    const Complex u13 = s * (u11 - iso);
    const Complex u12 = bq2 / std::sqrt(2.0);
    Matrix3c u;
    u << u11, u12, u13, u12, b22, s * u12, u13, s * u12, u11;
    return u;
}

Matrix3c case_unitary(int case_id, const CaseParams& p, double t) {
    require_problem(p.n, p.j0);
    switch (case_id) {
        case 6: {
            const double cs = std::cos(p.j0 * t);
            const double sn = std::sin(p.j0 * t);
            Matrix3c u = Matrix3c::Zero();
            u(0, 0) = cs;
            u(1, 1) = 1.0;
            u(2, 2) = cs;
            u(0, 2) = -kI * std::polar(1.0, -p.phi1n) * sn;
            u(2, 0) = -kI * std::polar(1.0, p.phi1n) * sn;
            return u;
        }
        case 7:
        case 8: {
            const Matrix3c h = case_hamiltonian(case_id, p);
            return mirror_family_unitary(h(0, 0).real(), h(0, 1).real(), h(0, 2).real(), 1, t);
        }
        default:
            break;
    }
    throw Error(ErrorKind::UnsupportedCase, "no closed-form unitary for case " + std::to_string(case_id));
}

LemmaScanReport lemma_grid_scan(double q, double r, int x_max) {
    if (x_max < 1) throw Error(ErrorKind::ContractViolation, "x_max must be >= 1");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto g_of = [q](double x, double y) { return x / std::sqrt(q * q + y * y); };
    LemmaScanReport rep;
    rep.minimum = std::numeric_limits<double>::infinity();
    for (int xi = 1; xi <= x_max; ++xi) {
        const double x = xi;
        LemmaScanRow row{xi, nan, nan};
        const double arg_plus = r * r * x * x - (2.0 * x + 1.0) * q * q;
        if (arg_plus >= 0.0) {
            const double y = -(r * x * x + (x + 1.0) * std::sqrt(arg_plus)) / (2.0 * x + 1.0);
            row.g_plus = g_of(x, y);
        }
        const double arg_minus = r * r * x * x + (2.0 * x - 1.0) * q * q;
        if (arg_minus >= 0.0) {
            const double y = -(r * x * x + (x - 1.0) * std::sqrt(arg_minus)) / (2.0 * x - 1.0);
            row.g_minus = g_of(x, y);
        }
        if (!std::isnan(row.g_plus) && row.g_plus < rep.minimum) {
            rep.minimum = row.g_plus;
            rep.minimizer_x = xi;
            rep.minimizer_branch = 1;
        }
        if (!std::isnan(row.g_minus) && row.g_minus < rep.minimum) {
            rep.minimum = row.g_minus;
            rep.minimizer_x = xi;
            rep.minimizer_branch = -1;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

std::string case_table_csv(int n, double j0, std::optional<double> j1n_bar) {
    require_problem(n, j0);
    const double jbar = j1n_bar.value_or(j0);
    checked_j1n_bar(jbar, j0);
    std::ostringstream out;
    out << "case_id,zero_multipliers,zero_slacks,has_minimum,T_min\n";
    for (const auto& spec : case_catalog()) {
        out << spec.id << ',' << join(spec.zero_multipliers) << ',' << join(spec.zero_slacks) << ','
            << (spec.has_minimum ? "true" : "false") << ',';
        const auto t = case_minimum_time(spec.id, n, j0, jbar);
        if (t) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.15g", *t);
            out << buf;
        } else {
            out << "none";
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace fcqst
