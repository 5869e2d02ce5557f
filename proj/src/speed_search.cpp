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

#include "fcqst/speed_search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "fcqst/error.hpp"
#include "fcqst/propagator.hpp"
#include "fcqst/rng.hpp"

namespace fcqst {

namespace {

Complex clip(Complex z, double bound) {
    const double m = std::abs(z);
    return m > bound ? z * (bound / m) : z;
}

bool on_bound(Complex z, double bound) { return std::abs(z) >= bound * (1.0 - 1e-9); }

// Flat parameter vector <-> pulse, one fixed-width block per segment.
//   Complex:       re/im j1a, re/im jan, re/im j1n, d1, da, dn
//   Real:          j1a, jan, j1n, d1, da, dn
//   RealSymmetric: j1a = jan, j1n, d1 = dn, da
class Layout {
public:
    Layout(int n, double j0, double total_time, int segments, Controls controls)
        : n_(n), j0_(j0), total_(total_time), segments_(segments), controls_(controls) {}

    int per_segment() const {
        switch (controls_) {
            case Controls::Complex: return 9;
            case Controls::Real: return 6;
            case Controls::RealSymmetric: return 4;
        }
        return 0;
    }
    int size() const { return per_segment() * segments_; }
    int segments() const { return segments_; }
    double dt() const { return total_ / segments_; }

    PulseSegment segment(const double* v) const {
        PulseSegment seg;
        switch (controls_) {
            case Controls::Complex:
                seg = {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, v[6], v[7], v[8]};
                break;
            case Controls::Real:
                seg = {v[0], v[1], v[2], v[3], v[4], v[5]};
                break;
            case Controls::RealSymmetric:
                seg = {v[0], v[0], v[1], v[2], v[3], v[2]};
                break;
        }
        return seg;
    }

    void store(const PulseSegment& seg, double* v) const {
        switch (controls_) {
            case Controls::Complex: {
                const double w[9] = {seg.j1a.real(), seg.j1a.imag(), seg.jan.real(), seg.jan.imag(),
                                     seg.j1n.real(), seg.j1n.imag(), seg.d1, seg.da, seg.dn};
                std::copy(w, w + 9, v);
                break;
            }
            case Controls::Real: {
                const double w[6] = {seg.j1a.real(), seg.jan.real(), seg.j1n.real(), seg.d1, seg.da, seg.dn};
                std::copy(w, w + 6, v);
                break;
            }
            case Controls::RealSymmetric: {
                const double w[4] = {seg.j1a.real(), seg.j1n.real(), seg.d1, seg.da};
                std::copy(w, w + 4, v);
                break;
            }
        }
    }

    PulseParams unpack(const Eigen::VectorXd& x) const {
        PulseParams p{n_, j0_, total_, std::vector<PulseSegment>(static_cast<std::size_t>(segments_))};
        for (int s = 0; s < segments_; ++s) p.segments[static_cast<std::size_t>(s)] = segment(x.data() + s * per_segment());
        return p;
    }

    Eigen::VectorXd pack(const PulseParams& p) const {
        Eigen::VectorXd x(size());
        for (int s = 0; s < segments_; ++s) store(p.segments[static_cast<std::size_t>(s)], x.data() + s * per_segment());
        return x;
    }

    Eigen::VectorXd project(const Eigen::VectorXd& x) const { return pack(project_to_bounds(unpack(x))); }

    Eigen::VectorXd random_start(Rng& rng) const {
        const double b_mid = std::sqrt(static_cast<double>(n_ - 2)) * j0_;
        PulseParams p{n_, j0_, total_, std::vector<PulseSegment>(static_cast<std::size_t>(segments_))};
        const auto draw = [&](double bound) {
            if (controls_ != Controls::Complex) return Complex(bound * rng.uniform(-1.0, 1.0), 0.0);
            const double r = bound * std::sqrt(rng.uniform());
            return std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
        };
        for (auto& seg : p.segments) {
            seg.j1a = draw(b_mid);
            seg.jan = draw(b_mid);
            seg.j1n = draw(j0_);
            seg.d1 = rng.uniform(-5.0, 5.0) * j0_;
            seg.da = rng.uniform(-5.0, 5.0) * j0_;
            seg.dn = rng.uniform(-5.0, 5.0) * j0_;
        }
        return pack(p);
    }

private:
    int n_;
    double j0_;
    double total_;
    int segments_;
    Controls controls_;
};

Matrix3c segment_unitary(const PulseSegment& seg, double dt) {
    const Effective3 h{seg.j1a, seg.jan, seg.j1n, seg.d1, seg.da, seg.dn};
    Eigen::SelfAdjointEigenSolver<Matrix3c> es(h.matrix());
    Eigen::Vector3cd ph;
    for (int k = 0; k < 3; ++k) ph[k] = std::polar(1.0, -es.eigenvalues()[k] * dt);
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

struct RestartOutcome {
    Eigen::VectorXd x;
    double value = 0.0;
    long evaluations = 0;
};

class Climber {
public:
    Climber(const Layout& layout, const OptimizerConfig& cfg) : layout_(layout), cfg_(cfg) {}

    // |u31|^2 with fixed-size 3x3 decompositions; the inner loop of the search.
    double value(const Eigen::VectorXd& x) {
        ++evaluations_;
        if (layout_.dt() <= 0.0) return 0.0;
        Eigen::Vector3cd psi(1.0, 0.0, 0.0);
        for (int s = 0; s < layout_.segments(); ++s) {
            psi = segment_unitary(layout_.segment(x.data() + s * layout_.per_segment()), layout_.dt()) * psi;
        }
        return std::norm(psi[2]);
    }

    // Central differences. A parameter of segment s only changes U_s, so each
    // probe costs one 3x3 decomposition: amp = chi_s U_s psi_s.
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) {
        const int k_seg = layout_.segments();
        const int width = layout_.per_segment();
        const double dt = layout_.dt();
        std::vector<Matrix3c> u(static_cast<std::size_t>(k_seg));
        std::vector<Eigen::Vector3cd> psi(static_cast<std::size_t>(k_seg) + 1);
        psi[0] = Eigen::Vector3cd(1.0, 0.0, 0.0);
        for (int s = 0; s < k_seg; ++s) {
            u[static_cast<std::size_t>(s)] = segment_unitary(layout_.segment(x.data() + s * width), dt);
            psi[static_cast<std::size_t>(s) + 1] = u[static_cast<std::size_t>(s)] * psi[static_cast<std::size_t>(s)];
        }
        ++evaluations_;
        Eigen::RowVector3cd chi(0.0, 0.0, 1.0);
        Eigen::VectorXd g(layout_.size());
        for (int s = k_seg - 1; s >= 0; --s) {
            double block[9];
            std::copy(x.data() + s * width, x.data() + (s + 1) * width, block);
            for (int i = 0; i < width; ++i) {
                const double h = cfg_.fd_step * std::max(1.0, std::abs(block[i]));
                const double keep = block[i];
                block[i] = keep + h;
                const double up = std::norm((chi * segment_unitary(layout_.segment(block), dt) * psi[static_cast<std::size_t>(s)])(0));
                block[i] = keep - h;
                const double dn = std::norm((chi * segment_unitary(layout_.segment(block), dt) * psi[static_cast<std::size_t>(s)])(0));
                block[i] = keep;
                g[s * width + i] = (up - dn) / (2.0 * h);
            }
            chi = chi * u[static_cast<std::size_t>(s)];
        }
        evaluations_ += 2L * layout_.size();
        return g;
    }

    RestartOutcome run(Eigen::VectorXd x) {
        x = layout_.project(x);
        double f = value(x);
        double alpha = 1.0;
        double delta = 0.1;  // coordinate-search step, kept across fallbacks
        double checkpoint = f;

        // One pass of coordinate search at the current step, shrinking it on failure.
        const auto coordinate_search = [&]() {
            while (delta >= 1e-9) {
                bool improved = false;
                for (int i = 0; i < layout_.size(); ++i) {
                    for (const double sgn : {1.0, -1.0}) {
                        Eigen::VectorXd trial = x;
                        trial[i] += sgn * delta;
                        trial = layout_.project(trial);
                        const double ft = value(trial);
                        if (ft > f) {
                            x = trial;
                            f = ft;
                            improved = true;
                            break;
                        }
                    }
                }
                if (improved) return true;
                delta *= 0.1;
            }
            return false;
        };

        for (int it = 0; it < cfg_.max_iterations && 1.0 - f > cfg_.converged_infidelity; ++it) {
            const Eigen::VectorXd g = gradient(x);
            bool accepted = false;
            if (g.norm() > 0.0) {
                for (int tries = 0; tries < 60 && alpha >= 1e-14; ++tries) {
                    const Eigen::VectorXd trial = layout_.project(x + alpha * g);
                    const double ft = value(trial);
                    if (ft > f && ft >= f + 1e-4 * g.dot(trial - x)) {
                        x = trial;
                        f = ft;
                        alpha = std::min(alpha * 2.0, 1e6);
                        accepted = true;
                        break;
                    }
                    alpha *= 0.5;
                }
            }
            if (!accepted) {
                alpha = 1.0;
                if (!coordinate_search()) break;
            }
            // Stagnation: a full window without meaningful progress ends the restart.
            if ((it + 1) % 100 == 0) {
                if (f - checkpoint < 1e-12 * std::max(1e-3, 1.0 - f)) break;
                checkpoint = f;
            }
        }
        return {x, f, evaluations_};
    }

private:
    const Layout& layout_;
    const OptimizerConfig& cfg_;
    long evaluations_ = 0;
};

}  // namespace

const char* to_string(Controls c) noexcept {
    switch (c) {
        case Controls::Complex: return "complex";
        case Controls::Real: return "real";
        case Controls::RealSymmetric: return "real-symmetric";
    }
    return "?";
}

double PulseParams::bound_1a() const { return std::sqrt(static_cast<double>(n - 2)) * j0; }

Effective3Schedule PulseParams::schedule() const {
    Effective3Schedule s;
    const double dt = total_time / n_segments();
    for (const auto& seg : segments) s.push_back({dt, Effective3{seg.j1a, seg.jan, seg.j1n, seg.d1, seg.da, seg.dn}});
    return s;
}

PulseParams project_to_bounds(PulseParams p) {
    for (auto& seg : p.segments) {
        seg.j1a = clip(seg.j1a, p.bound_1a());
        seg.jan = clip(seg.jan, p.bound_an());
        seg.j1n = clip(seg.j1n, p.bound_1n());
    }
    return p;
}

bool touches_bound(const PulseParams& p) {
    return std::any_of(p.segments.begin(), p.segments.end(), [&](const PulseSegment& s) {
        return on_bound(s.j1a, p.bound_1a()) || on_bound(s.jan, p.bound_an()) || on_bound(s.j1n, p.bound_1n());
    });
}

double pulse_fidelity(const PulseParams& p) {
    if (p.total_time <= 0.0 || p.segments.empty()) return 0.0;
    const CMatrix u = evolve_schedule(to_control_schedule(p.schedule()));
    return transfer_fidelity(u, Basis::Effective3);
}

SearchResult optimize_pulse(int n, double j0, double total_time, const OptimizerConfig& cfg) {
    if (n < 3) throw Error(ErrorKind::InvalidSize, "need n >= 3");
    if (!(j0 > 0.0)) throw Error(ErrorKind::DomainError, "j0 must be positive");
    if (cfg.n_segments < 1 || cfg.restarts < 1) throw Error(ErrorKind::ContractViolation, "need segments >= 1 and restarts >= 1");
    if (!(total_time >= 0.0)) throw Error(ErrorKind::DomainError, "total time must be nonnegative");

    const Layout layout(n, j0, total_time, cfg.n_segments, cfg.controls);
    SearchResult best;
    best.seed = cfg.seed;
    best.best_fidelity = -1.0;
    for (int r = 0; r < cfg.restarts; ++r) {
        Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(r));
        const Eigen::VectorXd start = layout.random_start(rng);
        RestartOutcome o = total_time > 0.0 ? Climber(layout, cfg).run(start) : RestartOutcome{layout.project(start), 0.0, 0};
        best.evaluations += o.evaluations;
        const PulseParams pulse = layout.unpack(o.x);
        if (touches_bound(pulse)) ++best.restarts_hit_bound;
        const double fid = pulse_fidelity(pulse);
        if (fid > best.best_fidelity) {
            best.best_fidelity = fid;
            best.best_pulse = pulse;
            best.best_restart = r;
        }
    }
    best.best_fidelity = std::clamp(best.best_fidelity, 0.0, 1.0);
    return best;
}

BisectionResult min_time_bisection(int n, double j0, double fid_target, double time_tol, const OptimizerConfig& cfg) {
    if (!(time_tol > 0.0)) throw Error(ErrorKind::DomainError, "time_tol must be positive");
    BisectionResult res;
    if (fid_target <= 0.0) {
        res.t_star = 0.0;
        return res;
    }
    if (fid_target >= 1.0) throw Error(ErrorKind::DomainError, "fidelity target must be below 1");

    const auto sample = [&](double t) {
        const SearchResult s = optimize_pulse(n, j0, t, cfg);
        res.samples.push_back({t, s.best_fidelity, s.evaluations, s.restarts_hit_bound});
        return s.best_fidelity >= fid_target;
    };
    double lo = 0.0;
    double hi = 2.0 * std::numbers::pi / (j0 * std::sqrt(2.0 * n));
    if (!sample(hi)) {
        res.t_star = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    while (hi - lo > time_tol) {
        const double mid = 0.5 * (lo + hi);
        (sample(mid) ? hi : lo) = mid;
    }
    res.t_star = hi;

    auto sorted = res.samples;
    std::sort(sorted.begin(), sorted.end(),
              [](const BisectionSample& a, const BisectionSample& b) { return a.total_time < b.total_time; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            if (sorted[j].best_fidelity < std::min(sorted[i].best_fidelity, fid_target) - 1e-6) res.monotonicity_warning = true;
        }
    }
    return res;
}

std::string bisection_csv(const BisectionResult& r) {
    std::ostringstream out;
    out << kBisectionHeader << '\n';
    char buf[160];
    for (const auto& s : r.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%ld,%d\n", s.total_time, s.best_fidelity, s.evaluations,
                      s.restarts_hit_bound);
        out << buf;
    }
    return out.str();
}

}  // namespace fcqst
