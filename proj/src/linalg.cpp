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

#include "fcqst/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "fcqst/error.hpp"

namespace fcqst {

namespace {

// LAPACK divide-and-conquer pays off only once the matrix is large enough to
// amortize the call overhead.
constexpr Eigen::Index kLapackThreshold = 16;

std::atomic<long> g_fallbacks{0};

bool is_real(const CMatrix& h) { return h.imag().cwiseAbs().maxCoeff() == 0.0; }

// Some optimized BLAS builds return garbage on CPUs they misdetect. Probe the
// decomposition with a fixed pseudo-random vector: O(n^2) against the O(n^3)
// solve, and it catches wrong eigenvectors with overwhelming probability.
bool plausible(const CMatrix& h, const HermitianEigen& e) {
    const auto n = h.rows();
    CVector x(n);
    std::uint64_t s = 0x243F6A8885A308D3ULL;
    for (Eigen::Index i = 0; i < n; ++i) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        x[i] = static_cast<double>(s >> 11) * 0x1.0p-53 - 0.5;
    }
    const CVector y = e.vectors * x;
    const CVector lx = e.values.cast<Complex>().cwiseProduct(x);
    const double scale = std::max({1.0, e.values.cwiseAbs().maxCoeff(), max_abs(h)});
    const double tol = 1e-10 * static_cast<double>(n) * x.norm();
    const bool eigen_ok = (h * y - e.vectors * lx).norm() <= tol * scale;
    const bool ortho_ok = (e.vectors.adjoint() * y - x).norm() <= tol;
    return eigen_ok && ortho_ok && e.values.allFinite();
}

template <class M>
HermitianEigen eigen_solve(const M& a) {
    Eigen::SelfAdjointEigenSolver<M> es(a);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::DomainError, "eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors().template cast<Complex>()};
}

std::optional<HermitianEigen> lapack_real(const CMatrix& h) {
    const auto n = h.rows();
    Eigen::MatrixXd a = h.real();
    HermitianEigen out;
    out.values.resize(n);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<lapack_int>(n), a.data(),
                                           static_cast<lapack_int>(n), out.values.data());
    if (info != 0) return std::nullopt;
    out.vectors = a.cast<Complex>();
    return out;
}

std::optional<HermitianEigen> lapack_complex(const CMatrix& h) {
    const auto n = h.rows();
    HermitianEigen out;
    out.vectors = h;
    out.values.resize(n);
    const lapack_int info =
        LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<lapack_int>(n),
                       reinterpret_cast<lapack_complex_double*>(out.vectors.data()), static_cast<lapack_int>(n),
                       out.values.data());
    if (info != 0) return std::nullopt;
    return out;
}

}  // namespace

double hermiticity_defect(const CMatrix& a) {
    if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const CMatrix& u) {
    if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
    if (u.size() == 0) return 0.0;
    return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

HermitianEigen hermitian_eigen(const CMatrix& h) {
    if (h.rows() != h.cols()) {
        throw Error(ErrorKind::ContractViolation, "eigendecomposition needs a square matrix");
    }
    if (h.size() == 0) return {};
    const bool real = is_real(h);
    if (h.rows() <= kLapackThreshold) return real ? eigen_solve(Eigen::MatrixXd(h.real())) : eigen_solve(h);
    auto out = real ? lapack_real(h) : lapack_complex(h);
    if (out && plausible(h, *out)) return std::move(*out);
    g_fallbacks.fetch_add(1, std::memory_order_relaxed);
    return real ? eigen_solve(Eigen::MatrixXd(h.real())) : eigen_solve(h);
}

long lapack_fallback_count() noexcept { return g_fallbacks.load(std::memory_order_relaxed); }

}  // namespace fcqst
