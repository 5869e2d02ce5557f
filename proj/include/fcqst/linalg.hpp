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

#include <complex>

#include <Eigen/Dense>

namespace fcqst {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Matrix3c = Eigen::Matrix3cd;

inline constexpr Complex kI{0.0, 1.0};

/// max_ij |A_ij - conj(A_ji)|
double hermiticity_defect(const CMatrix& a);

/// max_ij |(U^dagger U - I)_ij|
double unitarity_defect(const CMatrix& u);

double max_abs(const CMatrix& a);

/// Spectral decomposition of a Hermitian matrix, H = V diag(w) V^dagger.
/// Real-valued inputs take the real symmetric path, which is several times
/// cheaper and returns real eigenvectors.
struct HermitianEigen {
    Eigen::VectorXd values;
    CMatrix vectors;
};

HermitianEigen hermitian_eigen(const CMatrix& h);

/// Number of LAPACK results rejected by the built-in sanity probe and
/// recomputed with Eigen. Nonzero means the system BLAS is misbehaving.
long lapack_fallback_count() noexcept;

}  // namespace fcqst
