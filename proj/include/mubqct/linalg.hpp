// Copyright 2026 The mubqct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mubqct {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

namespace linalg {

/// Eigenvalues of a Hermitian matrix in ascending order. Only the lower
/// triangle is read.
RVector hermitian_eigenvalues(const CMatrix& h);

double largest_eigenvalue(const CMatrix& h);

/// Operator (spectral) norm: largest singular value.
double operator_norm(const CMatrix& a);

/// Schatten-1 norm of a Hermitian matrix, Σ|λ_i|.
double trace_norm_hermitian(const CMatrix& h);

/// max_ij |a_ij - a_ji^*|
double hermiticity_deviation(const CMatrix& a);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix kron_power(const CMatrix& a, int power);

CMatrix projector(const CVector& v);

/// Checks Hermitian, unit trace and positive semidefinite within `tol`.
bool is_density_matrix(const CMatrix& rho, double tol);

}  // namespace linalg
}  // namespace mubqct
