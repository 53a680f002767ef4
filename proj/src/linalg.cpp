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

#include "mubqct/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mubqct::linalg {

RVector hermitian_eigenvalues(const CMatrix& h) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigenvalues: solver did not converge");
    }
    return solver.eigenvalues();
}

double largest_eigenvalue(const CMatrix& h) {
    const RVector ev = hermitian_eigenvalues(h);
    return ev(ev.size() - 1);
}

double operator_norm(const CMatrix& a) {
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues()(0);
}

double trace_norm_hermitian(const CMatrix& h) {
    return hermitian_eigenvalues(h).cwiseAbs().sum();
}

double hermiticity_deviation(const CMatrix& a) {
    if (a.rows() != a.cols()) return INFINITY;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix kron_power(const CMatrix& a, int power) {
    if (power < 1) throw std::invalid_argument("kron_power: power must be >= 1");
    CMatrix out = a;
    for (int p = 1; p < power; ++p) out = kron(out, a);
    return out;
}

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

bool is_density_matrix(const CMatrix& rho, double tol) {
    if (rho.rows() == 0 || rho.rows() != rho.cols()) return false;
    if (hermiticity_deviation(rho) > tol) return false;
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) return false;
    const RVector ev = hermitian_eigenvalues(0.5 * (rho + rho.adjoint()));
    return ev(0) >= -tol;
}

}  // namespace mubqct::linalg
