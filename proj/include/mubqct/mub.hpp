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

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "mubqct/linalg.hpp"

namespace mubqct::galois {

/// Hilbert-space dimension d = 2^k.
class Dimension {
   public:
    static constexpr int kMaxExponent = 16;

    /// Throws std::out_of_range unless 1 <= k <= 16.
    static Dimension from_exponent(int k);
    /// Throws std::invalid_argument unless d is a power of two in [2, 2^16].
    static Dimension from_size(std::size_t d);

    int exponent() const { return k_; }
    std::size_t size() const { return std::size_t{1} << k_; }
    std::size_t half() const { return size() / 2; }
    std::size_t basis_count() const { return size() + 1; }

    friend bool operator==(Dimension, Dimension) = default;

   private:
    explicit Dimension(int k) : k_(k) {}
    int k_;
};

/// d+1 orthonormal bases of C^d. Column i of basis θ is |e^θ_i⟩; basis 0 is
/// the computational basis.
class MubFamily {
   public:
    /// Checks shape only (d+1 square d×d matrices); numerical properties are
    /// the verifier's job.
    MubFamily(Dimension dim, std::vector<CMatrix> bases);

    Dimension dimension() const { return dim_; }
    std::size_t d() const { return dim_.size(); }
    std::size_t basis_count() const { return bases_.size(); }
    const CMatrix& basis(std::size_t theta) const;
    const std::vector<CMatrix>& bases() const { return bases_; }

   private:
    Dimension dim_;
    std::vector<CMatrix> bases_;
};

/// Practical cap for the explicit construction; larger k up to 16 raises
/// CapabilityError.
inline constexpr int kMaxFamilyExponent = 8;

/// Full family for d = 2^k built from the maximal commuting classes of
/// k-qubit Pauli operators. Basis 1+s (s ∈ GF(2^k)) is the joint eigenbasis
/// of {X(b) Z(M_s b)}, where M_s[i][j] = Tr(s α^i α^j) is symmetric and
/// invertible for s ≠ 0; its vectors are
///     |e_c⟩ = d^{-1/2} Σ_x i^{x^T M_s x} (-1)^{c·x} |x⟩
/// with x^T M_s x evaluated over the integers mod 4.
/// Deterministic: the same k always yields a bit-identical family.
MubFamily build_mub_family(int k);

struct VerificationReport {
    bool passed = false;
    double tolerance = 0.0;
    // |‖e^θ_i‖ - 1| on the diagonal, |⟨e^θ_i|e^θ_j⟩| off it.
    double max_orthonormality_deviation = 0.0;
    std::size_t orth_theta = 0, orth_i = 0, orth_j = 0;
    // ||⟨e^θ1_i|e^θ2_j⟩| - 1/√d| over θ1 < θ2.
    double max_unbiasedness_deviation = 0.0;
    std::size_t unbiased_theta1 = 0, unbiased_theta2 = 0, unbiased_i = 0, unbiased_j = 0;
};

VerificationReport verify_unbiasedness(const MubFamily& family, double tol);

/// Column i of basis θ. Throws std::out_of_range on bad indices.
CVector basis_state(const MubFamily& family, std::size_t theta, std::size_t i);

/// Text export: header `d=<d> bases=<d+1>`, then one line per vector
/// `theta i re_0 im_0 ... re_{d-1} im_{d-1}` at 17 significant digits.
void write_family_text(std::ostream& out, const MubFamily& family);
/// Inverse of write_family_text. Throws std::runtime_error on malformed input.
MubFamily read_family_text(std::istream& in);

}  // namespace mubqct::galois
