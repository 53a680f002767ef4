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

#include <cstdint>

namespace mubqct::galois {

/// Arithmetic in GF(2^k), 1 <= k <= 8, with elements stored as bit vectors
/// in the polynomial basis {1, α, ..., α^(k-1)}. Addition is XOR.
class Gf2k {
   public:
    static constexpr int kMaxExponent = 8;

    /// Throws std::out_of_range unless 1 <= k <= 8.
    explicit Gf2k(int k);

    int exponent() const { return k_; }
    std::uint32_t order() const { return 1u << k_; }
    /// Defining polynomial including the x^k term.
    std::uint32_t modulus() const { return modulus_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t a, std::uint32_t e) const;
    /// Multiplicative inverse; throws std::domain_error for 0.
    std::uint32_t inv(std::uint32_t a) const;
    /// Absolute trace Tr(a) = a + a^2 + a^4 + ... + a^(2^(k-1)), in {0, 1}.
    std::uint32_t trace(std::uint32_t a) const;

   private:
    int k_;
    std::uint32_t modulus_;
};

/// Irreducible polynomial used for GF(2^k); the table is fixed so every
/// build constructs identical fields.
std::uint32_t irreducible_polynomial(int k);

/// Brute-force irreducibility test over GF(2)[x] by trial division.
bool is_irreducible(std::uint32_t poly);

}  // namespace mubqct::galois
