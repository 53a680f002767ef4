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

#include "mubqct/galois_field.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace mubqct::galois {
namespace {

// x+1, x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, x^6+x+1, x^7+x+1,
// x^8+x^4+x^3+x+1
constexpr std::array<std::uint32_t, 9> kModuli = {
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11B,
};

int degree(std::uint32_t p) { return p == 0 ? -1 : 31 - std::countl_zero(p); }

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t m) {
    const int dm = degree(m);
    for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
    return a;
}

}  // namespace

std::uint32_t irreducible_polynomial(int k) {
    if (k < 1 || k > Gf2k::kMaxExponent) {
        throw std::out_of_range("GF(2^k): k must be in [1, 8], got " + std::to_string(k));
    }
    return kModuli[static_cast<std::size_t>(k)];
}

bool is_irreducible(std::uint32_t poly) {
    const int n = degree(poly);
    if (n < 1) return false;
    for (std::uint32_t q = 2; degree(q) <= n / 2; ++q) {
        if (poly_mod(poly, q) == 0) return false;
    }
    return true;
}

Gf2k::Gf2k(int k) : k_(k), modulus_(irreducible_polynomial(k)) {}

std::uint32_t Gf2k::mul(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t r = 0;
    const std::uint32_t top = 1u << k_;
    while (b != 0) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= modulus_;
    }
    return r;
}

std::uint32_t Gf2k::pow(std::uint32_t a, std::uint32_t e) const {
    std::uint32_t r = 1;
    while (e != 0) {
        if (e & 1u) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t Gf2k::inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("GF(2^k): zero has no inverse");
    return pow(a, order() - 2);
}

std::uint32_t Gf2k::trace(std::uint32_t a) const {
    std::uint32_t s = 0;
    std::uint32_t t = a;
    for (int i = 0; i < k_; ++i) {
        s ^= t;
        t = mul(t, t);
    }
    return s;
}

}  // namespace mubqct::galois
