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

#include "mubqct/privacy_amplification.hpp"

#include <stdexcept>

#include "mubqct/rng.hpp"

namespace mubqct::qct {

BitString privacy_amplify(std::span<const std::uint8_t> bits, std::uint64_t seed,
                          std::size_t out_len) {
    const std::size_t n = bits.size();
    if (out_len > n) throw std::invalid_argument("privacy_amplify: out_len exceeds input length");
    for (auto b : bits) {
        if (b > 1) throw std::invalid_argument("privacy_amplify: input must be a bit string");
    }
    if (out_len == 0) return {};

    // diag[k] is the constant value on diagonal (i - j) = k - (n - 1).
    const std::size_t diag_len = n + out_len - 1;
    BitString diag(diag_len);
    Rng rng(seed);
    for (std::size_t k = 0; k < diag_len; k += 64) {
        const std::uint64_t word = rng();
        for (std::size_t b = 0; b < 64 && k + b < diag_len; ++b) {
            diag[k + b] = static_cast<std::uint8_t>((word >> b) & 1u);
        }
    }

    BitString out(out_len, 0);
    for (std::size_t i = 0; i < out_len; ++i) {
        std::uint8_t acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc ^= diag[i + n - 1 - j] & bits[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace mubqct::qct
