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
#include <cstdint>
#include <span>
#include <vector>

namespace mubqct::qct {

using BitString = std::vector<std::uint8_t>;

/// Seeded Toeplitz hashing over GF(2): out = T(seed) · bits, where the
/// out_len × n Toeplitz matrix is defined by n + out_len - 1 bits drawn from
/// a generator seeded with `seed`. Throws std::invalid_argument if
/// out_len > bits.size() or an input entry is not 0/1.
BitString privacy_amplify(std::span<const std::uint8_t> bits, std::uint64_t seed,
                          std::size_t out_len);

}  // namespace mubqct::qct
