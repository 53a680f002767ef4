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

#include <stdexcept>
#include <string>

namespace mubqct {

/// A request exceeds what an exact oracle can compute in reasonable time
/// (brute-force eigen solves, tensor-power density matrices).
class CapabilityError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A protocol-level constraint is violated, e.g. too many parties for the
/// dimension or a coherent-state mean photon number above the √d cap.
class ConstraintError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// The product-form click normalization is undefined for the
/// requested point (its click probability vanishes).
class DegenerateModeError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

}  // namespace mubqct
