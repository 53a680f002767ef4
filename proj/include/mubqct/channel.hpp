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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mubqct::rate {

/// Fiber attenuation and length.
struct ChannelModel {
    double attenuation_db_per_km = 0.2;
    double length_km = 0.0;

    /// 10^(-αL/10)
    double transmittance() const;
};

/// T = 10^(-αL/10). Throws std::invalid_argument for L < 0 or α <= 0.
double transmittance(double length_km, double attenuation_db_per_km = 0.2);

/// Bob's threshold detectors.
struct DetectorModel {
    double efficiency = 1.0;   // η ∈ (0, 1]
    double visibility = 1.0;   // V ∈ (0, 1]
    double dark_count = 0.0;   // p_dark per detector per gate, [0, 1)
    int detectors = 2;         // n

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

struct DetectorProfile {
    std::string name;
    DetectorModel model;
    std::string provenance;
};

/// "snspd_lab": η=0.66, p_dark=1e-8, V=0.995. "ingaas_field": η=0.20,
/// p_dark=1e-5, V=0.99 (stand-in values; no published numbers).
const std::vector<DetectorProfile>& detector_presets();
std::optional<DetectorProfile> find_preset(std::string_view name);

/// Photons per channel use: a fixed number of copies or a Poisson number
/// with mean μ.
struct PhotonSource {
    enum class Kind { kFixed, kPoisson };
    Kind kind = Kind::kFixed;
    int copies = 1;
    double mean = 0.0;

    static PhotonSource fixed(int m) { return {Kind::kFixed, m, static_cast<double>(m)}; }
    static PhotonSource poisson(double mu) { return {Kind::kPoisson, 0, mu}; }
    double mean_photons() const { return kind == Kind::kFixed ? copies : mean; }
};

}  // namespace mubqct::rate
