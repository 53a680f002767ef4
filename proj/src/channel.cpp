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

#include "mubqct/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace mubqct::rate {

double transmittance(double length_km, double attenuation_db_per_km) {
    if (!(length_km >= 0.0)) throw std::invalid_argument("transmittance: length must be >= 0");
    if (!(attenuation_db_per_km > 0.0)) {
        throw std::invalid_argument("transmittance: attenuation must be > 0");
    }
    return std::pow(10.0, -attenuation_db_per_km * length_km / 10.0);
}

double ChannelModel::transmittance() const {
    return rate::transmittance(length_km, attenuation_db_per_km);
}

void DetectorModel::validate() const {
    if (!(efficiency > 0.0 && efficiency <= 1.0)) {
        throw std::invalid_argument("detector efficiency must be in (0, 1]");
    }
    if (!(visibility > 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("detector visibility must be in (0, 1]");
    }
    if (!(dark_count >= 0.0 && dark_count < 1.0)) {
        throw std::invalid_argument("dark-count probability must be in [0, 1)");
    }
    if (detectors < 2) throw std::invalid_argument("at least two detectors are required");
}

const std::vector<DetectorProfile>& detector_presets() {
    static const std::vector<DetectorProfile> presets = {
        {"ingaas_field", {0.20, 0.99, 1e-5, 2},
         "typical InGaAs field values; stand-in, not published with the original curves"},
        {"snspd_lab", {0.66, 0.995, 1e-8, 2},
         "SNSPD efficiency and dark counts from the 421 km experiment; visibility chosen"},
    };
    return presets;
}

std::optional<DetectorProfile> find_preset(std::string_view name) {
    for (const auto& p : detector_presets()) {
        if (p.name == name) return p;
    }
    return std::nullopt;
}

}  // namespace mubqct::rate
