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

#include "mubqct/channel.hpp"

namespace mubqct::oracles {

struct DetectionMcResult {
    std::size_t samples = 0;
    double p_right = 0;  // mean per-round weight of correct-class events
    double p_wrong = 0;
    double p_c = 0;      // R / (R + W)
    double p_e = 0;
    double sigma_c = 0;  // delta-method standard error of p_c
};

/// Event-level Monte Carlo of one channel use: photon arrivals, per-photon
/// routing with visibility V, and independent dark counts in every detector.
/// Each round adds the indicator of every right/wrong event class it belongs
/// to; a dark count in any of the n-1 wrong detectors counts once per
/// detector.
DetectionMcResult simulate_detection_events(double transmittance, const rate::DetectorModel& det,
                                            const rate::PhotonSource& photons, std::size_t samples,
                                            std::uint64_t seed);

}  // namespace mubqct::oracles
