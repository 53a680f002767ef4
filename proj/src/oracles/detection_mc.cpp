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

#include "mubqct/oracles/detection_mc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "mubqct/rng.hpp"

namespace mubqct::oracles {

DetectionMcResult simulate_detection_events(double transmittance, const rate::DetectorModel& det,
                                            const rate::PhotonSource& photons, std::size_t samples,
                                            std::uint64_t seed) {
    det.validate();
    if (samples == 0) throw std::invalid_argument("simulate_detection_events: samples must be > 0");
    const double q = transmittance * det.efficiency;
    Rng rng(seed);
    std::binomial_distribution<int> fixed_arrivals(photons.copies > 0 ? photons.copies : 1, q);
    std::poisson_distribution<int> poisson_arrivals(photons.mean > 0 ? photons.mean * q : 1.0);
    std::bernoulli_distribution dark(det.dark_count);
    const bool is_poisson = photons.kind == rate::PhotonSource::Kind::kPoisson;

    double sum_r = 0, sum_t = 0, sum_rr = 0, sum_tt = 0, sum_rt = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        int arrived = 0;
        if (is_poisson) {
            arrived = photons.mean > 0 && q > 0 ? poisson_arrivals(rng) : 0;
        } else {
            arrived = fixed_arrivals(rng);
        }
        int in_good = 0;
        if (arrived > 0) {
            std::binomial_distribution<int> routing(arrived, det.visibility);
            in_good = routing(rng);
        }
        const int in_bad = arrived - in_good;
        const bool good_dark = dark(rng);
        int bad_darks = 0;
        for (int i = 1; i < det.detectors; ++i) bad_darks += dark(rng) ? 1 : 0;
        const bool any_dark = good_dark || bad_darks > 0;

        const bool none = arrived == 0;
        const bool all_good = arrived > 0 && in_bad == 0;
        const bool all_bad = arrived > 0 && in_good == 0;

        double r = 0, w = 0;
        if (all_good && !any_dark) r += 1;
        if (none && good_dark) r += 1;
        if (all_good && good_dark) r += 1;
        if (all_bad && !any_dark) w += 1;
        if (none) w += bad_darks;
        if (all_bad) w += bad_darks;

        const double t = r + w;
        sum_r += r;
        sum_t += t;
        sum_rr += r * r;
        sum_tt += t * t;
        sum_rt += r * t;
    }

    const double n = static_cast<double>(samples);
    DetectionMcResult out;
    out.samples = samples;
    out.p_right = sum_r / n;
    out.p_wrong = (sum_t - sum_r) / n;
    if (sum_t > 0) {
        out.p_c = sum_r / sum_t;
        out.p_e = 1.0 - out.p_c;
        const double mt = sum_t / n;
        // Var(r - p_c t) / (n mean_t^2)
        const double resid = sum_rr / n - 2 * out.p_c * sum_rt / n + out.p_c * out.p_c * sum_tt / n;
        out.sigma_c = std::sqrt(std::max(0.0, resid) / n) / mt;
    }
    return out;
}

}  // namespace mubqct::oracles
