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
#include <iosfwd>
#include <string>
#include <vector>

#include "mubqct/channel.hpp"

namespace mubqct::rate {

enum class ClickNormalization {
    /// P_click = P_right + P_wrong, so p_c + p_e = 1.
    kNormalized,
    /// P_click = P[click due to signal] · n·p_dark, the literal product
    /// form; p_c may exceed 1 and p_dark = 0 is degenerate.
    kPaper,
};

struct DetectionStats {
    double p_signal_click = 0;  // P1
    double p_signal_good = 0;   // P2
    double p_signal_bad = 0;    // P3
    double p_right = 0;
    double p_wrong = 0;
    double p_click = 0;
    double p_c = 0;
    double p_e = 0;
    ClickNormalization mode = ClickNormalization::kNormalized;
};

/// Detection probabilities for transmittance T. P_right and P_wrong are the
/// three-event sums (signal without dark counts, dark count without signal,
/// signal together with a dark count in the same detector class).
/// Throws DegenerateModeError in kPaper mode when its P_click is 0.
DetectionStats detection_stats(double transmittance, const DetectorModel& det,
                               const PhotonSource& photons,
                               ClickNormalization mode = ClickNormalization::kNormalized);

/// H(X|Y) = -p_c log₂ p_c - p_e log₂(p_e/(n-1)), with 0 log 0 = 0.
double conditional_entropy_xy(double p_c, double p_e, int detectors = 2);

enum class BoundsSource {
    kPaper,      // closed-form guessing probability
    kCertified,  // λ from the exhaustive eigenvalue oracle, d = 2^k <= 16
};

enum class SiftLoss {
    kFiberAndDetector,  // 1 - (1 - T·η)^m
    kFiberOnly,         // 1 - (1 - T)^m
};

struct RateOptions {
    BoundsSource bounds = BoundsSource::kPaper;
    SiftLoss sift = SiftLoss::kFiberAndDetector;
};

/// Eve's guessing probability for m copies under the selected bound.
double eve_guessing_probability(std::uint64_t d, int m, BoundsSource source);

struct RatePoint {
    std::string profile;
    std::uint64_t d = 0;
    int m = 1;
    double length_km = 0;
    double transmittance = 0;
    double p_c = 0;
    double p_e = 0;
    double sift_prefactor = 0;
    double pguess = 0;
    double hmin_bits = 0;
    double hxy_bits = 0;
    double key_rate_bits = 0;
};

/// K = max(0, sift · (-log₂ P_guess(m)) - H(X|Y)), in bits per channel use.
RatePoint key_rate(std::uint64_t d, int m, const ChannelModel& chan, const DetectorModel& det,
                   const RateOptions& opts = {});

/// Positive root of μ + 4√μ = √d, i.e. (√(4 + √d) - 2)².
double coherent_mu_max(double d);

/// Largest copy count optimize_m scans: max(1, floor(coherent_mu_max(d))).
int max_copies_scanned(std::uint64_t d);

/// Exhaustive scan of m ∈ [1, max_copies_scanned(d)]; ties go to the
/// smaller m.
RatePoint optimize_m(std::uint64_t d, const ChannelModel& chan, const DetectorModel& det,
                     const RateOptions& opts = {});

struct DistanceReach {
    double length_km = 0;
    /// Key rate is still positive at the cap.
    bool saturated = false;
};

/// Largest L with optimized K > 0, by bisection to `resolution_km`.
DistanceReach max_distance(std::uint64_t d, const DetectorModel& det,
                           double attenuation_db_per_km = 0.2, const RateOptions& opts = {},
                           double cap_km = 1000.0, double resolution_km = 0.1);

struct SweepSpec {
    std::vector<std::uint64_t> dimensions;
    std::vector<double> lengths_km;
    std::vector<DetectorProfile> profiles;
    double attenuation_db_per_km = 0.2;
    RateOptions options;
    unsigned jobs = 1;
};

/// One optimized RatePoint per (profile, d, L), sorted by profile name, then
/// d, then L. Row order does not depend on `jobs`.
std::vector<RatePoint> sweep(const SweepSpec& spec);

/// Columns `profile,d,L_km,m_opt,T,p_c,p_e,hxy_bits,hmin_bits,key_rate_bits`,
/// floats at 10 significant digits, preceded by `# ...` comment lines.
void write_sweep_csv(std::ostream& out, const std::vector<RatePoint>& rows,
                     const std::vector<std::string>& comment_lines = {});

}  // namespace mubqct::rate
