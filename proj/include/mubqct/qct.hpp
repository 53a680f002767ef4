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
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mubqct/channel.hpp"
#include "mubqct/linalg.hpp"
#include "mubqct/mub.hpp"
#include "mubqct/rng.hpp"

namespace mubqct::qct {

// ---------------------------------------------------------------------------
// Encoding

/// Alice's choice for one channel use: key bit x, local randomness
/// r ∈ [d/2] and basis θ ∈ [d+1]. The state sent is |e^θ_{i_xr}⟩ with
/// i_xr = (d/2)·x + r, so x = 0 exactly when i_xr < d/2.
struct EncodingIndex {
    std::uint8_t x = 0;
    std::uint32_t r = 0;
    std::uint32_t theta = 0;
};

/// (d/2)·x + r. Throws std::out_of_range unless x ∈ {0,1} and r < d/2.
std::size_t encode_index(unsigned x, std::size_t r, galois::Dimension d);

/// |e^θ_{i_xr}⟩. Throws std::out_of_range on index mismatch.
CVector prepare_state(const EncodingIndex& idx, const galois::MubFamily& family);

/// Bob's two-outcome measurement in basis θ: M0 projects onto the first d/2
/// vectors, M1 onto the rest.
std::pair<CMatrix, CMatrix> bob_povm(std::size_t theta, const galois::MubFamily& family);

// ---------------------------------------------------------------------------
// QCH model oracles

/// Abstract-time model: quantum memory decoheres after t_coh, the short-term
/// encryption holds until t_comp, and t_coh < t_comp.
struct QchModel {
    std::int64_t t_coh = 1;
    std::int64_t t_comp = 2;

    /// Throws std::invalid_argument unless 0 <= t_coh < t_comp.
    void validate() const;
};

/// Ideal time-release encryption of the basis string θⁿ.
struct TimelockEnvelope {
    std::vector<std::uint32_t> payload;
    std::int64_t created_at = 0;
    std::int64_t unlock_time = 0;
};

enum class View { kAuthorized, kAdversary };

TimelockEnvelope seal(std::vector<std::uint32_t> payload, std::int64_t now, const QchModel& model);

/// Authorized view always reads the payload. The adversary view gets
/// std::nullopt (locked) while now < unlock_time.
std::optional<std::vector<std::uint32_t>> timelock_reveal(const TimelockEnvelope& env,
                                                          std::int64_t now, View view);

/// Depolarizing realization of storage noise: (1-δ)ρ + δ·I/d.
/// Throws std::invalid_argument if δ ∉ [0,1] or ρ is not a density matrix
/// within 1e-9.
CMatrix decohere(const CMatrix& rho, double delta);

// ---------------------------------------------------------------------------
// Monte Carlo protocol runs

struct ProtocolParams {
    std::size_t d = 16;
    rate::PhotonSource photons = rate::PhotonSource::fixed(1);
    std::size_t rounds = 1000;
    rate::ChannelModel channel;
    rate::DetectorModel detector;
    std::uint64_t seed = 1;
    /// Permit a Poisson mean with μ + 4√μ > √d.
    bool allow_mu_above_cap = false;

    /// Throws std::invalid_argument / ConstraintError on invalid parameters.
    void validate() const;
};

/// Bob's record for one round; outcome is -1 for an erasure (no usable
/// click), else his bit.
struct RoundRecord {
    std::uint8_t x = 0;
    std::uint32_t r = 0;
    std::uint32_t theta = 0;
    std::int8_t outcome = -1;
};

struct ProtocolTranscript {
    std::vector<RoundRecord> rounds;
    std::vector<std::uint8_t> alice_sifted;
    std::vector<std::uint8_t> bob_sifted;
    std::size_t clicks = 0;
    std::size_t right = 0;
    std::size_t wrong = 0;

    double click_rate() const;
    double p_c() const;
    double p_e() const;
    /// Plug-in H(X|Y) in bits from the empirical error rate (n = 2).
    double empirical_hxy() const;
};

/// One simulated channel use, given the bit Bob's ideal measurement would
/// return. Photons survive fiber and detector with probability T·η; each
/// arriving photon lands in the correct detector with probability V; each
/// detector fires a dark count with probability p_dark. Click patterns:
///  - signal only in the correct detector: correct bit, unless the only dark
///    count is in the other detector (ambiguous double click, discarded);
///  - signal only in the wrong detector: mirror image of the above;
///  - signal in both detectors: discarded;
///  - no signal: the dark-count detector decides, both firing -> fair coin.
/// This is the event accounting of the analytic detection model, so
/// empirical p_c and p_e converge to rate::detection_stats (normalized).
std::int8_t detect_round(std::uint8_t ideal_bit, const rate::PhotonSource& photons,
                         double t_eta, const rate::DetectorModel& det, Rng& rng);

ProtocolTranscript run_protocol(const ProtocolParams& params, const galois::MubFamily& family);

/// m' parties share Alice's (x, r, θ) stream; each party receives
/// floor(m/m') copies (μ/m' in Poisson mode) over its own channel and
/// detectors. Throws ConstraintError if m' > floor(√d) or a party would get
/// no copies. parties == 1 reproduces run_protocol exactly.
/// Parameters one party sees: floor(m/m') copies or μ/m'.
ProtocolParams per_party_params(const ProtocolParams& params, std::size_t parties);

std::vector<ProtocolTranscript> multiparty_run(const ProtocolParams& params, std::size_t parties,
                                               const galois::MubFamily& family);

/// Empirical rates next to the analytic detection model.
struct ProtocolSummary {
    double click_rate = 0, p_c = 0, p_e = 0, hxy_bits = 0;
    double analytic_click_rate = 0, analytic_p_c = 0, analytic_p_e = 0;
    double z_click_rate = 0, z_p_c = 0, z_p_e = 0;
};

ProtocolSummary summarize(const ProtocolParams& params, const ProtocolTranscript& transcript);

/// CSV `round,x,r,theta,outcome` preceded by optional `# ...` comment lines.
void write_transcript_csv(std::ostream& out, const ProtocolTranscript& transcript,
                          const std::vector<std::string>& comment_lines = {});

}  // namespace mubqct::qct
