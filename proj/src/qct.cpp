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

#include "mubqct/qct.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "mubqct/errors.hpp"
#include "mubqct/ratemodel.hpp"

namespace mubqct::qct {

std::size_t encode_index(unsigned x, std::size_t r, galois::Dimension d) {
    if (x > 1) throw std::out_of_range("encode_index: x must be a bit");
    if (r >= d.half()) {
        throw std::out_of_range("encode_index: r = " + std::to_string(r) + " not in [d/2]");
    }
    return d.half() * x + r;
}

CVector prepare_state(const EncodingIndex& idx, const galois::MubFamily& family) {
    const std::size_t i = encode_index(idx.x, idx.r, family.dimension());
    return galois::basis_state(family, idx.theta, i);
}

std::pair<CMatrix, CMatrix> bob_povm(std::size_t theta, const galois::MubFamily& family) {
    const CMatrix& b = family.basis(theta);
    const auto h = static_cast<Eigen::Index>(family.d() / 2);
    CMatrix m0 = b.leftCols(h) * b.leftCols(h).adjoint();
    CMatrix m1 = b.rightCols(h) * b.rightCols(h).adjoint();
    return {std::move(m0), std::move(m1)};
}

void QchModel::validate() const {
    if (t_coh < 0 || !(t_coh < t_comp)) {
        throw std::invalid_argument("QCH model requires 0 <= t_coh < t_comp");
    }
}

TimelockEnvelope seal(std::vector<std::uint32_t> payload, std::int64_t now, const QchModel& model) {
    model.validate();
    return TimelockEnvelope{std::move(payload), now, now + model.t_comp};
}

std::optional<std::vector<std::uint32_t>> timelock_reveal(const TimelockEnvelope& env,
                                                          std::int64_t now, View view) {
    if (view == View::kAdversary && now < env.unlock_time) return std::nullopt;
    return env.payload;
}

CMatrix decohere(const CMatrix& rho, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("decohere: δ must be in [0, 1]");
    if (!linalg::is_density_matrix(rho, 1e-9)) {
        throw std::invalid_argument("decohere: input is not a density matrix");
    }
    const auto d = rho.rows();
    return (1.0 - delta) * rho +
           (delta / static_cast<double>(d)) * CMatrix::Identity(d, d);
}

void ProtocolParams::validate() const {
    const galois::Dimension dim = galois::Dimension::from_size(d);
    if (rounds < 1) throw std::invalid_argument("protocol needs at least one round");
    if (photons.kind == rate::PhotonSource::Kind::kFixed) {
        if (photons.copies < 1) throw std::invalid_argument("copies per channel use must be >= 1");
    } else {
        const double mu = photons.mean;
        if (!(mu > 0.0)) throw std::invalid_argument("Poisson mean photon number must be > 0");
        const double root_d = std::sqrt(static_cast<double>(dim.size()));
        if (!allow_mu_above_cap && mu + 4.0 * std::sqrt(mu) > root_d) {
            throw ConstraintError("Poisson mean " + std::to_string(mu) +
                                  " violates mu + 4 sqrt(mu) <= sqrt(d) = " + std::to_string(root_d));
        }
    }
    detector.validate();
    if (detector.detectors != 2) {
        throw std::invalid_argument("the protocol measures with exactly two detectors");
    }
    (void)channel.transmittance();
}

double ProtocolTranscript::click_rate() const {
    return rounds.empty() ? 0.0 : static_cast<double>(clicks) / static_cast<double>(rounds.size());
}

double ProtocolTranscript::p_c() const {
    return clicks == 0 ? 0.0 : static_cast<double>(right) / static_cast<double>(clicks);
}

double ProtocolTranscript::p_e() const {
    return clicks == 0 ? 0.0 : static_cast<double>(wrong) / static_cast<double>(clicks);
}

double ProtocolTranscript::empirical_hxy() const {
    return rate::conditional_entropy_xy(p_c(), p_e(), 2);
}

std::int8_t detect_round(std::uint8_t ideal_bit, const rate::PhotonSource& photons, double t_eta,
                         const rate::DetectorModel& det, Rng& rng) {
    std::size_t sent = 0;
    if (photons.kind == rate::PhotonSource::Kind::kFixed) {
        sent = static_cast<std::size_t>(photons.copies);
    } else if (photons.mean > 0.0) {
        sent = std::poisson_distribution<std::size_t>(photons.mean)(rng);
    }

    std::bernoulli_distribution arrives(t_eta);
    std::bernoulli_distribution lands_right(det.visibility);
    std::size_t good = 0, bad = 0;
    for (std::size_t k = 0; k < sent; ++k) {
        if (!arrives(rng)) continue;
        if (lands_right(rng)) {
            ++good;
        } else {
            ++bad;
        }
    }
    std::bernoulli_distribution dark(det.dark_count);
    const bool dark_good = dark(rng);
    const bool dark_bad = dark(rng);

    const auto right = static_cast<std::int8_t>(ideal_bit);
    const auto wrong = static_cast<std::int8_t>(ideal_bit ^ 1u);
    constexpr std::int8_t kErased = -1;

    if (good > 0 && bad > 0) return kErased;
    if (good > 0) return (dark_bad && !dark_good) ? kErased : right;
    if (bad > 0) return (dark_good && !dark_bad) ? kErased : wrong;
    if (dark_good && dark_bad) return std::bernoulli_distribution(0.5)(rng) ? right : wrong;
    if (dark_good) return right;
    if (dark_bad) return wrong;
    return kErased;
}

namespace {

std::size_t floor_sqrt(std::size_t n) {
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

ProtocolParams per_party_params(const ProtocolParams& params, std::size_t parties) {
    if (parties < 1) throw std::invalid_argument("at least one party is required");
    const std::size_t cap = floor_sqrt(params.d);
    if (parties > cap) {
        throw ConstraintError("at most floor(sqrt(d)) = " + std::to_string(cap) +
                              " parties can share d = " + std::to_string(params.d) + ", got " +
                              std::to_string(parties));
    }
    ProtocolParams out = params;
    if (params.photons.kind == rate::PhotonSource::Kind::kFixed) {
        const auto copies = params.photons.copies / static_cast<int>(parties);
        if (copies < 1) {
            throw ConstraintError("floor(m/parties) = 0: every party needs at least one copy");
        }
        out.photons = rate::PhotonSource::fixed(copies);
    } else {
        out.photons = rate::PhotonSource::poisson(params.photons.mean / static_cast<double>(parties));
    }
    return out;
}

std::vector<ProtocolTranscript> multiparty_run(const ProtocolParams& params, std::size_t parties,
                                               const galois::MubFamily& family) {
    params.validate();
    if (family.d() != params.d) {
        throw std::invalid_argument("MUB family dimension does not match protocol d");
    }
    const ProtocolParams party = per_party_params(params, parties);
    const galois::Dimension dim = family.dimension();

    Rng alice = make_stream(params.seed, 0);
    std::uniform_int_distribution<unsigned> bit(0, 1);
    std::uniform_int_distribution<std::uint32_t> local(0, static_cast<std::uint32_t>(dim.half() - 1));
    std::uniform_int_distribution<std::uint32_t> basis(0, static_cast<std::uint32_t>(dim.size()));

    std::vector<EncodingIndex> sent(params.rounds);
    std::vector<std::uint8_t> ideal(params.rounds);
    for (std::size_t n = 0; n < params.rounds; ++n) {
        sent[n].x = static_cast<std::uint8_t>(bit(alice));
        sent[n].r = local(alice);
        sent[n].theta = basis(alice);
        // |e^θ_i⟩ lies in the support of M_{i >= d/2} for the matching basis.
        ideal[n] = encode_index(sent[n].x, sent[n].r, dim) >= dim.half() ? 1 : 0;
    }

    const double t_eta = party.channel.transmittance() * party.detector.efficiency;
    std::vector<ProtocolTranscript> out(parties);
    for (std::size_t p = 0; p < parties; ++p) {
        Rng rng = make_stream(params.seed, 1 + p);
        ProtocolTranscript& tr = out[p];
        tr.rounds.resize(params.rounds);
        for (std::size_t n = 0; n < params.rounds; ++n) {
            RoundRecord& rec = tr.rounds[n];
            rec.x = sent[n].x;
            rec.r = sent[n].r;
            rec.theta = sent[n].theta;
            rec.outcome = detect_round(ideal[n], party.photons, t_eta, party.detector, rng);
            if (rec.outcome < 0) continue;
            ++tr.clicks;
            tr.alice_sifted.push_back(rec.x);
            tr.bob_sifted.push_back(static_cast<std::uint8_t>(rec.outcome));
            if (rec.outcome == rec.x) {
                ++tr.right;
            } else {
                ++tr.wrong;
            }
        }
    }
    return out;
}

ProtocolTranscript run_protocol(const ProtocolParams& params, const galois::MubFamily& family) {
    return std::move(multiparty_run(params, 1, family).front());
}

namespace {

double z_score(double observed, double expected, double trials) {
    if (trials <= 0.0) return 0.0;
    const double var = expected * (1.0 - expected) / trials;
    if (var <= 0.0) return observed == expected ? 0.0 : INFINITY;
    return (observed - expected) / std::sqrt(var);
}

}  // namespace

ProtocolSummary summarize(const ProtocolParams& params, const ProtocolTranscript& transcript) {
    const auto stats =
        rate::detection_stats(params.channel.transmittance(), params.detector, params.photons);
    ProtocolSummary s;
    s.click_rate = transcript.click_rate();
    s.p_c = transcript.p_c();
    s.p_e = transcript.p_e();
    s.hxy_bits = transcript.empirical_hxy();
    s.analytic_click_rate = stats.p_click;
    s.analytic_p_c = stats.p_c;
    s.analytic_p_e = stats.p_e;
    const auto n = static_cast<double>(transcript.rounds.size());
    const auto clicks = static_cast<double>(transcript.clicks);
    s.z_click_rate = z_score(s.click_rate, s.analytic_click_rate, n);
    s.z_p_c = z_score(s.p_c, s.analytic_p_c, clicks);
    s.z_p_e = z_score(s.p_e, s.analytic_p_e, clicks);
    return s;
}

void write_transcript_csv(std::ostream& out, const ProtocolTranscript& transcript,
                          const std::vector<std::string>& comment_lines) {
    for (const auto& line : comment_lines) out << "# " << line << '\n';
    out << "round,x,r,theta,outcome\n";
    for (std::size_t n = 0; n < transcript.rounds.size(); ++n) {
        const RoundRecord& rec = transcript.rounds[n];
        out << n << ',' << static_cast<int>(rec.x) << ',' << rec.r << ',' << rec.theta << ','
            << static_cast<int>(rec.outcome) << '\n';
    }
}

}  // namespace mubqct::qct
