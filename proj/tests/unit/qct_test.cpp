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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "mubqct/errors.hpp"
#include "mubqct/ratemodel.hpp"

namespace mubqct::qct {
namespace {

using galois::Dimension;

TEST(Encoding, IndexArithmetic) {
    EXPECT_EQ(encode_index(0, 0, Dimension::from_size(4)), 0u);
    EXPECT_EQ(encode_index(1, 0, Dimension::from_size(4)), 2u);
    EXPECT_EQ(encode_index(1, 3, Dimension::from_size(8)), 7u);
    EXPECT_THROW(encode_index(2, 0, Dimension::from_size(4)), std::out_of_range);
    EXPECT_THROW(encode_index(0, 2, Dimension::from_size(4)), std::out_of_range);
}

TEST(Encoding, PreparedStatesAreOrthonormalWithinABasis) {
    const auto family = galois::build_mub_family(3);
    const CVector e0 = prepare_state({0, 0, 0}, family);
    EXPECT_EQ(e0, CVector::Unit(8, 0).cast<Complex>());
    for (std::uint32_t theta : {0u, 3u, 8u}) {
        for (std::uint8_t x = 0; x < 2; ++x)
            for (std::uint32_t r = 0; r < 4; ++r) {
                const CVector a = prepare_state({x, r, theta}, family);
                EXPECT_NEAR(a.norm(), 1.0, 1e-12);
                for (std::uint8_t x2 = 0; x2 < 2; ++x2)
                    for (std::uint32_t r2 = 0; r2 < 4; ++r2) {
                        const double expect = (x == x2 && r == r2) ? 1.0 : 0.0;
                        EXPECT_NEAR(std::abs(a.dot(prepare_state({x2, r2, theta}, family))), expect,
                                    1e-12);
                    }
            }
    }
}

TEST(Encoding, BobPovmStatistics) {
    const auto family = galois::build_mub_family(3);
    for (std::size_t t = 0; t <= 8; ++t) {
        const auto [m0, m1] = bob_povm(t, family);
        EXPECT_LT((m0 + m1 - CMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
        for (std::size_t s = 0; s <= 8; ++s) {
            for (std::uint8_t x = 0; x < 2; ++x) {
                const CVector v = prepare_state({x, 1, static_cast<std::uint32_t>(s)}, family);
                const double p0 = (v.adjoint() * m0 * v)(0).real();
                if (s == t) {
                    EXPECT_NEAR(x == 0 ? p0 : 1 - p0, 1.0, 1e-12);
                } else {
                    EXPECT_NEAR(p0, 0.5, 1e-9);
                }
            }
        }
    }
}

TEST(Timelock, AdversaryWaitsForUnlock) {
    const QchModel model{3, 10};
    const auto env = seal({4, 1, 7}, 100, model);
    EXPECT_EQ(env.unlock_time, 110);
    EXPECT_FALSE(timelock_reveal(env, env.unlock_time - 1, View::kAdversary).has_value());
    EXPECT_EQ(timelock_reveal(env, env.unlock_time, View::kAdversary).value(), env.payload);
    EXPECT_EQ(timelock_reveal(env, 0, View::kAuthorized).value(), env.payload);
    EXPECT_THROW(seal({}, 0, QchModel{5, 5}), std::invalid_argument);
    EXPECT_THROW(seal({}, 0, QchModel{-1, 5}), std::invalid_argument);
}

TEST(Decohere, EndpointsAndSpectrum) {
    const auto family = galois::build_mub_family(2);
    CMatrix rho = CMatrix::Zero(4, 4);
    const double weights[] = {0.5, 0.3, 0.15, 0.05};
    for (int i = 0; i < 4; ++i) {
        const CVector v = family.basis(3).col(i);
        rho += weights[i] * v * v.adjoint();
    }
    EXPECT_LT((decohere(rho, 0.0) - rho).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((decohere(rho, 1.0) - CMatrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff(), 1e-15);
    for (double delta : {0.1, 0.4, 0.9}) {
        const CMatrix out = decohere(rho, delta);
        EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(out);
        const auto ev = es.eigenvalues();  // ascending
        const double expected[] = {0.05, 0.15, 0.3, 0.5};
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev(i), (1 - delta) * expected[i] + delta / 4, 1e-12);
    }
    EXPECT_THROW(decohere(rho, 1.5), std::invalid_argument);
    CMatrix not_state = rho;
    not_state(0, 0) += 0.1;
    EXPECT_THROW(decohere(not_state, 0.5), std::invalid_argument);
}

ProtocolParams noiseless(std::size_t d, int m, std::size_t rounds) {
    ProtocolParams p;
    p.d = d;
    p.photons = rate::PhotonSource::fixed(m);
    p.rounds = rounds;
    p.channel = rate::ChannelModel{0.2, 0.0};
    p.detector = rate::DetectorModel{1.0, 1.0, 0.0, 2};
    p.seed = 11;
    return p;
}

TEST(RunProtocol, NoiselessLimit) {
    const auto family = galois::build_mub_family(4);
    const auto t = run_protocol(noiseless(16, 1, 10000), family);
    EXPECT_EQ(t.rounds.size(), 10000u);
    EXPECT_EQ(t.clicks, 10000u);
    EXPECT_EQ(t.wrong, 0u);
    EXPECT_EQ(t.alice_sifted, t.bob_sifted);
    EXPECT_EQ(t.p_c(), 1.0);
    EXPECT_EQ(t.empirical_hxy(), 0.0);
}

TEST(RunProtocol, OpaqueChannelErasesEverything) {
    const auto family = galois::build_mub_family(2);
    auto p = noiseless(4, 1, 2000);
    p.detector.efficiency = 1e-300;  // T·η underflows to 0
    const auto t = run_protocol(p, family);
    EXPECT_EQ(t.clicks, 0u);
    for (const auto& r : t.rounds) EXPECT_EQ(r.outcome, -1);
    EXPECT_TRUE(t.bob_sifted.empty());
}

TEST(RunProtocol, UniformInputs) {
    const auto family = galois::build_mub_family(3);
    const auto t = run_protocol(noiseless(8, 1, 20000), family);
    std::size_t ones = 0;
    std::vector<std::size_t> theta_counts(9, 0);
    for (const auto& r : t.rounds) {
        ones += r.x;
        ASSERT_LT(r.r, 4u);
        ++theta_counts.at(r.theta);
    }
    EXPECT_NEAR(static_cast<double>(ones) / 20000.0, 0.5, 5 * 0.5 / std::sqrt(20000.0));
    const double pt = 1.0 / 9.0, sd = std::sqrt(pt * (1 - pt) / 20000.0);
    for (auto c : theta_counts) EXPECT_NEAR(static_cast<double>(c) / 20000.0, pt, 5 * sd);
}

TEST(RunProtocol, MatchesTheAnalyticModel) {
    const auto family = galois::build_mub_family(4);
    ProtocolParams p;
    p.d = 16;
    p.photons = rate::PhotonSource::fixed(3);
    p.rounds = 200000;
    p.channel = rate::ChannelModel{0.2, 20.0};
    p.detector = rate::DetectorModel{0.3, 0.9, 1e-3, 2};
    p.seed = 5;
    const auto s = summarize(p, run_protocol(p, family));
    EXPECT_LT(std::abs(s.z_click_rate), 5.0);
    EXPECT_LT(std::abs(s.z_p_c), 5.0);
    EXPECT_LT(std::abs(s.z_p_e), 5.0);
}

TEST(RunProtocol, PoissonSourceMatchesTheAnalyticModel) {
    const auto family = galois::build_mub_family(4);
    ProtocolParams p;
    p.d = 16;
    p.photons = rate::PhotonSource::poisson(0.5);
    p.rounds = 200000;
    p.channel = rate::ChannelModel{0.2, 10.0};
    p.detector = rate::DetectorModel{0.5, 0.95, 1e-3, 2};
    p.seed = 9;
    const auto s = summarize(p, run_protocol(p, family));
    EXPECT_LT(std::abs(s.z_click_rate), 5.0);
    EXPECT_LT(std::abs(s.z_p_c), 5.0);
}

TEST(RunProtocol, SeedDeterminism) {
    const auto family = galois::build_mub_family(3);
    auto p = noiseless(8, 2, 3000);
    p.channel.length_km = 30;
    p.detector = rate::DetectorModel{0.5, 0.97, 1e-3, 2};
    std::ostringstream a, b, c;
    write_transcript_csv(a, run_protocol(p, family));
    write_transcript_csv(b, run_protocol(p, family));
    p.seed += 1;
    write_transcript_csv(c, run_protocol(p, family));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_NE(a.str(), c.str());
}

TEST(ProtocolParams, Validation) {
    auto p = noiseless(16, 1, 10);
    EXPECT_NO_THROW(p.validate());
    p.d = 12;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = noiseless(16, 0, 10);
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = noiseless(16, 1, 10);
    p.photons = rate::PhotonSource::poisson(1.0);  // 1 + 4 > sqrt(16)
    EXPECT_THROW(p.validate(), ConstraintError);
    p.allow_mu_above_cap = true;
    EXPECT_NO_THROW(p.validate());
    p = noiseless(16, 1, 10);
    p.detector.detectors = 3;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Multiparty, SinglePartyIsRunProtocol) {
    const auto family = galois::build_mub_family(4);
    auto p = noiseless(16, 2, 4000);
    p.channel.length_km = 25;
    p.detector = rate::DetectorModel{0.6, 0.98, 1e-4, 2};
    const auto single = run_protocol(p, family);
    const auto multi = multiparty_run(p, 1, family);
    ASSERT_EQ(multi.size(), 1u);
    std::ostringstream a, b;
    write_transcript_csv(a, single);
    write_transcript_csv(b, multi[0]);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Multiparty, NoiselessPartiesAllAgree) {
    const auto family = galois::build_mub_family(4);
    const auto runs = multiparty_run(noiseless(16, 3, 2000), 3, family);
    ASSERT_EQ(runs.size(), 3u);
    for (const auto& t : runs) {
        EXPECT_EQ(t.bob_sifted, t.alice_sifted);
        EXPECT_EQ(t.alice_sifted.size(), 2000u);
    }
    for (std::size_t i = 0; i < 2000; ++i) {
        EXPECT_EQ(runs[0].rounds[i].theta, runs[2].rounds[i].theta);
        EXPECT_EQ(runs[0].rounds[i].x, runs[1].rounds[i].x);
    }
}

TEST(Multiparty, SqrtCap) {
    const auto family = galois::build_mub_family(6);
    const auto p = noiseless(64, 8, 10);
    EXPECT_NO_THROW(multiparty_run(p, 8, family));
    EXPECT_THROW(multiparty_run(p, 9, family), ConstraintError);
    EXPECT_THROW(per_party_params(noiseless(64, 2, 10), 3), ConstraintError);
    EXPECT_EQ(per_party_params(noiseless(64, 7, 10), 3).photons.copies, 2);
}

TEST(Transcript, CsvHeader) {
    const auto family = galois::build_mub_family(1);
    std::ostringstream out;
    write_transcript_csv(out, run_protocol(noiseless(2, 1, 3), family), {"config: x=1"});
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# config: x=1");
    std::getline(in, line);
    EXPECT_EQ(line, "round,x,r,theta,outcome");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 3);
}

}  // namespace
}  // namespace mubqct::qct
