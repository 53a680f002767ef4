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

#include "mubqct/ratemodel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "mubqct/errors.hpp"
#include "mubqct/format.hpp"
#include "mubqct/mub.hpp"
#include "mubqct/security.hpp"

namespace mubqct::rate {
namespace {

struct SignalEvents {
    double none = 0;  // no photon reaches a detector
    double any = 0;   // P1
    double good = 0;  // P2: every arriving photon in the correct detector
    double bad = 0;   // P3: every arriving photon in the wrong detector
};

// Σ_{i>=1} C(m,i) q^i (1-q)^(m-i) w^i for w ∈ {1, V, 1-V}. All terms are
// nonnegative, so the direct sum is accurate even when q is tiny.
SignalEvents binomial_events(int m, double q, double visibility) {
    SignalEvents ev;
    if (q <= 0.0) {
        ev.none = 1.0;
        return ev;
    }
    if (q >= 1.0) {
        ev.any = 1.0;
        ev.good = std::pow(visibility, m);
        ev.bad = std::pow(1.0 - visibility, m);
        return ev;
    }
    const double log_q = std::log(q);
    const double log_1mq = std::log1p(-q);
    const double log_m_fact = std::lgamma(m + 1.0);
    ev.none = std::exp(m * log_1mq);
    for (int i = 1; i <= m; ++i) {
        const double pmf = std::exp(log_m_fact - std::lgamma(i + 1.0) - std::lgamma(m - i + 1.0) +
                                    i * log_q + (m - i) * log_1mq);
        ev.any += pmf;
        ev.good += pmf * std::pow(visibility, i);
        ev.bad += pmf * std::pow(1.0 - visibility, i);
    }
    return ev;
}

SignalEvents poisson_events(double mu, double q, double visibility) {
    const double rate = mu * q;
    SignalEvents ev;
    ev.none = std::exp(-rate);
    ev.any = -std::expm1(-rate);
    ev.good = ev.none * std::expm1(rate * visibility);
    ev.bad = ev.none * std::expm1(rate * (1.0 - visibility));
    return ev;
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

DetectionStats detection_stats(double transmittance, const DetectorModel& det,
                               const PhotonSource& photons, ClickNormalization mode) {
    if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
        throw std::invalid_argument("detection_stats: transmittance must be in [0, 1]");
    }
    det.validate();
    const double q = transmittance * det.efficiency;
    SignalEvents ev;
    if (photons.kind == PhotonSource::Kind::kFixed) {
        if (photons.copies < 1) throw std::invalid_argument("detection_stats: m must be >= 1");
        ev = binomial_events(photons.copies, q, det.visibility);
    } else {
        if (!(photons.mean >= 0.0)) throw std::invalid_argument("detection_stats: μ must be >= 0");
        ev = poisson_events(photons.mean, q, det.visibility);
    }

    const double p = det.dark_count;
    const double n = det.detectors;
    const double quiet = std::pow(1.0 - p, n);

    DetectionStats s;
    s.mode = mode;
    s.p_signal_click = ev.any;
    s.p_signal_good = ev.good;
    s.p_signal_bad = ev.bad;
    s.p_right = ev.good * quiet + ev.none * p + ev.good * p;
    s.p_wrong = ev.bad * quiet + ev.none * (n - 1.0) * p + ev.bad * (n - 1.0) * p;

    if (mode == ClickNormalization::kNormalized) {
        s.p_click = s.p_right + s.p_wrong;
    } else {
        s.p_click = ev.any * n * p;
        if (!(s.p_click > 0.0)) {
            throw DegenerateModeError(
                "paper click normalization P[click] = P1 * n * p_dark vanishes at this point");
        }
    }
    if (s.p_click > 0.0) {
        s.p_c = s.p_right / s.p_click;
        s.p_e = s.p_wrong / s.p_click;
    }
    return s;
}

double conditional_entropy_xy(double p_c, double p_e, int detectors) {
    if (!(p_c >= 0.0 && p_c <= 1.0 && p_e >= 0.0 && p_e <= 1.0)) {
        throw std::invalid_argument("conditional_entropy_xy: probabilities must be in [0, 1]");
    }
    if (detectors < 2) throw std::invalid_argument("conditional_entropy_xy: n must be >= 2");
    const double wrong_term = p_e > 0.0 ? p_e * std::log2(p_e / (detectors - 1.0)) : 0.0;
    return -xlog2x(p_c) - wrong_term;
}

double eve_guessing_probability(std::uint64_t d, int m, BoundsSource source) {
    if (source == BoundsSource::kPaper) return security::pguess_paper(static_cast<double>(d), m);

    if (d > security::kMaxLambdaOracleDimension || !std::has_single_bit(d) || d < 2) {
        throw CapabilityError("certified bounds need the exact λ oracle (d = 2^k <= 16); d = " +
                              std::to_string(d));
    }
    static std::mutex mu;
    static std::map<std::uint64_t, double> cache;
    double lambda = 0.0;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(d);
        if (it == cache.end()) {
            const auto family = galois::build_mub_family(std::countr_zero(d));
            it = cache.emplace(d, security::lambda_numeric(family)).first;
        }
        lambda = it->second;
    }
    return security::pguess_from_lambda(lambda, m);
}

RatePoint key_rate(std::uint64_t d, int m, const ChannelModel& chan, const DetectorModel& det,
                   const RateOptions& opts) {
    if (m < 1) throw std::invalid_argument("key_rate: m must be >= 1");
    det.validate();
    RatePoint pt;
    pt.d = d;
    pt.m = m;
    pt.length_km = chan.length_km;
    pt.transmittance = chan.transmittance();

    const double q = opts.sift == SiftLoss::kFiberAndDetector ? pt.transmittance * det.efficiency
                                                              : pt.transmittance;
    pt.sift_prefactor = q >= 1.0 ? 1.0 : -std::expm1(m * std::log1p(-q));

    const auto stats = detection_stats(pt.transmittance, det, PhotonSource::fixed(m));
    pt.p_c = stats.p_c;
    pt.p_e = stats.p_e;
    pt.hxy_bits = conditional_entropy_xy(stats.p_c, stats.p_e, det.detectors);
    pt.pguess = eve_guessing_probability(d, m, opts.bounds);
    pt.hmin_bits = -std::log2(pt.pguess);
    pt.key_rate_bits = std::max(0.0, pt.sift_prefactor * pt.hmin_bits - pt.hxy_bits);
    return pt;
}

double coherent_mu_max(double d) {
    if (!(d >= 2.0)) throw std::invalid_argument("coherent_mu_max: d must be >= 2");
    const double root = std::sqrt(4.0 + std::sqrt(d)) - 2.0;
    return root * root;
}

int max_copies_scanned(std::uint64_t d) {
    return std::max(1, static_cast<int>(std::floor(coherent_mu_max(static_cast<double>(d)))));
}

RatePoint optimize_m(std::uint64_t d, const ChannelModel& chan, const DetectorModel& det,
                     const RateOptions& opts) {
    const int top = max_copies_scanned(d);
    RatePoint best = key_rate(d, 1, chan, det, opts);
    for (int m = 2; m <= top; ++m) {
        RatePoint cand = key_rate(d, m, chan, det, opts);
        if (cand.key_rate_bits > best.key_rate_bits) best = std::move(cand);
    }
    return best;
}

DistanceReach max_distance(std::uint64_t d, const DetectorModel& det, double attenuation_db_per_km,
                           const RateOptions& opts, double cap_km, double resolution_km) {
    if (!(cap_km > 0.0) || !(resolution_km > 0.0)) {
        throw std::invalid_argument("max_distance: cap and resolution must be positive");
    }
    auto positive = [&](double length) {
        const ChannelModel chan{attenuation_db_per_km, length};
        return optimize_m(d, chan, det, opts).key_rate_bits > 0.0;
    };
    if (!positive(0.0)) return {0.0, false};
    if (positive(cap_km)) return {cap_km, true};
    double lo = 0.0, hi = cap_km;
    while (hi - lo > resolution_km) {
        const double mid = 0.5 * (lo + hi);
        if (positive(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo, false};
}

std::vector<RatePoint> sweep(const SweepSpec& spec) {
    if (spec.dimensions.empty() || spec.lengths_km.empty() || spec.profiles.empty()) {
        throw std::invalid_argument("sweep: every grid must be non-empty");
    }
    auto profiles = spec.profiles;
    std::stable_sort(profiles.begin(), profiles.end(),
                     [](const auto& a, const auto& b) { return a.name < b.name; });
    auto dims = spec.dimensions;
    std::sort(dims.begin(), dims.end());
    auto lengths = spec.lengths_km;
    std::sort(lengths.begin(), lengths.end());

    const std::size_t total = profiles.size() * dims.size() * lengths.size();
    std::vector<RatePoint> rows(total);
    auto cell = [&](std::size_t idx) {
        const std::size_t li = idx % lengths.size();
        const std::size_t di = (idx / lengths.size()) % dims.size();
        const std::size_t pi = idx / (lengths.size() * dims.size());
        const ChannelModel chan{spec.attenuation_db_per_km, lengths[li]};
        rows[idx] = optimize_m(dims[di], chan, profiles[pi].model, spec.options);
        rows[idx].profile = profiles[pi].name;
    };

    const unsigned jobs = std::max(1u, std::min<unsigned>(spec.jobs, static_cast<unsigned>(total)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < total; ++i) cell(i);
        return rows;
    }
    // Strided assignment; each worker writes only its own slots.
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned j = 0; j < jobs; ++j) {
        workers.emplace_back([&, j] {
            try {
                for (std::size_t i = j; i < total; i += jobs) cell(i);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<RatePoint>& rows,
                     const std::vector<std::string>& comment_lines) {
    for (const auto& line : comment_lines) out << "# " << line << '\n';
    out << "profile,d,L_km,m_opt,T,p_c,p_e,hxy_bits,hmin_bits,key_rate_bits\n";
    for (const auto& r : rows) {
        out << r.profile << ',' << r.d << ',' << format_sig(r.length_km, 10) << ',' << r.m << ','
            << format_sig(r.transmittance, 10) << ',' << format_sig(r.p_c, 10) << ','
            << format_sig(r.p_e, 10) << ',' << format_sig(r.hxy_bits, 10) << ','
            << format_sig(r.hmin_bits, 10) << ',' << format_sig(r.key_rate_bits, 10) << '\n';
    }
}

}  // namespace mubqct::rate
