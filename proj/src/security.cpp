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

#include "mubqct/security.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "mubqct/errors.hpp"
#include "mubqct/qct.hpp"
#include "mubqct/rng.hpp"

namespace mubqct::security {

OutcomeString OutcomeString::from_mask(std::uint64_t mask, std::size_t length) {
    OutcomeString s;
    s.bits.resize(length);
    for (std::size_t t = 0; t < length; ++t) s.bits[t] = static_cast<std::uint8_t>((mask >> t) & 1u);
    return s;
}

namespace {

// (2/d) M^θ_b for every basis θ and bit b; F(Ω) is a sum of one per θ.
std::vector<std::array<CMatrix, 2>> scaled_povms(const galois::MubFamily& family) {
    const double w = 2.0 / static_cast<double>(family.d());
    std::vector<std::array<CMatrix, 2>> out(family.basis_count());
    for (std::size_t t = 0; t < family.basis_count(); ++t) {
        auto [m0, m1] = qct::bob_povm(t, family);
        out[t][0] = w * m0;
        out[t][1] = w * m1;
    }
    return out;
}

void require_positive_dimension(double d) {
    if (!(d >= 2.0)) throw std::invalid_argument("dimension d must be >= 2");
}

}  // namespace

CMatrix f_operator(const OutcomeString& omega, const galois::MubFamily& family) {
    if (omega.bits.size() != family.basis_count()) {
        throw std::invalid_argument("f_operator: outcome string must have d+1 entries, got " +
                                    std::to_string(omega.bits.size()));
    }
    const auto d = static_cast<Eigen::Index>(family.d());
    const Eigen::Index half = d / 2;
    const double w = 2.0 / static_cast<double>(d);
    CMatrix f = CMatrix::Zero(d, d);
    for (std::size_t t = 0; t < family.basis_count(); ++t) {
        const auto cols = family.basis(t).middleCols(omega.bits[t] ? half : 0, half);
        f.noalias() += w * (cols * cols.adjoint());
    }
    return f;
}

double lambda_numeric(const galois::MubFamily& family, unsigned jobs) {
    const std::size_t d = family.d();
    if (d > kMaxLambdaOracleDimension) {
        throw CapabilityError("lambda oracle is limited to d <= 16 (2^(d+1) eigen solves); d = " +
                              std::to_string(d) + " needs the closed-form bounds");
    }
    const auto povm = scaled_povms(family);
    const std::size_t nb = family.basis_count();
    std::vector<CMatrix> flip(nb);
    for (std::size_t t = 0; t < nb; ++t) flip[t] = povm[t][1] - povm[t][0];

    const std::uint64_t total = std::uint64_t{1} << nb;
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, total));

    auto build = [&](std::uint64_t gray) {
        CMatrix f = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t t = 0; t < nb; ++t) f += povm[t][(gray >> t) & 1u];
        return f;
    };

    // Walk masks in Gray-code order so consecutive F(Ω) differ in one basis.
    auto scan = [&](std::uint64_t begin, std::uint64_t end) {
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(static_cast<Eigen::Index>(d));
        double best = -INFINITY;
        CMatrix f;
        for (std::uint64_t i = begin; i < end; ++i) {
            const std::uint64_t gray = i ^ (i >> 1);
            if (i == begin || (i & 1023u) == 0) {
                f = build(gray);
            } else {
                const auto t = static_cast<std::size_t>(std::countr_zero(i));
                if ((gray >> t) & 1u) {
                    f += flip[t];
                } else {
                    f -= flip[t];
                }
            }
            solver.compute(f, Eigen::EigenvaluesOnly);
            best = std::max(best, solver.eigenvalues()(static_cast<Eigen::Index>(d) - 1));
        }
        return best;
    };

    std::vector<double> partial(jobs, -INFINITY);
    if (jobs == 1) {
        partial[0] = scan(0, total);
    } else {
        std::vector<std::thread> workers;
        const std::uint64_t chunk = (total + jobs - 1) / jobs;
        for (unsigned j = 0; j < jobs; ++j) {
            const std::uint64_t b = j * chunk;
            const std::uint64_t e = std::min(total, b + chunk);
            workers.emplace_back([&, j, b, e] { partial[j] = scan(b, e); });
        }
        for (auto& w : workers) w.join();
    }
    return *std::max_element(partial.begin(), partial.end());
}

double lambda_paper_bound(double d) {
    require_positive_dimension(d);
    return 1.0 + (d * (d + 1.0) - 2.0) / (2.0 * d * d * std::sqrt(d));
}

double lambda_sound_bound(double d) {
    require_positive_dimension(d);
    const double l = d * (d + 1.0) / 2.0;
    return (2.0 / d) * (1.0 + (l - 1.0) / std::sqrt(d));
}

ProjectorSumBound theorem1_bound(std::span<const CMatrix> projectors, double tol) {
    if (projectors.empty()) throw std::invalid_argument("theorem1_bound: no projectors");
    const auto n = projectors.front().rows();
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        const CMatrix& o = projectors[i];
        const std::string which = "theorem1_bound: operator " + std::to_string(i);
        if (o.rows() != n || o.cols() != n) throw std::invalid_argument(which + " has wrong shape");
        if (linalg::hermiticity_deviation(o) > tol) throw std::invalid_argument(which + " is not Hermitian");
        if (std::abs(o.trace() - Complex(1.0, 0.0)) > tol) {
            throw std::invalid_argument(which + " does not have unit trace");
        }
        if ((o * o - o).cwiseAbs().maxCoeff() > tol) {
            throw std::invalid_argument(which + " is not idempotent");
        }
    }

    ProjectorSumBound out;
    out.count = projectors.size();
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        for (std::size_t j = i + 1; j < projectors.size(); ++j) {
            // ‖O_j O_i‖ = ‖(O_i O_j)^†‖, so one ordering per pair suffices.
            out.cos_phi = std::max(out.cos_phi, linalg::operator_norm(projectors[i] * projectors[j]));
        }
    }
    out.bound = 1.0 + static_cast<double>(out.count - 1) * out.cos_phi;
    return out;
}

double clamp_probability(double p) { return std::clamp(p, 0.5, 1.0); }

double pguess_single_paper(double d) {
    require_positive_dimension(d);
    const double s = std::sqrt(d);
    return clamp_probability(0.5 + 1.0 / s - 2.0 / (d * (d + 1.0) * s));
}

double pguess_multi_paper(double d, int m) {
    require_positive_dimension(d);
    if (m < 1) throw std::invalid_argument("pguess_multi_paper: m must be >= 1");
    const double s = std::sqrt(d);
    const double base = 1.0 + 2.0 / s - 4.0 / (d * d * s);
    return clamp_probability(0.5 * std::pow(base, m));
}

double pguess_paper(double d, int m) { return m == 1 ? pguess_single_paper(d) : pguess_multi_paper(d, m); }

double pguess_from_lambda(double lambda, int m) {
    if (m < 1) throw std::invalid_argument("pguess_from_lambda: m must be >= 1");
    return clamp_probability(0.5 * std::pow(lambda, m));
}

double iacc_bound(double d, int m) {
    require_positive_dimension(d);
    if (m < 0) throw std::invalid_argument("iacc_bound: m must be >= 0");
    return std::log2(1.0 + 2.0 * m / std::sqrt(d));
}

double DistanceBounds::iacc_upper(double delta) const {
    const double p = 2.0 * delta;
    const double eta = p > 0.0 ? -p * std::log2(p) : 0.0;
    return p * std::log2(static_cast<double>(alphabet_size)) + eta;
}

DistanceBounds security_distance_bounds(double iacc, std::size_t alphabet_size) {
    if (!(iacc >= 0.0)) throw std::invalid_argument("accessible information must be >= 0");
    if (alphabet_size < 2) throw std::invalid_argument("alphabet must have at least two symbols");
    return DistanceBounds{iacc, alphabet_size, std::sqrt(iacc / 2.0)};
}

std::pair<CMatrix, CMatrix> bit_averaged_states(const galois::MubFamily& family) {
    const auto d = static_cast<Eigen::Index>(family.d());
    const double norm = 1.0 / (static_cast<double>(family.d() / 2) * static_cast<double>(family.basis_count()));
    CMatrix rho0 = CMatrix::Zero(d, d);
    CMatrix rho1 = CMatrix::Zero(d, d);
    for (std::size_t t = 0; t < family.basis_count(); ++t) {
        auto [m0, m1] = qct::bob_povm(t, family);
        rho0 += m0;
        rho1 += m1;
    }
    return {norm * rho0, norm * rho1};
}

double helstrom_trace_distance(const galois::MubFamily& family, int m) {
    if (m < 1) throw std::invalid_argument("helstrom: m must be >= 1");
    double dim = 1.0;
    for (int i = 0; i < m; ++i) dim *= static_cast<double>(family.d());
    if (dim > static_cast<double>(kMaxHelstromDimension)) {
        throw CapabilityError("helstrom_numeric needs d^m <= 4096; d^m = " +
                              std::to_string(static_cast<long long>(dim)));
    }
    const auto [rho0, rho1] = bit_averaged_states(family);
    const CMatrix diff = linalg::kron_power(rho0, m) - linalg::kron_power(rho1, m);
    return linalg::trace_norm_hermitian(diff);
}

double helstrom_numeric(const galois::MubFamily& family, int m) {
    return 0.5 * (1.0 + helstrom_trace_distance(family, m) / 2.0);
}

double helstrom_closed_form(double d) {
    require_positive_dimension(d);
    return 0.5 + 1.0 / (2.0 * std::sqrt(d + 1.0));
}

double helstrom_multi_bound(double d, int m) {
    require_positive_dimension(d);
    if (m < 1) throw std::invalid_argument("helstrom_multi_bound: m must be >= 1");
    return std::min(1.0, 0.5 + m / (2.0 * std::sqrt(d + 1.0)));
}

EveSimulation simulate_eve_random_basis(const galois::MubFamily& family, std::size_t trials,
                                        std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("simulate_eve_random_basis: need >= 1 trial");
    const std::size_t d = family.d();
    const std::size_t half = d / 2;
    Rng rng = make_stream(seed, 0);
    std::uniform_int_distribution<unsigned> bit(0, 1);
    std::uniform_int_distribution<std::size_t> local(0, half - 1);
    std::uniform_int_distribution<std::size_t> basis(0, d);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::size_t wins = 0;
    for (std::size_t n = 0; n < trials; ++n) {
        const unsigned x = bit(rng);
        const std::size_t r = local(rng);
        const std::size_t theta = basis(rng);
        const std::size_t eve_basis = basis(rng);
        const CVector psi = family.basis(theta).col(static_cast<Eigen::Index>(half * x + r));
        const CVector amps = family.basis(eve_basis).adjoint() * psi;

        // Born-rule sample of Eve's outcome index.
        double u = unit(rng) * amps.squaredNorm();
        std::size_t outcome = d - 1;
        for (std::size_t j = 0; j < d; ++j) {
            u -= std::norm(amps(static_cast<Eigen::Index>(j)));
            if (u < 0.0) {
                outcome = j;
                break;
            }
        }
        const unsigned guess = eve_basis == theta ? (outcome >= half ? 1u : 0u) : bit(rng);
        if (guess == x) ++wins;
    }
    EveSimulation sim;
    sim.trials = trials;
    sim.success_rate = static_cast<double>(wins) / static_cast<double>(trials);
    sim.standard_error = std::sqrt(sim.success_rate * (1.0 - sim.success_rate) / static_cast<double>(trials));
    return sim;
}

double eve_random_basis_analytic(double d) {
    require_positive_dimension(d);
    return 0.5 + 1.0 / (2.0 * (d + 1.0));
}

MonotonicityReport strategy_monotonicity(const galois::MubFamily& family,
                                         std::span<const double> delta_grid, double tol) {
    MonotonicityReport rep;
    rep.deltas.assign(delta_grid.begin(), delta_grid.end());
    for (double delta : rep.deltas) {
        if (!(delta >= 0.0 && delta <= 1.0)) {
            throw std::invalid_argument("strategy_monotonicity: δ must be in [0, 1]");
        }
    }
    std::sort(rep.deltas.begin(), rep.deltas.end());

    const auto [rho0, rho1] = bit_averaged_states(family);
    rep.undecohered_distance = linalg::trace_norm_hermitian(rho0 - rho1);
    for (double delta : rep.deltas) {
        const double dist = linalg::trace_norm_hermitian(qct::decohere(rho0, delta) - qct::decohere(rho1, delta));
        const double pred = (1.0 - delta) * rep.undecohered_distance;
        if (!rep.distances.empty() && dist > rep.distances.back() + tol) rep.non_increasing = false;
        rep.max_linear_deviation = std::max(rep.max_linear_deviation, std::abs(dist - pred));
        rep.distances.push_back(dist);
        rep.predicted.push_back(pred);
    }
    rep.linear_law = rep.max_linear_deviation <= tol;
    rep.passed = rep.non_increasing && rep.linear_law;
    return rep;
}

BoundsReport bounds_report(std::uint64_t d, int m, bool oracle, unsigned jobs) {
    const auto dd = static_cast<double>(d);
    require_positive_dimension(dd);
    if (m < 1) throw std::invalid_argument("bounds_report: m must be >= 1");

    BoundsReport r;
    r.d = d;
    r.m = m;
    r.lambda_paper = lambda_paper_bound(dd);
    r.pguess_paper_single = pguess_single_paper(dd);
    r.pguess_paper_multi = pguess_multi_paper(dd, m);
    r.iacc_bits = iacc_bound(dd, m);
    r.helstrom_multi_bound = helstrom_multi_bound(dd, m);
    r.delta_pinsker = security_distance_bounds(r.iacc_bits, 2).delta_pinsker;

    if (oracle) {
        if (d > kMaxLambdaOracleDimension || !std::has_single_bit(d)) {
            throw CapabilityError("exact oracle needs d = 2^k <= 16; d = " + std::to_string(d) +
                                  " (rerun without --oracle for closed-form bounds)");
        }
        const auto family = galois::build_mub_family(std::countr_zero(d));
        r.lambda_numeric = lambda_numeric(family, jobs);
        r.helstrom_single = helstrom_numeric(family, 1);
        r.pguess_certified = pguess_from_lambda(*r.lambda_numeric, m);
        r.hmin_bits = -std::log2(r.pguess_certified);
        r.oracle_used = true;
    } else {
        r.helstrom_single = helstrom_closed_form(dd);
        r.pguess_certified = pguess_from_lambda(r.lambda_paper, m);
        r.hmin_bits = -std::log2(pguess_paper(dd, m));
    }
    return r;
}

nlohmann::ordered_json to_json(const BoundsReport& r) {
    nlohmann::ordered_json j;
    j["d"] = r.d;
    j["m"] = r.m;
    j["lambda_numeric"] = r.lambda_numeric ? nlohmann::ordered_json(*r.lambda_numeric) : nullptr;
    j["lambda_paper"] = r.lambda_paper;
    j["pguess_certified"] = r.pguess_certified;
    j["pguess_paper_single"] = r.pguess_paper_single;
    j["pguess_paper_multi"] = r.pguess_paper_multi;
    j["hmin_bits"] = r.hmin_bits;
    j["iacc_bits"] = r.iacc_bits;
    j["helstrom_single"] = r.helstrom_single;
    j["helstrom_multi_bound"] = r.helstrom_multi_bound;
    j["delta_pinsker"] = r.delta_pinsker;
    j["oracle_used"] = r.oracle_used;
    return j;
}

}  // namespace mubqct::security
