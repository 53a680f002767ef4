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
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "mubqct/linalg.hpp"
#include "mubqct/mub.hpp"

namespace mubqct::security {

/// Ω = (ω_0, ..., ω_d): Eve's outcome label, one bit per basis.
struct OutcomeString {
    std::vector<std::uint8_t> bits;

    /// Bit θ of `mask` becomes ω_θ.
    static OutcomeString from_mask(std::uint64_t mask, std::size_t length);
};

/// F(Ω) = Σ_{θ,r} (1/|r|) |e^θ_{i(ω_θ,r)}⟩⟨e^θ_{i(ω_θ,r)}|, |r| = d/2.
/// Throws std::invalid_argument if |Ω| != d+1.
CMatrix f_operator(const OutcomeString& omega, const galois::MubFamily& family);

/// Largest d for which the 2^(d+1) eigen solves of lambda_numeric run.
inline constexpr std::size_t kMaxLambdaOracleDimension = 16;
/// Largest tensor-power dimension d^m for helstrom_numeric.
inline constexpr std::size_t kMaxHelstromDimension = 4096;

/// λ = max over all 2^(d+1) outcome strings of the top eigenvalue of F(Ω).
/// Data-parallel over `jobs` threads (0 = hardware concurrency). Throws
/// CapabilityError for d > 16.
double lambda_numeric(const galois::MubFamily& family, unsigned jobs = 0);

/// Closed form 1 + (d(d+1) - 2)/(2 d² √d).
double lambda_paper_bound(double d);

/// (2/d)(1 + (d(d+1)/2 - 1)/√d): the projector-sum bound applied to the
/// unscaled rank-1 terms of F(Ω), whose pairwise overlaps are 0 or 1/√d.
double lambda_sound_bound(double d);

struct ProjectorSumBound {
    double bound = 0.0;    // 1 + (l-1) cos φ
    double cos_phi = 0.0;  // max_{i≠j} ‖O_i O_j‖
    std::size_t count = 0;
};

/// Norm bound for a sum of l rank-1 projectors. Each input must be
/// Hermitian, idempotent and of unit trace within `tol`, else
/// std::invalid_argument.
ProjectorSumBound theorem1_bound(std::span<const CMatrix> projectors, double tol = 1e-9);

/// Clamp into [1/2, 1].
double clamp_probability(double p);

/// min(1, 1/2 + 1/√d - 2/(d(d+1)√d)), clamped.
double pguess_single_paper(double d);
/// min(1, (1/2)(1 + 2/√d - 4/(d²√d))^m), clamped.
double pguess_multi_paper(double d, int m);
/// Single-copy form for m = 1, multi-copy form otherwise.
double pguess_paper(double d, int m);
/// λ^m / 2, clamped.
double pguess_from_lambda(double lambda, int m);

/// log₂(1 + 2m/√d); 0 for m = 0.
double iacc_bound(double d, int m);

struct DistanceBounds {
    double iacc = 0.0;
    std::size_t alphabet_size = 2;
    /// Pinsker: Δ <= sqrt(I_acc / 2).
    double delta_pinsker = 0.0;

    /// Alicki–Fannes: I_acc <= 2Δ log₂|X| + η(2Δ), η(p) = -p log₂ p.
    double iacc_upper(double delta) const;
};

DistanceBounds security_distance_bounds(double iacc, std::size_t alphabet_size);

/// ρ_x = (1/(|r||θ|)) Σ_{r,θ} |e^θ_{i_xr}⟩⟨e^θ_{i_xr}| for x = 0, 1.
std::pair<CMatrix, CMatrix> bit_averaged_states(const galois::MubFamily& family);

/// 1/2 (1 + ‖ρ0^⊗m - ρ1^⊗m‖₁ / 2) by dense eigen-decomposition.
/// Throws CapabilityError when d^m > 4096.
double helstrom_numeric(const galois::MubFamily& family, int m);
double helstrom_trace_distance(const galois::MubFamily& family, int m);
/// 1/2 + 1/(2√(d+1)).
double helstrom_closed_form(double d);
/// min(1, 1/2 + m/(2√(d+1))).
double helstrom_multi_bound(double d, int m);

struct EveSimulation {
    double success_rate = 0.0;
    std::size_t trials = 0;
    /// Binomial standard error of success_rate.
    double standard_error = 0.0;
};

/// Eve measures each state in a uniformly random basis of the family and,
/// once θ is revealed, decodes x from her outcome when her basis matched or
/// flips a fair coin otherwise.
EveSimulation simulate_eve_random_basis(const galois::MubFamily& family, std::size_t trials,
                                        std::uint64_t seed);
/// 1/2 + 1/(2(d+1)).
double eve_random_basis_analytic(double d);

struct MonotonicityReport {
    std::vector<double> deltas;
    std::vector<double> distances;  // ‖N_δ(ρ0) - N_δ(ρ1)‖₁
    std::vector<double> predicted;  // (1-δ) D(0)
    double undecohered_distance = 0.0;
    double max_linear_deviation = 0.0;
    bool non_increasing = true;
    bool linear_law = true;
    bool passed = true;
};

/// Trace distance between the bit-averaged states after depolarizing storage
/// noise, checked to shrink monotonically (storing then measuring cannot
/// beat measuring at once). δ values must be in [0,1]; the grid is sorted
/// before the scan.
MonotonicityReport strategy_monotonicity(const galois::MubFamily& family,
                                         std::span<const double> delta_grid, double tol = 1e-9);

struct BoundsReport {
    std::uint64_t d = 0;
    int m = 1;
    std::optional<double> lambda_numeric;
    double lambda_paper = 0;
    double pguess_certified = 0;
    double pguess_paper_single = 0;
    double pguess_paper_multi = 0;
    double hmin_bits = 0;
    double iacc_bits = 0;
    double helstrom_single = 0;
    double helstrom_multi_bound = 0;
    double delta_pinsker = 0;
    bool oracle_used = false;
};

/// With the oracle, λ and the single-copy Helstrom value are computed
/// exactly (d = 2^k <= 16) and pguess_certified = λ^m/2; without it λ falls
/// back to the closed form. h_min uses pguess_certified when the oracle ran,
/// the closed-form guess otherwise. Throws CapabilityError past the caps.
BoundsReport bounds_report(std::uint64_t d, int m, bool oracle, unsigned jobs = 0);

nlohmann::ordered_json to_json(const BoundsReport& report);

}  // namespace mubqct::security
