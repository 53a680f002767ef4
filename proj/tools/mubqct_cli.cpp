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

// mubqct: command-line front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <locale>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mubqct/channel.hpp"
#include "mubqct/errors.hpp"
#include "mubqct/mub.hpp"
#include "mubqct/oracles/detection_mc.hpp"
#include "mubqct/qct.hpp"
#include "mubqct/ratemodel.hpp"
#include "mubqct/security.hpp"

namespace {

using namespace mubqct;
using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 1, kVerifyFailed = 2, kCapability = 3, kIo = 4 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kFormatVersion = 1;

// ---------------------------------------------------------------------------
// Config file: `key = value` per line, `#` starts a comment line. Entries
// become `--key=value` arguments unless the same flag is already on the
// command line, so flags always win.

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw CLI::ConversionError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return entries;
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return std::nullopt;
}

bool flag_given(const std::vector<std::string>& args, const std::string& key) {
    const std::string bare = "--" + key;
    for (const auto& a : args) {
        if (a == bare || a.rfind(bare + "=", 0) == 0) return true;
    }
    return false;
}

std::vector<std::string> merge_config(std::vector<std::string> args) {
    const auto path = find_config_path(args);
    if (!path) return args;
    const auto original = args;
    for (const auto& [key, value] : read_config_file(*path)) {
        if (key == "config") throw CLI::ConversionError("config files cannot include other configs");
        if (!flag_given(original, key)) args.push_back("--" + key + "=" + value);
    }
    return args;
}

// ---------------------------------------------------------------------------
// Resolved configuration

std::vector<std::pair<std::string, std::string>> resolved_options(const CLI::App& root,
                                                                  const CLI::App& sub) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("command", sub.get_name());
    for (const CLI::App* app : {&root, &sub}) {
        for (const CLI::Option* opt : app->get_options()) {
            if (opt->get_lnames().empty()) continue;
            const std::string& name = opt->get_lnames().front();
            if (name == "help") continue;
            std::string value;
            if (opt->get_expected_max() == 0) {
                value = opt->count() > 0 && opt->as<bool>() ? "true" : "false";
            } else if (opt->count() > 0) {
                for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
            } else {
                value = opt->get_default_str();
                // vector defaults print as "[a,b]"
                if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
                    value = value.substr(1, value.size() - 2);
                }
                if (value.empty()) value = "none";
            }
            out.emplace_back(name, value);
        }
    }
    return out;
}

std::string config_line(const std::vector<std::pair<std::string, std::string>>& cfg) {
    std::string line = "config:";
    for (const auto& [k, v] : cfg) line += " " + k + "=" + v;
    return line;
}

json config_json(const std::vector<std::pair<std::string, std::string>>& cfg) {
    json j = json::object();
    for (const auto& [k, v] : cfg) j[k] = v;
    return j;
}

// Writes to --output when given, else stdout.
class Sink {
   public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    void finish(const std::string& path) {
        stream().flush();
        if (!stream()) throw IoError("write to '" + (path.empty() ? "stdout" : path) + "' failed");
    }

   private:
    std::ofstream file_;
};

// ---------------------------------------------------------------------------
// Grids

std::vector<double> parse_length_grid(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double start = 0, stop = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(spec);
        in.imbue(std::locale::classic());
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0) ||
            stop < start || !in.eof()) {
            throw CLI::ValidationError("--L", "expected start:stop:step with step > 0, got '" + spec + "'");
        }
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
    std::istringstream in(spec);
    in.imbue(std::locale::classic());
    std::string item;
    while (std::getline(in, item, ',')) {
        std::istringstream v(trim(item));
        v.imbue(std::locale::classic());
        double x = 0;
        if (!(v >> x) || !v.eof()) throw CLI::ValidationError("--L", "bad length '" + item + "'");
        out.push_back(x);
    }
    if (out.empty()) throw CLI::ValidationError("--L", "empty length grid");
    return out;
}

rate::DetectorProfile profile_or_throw(const std::string& name) {
    auto p = rate::find_preset(name);
    if (!p) throw CLI::ValidationError("--profile", "unknown detector profile '" + name + "'");
    return *p;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& p : rate::detector_presets()) names.push_back(p.name);
    return names;
}

int exponent_of(std::uint64_t d) {
    return galois::Dimension::from_size(static_cast<std::size_t>(d)).exponent();
}

// ---------------------------------------------------------------------------
// Subcommands

struct Common {
    std::string config;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    int format_version = kFormatVersion;
    std::string output;
};

struct VerifyArgs {
    int k = 0;
    double tol = 1e-9;
    std::string export_path;
};

int cmd_mub_verify(const VerifyArgs& a, const Common& c, const std::string& cfg) {
    if (a.k < 1 || a.k > galois::kMaxFamilyExponent) {
        throw CLI::ValidationError("--k", "k must be in [1, " +
                                              std::to_string(galois::kMaxFamilyExponent) + "]");
    }
    const auto family = galois::build_mub_family(a.k);
    const auto rep = galois::verify_unbiasedness(family, a.tol);
    json j;
    j["k"] = a.k;
    j["d"] = family.d();
    j["bases"] = family.basis_count();
    j["tolerance"] = rep.tolerance;
    j["passed"] = rep.passed;
    j["max_orthonormality_deviation"] = rep.max_orthonormality_deviation;
    j["orthonormality_witness"] = {{"theta", rep.orth_theta}, {"i", rep.orth_i}, {"j", rep.orth_j}};
    j["max_unbiasedness_deviation"] = rep.max_unbiasedness_deviation;
    j["unbiasedness_witness"] = {{"theta1", rep.unbiased_theta1},
                                 {"theta2", rep.unbiased_theta2},
                                 {"i", rep.unbiased_i},
                                 {"j", rep.unbiased_j}};
    if (!a.export_path.empty()) {
        std::ofstream out(a.export_path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + a.export_path + "' for writing");
        galois::write_family_text(out, family);
        if (!out.flush()) throw IoError("write to '" + a.export_path + "' failed");
    }
    Sink sink(c.output);
    sink.stream() << "# " << cfg << '\n' << j.dump(2) << '\n';
    sink.finish(c.output);
    return rep.passed ? kOk : kVerifyFailed;
}

struct BoundsArgs {
    std::uint64_t d = 0;
    int m = 1;
    bool oracle = false;
};

int cmd_bounds(const BoundsArgs& a, const Common& c, const std::string& cfg) {
    const auto rep = security::bounds_report(a.d, a.m, a.oracle, c.jobs);
    Sink sink(c.output);
    sink.stream() << "# " << cfg << '\n' << security::to_json(rep).dump(2) << '\n';
    sink.finish(c.output);
    return kOk;
}

struct SweepArgs {
    std::vector<std::uint64_t> d;
    std::string lengths = "0:400:5";
    std::vector<std::string> profiles{"snspd_lab"};
    double alpha = 0.2;
    std::string bounds = "paper";
    std::string sift = "fiber-detector";
};

int cmd_sweep(const SweepArgs& a, const Common& c, const std::string& cfg) {
    rate::SweepSpec spec;
    spec.dimensions = a.d;
    spec.lengths_km = parse_length_grid(a.lengths);
    for (const auto& name : a.profiles) spec.profiles.push_back(profile_or_throw(name));
    spec.attenuation_db_per_km = a.alpha;
    spec.options.bounds =
        a.bounds == "certified" ? rate::BoundsSource::kCertified : rate::BoundsSource::kPaper;
    spec.options.sift =
        a.sift == "fiber" ? rate::SiftLoss::kFiberOnly : rate::SiftLoss::kFiberAndDetector;
    spec.jobs = c.jobs;
    const auto rows = rate::sweep(spec);
    Sink sink(c.output);
    rate::write_sweep_csv(sink.stream(), rows, {cfg});
    sink.finish(c.output);
    return kOk;
}

struct SimArgs {
    std::uint64_t d = 16;
    int m = 1;
    double mu = 0;
    double length = 0;
    double alpha = 0.2;
    std::string profile = "snspd_lab";
    std::size_t rounds = 10000;
    bool allow_mu_above_cap = false;
    std::string transcript;
    std::size_t parties = 1;
};

qct::ProtocolParams protocol_params(const SimArgs& a, const Common& c) {
    qct::ProtocolParams p;
    p.d = static_cast<std::size_t>(a.d);
    p.photons = a.mu > 0 ? rate::PhotonSource::poisson(a.mu) : rate::PhotonSource::fixed(a.m);
    p.rounds = a.rounds;
    p.channel = rate::ChannelModel{a.alpha, a.length};
    p.detector = profile_or_throw(a.profile).model;
    p.seed = c.seed;
    p.allow_mu_above_cap = a.allow_mu_above_cap;
    p.validate();
    return p;
}

json summary_json(const qct::ProtocolParams& p, const qct::ProtocolTranscript& t) {
    const auto s = qct::summarize(p, t);
    json j;
    j["rounds"] = t.rounds.size();
    j["clicks"] = t.clicks;
    j["sifted_bits"] = t.bob_sifted.size();
    j["empirical"] = {{"click_rate", s.click_rate}, {"p_c", s.p_c}, {"p_e", s.p_e},
                      {"hxy_bits", s.hxy_bits}};
    j["analytic"] = {{"click_rate", s.analytic_click_rate}, {"p_c", s.analytic_p_c},
                     {"p_e", s.analytic_p_e}};
    j["z"] = {{"click_rate", s.z_click_rate}, {"p_c", s.z_p_c}, {"p_e", s.z_p_e}};
    return j;
}

void write_transcript_file(const std::string& path, const qct::ProtocolTranscript& t,
                           const std::string& cfg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    qct::write_transcript_csv(out, t, {cfg});
    if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

int cmd_simulate(const SimArgs& a, const Common& c,
                 const std::vector<std::pair<std::string, std::string>>& cfg) {
    const auto params = protocol_params(a, c);
    const auto family = galois::build_mub_family(exponent_of(a.d));
    const auto transcript = qct::run_protocol(params, family);
    const std::string line = config_line(cfg);
    if (!a.transcript.empty()) write_transcript_file(a.transcript, transcript, line);
    json j;
    j["config"] = config_json(cfg);
    j.update(summary_json(params, transcript));
    Sink sink(c.output);
    sink.stream() << "# " << line << '\n' << j.dump(2) << '\n';
    sink.finish(c.output);
    return kOk;
}

int cmd_multiparty(const SimArgs& a, const Common& c,
                   const std::vector<std::pair<std::string, std::string>>& cfg) {
    const auto params = protocol_params(a, c);
    const auto family = galois::build_mub_family(exponent_of(a.d));
    const auto runs = qct::multiparty_run(params, a.parties, family);
    const auto party = qct::per_party_params(params, a.parties);
    json j;
    j["config"] = config_json(cfg);
    j["parties"] = json::array();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        json s = summary_json(party, runs[i]);
        std::size_t agree = 0;
        for (std::size_t b = 0; b < runs[i].bob_sifted.size(); ++b) {
            agree += runs[i].bob_sifted[b] == runs[i].alice_sifted[b] ? 1 : 0;
        }
        json entry{{"party", i}, {"copies", party.photons.mean_photons()},
                   {"sifted_agreement", agree}};
        entry.update(s);
        j["parties"].push_back(std::move(entry));
    }
    Sink sink(c.output);
    sink.stream() << "# " << config_line(cfg) << '\n' << j.dump(2) << '\n';
    sink.finish(c.output);
    return kOk;
}

struct OracleArgs {
    std::uint64_t d = 4;
    int m = 1;
    double length = 0;
    double alpha = 0.2;
    std::string profile = "snspd_lab";
    std::size_t samples = 1000000;
};

int cmd_oracle(const OracleArgs& a, const Common& c, const std::string& cfg) {
    if (a.d > security::kMaxLambdaOracleDimension) {
        throw CapabilityError("oracle reference values need d = 2^k <= 16; d = " + std::to_string(a.d));
    }
    const auto family = galois::build_mub_family(exponent_of(a.d));
    const double dd = static_cast<double>(a.d);
    const double lambda = security::lambda_numeric(family, c.jobs);
    json j;
    j["d"] = a.d;
    j["m"] = a.m;
    j["lambda_numeric"] = lambda;
    j["lambda_sound_bound"] = security::lambda_sound_bound(dd);
    j["lambda_paper"] = security::lambda_paper_bound(dd);
    j["pguess_certified"] = security::pguess_from_lambda(lambda, a.m);
    j["helstrom_numeric"] = security::helstrom_numeric(family, a.m);
    j["helstrom_closed_form"] = security::helstrom_closed_form(dd);
    j["eve_random_basis_analytic"] = security::eve_random_basis_analytic(dd);

    const auto det = profile_or_throw(a.profile).model;
    const double t = rate::transmittance(a.length, a.alpha);
    const auto photons = rate::PhotonSource::fixed(a.m);
    const auto analytic = rate::detection_stats(t, det, photons);
    const auto mc = oracles::simulate_detection_events(t, det, photons, a.samples, c.seed);
    j["detection"] = {{"transmittance", t},
                      {"analytic", {{"p_right", analytic.p_right},
                                    {"p_wrong", analytic.p_wrong},
                                    {"p_c", analytic.p_c},
                                    {"p_e", analytic.p_e}}},
                      {"monte_carlo", {{"samples", mc.samples},
                                       {"p_right", mc.p_right},
                                       {"p_wrong", mc.p_wrong},
                                       {"p_c", mc.p_c},
                                       {"p_e", mc.p_e},
                                       {"sigma_c", mc.sigma_c}}}};
    Sink sink(c.output);
    sink.stream() << "# " << cfg << '\n' << j.dump(2) << '\n';
    sink.finish(c.output);
    return kOk;
}

void add_sim_options(CLI::App* sub, SimArgs& a) {
    sub->add_option("--d", a.d, "dimension, a power of two <= 256");
    sub->add_option("--m", a.m, "copies per channel use")->check(CLI::PositiveNumber);
    sub->add_option("--mu", a.mu, "Poisson mean photon number (overrides --m when > 0)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--L", a.length, "fiber length in km")->check(CLI::NonNegativeNumber);
    sub->add_option("--alpha", a.alpha, "attenuation in dB/km")->check(CLI::PositiveNumber);
    sub->add_option("--profile", a.profile, "detector profile")->check(CLI::IsMember(preset_names()));
    sub->add_option("--rounds", a.rounds, "channel uses")->check(CLI::PositiveNumber);
    sub->add_flag("--allow-mu-above-cap", a.allow_mu_above_cap,
                  "accept a Poisson mean above the mu + 4 sqrt(mu) <= sqrt(d) limit");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mubqct: MUB-based quantum key distribution toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();

    Common common;
    app.add_option("--config", common.config, "key = value config file; flags override it");
    app.add_option("--seed", common.seed, "RNG seed")->envname("MUBQCT_SEED");
    app.add_option("--jobs", common.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--format-version", common.format_version, "output format version")
        ->check(CLI::IsMember({kFormatVersion}));
    app.add_option("--output", common.output, "write the result here instead of stdout");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("mub-verify", "build and verify the MUB family for d = 2^k");
    verify_cmd->add_option("--k", verify.k, "exponent, 1..8")->required();
    verify_cmd->add_option("--tol", verify.tol, "tolerance")->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--export", verify.export_path, "write the basis vectors as text");

    BoundsArgs bounds;
    auto* bounds_cmd = app.add_subcommand("bounds", "eavesdropper bounds for d and m");
    bounds_cmd->add_option("--d", bounds.d, "dimension")->required();
    bounds_cmd->add_option("--m", bounds.m, "copies")->check(CLI::PositiveNumber);
    bounds_cmd->add_flag("--oracle", bounds.oracle, "run the exact eigenvalue oracle (d <= 16)");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "key rate against distance");
    sweep_cmd->add_option("--d", sweep.d, "dimensions, comma separated")->required()->delimiter(',');
    sweep_cmd->add_option("--L", sweep.lengths, "lengths: start:stop:step or a comma list");
    sweep_cmd->add_option("--profile", sweep.profiles, "detector profiles, comma separated")
        ->delimiter(',')
        ->check(CLI::IsMember(preset_names()));
    sweep_cmd->add_option("--alpha", sweep.alpha, "attenuation in dB/km")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--bounds", sweep.bounds, "guessing-probability source")
        ->check(CLI::IsMember({"paper", "certified"}));
    sweep_cmd->add_option("--sift", sweep.sift, "losses inside the sifting factor")
        ->check(CLI::IsMember({"fiber-detector", "fiber"}));

    SimArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo protocol run");
    add_sim_options(sim_cmd, sim);
    sim_cmd->add_option("--transcript", sim.transcript, "write the per-round CSV here");

    SimArgs multi;
    multi.m = 2;
    auto* multi_cmd = app.add_subcommand("multiparty", "several receivers sharing one encoded stream");
    add_sim_options(multi_cmd, multi);
    multi_cmd->add_option("--parties", multi.parties, "receivers")->check(CLI::PositiveNumber);

    OracleArgs oracle;
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference values (d <= 16)");
    oracle_cmd->add_option("--d", oracle.d, "dimension")->required();
    oracle_cmd->add_option("--m", oracle.m, "copies")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--L", oracle.length, "fiber length in km")->check(CLI::NonNegativeNumber);
    oracle_cmd->add_option("--alpha", oracle.alpha, "attenuation in dB/km")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--profile", oracle.profile, "detector profile")
        ->check(CLI::IsMember(preset_names()));
    oracle_cmd->add_option("--samples", oracle.samples, "Monte Carlo samples")
        ->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = merge_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);

        const CLI::App* sub = app.get_subcommands().front();
        const auto cfg = resolved_options(app, *sub);
        const std::string line = config_line(cfg);
        if (sub == verify_cmd) return cmd_mub_verify(verify, common, line);
        if (sub == bounds_cmd) return cmd_bounds(bounds, common, line);
        if (sub == sweep_cmd) return cmd_sweep(sweep, common, line);
        if (sub == sim_cmd) return cmd_simulate(sim, common, cfg);
        if (sub == multi_cmd) return cmd_multiparty(multi, common, cfg);
        return cmd_oracle(oracle, common, line);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const CapabilityError& e) {
        std::cerr << "capability limit: " << e.what() << '\n';
        return kCapability;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
