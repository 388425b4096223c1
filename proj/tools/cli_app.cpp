// Copyright 2026 The nogo-postselect Authors
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

#include "cli_app.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "nogo/errors.hpp"
#include "nogo/oracle.hpp"
#include "nogo/scenario_io.hpp"
#include "nogo/theorem.hpp"

namespace nogo::cli {

namespace {

using io::json;

struct CommonFlags {
    std::string out_path;
    std::string format;
    std::optional<double> tol_deg;
    std::optional<double> tol_verify;
};

/// Flag values beat config values, which beat the defaults.
io::Tolerances resolve_tolerances(const CommonFlags &flags, const io::ScenarioConfig *config) {
    io::Tolerances t = io::default_tolerances();
    if (config) {
        t.deg = config->tol_deg.value_or(t.deg);
        t.verify = config->tol_verify.value_or(t.verify);
    }
    t.deg = flags.tol_deg.value_or(t.deg);
    t.verify = flags.tol_verify.value_or(t.verify);
    return t;
}

void emit(const std::string &text, const std::string &out_path, std::ostream &out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open output file " + out_path);
    }
    file << text;
}

struct LoadedConfig {
    io::ScenarioConfig config;
    std::string hash;
};

LoadedConfig load(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    // Hash the canonical dump so formatting changes do not alter the digest.
    return {io::parse_config(j), io::fnv1a64_hex(j.dump())};
}

std::vector<std::pair<std::size_t, std::size_t>> parse_dims(const std::string &spec) {
    if (spec == "mixed") {
        return {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
    }
    std::vector<std::pair<std::size_t, std::size_t>> dims;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto x = item.find('x');
        std::size_t n = 0;
        std::size_t m = 0;
        try {
            if (x == std::string::npos) {
                throw std::invalid_argument(item);
            }
            std::size_t used = 0;
            n = std::stoul(item.substr(0, x), &used);
            if (used != x) {
                throw std::invalid_argument(item);
            }
            m = std::stoul(item.substr(x + 1), &used);
            if (used != item.size() - x - 1) {
                throw std::invalid_argument(item);
            }
        } catch (const std::logic_error &) {
            throw ConfigError("--dims: expected NxM entries, got '" + item + "'");
        }
        if (n < 1 || m < 1) {
            throw ConfigError("--dims: dimensions must be positive");
        }
        dims.emplace_back(n, m);
    }
    if (dims.empty()) {
        throw ConfigError("--dims: empty specification");
    }
    return dims;
}

int cmd_verify(const std::string &config_path, const CommonFlags &flags, std::ostream &out) {
    const LoadedConfig loaded = load(config_path);
    const io::Tolerances tol = resolve_tolerances(flags, &loaded.config);
    const io::RunReport report = io::run_verify(loaded.config, loaded.hash, tol);
    emit(io::encode(report).dump(2) + "\n", flags.out_path, out);
    return report.passed ? kExitOk : kExitVerificationFailed;
}

int cmd_cnot_sweep(const std::string &s_spec, const std::string &theta_spec,
                   const std::string &varphi_spec, const CommonFlags &flags, std::ostream &out) {
    const auto s_grid = s_spec.empty() ? io::default_s_grid() : io::parse_grid(s_spec);
    const auto theta_grid =
        theta_spec.empty() ? io::default_theta_grid() : io::parse_grid(theta_spec);
    const auto varphi_grid =
        varphi_spec.empty() ? io::default_varphi_grid() : io::parse_grid(varphi_spec);
    for (double s : s_grid) {
        if (s < 0.0 || s > 1.0) {
            throw ConfigError("--s-grid: values must lie in [0, 1]");
        }
    }
    const auto rows =
        io::cnot_sweep(s_grid, theta_grid, varphi_grid, resolve_tolerances(flags, nullptr));
    std::ostringstream text;
    if (flags.format == "json") {
        text << io::encode(rows).dump(2) << "\n";
    } else {
        io::write_sweep_csv(text, rows);
    }
    emit(text.str(), flags.out_path, out);
    return kExitOk;
}

int cmd_random_audit(AuditOptions options, const CommonFlags &flags, std::ostream &out) {
    const io::Tolerances tol = resolve_tolerances(flags, nullptr);
    options.tol_deg = tol.deg;
    options.tol_verify = tol.verify;
    const AuditSummary summary = run_random_audit(options);

    std::ostringstream text;
    if (flags.format == "csv") {
        text << "index,seed,n,m,hypothesis_holds,basis_requirement_holds,conditional,"
                "unconditional,gap,closed_form_gap,postselection_probability,violation\r\n";
        for (const auto &r : summary.records) {
            text << r.index << "," << r.seed << "," << r.n << "," << r.m << ","
                 << r.hypothesis_holds << "," << r.basis_requirement_holds << ","
                 << io::format_double(r.conditional) << "," << io::format_double(r.unconditional)
                 << "," << io::format_double(r.gap) << "," << io::format_double(r.closed_form_gap)
                 << "," << io::format_double(r.postselection_probability) << "," << r.violation
                 << "\r\n";
        }
    } else {
        json records = json::array();
        for (const auto &r : summary.records) {
            records.push_back({{"index", r.index},
                               {"seed", r.seed},
                               {"n", r.n},
                               {"m", r.m},
                               {"hypothesis_holds", r.hypothesis_holds},
                               {"basis_requirement_holds", r.basis_requirement_holds},
                               {"conditional", r.conditional},
                               {"unconditional", r.unconditional},
                               {"gap", r.gap},
                               {"closed_form_gap", r.closed_form_gap},
                               {"postselection_probability", r.postselection_probability},
                               {"violation", r.violation}});
        }
        json dims = json::array();
        for (const auto &[n, m] : options.dims) {
            dims.push_back({n, m});
        }
        const json summary_json = {
            {"mode", options.mode == AuditMode::Degenerate ? "degenerate" : "generic"},
            {"count", options.count},
            {"seed", options.seed},
            {"dims", dims},
            {"tolerances", {{"deg", tol.deg}, {"verify", tol.verify}}},
            {"skipped", summary.skipped},
            {"violations", summary.violations},
            {"min_gap", summary.min_gap},
            {"median_gap", summary.median_gap},
            {"max_gap", summary.max_gap},
            {"records", std::move(records)}};
        text << summary_json.dump(2) << "\n";
    }
    emit(text.str(), flags.out_path, out);
    const bool failed = options.mode == AuditMode::Degenerate && summary.violations > 0;
    return failed ? kExitVerificationFailed : kExitOk;
}

int cmd_sample(const std::string &config_path, std::uint64_t shots, std::optional<std::uint64_t> seed,
               std::size_t term, const CommonFlags &flags, std::ostream &out) {
    const LoadedConfig loaded = load(config_path);
    const io::ScenarioConfig &config = loaded.config;
    if (!config.has_observable()) {
        throw ConfigError("sample needs an 'observable'");
    }
    if (!config.phi) {
        throw ConfigError("sample needs a postselected state 'phi'");
    }
    if (term >= config.terms.size()) {
        throw ConfigError("--term out of range");
    }
    const io::Tolerances tol = resolve_tolerances(flags, &config);
    const MeasurementScenario sc = config.scenario(tol.deg);
    const std::uint64_t used_seed = seed.value_or(config.seed.value_or(0));
    const oracle::SamplingResult result = oracle::sample_two_step(sc, shots, used_seed, term);
    const auto r = sc.term_spectrum(term).r_grid();

    std::ostringstream text;
    if (flags.format == "csv") {
        text << "i,j,eigenvalue,count\r\n";
        for (std::size_t i = 0; i < result.n; ++i) {
            for (std::size_t j = 0; j < result.m; ++j) {
                text << i << "," << j << "," << io::format_double(r[i][j]) << ","
                     << result.counts[i * result.m + j] << "\r\n";
            }
        }
    } else {
        const json j = {{"config_hash", loaded.hash},
                        {"seed", used_seed},
                        {"shots", shots},
                        {"term", term},
                        {"counts", result.counts},
                        {"accepted", result.accepted},
                        {"acceptance_rate", result.acceptance_rate()},
                        {"conditional_mean", result.conditional_mean(r)},
                        {"conditional_mean_stderr", result.conditional_mean_stderr(r)},
                        {"exact_conditional", conditional_expectation(sc, term)}};
        text << j.dump(2) << "\n";
    }
    emit(text.str(), flags.out_path, out);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Postselected joint-measurement verifier"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto add_tolerance_flags = [&flags](CLI::App *sub) {
        sub->add_option("--tol-deg", flags.tol_deg, "Degeneracy tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--tol-verify", flags.tol_verify, "Verification tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", flags.out_path, "Write output to this file instead of stdout");
    };

    std::string config_path;
    CLI::App *verify = app.add_subcommand("verify", "Check a scenario configuration");
    verify->add_option("--config", config_path, "Scenario JSON")->required();
    add_tolerance_flags(verify);

    std::string s_spec;
    std::string theta_spec;
    std::string varphi_spec;
    CLI::App *sweep = app.add_subcommand("cnot-sweep", "Tabulate the CNOT example");
    sweep->add_option("--s-grid", s_spec, "Strengths: a,b,c or start:stop:count");
    sweep->add_option("--theta-grid", theta_spec, "Postselection angles");
    sweep->add_option("--varphi-grid", varphi_spec, "Postselection phases");
    flags.format = "csv";
    sweep->add_option("--format", flags.format)->check(CLI::IsMember({"csv", "json"}));
    add_tolerance_flags(sweep);

    AuditOptions audit_options;
    std::string dims_spec = "2x2";
    std::string mode = "degenerate";
    CLI::App *audit = app.add_subcommand("random-audit", "Seeded random instances");
    audit->add_option("--count", audit_options.count, "Number of instances")
        ->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
    audit->add_option("--dims", dims_spec, "NxM list such as 2x2,3x2, or 'mixed'");
    audit->add_option("--seed", audit_options.seed);
    audit->add_option("--mode", mode)->check(CLI::IsMember({"degenerate", "generic"}));
    audit->add_option("--format", flags.format)->check(CLI::IsMember({"csv", "json"}));
    add_tolerance_flags(audit);

    std::uint64_t shots = 100000;
    std::optional<std::uint64_t> sample_seed;
    std::size_t term = 0;
    CLI::App *sample = app.add_subcommand("sample", "Monte Carlo of measure-then-postselect");
    sample->add_option("--config", config_path, "Scenario JSON")->required();
    sample->add_option("--shots", shots)->check(CLI::Range(std::uint64_t{1}, UINT64_MAX));
    sample->add_option("--seed", sample_seed);
    sample->add_option("--term", term, "Product term index");
    sample->add_option("--format", flags.format)->check(CLI::IsMember({"csv", "json"}));
    add_tolerance_flags(sample);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (verify->parsed()) {
            return cmd_verify(config_path, flags, out);
        }
        if (sweep->parsed()) {
            return cmd_cnot_sweep(s_spec, theta_spec, varphi_spec, flags, out);
        }
        if (audit->parsed()) {
            if (audit->get_option("--format")->count() == 0) {
                flags.format = "json";
            }
            audit_options.mode = mode == "generic" ? AuditMode::Generic : AuditMode::Degenerate;
            audit_options.dims = parse_dims(dims_spec);
            return cmd_random_audit(audit_options, flags, out);
        }
        if (sample->parsed()) {
            if (sample->get_option("--format")->count() == 0) {
                flags.format = "json";
            }
            return cmd_sample(config_path, shots, sample_seed, term, flags, out);
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace nogo::cli
