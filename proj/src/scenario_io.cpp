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

#include "nogo/scenario_io.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "nogo/errors.hpp"

namespace nogo::io {

namespace {

[[noreturn]] void fail(std::string_view field, std::string_view what) {
    throw ConfigError(std::string(field) + ": " + std::string(what));
}

double parse_double_strict(std::string_view text, std::string_view field) {
    double value = 0.0;
    const char *begin = text.data();
    const char *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        fail(field, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

double require_number(const json &j, std::string_view field) {
    if (!j.is_number()) {
        fail(field, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        fail(field, "value is not finite");
    }
    return v;
}

std::optional<double> positive_number(const json &obj, const char *key, std::string_view field) {
    if (!obj.contains(key)) {
        return std::nullopt;
    }
    const double v = require_number(obj.at(key), field);
    if (!(v > 0.0)) {
        fail(field, "must be positive");
    }
    return v;
}

}  // namespace

Tolerances default_tolerances() {
    Tolerances t;
    if (const char *env = std::getenv("NOGO_DEFAULT_TOL"); env && *env) {
        const double v = parse_double_strict(trim(env), "NOGO_DEFAULT_TOL");
        if (!(v > 0.0)) {
            fail("NOGO_DEFAULT_TOL", "must be positive");
        }
        t.deg = v;
        t.verify = v;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Primitives

json encode(Complex z) { return json::array({z.real(), z.imag()}); }

json encode(const Ket &ket) {
    json arr = json::array();
    for (const auto &a : ket.amplitudes()) {
        arr.push_back(encode(a));
    }
    return arr;
}

json encode(const Operator &op) {
    json rows = json::array();
    for (std::size_t i = 0; i < op.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < op.dim(); ++j) {
            row.push_back(encode(op(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Complex decode_complex(const json &j, std::string_view field) {
    if (!j.is_array() || j.size() != 2) {
        fail(field, "complex numbers are [re, im] pairs");
    }
    return {require_number(j[0], field), require_number(j[1], field)};
}

Ket decode_ket(const json &j, std::size_t dim, std::string_view field) {
    if (!j.is_array()) {
        fail(field, "expected an array of [re, im] pairs");
    }
    if (j.size() != dim) {
        fail(field, "expected " + std::to_string(dim) + " amplitudes, got " +
                        std::to_string(j.size()));
    }
    Ket k(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        k[i] = decode_complex(j[i], field);
    }
    return k;
}

Operator decode_operator(const json &j, std::size_t dim, std::string_view field) {
    if (!j.is_array() || j.size() != dim) {
        fail(field, "expected " + std::to_string(dim) + " rows");
    }
    Operator op(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const json &row = j[i];
        if (!row.is_array() || row.size() != dim) {
            fail(field, "row " + std::to_string(i) + " must have " + std::to_string(dim) +
                            " entries");
        }
        for (std::size_t c = 0; c < dim; ++c) {
            op(i, c) = decode_complex(row[c], field);
        }
    }
    return op;
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

Ket decode_state(const json &j, std::size_t dim, std::string_view field) {
    Ket k = decode_ket(j, dim, field);
    if (!k.is_normalized(kTolNorm)) {
        fail(field, "state is not normalized");
    }
    return k;
}

Operator decode_hermitian(const json &j, std::size_t dim, std::string_view field) {
    Operator op = decode_operator(j, dim, field);
    if (!op.is_hermitian(kTolHermitian)) {
        fail(field, "operator is not Hermitian");
    }
    return op;
}

const json &require_key(const json &obj, const char *key, std::string_view where) {
    if (!obj.is_object() || !obj.contains(key)) {
        fail(where, std::string("missing field '") + key + "'");
    }
    return obj.at(key);
}

std::size_t decode_dim(const json &j, std::string_view field) {
    if (!j.is_number_integer() || j.get<long long>() <= 0) {
        fail(field, "dimension must be a positive integer");
    }
    return static_cast<std::size_t>(j.get<long long>());
}

}  // namespace

MeasurementScenario ScenarioConfig::scenario(double tol) const {
    return MeasurementScenario(psi, xi, JointObservable(n, m, terms), phi, tol);
}

InteractionModel ScenarioConfig::model() const {
    if (!interaction) {
        throw ConfigError("configuration has no interaction");
    }
    if (interaction->unitary) {
        return InteractionModel::from_unitary(*interaction->unitary, n);
    }
    const auto &h = *interaction->hamiltonians;
    return InteractionModel::from_hamiltonians(h.system, h.device, h.t);
}

ScenarioConfig parse_config(const json &j) {
    if (!j.is_object()) {
        fail("config", "top level must be an object");
    }
    ScenarioConfig c;
    if (j.contains("name")) {
        if (!j.at("name").is_string()) {
            fail("name", "expected a string");
        }
        c.name = j.at("name").get<std::string>();
    }
    const json &dims = require_key(j, "dims", "config");
    if (!dims.is_array() || dims.size() != 2) {
        fail("dims", "expected [n, m]");
    }
    c.n = decode_dim(dims[0], "dims[0]");
    c.m = decode_dim(dims[1], "dims[1]");

    c.psi = decode_state(require_key(j, "psi", "config"), c.n, "psi");
    c.xi = decode_state(require_key(j, "xi", "config"), c.m, "xi");
    if (j.contains("phi") && !j.at("phi").is_null()) {
        c.phi = decode_state(j.at("phi"), c.n, "phi");
    }

    if (j.contains("observable")) {
        const json &obs = j.at("observable");
        if (!obs.is_array() || obs.empty()) {
            fail("observable", "expected a non-empty array of {system, device} terms");
        }
        for (std::size_t k = 0; k < obs.size(); ++k) {
            const std::string where = "observable[" + std::to_string(k) + "]";
            c.terms.push_back(
                {decode_hermitian(require_key(obs[k], "system", where), c.n, where + ".system"),
                 decode_hermitian(require_key(obs[k], "device", where), c.m, where + ".device")});
        }
    }

    if (j.contains("interaction")) {
        const json &inter = j.at("interaction");
        InteractionSpec spec;
        if (inter.is_object() && inter.contains("unitary")) {
            Operator u = decode_operator(inter.at("unitary"), c.n * c.m, "interaction.unitary");
            if (!u.is_unitary(1e-10)) {
                fail("interaction.unitary", "matrix is not unitary");
            }
            spec.unitary = std::move(u);
        } else if (inter.is_object() && inter.contains("hamiltonians")) {
            const json &h = inter.at("hamiltonians");
            const std::string where = "interaction.hamiltonians";
            spec.hamiltonians = HamiltonianCoupling{
                decode_hermitian(require_key(h, "system", where), c.n, where + ".system"),
                decode_hermitian(require_key(h, "device", where), c.m, where + ".device"),
                require_number(require_key(h, "t", where), where + ".t")};
        } else {
            fail("interaction", "expected {\"unitary\": ...} or {\"hamiltonians\": ...}");
        }
        c.interaction = std::move(spec);
    }

    if (j.contains("setup")) {
        const json &s = j.at("setup");
        c.setup = MeasurementSetup{decode_hermitian(require_key(s, "A", "setup"), c.n, "setup.A"),
                                   decode_hermitian(require_key(s, "B", "setup"), c.n, "setup.B"),
                                   decode_hermitian(require_key(s, "M", "setup"), c.m, "setup.M")};
    }
    if (c.setup.has_value() != c.interaction.has_value()) {
        fail("config", "'interaction' and 'setup' must be given together");
    }
    if (!c.has_observable() && !c.has_error_disturbance()) {
        fail("config", "nothing to verify: give 'observable' or 'interaction' with 'setup'");
    }

    if (j.contains("tolerances")) {
        const json &t = j.at("tolerances");
        if (!t.is_object()) {
            fail("tolerances", "expected an object");
        }
        c.tol_deg = positive_number(t, "deg", "tolerances.deg");
        c.tol_verify = positive_number(t, "verify", "tolerances.verify");
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) {
            fail("seed", "expected a non-negative integer");
        }
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    return c;
}

ScenarioConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError(path.string() + ": invalid JSON: " + e.what());
    }
    return parse_config(j);
}

json encode(const ScenarioConfig &c) {
    json j;
    if (!c.name.empty()) {
        j["name"] = c.name;
    }
    j["dims"] = {c.n, c.m};
    j["psi"] = encode(c.psi);
    j["xi"] = encode(c.xi);
    if (c.phi) {
        j["phi"] = encode(*c.phi);
    }
    if (c.has_observable()) {
        json terms = json::array();
        for (const auto &t : c.terms) {
            terms.push_back({{"system", encode(t.system)}, {"device", encode(t.device)}});
        }
        j["observable"] = std::move(terms);
    }
    if (c.interaction) {
        if (c.interaction->unitary) {
            j["interaction"] = {{"unitary", encode(*c.interaction->unitary)}};
        } else {
            const auto &h = *c.interaction->hamiltonians;
            j["interaction"] = {{"hamiltonians",
                                 {{"system", encode(h.system)},
                                  {"device", encode(h.device)},
                                  {"t", h.t}}}};
        }
    }
    if (c.setup) {
        j["setup"] = {{"A", encode(c.setup->a)}, {"B", encode(c.setup->b)}, {"M", encode(c.setup->m)}};
    }
    if (c.tol_deg || c.tol_verify) {
        json t = json::object();
        if (c.tol_deg) {
            t["deg"] = *c.tol_deg;
        }
        if (c.tol_verify) {
            t["verify"] = *c.tol_verify;
        }
        j["tolerances"] = std::move(t);
    }
    if (c.seed) {
        j["seed"] = *c.seed;
    }
    return j;
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    std::array<char, 17> buf{};
    std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf.data(), 16);
}

// ---------------------------------------------------------------------------
// Reports

namespace {

json encode_optional(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

std::optional<double> decode_optional(const json &j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<double>();
}

json encode_term_degeneracy(const TermDegeneracy &t) {
    json w = nullptr;
    if (t.witness) {
        w = {t.witness->i, t.witness->i_prime, t.witness->j};
    }
    return {{"is_rank_m_degenerate", t.is_rank_m_degenerate},
            {"tilde_r", t.tilde_r},
            {"witness", w},
            {"max_spread", t.max_spread}};
}

TermDegeneracy decode_term_degeneracy(const json &j) {
    TermDegeneracy t;
    t.is_rank_m_degenerate = j.at("is_rank_m_degenerate").get<bool>();
    t.tilde_r = j.at("tilde_r").get<std::vector<double>>();
    if (!j.at("witness").is_null()) {
        const auto w = j.at("witness").get<std::vector<std::size_t>>();
        t.witness = DegeneracyWitness{w.at(0), w.at(1), w.at(2)};
    }
    t.max_spread = j.at("max_spread").get<double>();
    return t;
}

DegeneracyReport decode_degeneracy(const json &j) {
    DegeneracyReport r;
    for (const auto &t : j) {
        r.terms.push_back(decode_term_degeneracy(t));
    }
    return r;
}

TheoremVerdict decode_verdict(const json &j) {
    TheoremVerdict v;
    v.hypothesis_holds = j.at("hypothesis_holds").get<bool>();
    v.basis_requirement_holds = j.at("basis_requirement_holds").get<bool>();
    v.conditional = j.at("conditional").get<double>();
    v.unconditional = j.at("unconditional").get<double>();
    v.gap = j.at("gap").get<double>();
    v.closed_form = decode_optional(j.at("closed_form"));
    v.closed_form_gap = j.at("closed_form_gap").get<double>();
    v.consistent = j.at("consistent").get<bool>();
    for (const auto &t : j.at("terms")) {
        TermVerdict tv;
        tv.hypothesis_holds = t.at("hypothesis_holds").get<bool>();
        tv.basis_requirement_holds = t.at("basis_requirement_holds").get<bool>();
        tv.conditional = t.at("conditional").get<double>();
        tv.unconditional = t.at("unconditional").get<double>();
        tv.postselection_probability = t.at("postselection_probability").get<double>();
        tv.closed_form = decode_optional(t.at("closed_form"));
        v.terms.push_back(tv);
    }
    v.degeneracy = decode_degeneracy(j.at("degeneracy"));
    return v;
}

Operator decode_any_operator(const json &j, std::string_view field) {
    return decode_operator(j, j.size(), field);
}

}  // namespace

json encode(const DegeneracyReport &report) {
    json arr = json::array();
    for (const auto &t : report.terms) {
        arr.push_back(encode_term_degeneracy(t));
    }
    return arr;
}

json encode(const TheoremVerdict &v) {
    json terms = json::array();
    for (const auto &t : v.terms) {
        terms.push_back({{"hypothesis_holds", t.hypothesis_holds},
                         {"basis_requirement_holds", t.basis_requirement_holds},
                         {"conditional", t.conditional},
                         {"unconditional", t.unconditional},
                         {"postselection_probability", t.postselection_probability},
                         {"closed_form", encode_optional(t.closed_form)}});
    }
    return {{"hypothesis_holds", v.hypothesis_holds},
            {"basis_requirement_holds", v.basis_requirement_holds},
            {"conditional", v.conditional},
            {"unconditional", v.unconditional},
            {"gap", v.gap},
            {"closed_form", encode_optional(v.closed_form)},
            {"closed_form_gap", v.closed_form_gap},
            {"consistent", v.consistent},
            {"terms", std::move(terms)},
            {"degeneracy", encode(v.degeneracy)}};
}

json encode(const ErrorDisturbanceReport &r) {
    return {{"epsilon_sq", r.epsilon_sq},
            {"eta_sq", r.eta_sq},
            {"epsilon_sq_post", r.epsilon_sq_post},
            {"eta_sq_post", r.eta_sq_post},
            {"nogo_gap_error", r.nogo_gap_error},
            {"nogo_gap_disturbance", r.nogo_gap_disturbance},
            {"noise_op", encode(r.noise_op)},
            {"disturb_op", encode(r.disturb_op)},
            {"error_verdict", encode(r.error_verdict)},
            {"disturbance_verdict", encode(r.disturbance_verdict)}};
}

json encode(const RunReport &r) {
    json j;
    j["config_hash"] = r.config_hash;
    j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
    j["tolerances"] = {{"deg", r.tolerances.deg}, {"verify", r.tolerances.verify}};
    j["passed"] = r.passed;
    j["verdict"] = r.verdict ? encode(*r.verdict) : json(nullptr);
    j["error_disturbance"] = r.error_disturbance ? encode(*r.error_disturbance) : json(nullptr);
    j["wall_time_seconds"] = r.wall_time_seconds;
    return j;
}

RunReport decode_report(const json &j) {
    try {
        RunReport r;
        r.config_hash = j.at("config_hash").get<std::string>();
        if (!j.at("seed").is_null()) {
            r.seed = j.at("seed").get<std::uint64_t>();
        }
        r.tolerances.deg = j.at("tolerances").at("deg").get<double>();
        r.tolerances.verify = j.at("tolerances").at("verify").get<double>();
        r.passed = j.at("passed").get<bool>();
        if (!j.at("verdict").is_null()) {
            r.verdict = decode_verdict(j.at("verdict"));
        }
        if (const json &ed = j.at("error_disturbance"); !ed.is_null()) {
            ErrorDisturbanceReport e;
            e.epsilon_sq = ed.at("epsilon_sq").get<double>();
            e.eta_sq = ed.at("eta_sq").get<double>();
            e.epsilon_sq_post = ed.at("epsilon_sq_post").get<double>();
            e.eta_sq_post = ed.at("eta_sq_post").get<double>();
            e.nogo_gap_error = ed.at("nogo_gap_error").get<double>();
            e.nogo_gap_disturbance = ed.at("nogo_gap_disturbance").get<double>();
            e.noise_op = decode_any_operator(ed.at("noise_op"), "noise_op");
            e.disturb_op = decode_any_operator(ed.at("disturb_op"), "disturb_op");
            e.error_verdict = decode_verdict(ed.at("error_verdict"));
            e.disturbance_verdict = decode_verdict(ed.at("disturbance_verdict"));
            r.error_disturbance = std::move(e);
        }
        r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
        return r;
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
}

RunReport run_verify(const ScenarioConfig &config, std::string config_hash,
                     const Tolerances &tolerances) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.config_hash = std::move(config_hash);
    report.seed = config.seed;
    report.tolerances = tolerances;
    if (!config.phi) {
        throw ConfigError("verify needs a postselected state 'phi'");
    }
    if (config.has_observable()) {
        const MeasurementScenario sc = config.scenario(tolerances.deg);
        report.verdict = verify_nogo(sc, tolerances.deg, tolerances.verify);
        report.passed = report.passed && report.verdict->consistent;
    }
    if (config.has_error_disturbance()) {
        report.error_disturbance =
            postselected_error_disturbance(config.model(), *config.setup, config.psi, config.xi,
                                           *config.phi, tolerances.deg, tolerances.verify);
        report.passed = report.passed && report.error_disturbance->error_verdict.consistent &&
                        report.error_disturbance->disturbance_verdict.consistent;
    }
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// ---------------------------------------------------------------------------
// Sweeps

std::vector<SweepRow> cnot_sweep(const std::vector<double> &s_grid,
                                 const std::vector<double> &theta_grid,
                                 const std::vector<double> &varphi_grid,
                                 const Tolerances &tolerances) {
    std::vector<SweepRow> rows;
    rows.reserve(s_grid.size() * theta_grid.size() * varphi_grid.size());
    for (double s : s_grid) {
        for (double theta : theta_grid) {
            for (double varphi : varphi_grid) {
                const CnotBundle b = cnot_scenario({s, theta, varphi}, tolerances.deg);
                const ErrorDisturbanceReport r = postselected_error_disturbance(
                    b.model, b.setup, b.psi, b.xi, b.phi, tolerances.deg, tolerances.verify);
                rows.push_back({s, theta, varphi, r.epsilon_sq, r.epsilon_sq_post, r.eta_sq,
                                r.eta_sq_post, std::abs(r.epsilon_sq_post - r.epsilon_sq),
                                std::abs(r.eta_sq_post - r.eta_sq)});
            }
        }
    }
    return rows;
}

std::vector<double> default_s_grid() {
    std::vector<double> g;
    for (int k = 0; k <= 20; ++k) {
        g.push_back(k / 20.0);
    }
    return g;
}

std::vector<double> default_theta_grid() {
    constexpr double pi = std::numbers::pi;
    return {0.0, pi / 8.0, pi / 4.0, 3.0 * pi / 8.0, pi / 2.0};
}

std::vector<double> default_varphi_grid() {
    constexpr double pi = std::numbers::pi;
    return {0.0, pi / 3.0, pi};
}

std::vector<double> parse_grid(std::string_view spec) {
    const std::string text = trim(spec);
    if (text.empty()) {
        fail("grid", "empty grid specification");
    }
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ':')) {
            parts.push_back(trim(part));
        }
        if (parts.size() != 3) {
            fail("grid", "range form is start:stop:count");
        }
        const double start = parse_double_strict(parts[0], "grid");
        const double stop = parse_double_strict(parts[1], "grid");
        const double count = parse_double_strict(parts[2], "grid");
        if (count < 1 || count != std::floor(count)) {
            fail("grid", "count must be a positive integer");
        }
        const auto n = static_cast<std::size_t>(count);
        for (std::size_t k = 0; k < n; ++k) {
            out.push_back(n == 1 ? start
                                 : start + (stop - start) * static_cast<double>(k) /
                                               static_cast<double>(n - 1));
        }
    } else {
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ',')) {
            out.push_back(parse_double_strict(trim(part), "grid"));
        }
    }
    for (double v : out) {
        if (!std::isfinite(v)) {
            fail("grid", "non-finite value");
        }
    }
    return out;
}

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

namespace {

constexpr std::array<const char *, 9> kSweepColumns = {
    "s", "theta", "varphi", "epsilon_sq", "epsilon_sq_post", "eta_sq", "eta_sq_post",
    "gap_epsilon", "gap_eta"};

std::array<double, 9> row_values(const SweepRow &r) {
    return {r.s, r.theta, r.varphi, r.epsilon_sq, r.epsilon_sq_post,
            r.eta_sq, r.eta_sq_post, r.gap_epsilon, r.gap_eta};
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

}  // namespace

void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows) {
    for (std::size_t c = 0; c < kSweepColumns.size(); ++c) {
        os << (c ? "," : "") << kSweepColumns[c];
    }
    os << "\r\n";
    for (const auto &r : rows) {
        const auto values = row_values(r);
        for (std::size_t c = 0; c < values.size(); ++c) {
            os << (c ? "," : "") << format_double(values[c]);
        }
        os << "\r\n";
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream &is) {
    std::string line;
    if (!std::getline(is, line)) {
        fail("csv", "missing header");
    }
    std::vector<SweepRow> rows;
    while (std::getline(is, line)) {
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            v.push_back(parse_double_strict(cell, "csv"));
        }
        if (v.size() != kSweepColumns.size()) {
            fail("csv", "row has " + std::to_string(v.size()) + " fields");
        }
        rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]});
    }
    return rows;
}

json encode(const std::vector<SweepRow> &rows) {
    json arr = json::array();
    for (const auto &r : rows) {
        const auto values = row_values(r);
        json obj = json::object();
        for (std::size_t c = 0; c < values.size(); ++c) {
            obj[kSweepColumns[c]] = values[c];
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

}  // namespace nogo::io
