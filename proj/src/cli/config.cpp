// Copyright 2026 The trapver Authors
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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "trapver/cli.hpp"

extern char **environ;

namespace trapver::cli {

namespace {

using C = Command;

struct OptionDef {
    const char *key;
    const char *names;
    const char *help;
    bool is_flag;
    std::vector<Command> commands;  // empty: every command
};

const std::vector<OptionDef> &option_table() {
    static const std::vector<OptionDef> table = {
        {"seed", "--seed", "Root seed for all random streams", false, {}},
        {"out", "--out,-o", "Write the result here instead of stdout", false, {}},
        {"format", "--format", "json, csv or text", false, {}},
        {"cap", "--cap", "Maximum live qubits in one state vector", false, {}},
        {"threads", "--threads", "OpenMP worker count (0 = runtime default)", false, {}},
        {"m-rounds", "--m-rounds,--cols", "Lattice width m", false, {C::carve, C::verify}},
        {"n-rounds", "--n-rounds,--rows", "Lattice height n", false, {C::carve, C::verify}},
        {"kind", "--kind", "target, trap-even or trap-odd", false, {C::carve}},
        {"check-isomorphism", "--check-isomorphism", "Validate the embedding against the brickwork", true, {C::carve}},
        {"graph", "--graph", "Graph JSON document", false, {C::simulate}},
        {"angles", "--angles", "JSON array of angle indices k (angle = k pi/8), one per vertex", false, {C::simulate}},
        {"samples", "--samples", "Number of samples (0 = exact distribution)", false, {C::simulate, C::twirl_check}},
        {"method", "--method", "mbqc or ising", false, {C::simulate}},
        {"kappa", "--kappa", "Trap rounds per parity", false, {C::verify, C::bounds}},
        {"eps-v", "--eps-v", "Verifier preparation error probability", false, {C::verify, C::bounds}},
        {"eps-p", "--eps-p", "Prover per-operation error probability", false, {C::verify, C::bounds}},
        {"attack", "--attack", "Attack JSON document", false, {C::verify}},
        {"scheme-M", "--scheme-M", "Repetitions M", false, {C::verify}},
        {"scheme-l", "--scheme-l", "Acceptance fraction l", false, {C::verify}},
        {"auto-params", "--auto-params", "Derive (M, l) from the noise budget", true, {C::verify}},
        {"beta", "--beta", "Confidence parameter", false, {C::verify, C::bounds}},
        {"no-records", "--no-records", "Leave per-run records out of the artifact", true, {C::verify}},
        {"num-qubits", "--num-qubits", "Qubits per round N", false, {C::bounds}},
        {"eps-sampling", "--eps-sampling", "Sampling error eps'' (also used by --auto-params at zero noise)", false, {C::verify, C::bounds}},
        {"alpha1", "--alpha1", "alpha_1", false, {C::bounds}},
        {"alpha2", "--alpha2", "alpha_2", false, {C::bounds}},
        {"beta1", "--beta1", "beta_1", false, {C::bounds}},
        {"beta2", "--beta2", "beta_2", false, {C::bounds}},
        {"eps", "--eps", "Physical error rate", false, {C::ft}},
        {"fraction-of-threshold", "--fraction-of-threshold", "Error rate as a fraction of the threshold", false, {C::ft}},
        {"distance", "--distance", "Code distance", false, {C::ft}},
        {"syndromes", "--syndromes", "Syndromes affecting one trap", false, {C::ft}},
        {"saw-prefactor", "--saw-prefactor", "Polynomial prefactor of the walk bound", false, {C::ft}},
        {"ops-per-syndrome", "--ops-per-syndrome", "Operations per syndrome measurement", false, {C::ft}},
        {"series-length", "--series-length", "Largest walk length in the series", false, {C::ft}},
        {"table", "--table", "Emit the overhead table", true, {C::ft}},
        {"qubits", "--qubits", "Qubits for the twirl check (1-3)", false, {C::bounds, C::twirl_check}},
        {"q", "--q", "Pauli string Q", false, {C::bounds, C::twirl_check}},
        {"q-prime", "--q-prime", "Pauli string Q'", false, {C::bounds, C::twirl_check}},
        {"basis", "--basis", "full or z_only", false, {C::bounds, C::twirl_check}},
    };
    return table;
}

bool applies(const OptionDef &def, Command c) {
    return def.commands.empty() || std::find(def.commands.begin(), def.commands.end(), c) != def.commands.end();
}

const OptionDef *find_option(const std::string &key) {
    for (const auto &def : option_table()) {
        if (key == def.key) {
            return &def;
        }
    }
    return nullptr;
}

std::string env_name(const std::string &key) {
    std::string out = "TRAPVER_";
    for (char c : key) {
        out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

struct Setting {
    std::string value;
    std::string source;  // for error messages
};

template <typename T>
T parse_number(const Setting &s, const std::string &key) {
    T out{};
    const char *begin = s.value.data();
    const char *end = begin + s.value.size();
    std::from_chars_result r;
    if constexpr (std::is_floating_point_v<T>) {
        try {
            size_t used = 0;
            out = std::stod(s.value, &used);
            r.ptr = begin + used;
            r.ec = std::errc{};
        } catch (...) {
            r.ec = std::errc::invalid_argument;
            r.ptr = begin;
        }
    } else {
        r = std::from_chars(begin, end, out);
    }
    if (r.ec != std::errc{} || r.ptr != end || s.value.empty()) {
        throw ConfigError(
            "invalid value '" + s.value + "' for --" + key + " (from " + s.source + "); expected a " +
            (std::is_floating_point_v<T> ? "number" : "whole number"));
    }
    return out;
}

bool parse_bool(const Setting &s, const std::string &key) {
    std::string v = s.value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) {
        return std::tolower(c);
    });
    if (v == "1" || v == "true" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "0" || v == "false" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError("invalid value '" + s.value + "' for --" + key + " (from " + s.source + "); expected true/false");
}

void require_one_of(const std::string &value, std::initializer_list<const char *> allowed, const std::string &key) {
    for (const char *a : allowed) {
        if (value == a) {
            return;
        }
    }
    std::string list;
    for (const char *a : allowed) {
        list += (list.empty() ? "" : ", ") + std::string(a);
    }
    throw ConfigError("--" + key + " must be one of: " + list + " (got '" + value + "')");
}

void apply(SessionConfig &cfg, const std::string &key, const Setting &s) {
    if (key == "seed") {
        cfg.seed = parse_number<uint64_t>(s, key);
    } else if (key == "out") {
        cfg.out_path = s.value;
    } else if (key == "format") {
        require_one_of(s.value, {"json", "csv", "text"}, key);
        cfg.format = s.value;
        cfg.format_explicit = true;
    } else if (key == "cap") {
        cfg.cap = parse_number<int>(s, key);
        if (cfg.cap < 1 || cfg.cap > 30) {
            throw ConfigError("--cap must lie in [1, 30]");
        }
    } else if (key == "threads") {
        cfg.threads = parse_number<int>(s, key);
    } else if (key == "m-rounds") {
        cfg.cols = parse_number<int>(s, key);
    } else if (key == "n-rounds") {
        cfg.rows = parse_number<int>(s, key);
    } else if (key == "kind") {
        require_one_of(s.value, {"target", "trap-even", "trap-odd"}, key);
        cfg.carve_kind = s.value;
    } else if (key == "check-isomorphism") {
        cfg.check_isomorphism = parse_bool(s, key);
    } else if (key == "graph") {
        cfg.graph_path = s.value;
    } else if (key == "angles") {
        cfg.angles_path = s.value;
    } else if (key == "samples") {
        cfg.samples = parse_number<int64_t>(s, key);
        if (cfg.samples < 0) {
            throw ConfigError("--samples must be nonnegative");
        }
    } else if (key == "method") {
        require_one_of(s.value, {"mbqc", "ising"}, key);
        cfg.method = s.value;
    } else if (key == "kappa") {
        cfg.kappa = parse_number<int>(s, key);
    } else if (key == "eps-v") {
        cfg.eps_v = parse_number<double>(s, key);
    } else if (key == "eps-p") {
        cfg.eps_p = parse_number<double>(s, key);
    } else if (key == "attack") {
        cfg.attack_path = s.value;
    } else if (key == "scheme-M") {
        cfg.scheme_m = parse_number<int64_t>(s, key);
    } else if (key == "scheme-l") {
        cfg.scheme_l = parse_number<double>(s, key);
    } else if (key == "auto-params") {
        cfg.auto_params = parse_bool(s, key);
    } else if (key == "beta") {
        cfg.beta = parse_number<double>(s, key);
    } else if (key == "no-records") {
        cfg.include_records = !parse_bool(s, key);
    } else if (key == "num-qubits") {
        cfg.num_qubits = parse_number<int>(s, key);
    } else if (key == "eps-sampling") {
        cfg.eps_sampling = parse_number<double>(s, key);
    } else if (key == "alpha1") {
        cfg.alpha1 = parse_number<double>(s, key);
    } else if (key == "alpha2") {
        cfg.alpha2 = parse_number<double>(s, key);
    } else if (key == "beta1") {
        cfg.beta1 = parse_number<double>(s, key);
    } else if (key == "beta2") {
        cfg.beta2 = parse_number<double>(s, key);
    } else if (key == "eps") {
        cfg.ft_eps = parse_number<double>(s, key);
    } else if (key == "fraction-of-threshold") {
        cfg.fraction = parse_number<double>(s, key);
    } else if (key == "distance") {
        cfg.distance = parse_number<int>(s, key);
    } else if (key == "syndromes") {
        cfg.syndromes = parse_number<int64_t>(s, key);
    } else if (key == "saw-prefactor") {
        cfg.saw_prefactor = parse_number<double>(s, key);
    } else if (key == "ops-per-syndrome") {
        cfg.ops_per_syndrome = parse_number<int>(s, key);
    } else if (key == "series-length") {
        cfg.series_length = parse_number<int>(s, key);
    } else if (key == "table") {
        cfg.table = parse_bool(s, key);
    } else if (key == "qubits") {
        cfg.twirl_qubits = parse_number<int>(s, key);
    } else if (key == "q") {
        cfg.q = s.value;
    } else if (key == "q-prime") {
        cfg.q_prime = s.value;
    } else if (key == "basis") {
        require_one_of(s.value, {"full", "z_only"}, key);
        cfg.basis = s.value;
    }
}

std::map<std::string, Setting> read_config_file(const std::string &path, Command command) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config file '" + path + "' must hold a JSON object");
    }
    std::map<std::string, Setting> out;
    for (const auto &[raw_key, value] : doc.items()) {
        std::string key = raw_key;
        std::replace(key.begin(), key.end(), '_', '-');
        if (key == "schema-version" || key == "tool-version") {
            continue;
        }
        const OptionDef *def = find_option(key);
        if (!def) {
            throw ConfigError("config file '" + path + "' has unknown key '" + raw_key + "'");
        }
        if (!applies(*def, command)) {
            continue;
        }
        std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        out[key] = {text, "config file " + path};
    }
    return out;
}

std::string command_name(Command c) {
    switch (c) {
        case C::carve:
            return "carve";
        case C::simulate:
            return "simulate";
        case C::verify:
            return "verify";
        case C::bounds:
            return "bounds";
        case C::ft:
            return "ft";
        case C::replay:
            return "replay";
        case C::twirl_check:
            return "twirl-check";
        case C::none:
            break;
    }
    return "";
}

void validate(SessionConfig &cfg) {
    if (cfg.command == C::verify) {
        if (cfg.auto_params && (cfg.scheme_m || cfg.scheme_l)) {
            throw ConfigError("--auto-params and --scheme-M/--scheme-l are mutually exclusive");
        }
        if (cfg.kappa < 1) {
            throw ConfigError("--kappa must be at least 1");
        }
        if (cfg.scheme_m && *cfg.scheme_m < 1) {
            throw ConfigError("--scheme-M must be at least 1");
        }
        if (cfg.scheme_l && !(*cfg.scheme_l >= 0 && *cfg.scheme_l <= 1)) {
            throw ConfigError("--scheme-l must lie in [0, 1]");
        }
        if (!(cfg.eps_v >= 0 && cfg.eps_v < 1 && cfg.eps_p >= 0 && cfg.eps_p < 1)) {
            throw ConfigError("--eps-v and --eps-p must lie in [0, 1)");
        }
        if (cfg.auto_params) {
            // A zero noise budget leaves the first bound undefined; fall back to the
            // sampling-error form with --eps-sampling.
            try {
                cfg.derived = cfg.eps_v + cfg.eps_p > 0
                                  ? theorem1_params(cfg.cols * cfg.rows, cfg.kappa, cfg.eps_v, cfg.eps_p, cfg.beta)
                                  : theorem2_params(cfg.eps_sampling, cfg.kappa, cfg.beta);
            } catch (const std::invalid_argument &e) {
                throw ConfigError(std::string("--auto-params: ") + e.what());
            }
        }
        if (!cfg.attack_path.empty()) {
            std::ifstream in(cfg.attack_path);
            if (!in) {
                throw ConfigError("cannot open attack file '" + cfg.attack_path + "'");
            }
            try {
                cfg.attack_doc = Json::parse(in);
            } catch (const nlohmann::json::exception &e) {
                throw ConfigError("attack file '" + cfg.attack_path + "' is not valid JSON: " + e.what());
            }
        }
    }
    if (cfg.command == C::ft && cfg.ft_eps && cfg.fraction) {
        throw ConfigError("--eps and --fraction-of-threshold are mutually exclusive");
    }
    if (cfg.command == C::simulate && cfg.graph_path.empty()) {
        throw ConfigError("simulate needs --graph");
    }
}

}  // namespace

int64_t SessionConfig::repetitions() const {
    if (derived) {
        return derived->repetitions;
    }
    return scheme_m.value_or(1);
}

double SessionConfig::threshold() const {
    if (derived) {
        return derived->threshold;
    }
    return scheme_l.value_or(1.0);
}

std::map<std::string, std::string> environment_snapshot() {
    std::map<std::string, std::string> out;
    for (char **e = environ; e && *e; e++) {
        std::string entry(*e);
        if (entry.rfind("TRAPVER_", 0) != 0) {
            continue;
        }
        auto eq = entry.find('=');
        if (eq != std::string::npos) {
            out[entry.substr(0, eq)] = entry.substr(eq + 1);
        }
    }
    return out;
}

SessionConfig parse_config(const std::vector<std::string> &args, const std::map<std::string, std::string> &env) {
    CLI::App app{"Trap-based verification toolkit for blind Ising sampling", "trapver"};
    app.require_subcommand(0, 1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    struct Sub {
        Command command;
        CLI::App *app;
        std::map<std::string, CLI::Option *> options;
        std::map<std::string, std::string> values;
        std::map<std::string, bool> flags;
    };
    std::vector<std::unique_ptr<Sub>> subs;
    std::string config_path;
    std::string bounds_verb;
    std::string artifact;

    auto make = [&](Command c, const char *description) {
        auto sub = std::make_unique<Sub>();
        sub->command = c;
        sub->app = app.add_subcommand(command_name(c), description);
        sub->app->add_option("--config", config_path, "JSON file of option values");
        if (c != C::replay) {
            for (const auto &def : option_table()) {
                if (!applies(def, c)) {
                    continue;
                }
                if (def.is_flag) {
                    sub->options[def.key] = sub->app->add_flag(def.names, sub->flags[def.key], def.help);
                } else {
                    sub->options[def.key] = sub->app->add_option(def.names, sub->values[def.key], def.help);
                }
            }
        }
        subs.push_back(std::move(sub));
        return subs.back().get();
    };
    make(C::carve, "Carve a target or trap graph from the square lattice");
    make(C::simulate, "Exact or sampled output distribution of a graph");
    make(C::verify, "Run the verification scheme");
    Sub *bounds = make(C::bounds, "Closed-form bounds and scheme parameters");
    bounds->app
        ->add_option("verb", bounds_verb, "delta-kappa, attack-table, thm1, thm2, thm3 or twirl")
        ->required()
        ->check(CLI::IsMember({"delta-kappa", "attack-table", "thm1", "thm2", "thm3", "twirl"}));
    make(C::ft, "Fault-tolerance thresholds and overheads");
    Sub *rep = make(C::replay, "Re-run a verify artifact and compare verdicts");
    rep->app->add_option("artifact", artifact, "Artifact written by verify --out")->required();
    make(C::twirl_check, "Brute-force Pauli twirl identities");

    SessionConfig cfg;
    if (args.empty()) {
        cfg.show_help = true;
        cfg.help_text = app.help();
        return cfg;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        cfg.show_help = true;
        cfg.help_text = app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help();
        return cfg;
    } catch (const CLI::CallForAllHelp &) {
        cfg.show_help = true;
        cfg.help_text = app.help("", CLI::AppFormatMode::All);
        return cfg;
    } catch (const CLI::ParseError &e) {
        throw ConfigError(e.what());
    }
    Sub *chosen = nullptr;
    for (auto &s : subs) {
        if (s->app->parsed()) {
            chosen = s.get();
        }
    }
    if (!chosen) {
        cfg.show_help = true;
        cfg.help_text = app.help();
        return cfg;
    }
    cfg.command = chosen->command;
    cfg.bounds_verb = bounds_verb;
    cfg.artifact_path = artifact;

    std::map<std::string, Setting> merged;
    if (config_path.empty()) {
        if (auto it = env.find("TRAPVER_CONFIG"); it != env.end()) {
            config_path = it->second;
        }
    }
    if (!config_path.empty()) {
        merged = read_config_file(config_path, cfg.command);
    }
    for (const auto &def : option_table()) {
        if (!applies(def, cfg.command)) {
            continue;
        }
        if (auto it = env.find(env_name(def.key)); it != env.end()) {
            merged[def.key] = {it->second, "environment " + it->first};
        }
    }
    for (const auto &[key, opt] : chosen->options) {
        if (opt->count() == 0) {
            continue;
        }
        std::string value = find_option(key)->is_flag ? "true" : chosen->values[key];
        merged[key] = {value, "command line"};
    }
    for (const auto &[key, setting] : merged) {
        apply(cfg, key, setting);
    }
    validate(cfg);
    return cfg;
}

}  // namespace trapver::cli
