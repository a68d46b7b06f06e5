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

#include <omp.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "trapver/cli.hpp"
#include "trapver/ftcalc.hpp"

namespace trapver::cli {

namespace {

std::string dump(const Json &doc) {
    return doc.dump(2) + "\n";
}

Json read_json_file(const std::string &path, const char *what) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(std::string("cannot open ") + what + " '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw std::runtime_error(std::string(what) + " '" + path + "' is not valid JSON: " + e.what());
    }
}

uint64_t fnv1a(const std::string &text, uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

ExecResult carve(const SessionConfig &cfg) {
    GraphSpec target = carve_target(cfg.cols, cfg.rows);
    GraphSpec g = cfg.carve_kind == "target"     ? target
                  : cfg.carve_kind == "trap-even" ? carve_trap_graph(target, Parity::even)
                                                  : carve_trap_graph(target, Parity::odd);
    Json doc = document_header(cfg.seed);
    doc["kind"] = cfg.carve_kind;
    doc.update(graph_to_json(g));
    ExecResult res;
    if (cfg.check_isomorphism) {
        bool ok = embedding_matches_brickwork(target);
        doc["isomorphism_check"] = {{"wires", (cfg.rows + 1) / 2}, {"sites", cfg.cols}, {"isomorphic", ok}};
        if (!ok) {
            res.exit_code = kExitError;
        }
    }
    res.document = doc;
    res.output = dump(doc);
    return res;
}

std::vector<double> read_angles(const SessionConfig &cfg, const GraphSpec &g) {
    std::vector<double> deltas(g.size());
    if (cfg.angles_path.empty()) {
        for (const auto &v : g.vertices()) {
            deltas[v.id] = v.phi.radians();
        }
        return deltas;
    }
    Json doc = read_json_file(cfg.angles_path, "angle file");
    const Json &list = doc.is_object() ? doc.at("delta_k") : doc;
    if (!list.is_array() || list.size() != static_cast<size_t>(g.size())) {
        throw std::runtime_error("angle file must list one angle index per vertex (" + std::to_string(g.size()) + ")");
    }
    for (size_t i = 0; i < list.size(); i++) {
        deltas[i] = GridAngle::wrap(list[i].get<int>()).radians();
    }
    return deltas;
}

ExecResult simulate(const SessionConfig &cfg) {
    GraphSpec g = graph_from_json(read_json_file(cfg.graph_path, "graph file"));
    std::vector<double> deltas = read_angles(cfg, g);
    Distribution dist(0);
    if (cfg.method == "mbqc") {
        dist = exact_output_distribution(g, deltas, cfg.cap);
    } else {
        std::vector<double> live;
        for (int id : g.live_vertices()) {
            live.push_back(deltas[id]);
        }
        IsingInstance inst = ising_instance_for(g.induced_graph(), live);
        if (inst.num_spins > cfg.cap) {
            throw std::length_error("Ising instance exceeds the cap");
        }
        std::vector<double> probs(size_t{1} << inst.num_spins);
        for (size_t x = 0; x < probs.size(); x++) {
            probs[x] = ising_partition_probability(inst, x, cfg.cap);
        }
        dist = Distribution::from_dense(inst.num_spins, probs);
    }

    Json doc = document_header(cfg.seed);
    doc["method"] = cfg.method;
    doc["outcome_order"] = g.live_vertices();
    ExecResult res;
    if (cfg.samples == 0) {
        doc["distribution"] = distribution_to_json(dist);
        res.output = cfg.format == "csv" ? distribution_to_csv(dist) : dump(doc);
    } else {
        PhiloxStream rng(cfg.seed, stream_id(0, StreamPurpose::scheme));
        std::vector<std::string> samples;
        std::ostringstream csv;
        csv << "sample,outcome\n";
        for (int64_t i = 0; i < cfg.samples; i++) {
            double u = rng.uniform01();
            double acc = 0;
            uint64_t pick = dist.entries().rbegin()->first;
            for (const auto &[k, p] : dist.entries()) {
                acc += p;
                if (u < acc) {
                    pick = k;
                    break;
                }
            }
            samples.push_back(bits_to_string(pick, dist.num_bits()));
            csv << i << "," << samples.back() << "\n";
        }
        doc["samples"] = samples;
        res.output = cfg.format == "csv" ? csv.str() : dump(doc);
    }
    res.document = doc;
    return res;
}

Json config_snapshot(const SessionConfig &cfg) {
    Json snap;
    snap["command"] = "verify";
    snap["m"] = cfg.cols;
    snap["n"] = cfg.rows;
    snap["kappa"] = cfg.kappa;
    snap["eps_v"] = cfg.eps_v;
    snap["eps_p"] = cfg.eps_p;
    snap["M"] = cfg.repetitions();
    snap["l"] = cfg.threshold();
    snap["auto_params"] = cfg.auto_params;
    snap["beta"] = cfg.beta;
    snap["eps_sampling"] = cfg.eps_sampling;
    snap["cap"] = cfg.cap;
    snap["include_records"] = cfg.include_records;
    snap["attack"] = cfg.attack_doc ? *cfg.attack_doc : Json(nullptr);
    snap["derived_params"] = cfg.derived ? scheme_params_to_json(*cfg.derived) : Json(nullptr);
    return snap;
}

ExecResult verify(const SessionConfig &cfg) {
    auto start = std::chrono::steady_clock::now();
    RoundLayout layout = RoundLayout::for_target(carve_target(cfg.cols, cfg.rows), cfg.kappa);
    Strategy strategy;
    if (cfg.attack_doc) {
        strategy = attack_from_json(*cfg.attack_doc, layout.num_rounds(), layout.graph(0).size());
    }
    NoiseModel noise{cfg.eps_v, cfg.eps_p, {}};
    ProtocolOptions options{cfg.cap};
    SchemeResult result = run_scheme(layout, strategy, noise, cfg.repetitions(), cfg.threshold(), cfg.seed,
                                     ExecPolicy::parallel, options);
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    Json doc = document_header(cfg.seed);
    doc["kind"] = "run_artifact";
    doc["config"] = config_snapshot(cfg);
    doc["verdict"] = verdict_to_json(result.verdict);
    uint64_t digest = 0xcbf29ce484222325ull;
    OpCounts ops;
    Json runs = Json::array();
    for (const auto &rec : result.records) {
        Json jr = run_record_to_json(rec);
        digest = fnv1a(jr.dump(), digest);
        ops += rec.ops;
        if (cfg.include_records) {
            runs.push_back(std::move(jr));
        }
    }
    doc["runs_digest"] = hex64(digest);
    if (cfg.include_records) {
        doc["runs"] = std::move(runs);
    }
    doc["telemetry"] = {{"wall_ms", elapsed}, {"threads", omp_get_max_threads()}, {"ops", ops_to_json(ops)}};

    ExecResult res;
    res.exit_code = result.verdict.accept ? kExitAccept : kExitReject;
    res.document = doc;
    res.output = dump(doc);
    return res;
}

Eigen::MatrixXcd expected_diagonal(const std::string &q, const Eigen::MatrixXcd &rho, TwirlBasis basis) {
    const int n = static_cast<int>(q.size());
    double factor = std::ldexp(1.0, (basis == TwirlBasis::full ? 2 : 1) * n);
    Eigen::MatrixXcd mq = pauli_matrix(q);
    return factor * mq * rho * mq;
}

std::vector<std::string> all_strings(int n, const char *alphabet) {
    std::vector<std::string> out{""};
    for (int i = 0; i < n; i++) {
        std::vector<std::string> next;
        for (const auto &s : out) {
            for (const char *c = alphabet; *c; c++) {
                next.push_back(s + *c);
            }
        }
        out = std::move(next);
    }
    return out;
}

Json twirl_report(const SessionConfig &cfg) {
    const int n = cfg.twirl_qubits;
    const TwirlBasis basis = cfg.basis == "full" ? TwirlBasis::full : TwirlBasis::z_only;
    const int64_t samples = cfg.samples > 0 ? cfg.samples : 100;
    std::vector<std::pair<std::string, std::string>> pairs;
    if (!cfg.q.empty() || !cfg.q_prime.empty()) {
        pairs.emplace_back(cfg.q, cfg.q_prime.empty() ? cfg.q : cfg.q_prime);
    } else {
        auto strings = all_strings(n, basis == TwirlBasis::full ? "IXYZ" : "IX");
        for (const auto &a : strings) {
            for (const auto &b : strings) {
                pairs.emplace_back(a, b);
            }
        }
    }
    PhiloxStream rng(cfg.seed, stream_id(0, StreamPurpose::fidelity));
    double off = 0, diag = 0;
    int64_t off_pairs = 0, diag_pairs = 0;
    for (int64_t s = 0; s < samples; s++) {
        Eigen::MatrixXcd rho = random_density_matrix(n, rng);
        for (const auto &[a, b] : pairs) {
            Eigen::MatrixXcd sum = twirl_sum(n, a, b, rho, basis);
            if (a == b) {
                diag = std::max(diag, (sum - expected_diagonal(a, rho, basis)).norm());
                diag_pairs += s == 0;
            } else {
                off = std::max(off, sum.norm());
                off_pairs += s == 0;
            }
        }
    }
    Json doc = document_header(cfg.seed);
    doc["qubits"] = n;
    doc["basis"] = cfg.basis;
    doc["random_states"] = samples;
    doc["distinct_pairs"] = off_pairs;
    doc["equal_pairs"] = diag_pairs;
    doc["max_residual_distinct"] = off;
    doc["max_deviation_equal"] = diag;
    return doc;
}

ExecResult bounds(const SessionConfig &cfg) {
    Json doc = document_header(cfg.seed);
    doc["verb"] = cfg.bounds_verb;
    ExecResult res;
    const std::string &verb = cfg.bounds_verb;
    if (verb == "delta-kappa") {
        Rational d = delta_kappa(cfg.kappa);
        doc["kappa"] = cfg.kappa;
        doc["delta_kappa"] = rational_string(d);
        doc["value"] = rational_to_double(d);
        if (cfg.format == "text") {
            res.output = rational_string(d) + "\n";
        } else if (cfg.format == "csv") {
            res.output = "kappa,delta_kappa,value\n" + std::to_string(cfg.kappa) + "," + rational_string(d) + "," +
                         std::to_string(rational_to_double(d)) + "\n";
        }
    } else if (verb == "attack-table") {
        std::ostringstream csv;
        csv << "kappa,lambda,xi,trap_fidelity,target_fidelity_bound,gap,gap_value\n";
        Json rows = Json::array();
        for (const auto &c : attack_classes(cfg.kappa)) {
            AttackGap g = attack_gap(c);
            csv << c.kappa << "," << c.lambda << "," << c.xi << "," << rational_string(g.trap_fidelity) << ","
                << rational_string(g.target_fidelity_bound) << "," << rational_string(g.gap) << ","
                << rational_to_double(g.gap) << "\n";
            rows.push_back({{"kappa", c.kappa},
                            {"lambda", c.lambda},
                            {"xi", c.xi},
                            {"trap_fidelity", rational_string(g.trap_fidelity)},
                            {"target_fidelity_bound", rational_string(g.target_fidelity_bound)},
                            {"gap", rational_string(g.gap)}});
        }
        doc["classes"] = rows;
        doc["max_gap"] = rational_string(max_attack_gap(cfg.kappa));
        if (!(cfg.format_explicit && cfg.format == "json")) {
            res.output = csv.str();
        }
    } else if (verb == "thm1") {
        doc["inputs"] = {{"N", cfg.num_qubits}, {"kappa", cfg.kappa}, {"eps_v", cfg.eps_v}, {"eps_p", cfg.eps_p}, {"beta", cfg.beta}};
        doc["params"] = scheme_params_to_json(theorem1_params(cfg.num_qubits, cfg.kappa, cfg.eps_v, cfg.eps_p, cfg.beta));
    } else if (verb == "thm2") {
        doc["inputs"] = {{"eps_sampling", cfg.eps_sampling}, {"kappa", cfg.kappa}, {"beta", cfg.beta}};
        doc["params"] = scheme_params_to_json(theorem2_params(cfg.eps_sampling, cfg.kappa, cfg.beta));
    } else if (verb == "thm3") {
        HardnessBound b = theorem3_epsilon(cfg.alpha1, cfg.alpha2, cfg.beta1, cfg.beta2, cfg.num_qubits);
        doc["inputs"] = {{"alpha1", cfg.alpha1}, {"alpha2", cfg.alpha2}, {"beta1", cfg.beta1}, {"beta2", cfg.beta2}, {"N", cfg.num_qubits}};
        doc["feasible"] = b.feasible;
        doc["epsilon"] = b.feasible ? Json(b.epsilon) : Json(nullptr);
        doc["epsilon_raw"] = b.epsilon;
    } else if (verb == "twirl") {
        Json t = twirl_report(cfg);
        for (auto &[k, v] : t.items()) {
            doc[k] = v;
        }
    }
    res.document = doc;
    if (res.output.empty()) {
        res.output = dump(doc);
    }
    return res;
}

ExecResult ft(const SessionConfig &cfg) {
    Json doc = document_header(cfg.seed);
    ExecResult res;
    if (cfg.table) {
        auto rows = overhead_table({1.0 / 20, 1.0 / 50, 1.0 / 100}, cfg.distance, cfg.syndromes.value_or(0),
                                   cfg.ops_per_syndrome);
        std::ostringstream csv;
        csv.precision(10);
        csv << "fraction,eps,p_c,M_real,M,flagged\n";
        Json jrows = Json::array();
        for (const auto &r : rows) {
            csv << r.fraction << "," << r.eps << "," << r.cube_failure << "," << r.overhead_real << "," << r.overhead
                << "," << (r.flagged ? "true" : "false") << "\n";
            jrows.push_back({{"fraction", r.fraction},
                             {"eps", r.eps},
                             {"p_c", r.cube_failure},
                             {"M_real", r.overhead_real},
                             {"M", r.overhead},
                             {"flagged", r.flagged}});
        }
        doc["table"] = jrows;
        res.document = doc;
        res.output = (cfg.format_explicit && cfg.format == "json") ? dump(doc) : csv.str();
        return res;
    }
    FtConfig fc;
    fc.distance = cfg.distance;
    fc.ops_per_syndrome = cfg.ops_per_syndrome;
    fc.poly_prefactor = cfg.saw_prefactor;
    if (cfg.syndromes) {
        fc.syndromes = *cfg.syndromes;
    } else if (cfg.distance != 2) {
        throw ConfigError("no syndrome count is known for distance " + std::to_string(cfg.distance) +
                          "; pass --syndromes");
    }
    const double threshold = physical_threshold(fc.ratio_bound, fc.ops_per_syndrome);
    if (cfg.ft_eps) {
        fc.eps = *cfg.ft_eps;
    } else if (cfg.fraction) {
        fc.eps = *cfg.fraction * threshold;
    } else {
        throw ConfigError("ft needs --eps, --fraction-of-threshold or --table");
    }
    FtReport r = ft_report(fc, cfg.series_length);
    doc["inputs"] = {{"eps", fc.eps},
                     {"fraction_of_threshold", fc.eps / threshold},
                     {"distance", fc.distance},
                     {"syndromes", fc.syndromes},
                     {"ops_per_syndrome", fc.ops_per_syndrome},
                     {"series_length", cfg.series_length}};
    doc["report"] = ft_report_to_json(r);
    res.document = doc;
    res.output = dump(doc);
    return res;
}

}  // namespace

void write_atomically(const std::string &path, const std::string &text) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp-" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        }
        out << text;
        out.flush();
        if (!out) {
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot move output into place at '" + path + "': " + ec.message());
    }
}

ExecResult execute(const SessionConfig &cfg) {
    if (cfg.threads > 0) {
        omp_set_num_threads(cfg.threads);
    }
    ExecResult res;
    switch (cfg.command) {
        case Command::carve:
            res = carve(cfg);
            break;
        case Command::simulate:
            res = simulate(cfg);
            break;
        case Command::verify:
            res = verify(cfg);
            break;
        case Command::bounds:
            res = bounds(cfg);
            break;
        case Command::ft:
            res = ft(cfg);
            break;
        case Command::twirl_check:
            res.document = twirl_report(cfg);
            res.output = dump(res.document);
            break;
        case Command::replay:
            return replay(cfg.artifact_path);
        case Command::none:
            throw ConfigError("no subcommand given");
    }
    if (!cfg.out_path.empty()) {
        write_atomically(cfg.out_path, res.output);
    }
    return res;
}

ExecResult replay(const std::string &artifact_path) {
    Json doc = read_json_file(artifact_path, "artifact");
    check_schema(doc);
    if (!doc.contains("schema_version")) {
        throw std::runtime_error("artifact has no schema_version");
    }
    if (doc.value("kind", "") != "run_artifact") {
        throw std::runtime_error("'" + artifact_path + "' is not a verify artifact");
    }
    const Json &snap = doc.at("config");
    SessionConfig cfg;
    cfg.command = Command::verify;
    cfg.seed = doc.at("seed").get<uint64_t>();
    cfg.cols = snap.at("m").get<int>();
    cfg.rows = snap.at("n").get<int>();
    cfg.kappa = snap.at("kappa").get<int>();
    cfg.eps_v = snap.at("eps_v").get<double>();
    cfg.eps_p = snap.at("eps_p").get<double>();
    cfg.scheme_m = snap.at("M").get<int64_t>();
    cfg.scheme_l = snap.at("l").get<double>();
    cfg.beta = snap.value("beta", 0.05);
    cfg.cap = snap.value("cap", kDefaultQubitCap);
    cfg.include_records = false;
    if (!snap.at("attack").is_null()) {
        cfg.attack_doc = snap.at("attack");
    }

    ExecResult fresh = verify(cfg);
    const Json &stored_verdict = doc.at("verdict");
    const Json &new_verdict = fresh.document.at("verdict");
    std::string stored_digest = doc.value("runs_digest", "");
    std::string new_digest = fresh.document.at("runs_digest").get<std::string>();
    if (stored_verdict != new_verdict || stored_digest != new_digest) {
        throw ReplayMismatch("replay of '" + artifact_path + "' does not reproduce: stored verdict " +
                             stored_verdict.dump() + " digest " + stored_digest + ", replayed verdict " +
                             new_verdict.dump() + " digest " + new_digest);
    }
    Json out = document_header(cfg.seed);
    out["kind"] = "replay";
    out["artifact"] = artifact_path;
    out["match"] = true;
    out["verdict"] = new_verdict;
    ExecResult res;
    res.exit_code = fresh.exit_code;
    res.document = out;
    res.output = dump(out);
    return res;
}

int run(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        SessionConfig cfg = parse_config(args, environment_snapshot());
        if (cfg.show_help) {
            std::cout << cfg.help_text;
            return kExitAccept;
        }
        ExecResult res = execute(cfg);
        if (cfg.out_path.empty() || cfg.command == Command::replay) {
            std::cout << res.output;
        }
        return res.exit_code;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace trapver::cli
