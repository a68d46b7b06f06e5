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

#include <sstream>
#include <stdexcept>

#include "trapver/serialize.hpp"

namespace trapver {

std::string tool_version() {
    return TRAPVER_VERSION;
}

Json document_header(uint64_t seed) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool_version"] = tool_version();
    doc["seed"] = seed;
    return doc;
}

void check_schema(const Json &doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("document must be a JSON object");
    }
    if (doc.contains("schema_version") && doc["schema_version"] != kSchemaVersion) {
        throw std::invalid_argument(
            "unsupported schema_version " + doc["schema_version"].dump() + " (this build reads " +
            std::to_string(kSchemaVersion) + ")");
    }
}

Json distribution_to_json(const Distribution &d) {
    Json doc;
    doc["num_bits"] = d.num_bits();
    Json probs = Json::object();
    for (const auto &[k, p] : d.entries()) {
        probs[bits_to_string(k, d.num_bits())] = p;
    }
    doc["probabilities"] = std::move(probs);
    return doc;
}

Distribution distribution_from_json(const Json &doc) {
    check_schema(doc);
    Distribution d(doc.at("num_bits").get<int>());
    for (const auto &[key, p] : doc.at("probabilities").items()) {
        if (key.size() != static_cast<size_t>(d.num_bits())) {
            throw std::invalid_argument("outcome '" + key + "' has the wrong length");
        }
        d.add(string_to_bits(key), p.get<double>());
    }
    return d;
}

std::string distribution_to_csv(const Distribution &d) {
    std::ostringstream out;
    out.precision(17);
    out << "outcome,probability\n";
    for (const auto &[k, p] : d.entries()) {
        out << bits_to_string(k, d.num_bits()) << "," << p << "\n";
    }
    return out.str();
}

namespace {

std::vector<Pauli> parse_letters(const std::string &s, int vertices) {
    if (s.size() != static_cast<size_t>(vertices)) {
        throw std::invalid_argument(
            "Pauli string '" + s + "' has " + std::to_string(s.size()) + " letters, expected " +
            std::to_string(vertices));
    }
    std::vector<Pauli> out;
    for (char c : s) {
        out.push_back(parse_pauli(c));
    }
    return out;
}

AttackTarget parse_target(const Json &j) {
    return {j.at("round").get<int>(), j.at("vertex").get<int>()};
}

}  // namespace

AttackSpec attack_from_json(const Json &doc, int rounds, int vertices) {
    check_schema(doc);
    try {
        std::string type = doc.value("type", "pauli");
        if (type == "pauli") {
            PauliAttack attack;
            for (const auto &jt : doc.at("terms")) {
                PauliTerm term;
                term.weight = jt.value("weight", 1.0);
                if (jt.contains("rounds")) {
                    for (const auto &row : jt.at("rounds")) {
                        term.letters.push_back(parse_letters(row.get<std::string>(), vertices));
                    }
                } else {
                    term.letters.assign(rounds, std::vector<Pauli>(vertices, Pauli::I));
                    for (const auto &op : jt.at("ops")) {
                        AttackTarget t = parse_target(op);
                        if (t.round < 0 || t.round >= rounds || t.vertex < 0 || t.vertex >= vertices) {
                            throw std::out_of_range("attack letter outside the layout");
                        }
                        std::string p = op.at("pauli").get<std::string>();
                        if (p.size() != 1) {
                            throw std::invalid_argument("pauli must be a single letter");
                        }
                        term.letters[t.round][t.vertex] = parse_pauli(p[0]);
                    }
                }
                attack.terms.push_back(std::move(term));
            }
            AttackSpec spec(std::move(attack));
            spec.validate(rounds, vertices);
            return spec;
        }
        if (type == "unitary") {
            UnitaryAttack attack;
            for (const auto &jt : doc.at("targets")) {
                attack.targets.push_back(parse_target(jt));
            }
            attack.private_qubits = doc.value("private_qubits", 0);
            for (const auto &row : doc.at("matrix")) {
                for (const auto &entry : row) {
                    if (!entry.is_array() || entry.size() != 2) {
                        throw std::invalid_argument("matrix entries must be [re, im] pairs");
                    }
                    attack.matrix.emplace_back(entry[0].get<double>(), entry[1].get<double>());
                }
            }
            AttackSpec spec(std::move(attack));
            spec.validate(rounds, vertices);
            return spec;
        }
        throw std::invalid_argument("unknown attack type '" + type + "'");
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed attack document: ") + e.what());
    }
}

Json attack_to_json(const AttackSpec &attack) {
    Json doc;
    if (attack.is_pauli()) {
        doc["type"] = "pauli";
        Json terms = Json::array();
        for (const auto &t : attack.pauli().terms) {
            Json rounds = Json::array();
            for (const auto &row : t.letters) {
                std::string s;
                for (Pauli p : row) {
                    s += pauli_char(p);
                }
                rounds.push_back(s);
            }
            terms.push_back({{"weight", t.weight}, {"rounds", std::move(rounds)}});
        }
        doc["terms"] = std::move(terms);
        return doc;
    }
    const auto &u = attack.unitary();
    doc["type"] = "unitary";
    Json targets = Json::array();
    for (const auto &t : u.targets) {
        targets.push_back({{"round", t.round}, {"vertex", t.vertex}});
    }
    doc["targets"] = std::move(targets);
    doc["private_qubits"] = u.private_qubits;
    size_t dim = size_t{1} << (u.targets.size() + u.private_qubits);
    Json matrix = Json::array();
    for (size_t r = 0; r < dim; r++) {
        Json row = Json::array();
        for (size_t c = 0; c < dim; c++) {
            row.push_back({u.matrix[r * dim + c].real(), u.matrix[r * dim + c].imag()});
        }
        matrix.push_back(std::move(row));
    }
    doc["matrix"] = std::move(matrix);
    return doc;
}

std::string bit_string(const std::vector<uint8_t> &bits) {
    std::string s;
    for (uint8_t b : bits) {
        s += b ? '1' : '0';
    }
    return s;
}

Json ops_to_json(const OpCounts &ops) {
    return {{"preparations", ops.preparations},
            {"entanglers", ops.entanglers},
            {"measurements", ops.measurements},
            {"verifier_errors", ops.verifier_errors},
            {"prover_errors", ops.prover_errors}};
}

Json run_record_to_json(const RunRecord &rec) {
    Json slots = Json::array();
    for (const auto &s : rec.slots) {
        Json js{{"kind", std::string(round_kind_name(s.kind))},
                {"raw", bit_string(s.raw)},
                {"decrypted", bit_string(s.decrypted)}};
        js["trap_pass"] = s.trap_pass ? Json(*s.trap_pass) : Json(nullptr);
        slots.push_back(std::move(js));
    }
    return {{"accept", rec.accept},
            {"target_output", bit_string(rec.target_output)},
            {"attack_term", rec.attack_term},
            {"slots", std::move(slots)},
            {"ops", ops_to_json(rec.ops)}};
}

Json verdict_to_json(const SchemeVerdict &v) {
    return {{"accept", v.accept},
            {"repetitions", v.repetitions},
            {"threshold", v.threshold},
            {"passes", v.passes},
            {"pass_fraction", v.pass_fraction},
            {"output_index", v.output_index},
            {"output", bit_string(v.output)},
            {"seed", v.seed}};
}

Json fidelity_to_json(const FidelityEstimate &f) {
    return {{"samples", f.samples},
            {"trap_fidelity", f.trap_fidelity},
            {"trap_fidelity_stderr", f.trap_fidelity_stderr},
            {"target_fidelity", f.target_fidelity},
            {"target_fidelity_stderr", f.target_fidelity_stderr},
            {"gap", f.gap},
            {"gap_stderr", f.gap_stderr},
            {"distribution_fidelity", f.distribution_fidelity},
            {"distribution_fidelity_stderr", f.distribution_fidelity_stderr}};
}

Json scheme_params_to_json(const SchemeParams &p) {
    return {{"M", p.repetitions},
            {"M_real", p.repetitions_real},
            {"l", p.threshold},
            {"l_raw", p.threshold_raw},
            {"completeness", {{"confidence", p.completeness_confidence}, {"value", p.completeness}, {"raw", p.completeness_raw}}},
            {"soundness", {{"confidence", p.soundness_confidence}, {"value", p.soundness}, {"raw", p.soundness_raw}}},
            {"out_of_regime", p.out_of_regime},
            {"warnings", p.warnings}};
}

Json ft_report_to_json(const FtReport &r) {
    return {{"phenomenological_threshold", r.phenomenological_threshold},
            {"physical_threshold", r.physical_threshold},
            {"p_c", r.cube_failure},
            {"M_real", r.overhead_real},
            {"M", r.overhead},
            {"M_flagged", r.overhead_flagged},
            {"series_bound", r.series_bound},
            {"series_limit", r.convergent ? Json(r.series_limit) : Json(nullptr)},
            {"convergent", r.convergent},
            {"poly_prefactor", r.poly_prefactor}};
}

}  // namespace trapver
