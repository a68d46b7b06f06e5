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

#ifndef TRAPVER_SERIALIZE_HPP
#define TRAPVER_SERIALIZE_HPP

#include <cstdint>
#include <string>

#include "json.hpp"
#include "trapver/bounds.hpp"
#include "trapver/ftcalc.hpp"
#include "trapver/graph.hpp"
#include "trapver/protocol.hpp"
#include "trapver/simulator.hpp"

namespace trapver {

using Json = nlohmann::ordered_json;

/// Bumped on any incompatible change to a document layout.
inline constexpr int kSchemaVersion = 1;

std::string tool_version();

/// {schema_version, tool_version, seed}
Json document_header(uint64_t seed);
/// Rejects documents from an unsupported schema version.
void check_schema(const Json &doc);

Json graph_to_json(const GraphSpec &g);
GraphSpec graph_from_json(const Json &doc);

Json distribution_to_json(const Distribution &d);
Distribution distribution_from_json(const Json &doc);
/// "outcome,probability" rows, outcome as a bit string.
std::string distribution_to_csv(const Distribution &d);

/// Pauli terms accept dense per-round strings ("rounds") or sparse letters ("ops").
AttackSpec attack_from_json(const Json &doc, int rounds, int vertices);
Json attack_to_json(const AttackSpec &attack);

std::string bit_string(const std::vector<uint8_t> &bits);
Json ops_to_json(const OpCounts &ops);
Json run_record_to_json(const RunRecord &rec);
Json verdict_to_json(const SchemeVerdict &v);
Json fidelity_to_json(const FidelityEstimate &f);
Json scheme_params_to_json(const SchemeParams &p);
Json ft_report_to_json(const FtReport &r);

}  // namespace trapver

#endif
