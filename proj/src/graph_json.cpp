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
#include <stdexcept>

#include "trapver/serialize.hpp"

namespace trapver {

Json graph_to_json(const GraphSpec &g) {
    Json doc;
    doc["m"] = g.cols();
    doc["n"] = g.rows();
    Json vertices = Json::array();
    for (const auto &v : g.vertices()) {
        vertices.push_back({{"id", v.id},
                            {"row", v.row},
                            {"col", v.col},
                            {"role", std::string(role_name(v.role))},
                            {"phi_k", v.phi.k()}});
    }
    doc["vertices"] = std::move(vertices);
    Json edges = Json::array();
    for (auto [a, b] : g.edges()) {
        edges.push_back({a, b});
    }
    doc["edges"] = std::move(edges);
    return doc;
}

GraphSpec graph_from_json(const Json &doc) {
    check_schema(doc);
    try {
        int cols = doc.at("m").get<int>();
        int rows = doc.at("n").get<int>();
        std::vector<Vertex> vertices;
        for (const auto &jv : doc.at("vertices")) {
            Vertex v;
            v.id = jv.at("id").get<int>();
            v.row = jv.at("row").get<int>();
            v.col = jv.at("col").get<int>();
            v.role = parse_role(jv.at("role").get<std::string>());
            v.phi = GridAngle::checked(jv.at("phi_k").get<int>());
            vertices.push_back(v);
        }
        std::sort(vertices.begin(), vertices.end(), [](const Vertex &a, const Vertex &b) {
            return a.id < b.id;
        });
        std::vector<Edge> edges;
        for (const auto &je : doc.at("edges")) {
            if (!je.is_array() || je.size() != 2) {
                throw std::invalid_argument("edges must be [id, id] pairs");
            }
            edges.emplace_back(je[0].get<int>(), je[1].get<int>());
        }
        GraphSpec g(cols, rows, std::move(vertices), std::move(edges));
        auto problems = g.role_violations();
        if (!problems.empty()) {
            throw std::invalid_argument("graph violates role invariants: " + problems.front());
        }
        return g;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed graph document: ") + e.what());
    }
}

}  // namespace trapver
