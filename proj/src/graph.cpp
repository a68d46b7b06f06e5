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

#include "trapver/graph.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/isomorphism.hpp>
#include <set>
#include <stdexcept>

namespace trapver {

std::string_view role_name(VertexRole role) {
    switch (role) {
        case VertexRole::computational:
            return "computational";
        case VertexRole::dummy:
            return "dummy";
        case VertexRole::trap:
            return "trap";
        case VertexRole::bridge:
            return "bridge";
    }
    return "?";
}

VertexRole parse_role(std::string_view name) {
    for (auto r : {VertexRole::computational, VertexRole::dummy, VertexRole::trap, VertexRole::bridge}) {
        if (role_name(r) == name) {
            return r;
        }
    }
    throw std::invalid_argument("unknown vertex role '" + std::string(name) + "'");
}

std::string_view parity_name(Parity parity) {
    return parity == Parity::even ? "even" : "odd";
}

std::string_view round_kind_name(RoundKind kind) {
    switch (kind) {
        case RoundKind::target:
            return "target";
        case RoundKind::even_trap:
            return "even_trap";
        case RoundKind::odd_trap:
            return "odd_trap";
    }
    return "?";
}

std::vector<int> SimpleGraph::degrees() const {
    std::vector<int> deg(num_vertices, 0);
    for (auto [a, b] : edges) {
        deg[a]++;
        deg[b]++;
    }
    return deg;
}

GraphSpec::GraphSpec(int cols, int rows, std::vector<Vertex> vertices, std::vector<Edge> edges)
    : cols_(cols), rows_(rows), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (cols < 1 || rows < 1) {
        throw std::invalid_argument("lattice dimensions must be at least 1x1");
    }
    if (vertices_.size() != static_cast<size_t>(cols) * rows) {
        throw std::invalid_argument("vertex count does not match lattice dimensions");
    }
    for (size_t i = 0; i < vertices_.size(); i++) {
        const auto &v = vertices_[i];
        if (v.id != static_cast<int>(i) || v.row != v.id / cols || v.col != v.id % cols) {
            throw std::invalid_argument("vertex " + std::to_string(i) + " has inconsistent id or coordinates");
        }
        if (v.role == VertexRole::trap && v.phi != kAngleZero) {
            throw std::invalid_argument("trap vertex " + std::to_string(i) + " must have phi = 0");
        }
        if (v.role == VertexRole::bridge && v.phi != kAngleHalfPi) {
            throw std::invalid_argument("bridge vertex " + std::to_string(i) + " must have phi = pi/2");
        }
    }
    adjacency_.assign(vertices_.size(), {});
    std::set<Edge> seen;
    for (auto &e : edges_) {
        auto [a, b] = e;
        if (a < 0 || b < 0 || a >= size() || b >= size() || a == b) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        const auto &va = vertices_[a];
        const auto &vb = vertices_[b];
        if (std::abs(va.row - vb.row) + std::abs(va.col - vb.col) != 1) {
            throw std::invalid_argument(
                "edge (" + std::to_string(a) + "," + std::to_string(b) + ") is not a nearest-neighbor pair");
        }
        if (a > b) {
            e = {b, a};
        }
        if (!seen.insert(e).second) {
            throw std::invalid_argument("duplicate edge");
        }
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (auto &adj : adjacency_) {
        std::sort(adj.begin(), adj.end());
    }
}

int GraphSpec::count(VertexRole role) const {
    return static_cast<int>(std::count_if(vertices_.begin(), vertices_.end(), [&](const Vertex &v) {
        return v.role == role;
    }));
}

std::vector<int> GraphSpec::live_vertices() const {
    std::vector<int> out;
    for (const auto &v : vertices_) {
        if (v.role != VertexRole::dummy) {
            out.push_back(v.id);
        }
    }
    return out;
}

std::vector<int> GraphSpec::dummy_vertices() const {
    std::vector<int> out;
    for (const auto &v : vertices_) {
        if (v.role == VertexRole::dummy) {
            out.push_back(v.id);
        }
    }
    return out;
}

int GraphSpec::live_degree(int id) const {
    int d = 0;
    for (int nb : adjacency_.at(id)) {
        d += !is_dummy(nb);
    }
    return d;
}

SimpleGraph GraphSpec::induced_graph() const {
    std::vector<int> label(size(), -1);
    int next = 0;
    for (int id : live_vertices()) {
        label[id] = next++;
    }
    SimpleGraph g{next, {}};
    for (auto [a, b] : edges_) {
        if (label[a] >= 0 && label[b] >= 0) {
            g.edges.emplace_back(label[a], label[b]);
        }
    }
    return g;
}

std::vector<GridAngle> GraphSpec::live_phis() const {
    std::vector<GridAngle> out;
    for (int id : live_vertices()) {
        out.push_back(vertices_[id].phi);
    }
    return out;
}

std::vector<std::string> GraphSpec::role_violations() const {
    std::vector<std::string> out;
    for (const auto &v : vertices_) {
        if (v.role == VertexRole::trap && live_degree(v.id) != 0) {
            out.push_back("trap " + std::to_string(v.id) + " has a non-dummy neighbor");
        }
        if (v.role == VertexRole::bridge && live_degree(v.id) != 2) {
            out.push_back("bridge " + std::to_string(v.id) + " has degree " + std::to_string(live_degree(v.id)));
        }
    }
    return out;
}

GraphSpec build_square_lattice(int cols, int rows) {
    if (cols < 1 || rows < 1) {
        throw std::invalid_argument("lattice dimensions must be at least 1x1");
    }
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    for (int r = 0; r < rows; r++) {
        for (int c = 0; c < cols; c++) {
            int id = r * cols + c;
            vertices.push_back({id, r, c, VertexRole::computational, kAngleZero});
            if (c + 1 < cols) {
                edges.emplace_back(id, id + 1);
            }
            if (r + 1 < rows) {
                edges.emplace_back(id, id + cols);
            }
        }
    }
    return GraphSpec(cols, rows, std::move(vertices), std::move(edges));
}

namespace {

bool is_bridge_column(int wire_pair, int col) {
    int phase = col % 8;
    if (wire_pair % 2 == 0) {
        return phase == 2 || phase == 4;
    }
    return col > 0 && (phase == 6 || phase == 0);
}

}  // namespace

GraphSpec carve_target(int cols, int rows) {
    if (cols < kMinTargetCols || rows < kMinTargetRows) {
        throw std::invalid_argument(
            "target carving needs at least " + std::to_string(kMinTargetCols) + " columns and " +
            std::to_string(kMinTargetRows) + " rows, got " + std::to_string(cols) + "x" + std::to_string(rows));
    }
    GraphSpec lattice = build_square_lattice(cols, rows);
    std::vector<Vertex> vertices = lattice.vertices();
    std::vector<int> shift(vertices.size(), 0);
    for (auto &v : vertices) {
        if (v.row % 2 == 0) {
            v.role = VertexRole::computational;
            shift[v.id] += kWirePattern[v.col % 7];
            continue;
        }
        int wire_pair = v.row / 2;
        bool below_exists = v.row + 1 < rows;
        if (below_exists && is_bridge_column(wire_pair, v.col)) {
            v.role = VertexRole::bridge;
            v.phi = kAngleHalfPi;
            shift[v.id - cols] += 4;
            shift[v.id + cols] += 4;
        } else {
            v.role = VertexRole::dummy;
        }
    }
    for (auto &v : vertices) {
        if (v.role == VertexRole::computational) {
            v.phi = GridAngle::wrap(shift[v.id]);
        }
    }
    return GraphSpec(cols, rows, std::move(vertices), lattice.edges());
}

GraphSpec carve_trap_graph(const GraphSpec &target, Parity parity) {
    if (target.count(VertexRole::trap) != 0) {
        throw std::invalid_argument("trap carving needs a target carving as its template");
    }
    std::vector<Vertex> vertices = target.vertices();
    for (auto &v : vertices) {
        bool site = v.role != VertexRole::dummy && coordinate_parity(v.row, v.col) == parity;
        v.role = site ? VertexRole::trap : VertexRole::dummy;
        v.phi = kAngleZero;
    }
    return GraphSpec(target.cols(), target.rows(), std::move(vertices), target.edges());
}

GraphSpec carve_trap_graph(int cols, int rows, Parity parity) {
    return carve_trap_graph(carve_target(cols, rows), parity);
}

std::vector<uint8_t> neighbor_dummy_parity(const GraphSpec &g, std::span<const uint8_t> dummy_bits) {
    auto dummies = g.dummy_vertices();
    if (dummy_bits.size() != dummies.size()) {
        throw std::invalid_argument(
            "expected " + std::to_string(dummies.size()) + " dummy bits, got " + std::to_string(dummy_bits.size()));
    }
    std::vector<uint8_t> per_vertex(g.size(), 0);
    for (size_t i = 0; i < dummies.size(); i++) {
        per_vertex[dummies[i]] = dummy_bits[i] & 1;
    }
    std::vector<uint8_t> out(g.size(), 0);
    for (int id = 0; id < g.size(); id++) {
        if (g.is_dummy(id)) {
            continue;
        }
        for (int nb : g.neighbors(id)) {
            if (g.is_dummy(nb)) {
                out[id] ^= per_vertex[nb];
            }
        }
    }
    return out;
}

std::vector<uint8_t> bridge_corrections(const GraphSpec &g, std::span<const uint8_t> raw_bits) {
    if (raw_bits.size() != static_cast<size_t>(g.size())) {
        throw std::invalid_argument("bridge_corrections needs one outcome per vertex");
    }
    std::vector<uint8_t> mask(g.size(), 0);
    for (const auto &v : g.vertices()) {
        if (v.role != VertexRole::bridge) {
            continue;
        }
        if (g.live_degree(v.id) != 2) {
            throw std::invalid_argument(
                "bridge " + std::to_string(v.id) + " has degree " + std::to_string(g.live_degree(v.id)));
        }
        if (!(raw_bits[v.id] & 1)) {
            continue;
        }
        for (int nb : g.neighbors(v.id)) {
            if (!g.is_dummy(nb)) {
                mask[nb] ^= 1;
            }
        }
    }
    return mask;
}

SimpleGraph contract_bridges(const GraphSpec &g) {
    std::vector<int> label(g.size(), -1);
    int next = 0;
    for (int id : g.live_vertices()) {
        if (g.vertex(id).role != VertexRole::bridge) {
            label[id] = next++;
        }
    }
    SimpleGraph out{next, {}};
    for (auto [a, b] : g.edges()) {
        if (label[a] >= 0 && label[b] >= 0) {
            out.edges.emplace_back(label[a], label[b]);
        }
    }
    for (const auto &v : g.vertices()) {
        if (v.role != VertexRole::bridge) {
            continue;
        }
        std::vector<int> ends;
        for (int nb : g.neighbors(v.id)) {
            if (!g.is_dummy(nb)) {
                ends.push_back(nb);
            }
        }
        if (ends.size() != 2 || label[ends[0]] < 0 || label[ends[1]] < 0) {
            throw std::invalid_argument("bridge " + std::to_string(v.id) + " cannot be contracted");
        }
        out.edges.emplace_back(label[ends[0]], label[ends[1]]);
    }
    return out;
}

SimpleGraph brickwork_reference(int wires, int sites) {
    SimpleGraph g{wires * sites, {}};
    auto at = [&](int w, int s) {
        return w * sites + s;
    };
    for (int w = 0; w < wires; w++) {
        for (int s = 0; s + 1 < sites; s++) {
            g.edges.emplace_back(at(w, s), at(w, s + 1));
        }
    }
    // Bricks are 8 sites apart, two rungs each; odd wire pairs are offset by half a brick.
    for (int w = 0; w + 1 < wires; w++) {
        int offset = (w % 2 == 0) ? 2 : 6;
        for (int start = offset; start < sites; start += 8) {
            for (int rung : {start, start + 2}) {
                if (rung < sites) {
                    g.edges.emplace_back(at(w, rung), at(w + 1, rung));
                }
            }
        }
    }
    return g;
}

bool isomorphic(const SimpleGraph &a, const SimpleGraph &b) {
    if (a.num_vertices != b.num_vertices || a.edges.size() != b.edges.size()) {
        return false;
    }
    auto da = a.degrees();
    auto db = b.degrees();
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) {
        return false;
    }
    using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BGraph ga(a.num_vertices);
    BGraph gb(b.num_vertices);
    for (auto [x, y] : a.edges) {
        boost::add_edge(x, y, ga);
    }
    for (auto [x, y] : b.edges) {
        boost::add_edge(x, y, gb);
    }
    return boost::isomorphism(ga, gb);
}

bool embedding_matches_brickwork(const GraphSpec &target) {
    int wires = (target.rows() + 1) / 2;
    return isomorphic(contract_bridges(target), brickwork_reference(wires, target.cols()));
}

RoundLayout::RoundLayout(std::vector<GraphSpec> graphs, std::vector<RoundKind> kinds)
    : graphs_(std::move(graphs)), kinds_(std::move(kinds)) {
    if (graphs_.empty() || graphs_.size() != kinds_.size()) {
        throw std::invalid_argument("round layout needs one kind per graph");
    }
    if (graphs_.size() % 2 != 1) {
        throw std::invalid_argument("round layout needs an odd number of rounds");
    }
    int targets = 0, evens = 0, odds = 0;
    for (size_t i = 0; i < graphs_.size(); i++) {
        if (!graphs_[i].same_shape(graphs_.front())) {
            throw std::invalid_argument("all rounds must share the same lattice dimensions");
        }
        switch (kinds_[i]) {
            case RoundKind::target:
                targets++;
                target_index_ = static_cast<int>(i);
                break;
            case RoundKind::even_trap:
                evens++;
                break;
            case RoundKind::odd_trap:
                odds++;
                break;
        }
    }
    if (targets != 1 || evens != odds) {
        throw std::invalid_argument("round layout needs one target and equally many even and odd trap rounds");
    }
    kappa_ = evens;
}

RoundLayout RoundLayout::for_target(const GraphSpec &target, int kappa) {
    if (kappa < 1) {
        throw std::invalid_argument("kappa must be at least 1");
    }
    std::vector<GraphSpec> graphs{target};
    std::vector<RoundKind> kinds{RoundKind::target};
    GraphSpec even = carve_trap_graph(target, Parity::even);
    GraphSpec odd = carve_trap_graph(target, Parity::odd);
    for (int i = 0; i < kappa; i++) {
        graphs.push_back(even);
        kinds.push_back(RoundKind::even_trap);
    }
    for (int i = 0; i < kappa; i++) {
        graphs.push_back(odd);
        kinds.push_back(RoundKind::odd_trap);
    }
    return RoundLayout(std::move(graphs), std::move(kinds));
}

}  // namespace trapver
