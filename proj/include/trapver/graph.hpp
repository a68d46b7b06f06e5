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

#ifndef TRAPVER_GRAPH_HPP
#define TRAPVER_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trapver/grid_angle.hpp"

namespace trapver {

enum class VertexRole : uint8_t { computational, dummy, trap, bridge };
enum class Parity : uint8_t { even, odd };

std::string_view role_name(VertexRole role);
VertexRole parse_role(std::string_view name);
std::string_view parity_name(Parity parity);

/// Checkerboard parity of a lattice coordinate, (row + col) mod 2.
inline Parity coordinate_parity(int row, int col) {
    return ((row + col) & 1) ? Parity::odd : Parity::even;
}

struct Vertex {
    int id = 0;
    int row = 0;
    int col = 0;
    VertexRole role = VertexRole::computational;
    GridAngle phi;
};

using Edge = std::pair<int, int>;

/// An undirected graph on labels 0..num_vertices-1.
struct SimpleGraph {
    int num_vertices = 0;
    std::vector<Edge> edges;

    std::vector<int> degrees() const;
};

/// A layout on an m x n square lattice. Vertex ids are row-major: id = row * cols + col.
///
/// The edge list is the set of entangling operations the prover performs; roles
/// decide which of them survive (dummies break every edge they touch).
class GraphSpec {
   public:
    /// Validates coordinates, edge locality and angle constraints.
    GraphSpec(int cols, int rows, std::vector<Vertex> vertices, std::vector<Edge> edges);

    int cols() const {
        return cols_;
    }
    int rows() const {
        return rows_;
    }
    int size() const {
        return static_cast<int>(vertices_.size());
    }
    const std::vector<Vertex> &vertices() const {
        return vertices_;
    }
    const Vertex &vertex(int id) const {
        return vertices_.at(id);
    }
    const std::vector<Edge> &edges() const {
        return edges_;
    }
    /// Neighbors along the stored edges, ascending.
    const std::vector<int> &neighbors(int id) const {
        return adjacency_.at(id);
    }
    int id_at(int row, int col) const {
        return row * cols_ + col;
    }
    bool is_dummy(int id) const {
        return vertices_[id].role == VertexRole::dummy;
    }

    int count(VertexRole role) const;
    /// Non-dummy vertex ids in ascending order. This order labels output strings.
    std::vector<int> live_vertices() const;
    std::vector<int> dummy_vertices() const;
    /// Number of non-dummy neighbors.
    int live_degree(int id) const;
    /// Subgraph induced on non-dummy vertices, relabeled in live_vertices() order.
    SimpleGraph induced_graph() const;
    /// Base angle per non-dummy vertex, in live_vertices() order.
    std::vector<GridAngle> live_phis() const;

    /// Problems with the role invariants (trap isolation, bridge degree). Empty when valid.
    std::vector<std::string> role_violations() const;

    bool same_shape(const GraphSpec &other) const {
        return cols_ == other.cols_ && rows_ == other.rows_;
    }

   private:
    int cols_;
    int rows_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

/// Smallest lattice holding one brickwork connection: two wires of three sites
/// each, joined by a single bridge.
inline constexpr int kMinTargetCols = 3;
inline constexpr int kMinTargetRows = 3;

/// Angle pattern along each wire, repeating every 7 sites, in units of pi/8.
inline constexpr int kWirePattern[7] = {1, 0, -2, 0, 2, 0, -1};

GraphSpec build_square_lattice(int cols, int rows);

/// Extended-brickwork sampler carved from the lattice.
///
/// Wires occupy even rows. Odd rows are dummies except bridge sites that join
/// wire w to wire w+1. Bridges sit at columns c with c mod 8 in {2, 4} when w is
/// even and c mod 8 in {6, 0}, c > 0, when w is odd. A bridge is measured at pi/2
/// and shifts both of its wire neighbors by pi/2.
GraphSpec carve_target(int cols, int rows);

/// Traps on every target non-dummy site of the given parity; everything else dummy.
GraphSpec carve_trap_graph(const GraphSpec &target, Parity parity);
GraphSpec carve_trap_graph(int cols, int rows, Parity parity);

/// XOR of dummy bits over each vertex's dummy neighbors.
///
/// dummy_bits is indexed like dummy_vertices(). Result is indexed by vertex id;
/// entries for dummies are 0.
std::vector<uint8_t> neighbor_dummy_parity(const GraphSpec &g, std::span<const uint8_t> dummy_bits);

/// Flip mask induced by bridge outcomes. raw_bits is indexed by vertex id.
std::vector<uint8_t> bridge_corrections(const GraphSpec &g, std::span<const uint8_t> raw_bits);

/// Non-dummy, non-bridge vertices with every bridge replaced by a direct edge
/// between its two neighbors. Labels follow live_vertices() order with bridges skipped.
SimpleGraph contract_bridges(const GraphSpec &g);

/// Brickwork adjacency built brick by brick, without reference to any lattice.
/// Vertex (wire, site) has label wire * sites + site.
SimpleGraph brickwork_reference(int wires, int sites);

/// Exact graph isomorphism test.
bool isomorphic(const SimpleGraph &a, const SimpleGraph &b);

/// Checks that a target carving contracts to the brickwork of matching size.
bool embedding_matches_brickwork(const GraphSpec &target);

enum class RoundKind : uint8_t { target, even_trap, odd_trap };

std::string_view round_kind_name(RoundKind kind);

/// The 2k+1 graphs of one protocol run in canonical order: target first, then k
/// even-trap graphs, then k odd-trap graphs. The per-run order is part of the key.
class RoundLayout {
   public:
    RoundLayout(std::vector<GraphSpec> graphs, std::vector<RoundKind> kinds);

    /// Canonical layout for a target carving.
    static RoundLayout for_target(const GraphSpec &target, int kappa);

    int kappa() const {
        return kappa_;
    }
    int num_rounds() const {
        return static_cast<int>(graphs_.size());
    }
    const GraphSpec &graph(int index) const {
        return graphs_.at(index);
    }
    RoundKind kind(int index) const {
        return kinds_.at(index);
    }
    int target_index() const {
        return target_index_;
    }
    const GraphSpec &target() const {
        return graphs_[target_index_];
    }
    int cols() const {
        return graphs_.front().cols();
    }
    int rows() const {
        return graphs_.front().rows();
    }

   private:
    std::vector<GraphSpec> graphs_;
    std::vector<RoundKind> kinds_;
    int kappa_ = 0;
    int target_index_ = 0;
};

}  // namespace trapver

#endif
