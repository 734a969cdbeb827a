#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace linkdecay {

using NodeId = std::uint32_t;
using Timestamp = std::int64_t;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Direction { In, Out, Both };
enum class DegreeMode { In, Out, Total };

/// Which degrees and neighbor directions stand in for the undirected
/// δ(i), δ(j) and N(i), N(j):
///   Sym  -> undirected view of both endpoints
///   Asym -> out-side of i, in-side of j
///   In   -> in-side of both
///   Out  -> out-side of both
enum class DegreeCombination { Sym, Asym, In, Out };

inline constexpr DegreeCombination kAllCombinations[] = {
    DegreeCombination::Sym, DegreeCombination::Asym, DegreeCombination::In,
    DegreeCombination::Out};

std::string_view to_string(DegreeCombination combo) noexcept;
std::optional<DegreeCombination> parse_combination(std::string_view text);

/// Immutable directed simple graph over nodes 0..n-1.
///
/// Adjacency is held in three CSR arrays (out, in, and their union) with
/// every row sorted, so neighbor scans are O(δ) and membership O(log δ).
class Graph {
 public:
  Graph() = default;

  /// Throws linkdecay::Error on self-loops, duplicate edges, or endpoints
  /// outside [0, node_count).
  Graph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return m_; }

  std::span<const NodeId> out_neighbors(NodeId v) const;
  std::span<const NodeId> in_neighbors(NodeId v) const;
  /// N_in(v) ∪ N_out(v), each node listed once.
  std::span<const NodeId> undirected_neighbors(NodeId v) const;
  std::span<const NodeId> neighbors(NodeId v, Direction direction) const;

  /// Total is out + in, so a reciprocated pair contributes two.
  std::size_t degree(NodeId v, DegreeMode mode) const;

  bool has_edge(NodeId src, NodeId dst) const;

  /// All edges in (src, dst) order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.out_.offsets == b.out_.offsets &&
           a.out_.targets == b.out_.targets;
  }

 private:
  struct Csr {
    std::vector<std::size_t> offsets;
    std::vector<NodeId> targets;

    std::span<const NodeId> row(NodeId v) const {
      return {targets.data() + offsets[v], offsets[v + 1] - offsets[v]};
    }
  };

  void check_node(NodeId v) const;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  Csr out_;
  Csr in_;
  Csr both_;
};

/// The two neighbor sets a degree combination selects for the pair (i, j).
struct SelectedNeighbors {
  std::span<const NodeId> first;
  std::span<const NodeId> second;
};

SelectedNeighbors select_neighbors(const Graph& g, NodeId i, NodeId j,
                                   DegreeCombination combo);

/// |a ∩ b| for sorted ranges.
std::size_t intersection_size(std::span<const NodeId> a,
                              std::span<const NodeId> b) noexcept;

/// Generalized (A²)_ij; Asym gives the directed path count i -> k -> j.
/// Throws on i == j.
std::size_t common_neighbor_count(const Graph& g, NodeId i, NodeId j,
                                  DegreeCombination combo);

/// |X ∪ Y| for the sets chosen by `combo`. Throws on i == j.
std::size_t union_neighborhood_size(const Graph& g, NodeId i, NodeId j,
                                    DegreeCombination combo);

/// Undirected view as a symmetric digraph: (i,j) and (j,i) for every edge.
Graph symmetrize(const Graph& g);

}  // namespace linkdecay
