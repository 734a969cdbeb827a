#include "linkdecay/graph.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "linkdecay/error.hpp"

namespace linkdecay {

std::string_view to_string(DegreeCombination combo) noexcept {
  switch (combo) {
    case DegreeCombination::Sym: return "sym";
    case DegreeCombination::Asym: return "asym";
    case DegreeCombination::In: return "in";
    case DegreeCombination::Out: return "out";
  }
  return "?";
}

std::optional<DegreeCombination> parse_combination(std::string_view text) {
  for (auto combo : kAllCombinations) {
    if (to_string(combo) == text) return combo;
  }
  return std::nullopt;
}

namespace {

template <class Key>
std::vector<std::size_t> row_offsets(std::size_t n, const std::vector<Edge>& edges, Key key) {
  std::vector<std::size_t> offsets(n + 1, 0);
  for (const auto& e : edges) ++offsets[key(e) + 1];
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  return offsets;
}

}  // namespace

Graph::Graph(std::size_t node_count, std::vector<Edge> edges) : n_(node_count) {
  std::sort(edges.begin(), edges.end());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    if (e.src >= n_ || e.dst >= n_) {
      throw Error("edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                  ") outside node range " + std::to_string(n_));
    }
    if (e.src == e.dst) throw Error("self-loop at node " + std::to_string(e.src));
    if (k > 0 && edges[k - 1] == e) {
      throw Error("duplicate edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) + ")");
    }
  }
  m_ = edges.size();

  // Sorted by (src, dst), so out rows come out sorted directly.
  out_.offsets = row_offsets(n_, edges, [](const Edge& e) { return e.src; });
  out_.targets.reserve(m_);
  for (const auto& e : edges) out_.targets.push_back(e.dst);

  // Filling in-rows in src order keeps them sorted too.
  in_.offsets = row_offsets(n_, edges, [](const Edge& e) { return e.dst; });
  in_.targets.resize(m_);
  std::vector<std::size_t> cursor(in_.offsets.begin(), in_.offsets.end() - 1);
  for (const auto& e : edges) in_.targets[cursor[e.dst]++] = e.src;

  both_.offsets.assign(n_ + 1, 0);
  both_.targets.reserve(2 * m_);
  for (NodeId v = 0; v < n_; ++v) {
    auto outs = out_.row(v);
    auto ins = in_.row(v);
    std::set_union(outs.begin(), outs.end(), ins.begin(), ins.end(),
                   std::back_inserter(both_.targets));
    both_.offsets[v + 1] = both_.targets.size();
  }
  both_.targets.shrink_to_fit();
}

void Graph::check_node(NodeId v) const {
  if (v >= n_) {
    throw Error("unknown node " + std::to_string(v) + " (graph has " + std::to_string(n_) +
                " nodes)");
  }
}

std::span<const NodeId> Graph::out_neighbors(NodeId v) const {
  check_node(v);
  return out_.row(v);
}

std::span<const NodeId> Graph::in_neighbors(NodeId v) const {
  check_node(v);
  return in_.row(v);
}

std::span<const NodeId> Graph::undirected_neighbors(NodeId v) const {
  check_node(v);
  return both_.row(v);
}

std::span<const NodeId> Graph::neighbors(NodeId v, Direction direction) const {
  switch (direction) {
    case Direction::In: return in_neighbors(v);
    case Direction::Out: return out_neighbors(v);
    case Direction::Both: return undirected_neighbors(v);
  }
  return {};
}

std::size_t Graph::degree(NodeId v, DegreeMode mode) const {
  check_node(v);
  switch (mode) {
    case DegreeMode::In: return in_.row(v).size();
    case DegreeMode::Out: return out_.row(v).size();
    case DegreeMode::Total: return in_.row(v).size() + out_.row(v).size();
  }
  return 0;
}

bool Graph::has_edge(NodeId src, NodeId dst) const {
  check_node(src);
  check_node(dst);
  auto row = out_.row(src);
  return std::binary_search(row.begin(), row.end(), dst);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> result;
  result.reserve(m_);
  for (NodeId v = 0; v < n_; ++v) {
    for (NodeId w : out_.row(v)) result.push_back({v, w});
  }
  return result;
}

SelectedNeighbors select_neighbors(const Graph& g, NodeId i, NodeId j, DegreeCombination combo) {
  switch (combo) {
    case DegreeCombination::Sym:
      return {g.undirected_neighbors(i), g.undirected_neighbors(j)};
    case DegreeCombination::Asym:
      return {g.out_neighbors(i), g.in_neighbors(j)};
    case DegreeCombination::In:
      return {g.in_neighbors(i), g.in_neighbors(j)};
    case DegreeCombination::Out:
      return {g.out_neighbors(i), g.out_neighbors(j)};
  }
  return {};
}

std::size_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) noexcept {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

namespace {

void require_distinct(NodeId i, NodeId j) {
  if (i == j) throw Error("pair must have distinct endpoints, got (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
}

}  // namespace

std::size_t common_neighbor_count(const Graph& g, NodeId i, NodeId j, DegreeCombination combo) {
  require_distinct(i, j);
  auto sets = select_neighbors(g, i, j, combo);
  return intersection_size(sets.first, sets.second);
}

std::size_t union_neighborhood_size(const Graph& g, NodeId i, NodeId j, DegreeCombination combo) {
  require_distinct(i, j);
  auto sets = select_neighbors(g, i, j, combo);
  return sets.first.size() + sets.second.size() - intersection_size(sets.first, sets.second);
}

Graph symmetrize(const Graph& g) {
  std::vector<Edge> edges;
  edges.reserve(2 * g.edge_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (NodeId w : g.undirected_neighbors(v)) edges.push_back({v, w});
  }
  return Graph(g.node_count(), std::move(edges));
}

}  // namespace linkdecay
