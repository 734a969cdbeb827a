#include "linkdecay/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "linkdecay/error.hpp"

namespace linkdecay {

namespace {

void check_limit(const Graph& g, std::size_t max_nodes) {
  if (g.node_count() > max_nodes) {
    throw Error("refusing to materialize the complement of a " + std::to_string(g.node_count()) +
                "-node graph (limit " + std::to_string(max_nodes) +
                "): the complement of a sparse graph is dense, O(n^2) edges");
  }
}

}  // namespace

Graph materialize_complement(const Graph& g, std::size_t max_nodes) {
  check_limit(g, max_nodes);
  const auto n = g.node_count();
  std::vector<Edge> edges;
  edges.reserve(n * (n > 0 ? n - 1 : 0) - g.edge_count());
  for (NodeId i = 0; i < n; ++i) {
    auto row = g.out_neighbors(i);
    auto it = row.begin();
    for (NodeId j = 0; j < n; ++j) {
      while (it != row.end() && *it < j) ++it;
      if (i == j || (it != row.end() && *it == j)) continue;
      edges.push_back({i, j});
    }
  }
  return Graph(n, std::move(edges));
}

ComplementOracle::ComplementOracle(const Graph& g, std::size_t max_nodes) : n_(g.node_count()) {
  check_limit(g, max_nodes);
  std::vector<char> adjacency(n_ * n_, 0);
  for (const auto& e : g.edges()) adjacency[std::size_t{e.src} * n_ + e.dst] = 1;

  directed_.assign(n_ * n_, 0);
  undirected_.assign(n_ * n_, 0);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      if (a == b) continue;
      const bool ab = adjacency[a * n_ + b] != 0;
      const bool ba = adjacency[b * n_ + a] != 0;
      directed_[a * n_ + b] = !ab;
      undirected_[a * n_ + b] = !ab && !ba;
    }
  }
}

std::vector<NodeId> ComplementOracle::side(NodeId v, DegreeCombination combo, bool first) const {
  // Out-side means row scan, in-side column scan.
  bool out_side = true;
  bool use_undirected = false;
  switch (combo) {
    case DegreeCombination::Sym: use_undirected = true; break;
    case DegreeCombination::Asym: out_side = first; break;
    case DegreeCombination::In: out_side = false; break;
    case DegreeCombination::Out: out_side = true; break;
  }
  std::vector<NodeId> nodes;
  for (NodeId k = 0; k < n_; ++k) {
    const bool linked = use_undirected ? undirected(v, k) : out_side ? directed(v, k) : directed(k, v);
    if (linked) nodes.push_back(k);
  }
  return nodes;
}

std::size_t ComplementOracle::weight_degree(NodeId k, DegreeCombination combo) const {
  std::size_t degree = 0;
  for (NodeId v = 0; v < n_; ++v) {
    switch (combo) {
      case DegreeCombination::Out: degree += directed(k, v); break;
      case DegreeCombination::In: degree += directed(v, k); break;
      case DegreeCombination::Sym: degree += undirected(k, v); break;
      case DegreeCombination::Asym: degree += directed(k, v) || directed(v, k); break;
    }
  }
  return degree;
}

double ComplementOracle::score(NodeId i, NodeId j, Measure measure, DegreeCombination combo) const {
  if (i >= n_ || j >= n_) throw Error("oracle pair outside node range");
  if (i == j) throw Error("oracle pair must have distinct endpoints");
  const auto x = side(i, combo, true);
  const auto y = side(j, combo, false);
  std::vector<NodeId> common;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
  std::set<NodeId> either(x.begin(), x.end());
  either.insert(y.begin(), y.end());

  const double cn = static_cast<double>(common.size());
  switch (measure) {
    case Measure::PA: return static_cast<double>(x.size()) * static_cast<double>(y.size());
    case Measure::CN: return cn;
    case Measure::Cos: {
      const double denom = std::sqrt(static_cast<double>(x.size())) *
                           std::sqrt(static_cast<double>(y.size()));
      return denom == 0.0 ? 0.0 : cn / denom;
    }
    case Measure::Jacc:
      return either.empty() ? 0.0 : cn / static_cast<double>(either.size());
    case Measure::Adad: {
      double sum = 0.0;
      for (NodeId k : common) {
        const auto degree = weight_degree(k, combo);
        if (degree > 1) sum += 1.0 / std::log(static_cast<double>(degree));
      }
      return sum;
    }
  }
  return 0.0;
}

double brute_force_g2(const Graph& g, NodeId i, NodeId j, Measure measure,
                      DegreeCombination combo, std::size_t max_nodes) {
  return ComplementOracle(g, max_nodes).score(i, j, measure, combo);
}

namespace {

std::vector<Edge> candidate_pairs(const Graph& g, PairSelection selection, std::uint64_t seed) {
  const auto n = g.node_count();
  const bool exhaustive = n <= kExhaustiveCheckLimit;
  if (selection == PairSelection::EdgesOnly) {
    auto edges = g.edges();
    if (exhaustive || edges.size() <= kSampledPairs) return edges;
    std::vector<Edge> sample;
    std::mt19937_64 rng(seed);
    std::sample(edges.begin(), edges.end(), std::back_inserter(sample), kSampledPairs, rng);
    return sample;
  }

  const auto all = n * (n > 0 ? n - 1 : 0);
  if (exhaustive || all <= kSampledPairs) {
    std::vector<Edge> pairs;
    pairs.reserve(all);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (i != j) pairs.push_back({i, j});
      }
    }
    return pairs;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  std::set<Edge> chosen;
  while (chosen.size() < kSampledPairs) {
    const NodeId i = pick(rng);
    const NodeId j = pick(rng);
    if (i != j) chosen.insert({i, j});
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace

OracleReport check_closed_form(const Graph& g, const ScoreSpec& spec, PairSelection selection,
                               std::uint64_t seed, std::size_t max_nodes) {
  if (spec.model != Model::ComplementNetwork) {
    throw Error("closed-form check applies to the complement-network model only");
  }
  const ComplementOracle oracle(g, max_nodes);
  const DecayScorer closed_form(g, spec);
  const auto pairs = candidate_pairs(g, selection, seed);
  if (pairs.empty()) throw Error("no pairs to check");

  OracleReport report;
  report.spec = spec;
  report.worst_pair = pairs.front();
  for (const auto& p : pairs) {
    const double deviation =
        std::abs(closed_form(p.src, p.dst) - oracle.score(p.src, p.dst, spec.measure, spec.combo));
    ++report.pairs_checked;
    if (deviation > report.max_abs_deviation) {
      report.max_abs_deviation = deviation;
      report.worst_pair = p;
    }
    if (deviation != 0.0 && g.has_edge(p.src, p.dst)) report.edge_exact = false;
  }
  return report;
}

}  // namespace linkdecay
