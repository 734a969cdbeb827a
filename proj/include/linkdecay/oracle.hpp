#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "linkdecay/graph.hpp"
#include "linkdecay/scoring.hpp"

namespace linkdecay {

/// Largest graph whose complement will be materialized by default.
inline constexpr std::size_t kComplementNodeLimit = 2000;
/// Up to this size the closed-form check is exhaustive over pairs.
inline constexpr std::size_t kExhaustiveCheckLimit = 50;
/// Minimum sample size above kExhaustiveCheckLimit.
inline constexpr std::size_t kSampledPairs = 1000;

/// Ē = {(i,j) | i != j, (i,j) ∉ E}. Throws if n exceeds `max_nodes`.
Graph materialize_complement(const Graph& g, std::size_t max_nodes = kComplementNodeLimit);

/// Ground truth for the complement-network closed forms: evaluates raw
/// link-prediction measures on an explicitly materialized complement, held
/// as a dense n×n matrix. Sym is evaluated on the complement of the
/// undirected view; the other combinations on the directed complement.
class ComplementOracle {
 public:
  explicit ComplementOracle(const Graph& g, std::size_t max_nodes = kComplementNodeLimit);

  /// f_m(Ā)_ij with Adamic–Adar weighted by complement degrees.
  double score(NodeId i, NodeId j, Measure measure, DegreeCombination combo) const;

  std::size_t node_count() const noexcept { return n_; }

 private:
  bool directed(NodeId a, NodeId b) const { return directed_[std::size_t{a} * n_ + b] != 0; }
  bool undirected(NodeId a, NodeId b) const { return undirected_[std::size_t{a} * n_ + b] != 0; }
  std::vector<NodeId> side(NodeId v, DegreeCombination combo, bool first) const;
  std::size_t weight_degree(NodeId k, DegreeCombination combo) const;

  std::size_t n_ = 0;
  std::vector<char> directed_;
  std::vector<char> undirected_;
};

/// One-shot f_m(Ā)_ij; materializes the complement on every call.
double brute_force_g2(const Graph& g, NodeId i, NodeId j, Measure measure,
                      DegreeCombination combo, std::size_t max_nodes = kComplementNodeLimit);

enum class PairSelection { EdgesOnly, AllPairs };

struct OracleReport {
  ScoreSpec spec;
  std::size_t pairs_checked = 0;
  double max_abs_deviation = 0.0;
  Edge worst_pair;
  /// Deviation was exactly 0 on every checked pair that is an edge.
  bool edge_exact = true;
};

/// Compares complement_network_score against the oracle. Exhaustive for
/// n <= kExhaustiveCheckLimit, otherwise a seeded sample of at least
/// kSampledPairs pairs (or every candidate when there are fewer).
OracleReport check_closed_form(const Graph& g, const ScoreSpec& spec, PairSelection pairs,
                               std::uint64_t seed = 0,
                               std::size_t max_nodes = kComplementNodeLimit);

}  // namespace linkdecay
