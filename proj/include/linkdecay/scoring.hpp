#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linkdecay/graph.hpp"

namespace linkdecay {

enum class Measure { PA, CN, Cos, Jacc, Adad };

/// ComplementScore negates a link-prediction score; ComplementNetwork runs
/// link prediction on the complement graph through closed forms.
enum class Model { ComplementScore, ComplementNetwork };

inline constexpr Measure kAllMeasures[] = {Measure::PA, Measure::CN, Measure::Cos, Measure::Jacc,
                                           Measure::Adad};
inline constexpr Model kAllModels[] = {Model::ComplementScore, Model::ComplementNetwork};

std::string_view to_string(Measure measure) noexcept;
std::string_view to_string(Model model) noexcept;
std::optional<Measure> parse_measure(std::string_view text);
std::optional<Model> parse_model(std::string_view text);

struct ScoreSpec {
  Model model = Model::ComplementScore;
  Measure measure = Measure::PA;
  DegreeCombination combo = DegreeCombination::Sym;
  /// Adamic–Adar on the complement network: weight by complement degrees
  /// n-1-δ(k) instead of the original δ(k).
  bool adad_complement_weights = false;

  friend bool operator==(const ScoreSpec&, const ScoreSpec&) = default;
};

/// All 2 × 5 × 4 model/measure/combination specs, model-major.
std::vector<ScoreSpec> all_score_specs();

/// `model=score measure=pa combo=sym adad-complement-weights=false`
std::string describe(const ScoreSpec& spec);

struct ScoredEdge {
  NodeId src = 0;
  NodeId dst = 0;
  double score = 0.0;
};

/// Raw link-prediction score f_m(A)_ij with combo-selected degrees and
/// neighbor sets. Degenerate denominators give 0.
double link_prediction_score(const Graph& g, NodeId i, NodeId j, Measure measure,
                             DegreeCombination combo);

/// g¹_m = -f_m(A)_ij. Higher means more likely to decay.
double complement_score(const Graph& g, NodeId i, NodeId j, Measure measure,
                        DegreeCombination combo);

/// g²_m, the closed forms for f_m on the complement graph expressed through
/// degrees and neighborhoods of the original graph. O(n) for Adad, since the
/// whole-graph weight sum is recomputed; use DecayScorer for batches.
double complement_network_score(const Graph& g, NodeId i, NodeId j, Measure measure,
                                DegreeCombination combo, bool adad_complement_weights = false);

/// Adamic–Adar weight degree of node k under `combo`: Out -> δ_out,
/// In -> δ_in, Sym/Asym -> undirected degree.
std::size_t adad_weight_degree(const Graph& g, NodeId k, DegreeCombination combo);

/// 1 / ln(degree), or 0 when degree <= 1.
double adad_weight(std::size_t degree) noexcept;

/// Scorer bound to one graph and spec, with per-graph aggregates (node
/// weights and their sum) computed once. The graph must outlive it.
class DecayScorer {
 public:
  DecayScorer(const Graph& g, const ScoreSpec& spec);

  double operator()(NodeId i, NodeId j) const;

  const ScoreSpec& spec() const noexcept { return spec_; }

 private:
  double adad_sum(std::span<const NodeId> nodes) const;
  double adad_common_sum(std::span<const NodeId> a, std::span<const NodeId> b) const;

  const Graph* graph_;
  ScoreSpec spec_;
  std::vector<double> weights_;
  double total_weight_ = 0.0;
};

/// Scores every pair in input order. Errors name the offending index.
std::vector<ScoredEdge> score_batch(const Graph& g, std::span<const Edge> pairs,
                                    const ScoreSpec& spec);

}  // namespace linkdecay
