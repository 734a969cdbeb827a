#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "linkdecay/graph.hpp"
#include "linkdecay/scoring.hpp"
#include "linkdecay/temporal.hpp"

namespace linkdecay {

inline constexpr double kDefaultTrainingFraction = 0.75;

/// Training/test partition of one temporal network.
///
/// test_set holds edges present at t1 and absent at t_end; zero_test_set is
/// a uniform sample, of the same size when possible, of edges present at
/// both. Presence is compared only at the two endpoints.
struct EvaluationSplit {
  Timestamp t1 = 0;
  Timestamp t_end = 0;
  std::vector<Edge> training_edges;
  std::vector<Edge> test_set;
  std::vector<Edge> zero_test_set;
  std::uint64_t seed = 0;
  /// Fewer surviving edges than test edges, so zero_test_set is smaller.
  bool zero_test_truncated = false;
};

/// t1 = first + floor(fraction·(t_end - first)). Throws when the stream is
/// empty, fraction is outside (0, 1), or no edge decays in the window.
EvaluationSplit temporal_split(const TemporalEdgeList& tel, double fraction, std::uint64_t seed);

enum class Label { Test, Zero };

struct RankedItem {
  Edge edge;
  double score = 0.0;
  Label label = Label::Zero;
};

enum class TieBreak {
  /// Equal scores ordered by (src, dst) ascending.
  Lexicographic,
  /// AP is the expectation over uniformly random order within each tie.
  Expected,
};

struct APResult {
  double ap = 0.0;
  /// Sorted by score descending, ties by (src, dst).
  std::vector<RankedItem> ranking;
  /// precision_at[k] is P(k+1).
  std::vector<double> precision_at;
  std::size_t positives = 0;
};

/// Throws when no item is labelled Test.
APResult average_precision(std::vector<RankedItem> items, TieBreak ties = TieBreak::Lexicographic);

/// Σ P(i)·I(i) / positives over the stored ranking.
double recompute_ap(const APResult& result);

using EdgeScorer = std::function<double(const Edge&)>;

/// Ranks test ∪ zero-test edges of `split` by `scorer`.
APResult rank_split(const EvaluationSplit& split, const EdgeScorer& scorer,
                    TieBreak ties = TieBreak::Lexicographic);

/// Scores the split with `spec` on the snapshot at split.t1.
APResult evaluate_split(const TemporalEdgeList& tel, const EvaluationSplit& split,
                        const ScoreSpec& spec, TieBreak ties = TieBreak::Lexicographic);

APResult evaluate(const TemporalEdgeList& tel, const ScoreSpec& spec, double fraction,
                  std::uint64_t seed, TieBreak ties = TieBreak::Lexicographic);

/// Creation counterpart of EvaluationSplit: positives appear between t1 and
/// t_end, negatives are sampled from pairs never linked in the stream.
struct CreationSplit {
  Timestamp t1 = 0;
  Timestamp t_end = 0;
  std::vector<Edge> positives;
  std::vector<Edge> negatives;
  std::uint64_t seed = 0;
};

CreationSplit creation_split(const TemporalEdgeList& tel, double fraction, std::uint64_t seed);

/// Ranks creation candidates by the raw link-prediction score at t1.
APResult evaluate_link_prediction(const TemporalEdgeList& tel, Measure measure,
                                  DegreeCombination combo, double fraction, std::uint64_t seed,
                                  TieBreak ties = TieBreak::Lexicographic);

/// Uniform random scores drawn from `seed`; AP is 0.5 in expectation.
APResult random_baseline(const EvaluationSplit& split, std::uint64_t seed);
APResult random_ranking(std::span<const Edge> positives, std::span<const Edge> negatives,
                        std::uint64_t seed);

/// Age of each edge present at t (t minus its most recent Add), in
/// (src, dst) order.
std::vector<std::pair<Edge, Timestamp>> edge_ages_at(const TemporalEdgeList& tel, Timestamp t);

struct Lifetime {
  Timestamp duration = 0;
  bool censored = false;

  friend bool operator==(const Lifetime&, const Lifetime&) = default;
};

/// One record per Add: time to the matching Delete, or to the last event
/// time (censored) when the edge is never deleted.
std::vector<Lifetime> edge_lifetimes(const TemporalEdgeList& tel);

struct SurvivalFit {
  double half_life = 0.0;
  double rate = 0.0;
  std::size_t lifetimes_used = 0;
  std::size_t censored = 0;
};

/// Censored-data MLE of an exponential lifetime law:
/// λ = uncensored / Σ durations, half-life = ln 2 / λ.
/// Needs at least two uncensored lifetimes and positive total exposure.
SurvivalFit fit_exponential_half_life(std::span<const Lifetime> lifetimes);

struct SurvivalPoint {
  Timestamp t = 0;
  double fraction_surviving = 1.0;
};

/// Kaplan–Meier estimate at each distinct uncensored duration, starting
/// with (0, 1).
std::vector<SurvivalPoint> survival_curve(std::span<const Lifetime> lifetimes);

}  // namespace linkdecay
