#include "linkdecay/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "linkdecay/error.hpp"

namespace linkdecay {

namespace {

void require_fraction(double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error("training fraction must lie in (0, 1), got " + std::to_string(fraction));
  }
}

Timestamp split_time(const TemporalEdgeList& tel, double fraction) {
  require_fraction(fraction);
  if (tel.empty()) throw Error("cannot split an empty temporal edge list");
  const auto first = tel.first_time();
  const auto span = static_cast<double>(tel.last_time() - first);
  return first + static_cast<Timestamp>(std::floor(fraction * span));
}

std::vector<Edge> difference(const std::vector<Edge>& a, const std::vector<Edge>& b) {
  std::vector<Edge> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

EvaluationSplit temporal_split(const TemporalEdgeList& tel, double fraction, std::uint64_t seed) {
  EvaluationSplit split;
  split.t1 = split_time(tel, fraction);
  split.t_end = tel.last_time();
  split.seed = seed;
  split.training_edges = tel.edges_at(split.t1);
  const auto final_edges = tel.edges_at(split.t_end);

  split.test_set = difference(split.training_edges, final_edges);
  if (split.test_set.empty()) throw Error("no decayed edges in window");

  std::vector<Edge> survivors;
  std::set_intersection(split.training_edges.begin(), split.training_edges.end(),
                        final_edges.begin(), final_edges.end(), std::back_inserter(survivors));
  split.zero_test_truncated = survivors.size() < split.test_set.size();
  std::mt19937_64 rng(seed);
  std::sample(survivors.begin(), survivors.end(), std::back_inserter(split.zero_test_set),
              split.test_set.size(), rng);
  return split;
}

namespace {

bool ranks_before(const RankedItem& a, const RankedItem& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.edge < b.edge;
}

// Expected contribution Σ E[P(rank)] of the `group_positives` positives in a
// tie group occupying ranks offset+1 .. offset+size, with `earlier`
// positives ranked above the group. Within the group every order is equally
// likely, so a positive at slot s sees (s-1)(p-1)/(g-1) other positives
// before it on average.
double expected_group_precision(std::size_t offset, std::size_t size, std::size_t group_positives,
                                std::size_t earlier) {
  if (group_positives == 0) return 0.0;
  const double g = static_cast<double>(size);
  const double p = static_cast<double>(group_positives);
  if (size == 1) return (static_cast<double>(earlier) + 1.0) / (static_cast<double>(offset) + 1.0);
  double sum = 0.0;
  for (std::size_t s = 1; s <= size; ++s) {
    const double others = static_cast<double>(s - 1) * (p - 1.0) / (g - 1.0);
    sum += (static_cast<double>(earlier) + 1.0 + others) / static_cast<double>(offset + s);
  }
  return p * sum / g;
}

}  // namespace

APResult average_precision(std::vector<RankedItem> items, TieBreak ties) {
  APResult result;
  for (const auto& item : items) {
    if (!std::isfinite(item.score)) throw Error("ranking contains a non-finite score");
    if (item.label == Label::Test) ++result.positives;
  }
  if (result.positives == 0) throw Error("average precision needs at least one test item");

  std::sort(items.begin(), items.end(), ranks_before);
  result.ranking = std::move(items);
  result.precision_at.reserve(result.ranking.size());

  std::size_t hits = 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < result.ranking.size(); ++k) {
    const bool positive = result.ranking[k].label == Label::Test;
    if (positive) ++hits;
    const double precision = static_cast<double>(hits) / static_cast<double>(k + 1);
    result.precision_at.push_back(precision);
    if (positive) sum += precision;
  }

  if (ties == TieBreak::Lexicographic) {
    result.ap = sum / static_cast<double>(result.positives);
    return result;
  }

  double expected = 0.0;
  std::size_t earlier = 0;
  const auto& ranking = result.ranking;
  for (std::size_t start = 0; start < ranking.size();) {
    std::size_t end = start;
    std::size_t group_positives = 0;
    while (end < ranking.size() && ranking[end].score == ranking[start].score) {
      if (ranking[end].label == Label::Test) ++group_positives;
      ++end;
    }
    expected += expected_group_precision(start, end - start, group_positives, earlier);
    earlier += group_positives;
    start = end;
  }
  result.ap = expected / static_cast<double>(result.positives);
  return result;
}

double recompute_ap(const APResult& result) {
  std::size_t hits = 0;
  std::size_t positives = 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < result.ranking.size(); ++k) {
    if (result.ranking[k].label != Label::Test) continue;
    ++hits;
    ++positives;
    sum += static_cast<double>(hits) / static_cast<double>(k + 1);
  }
  return positives == 0 ? 0.0 : sum / static_cast<double>(positives);
}

APResult rank_split(const EvaluationSplit& split, const EdgeScorer& scorer, TieBreak ties) {
  std::vector<RankedItem> items;
  items.reserve(split.test_set.size() + split.zero_test_set.size());
  for (const auto& e : split.test_set) items.push_back({e, scorer(e), Label::Test});
  for (const auto& e : split.zero_test_set) items.push_back({e, scorer(e), Label::Zero});
  return average_precision(std::move(items), ties);
}

APResult evaluate_split(const TemporalEdgeList& tel, const EvaluationSplit& split,
                        const ScoreSpec& spec, TieBreak ties) {
  const Graph training(tel.node_count(), split.training_edges);
  const DecayScorer scorer(training, spec);
  return rank_split(split, [&](const Edge& e) { return scorer(e.src, e.dst); }, ties);
}

APResult evaluate(const TemporalEdgeList& tel, const ScoreSpec& spec, double fraction,
                  std::uint64_t seed, TieBreak ties) {
  return evaluate_split(tel, temporal_split(tel, fraction, seed), spec, ties);
}

CreationSplit creation_split(const TemporalEdgeList& tel, double fraction, std::uint64_t seed) {
  CreationSplit split;
  split.t1 = split_time(tel, fraction);
  split.t_end = tel.last_time();
  split.seed = seed;
  const auto initial = tel.edges_at(split.t1);
  split.positives = difference(tel.edges_at(split.t_end), initial);
  if (split.positives.empty()) throw Error("no new edges in window");

  std::unordered_set<std::uint64_t> ever;
  for (const auto& e : tel.events()) {
    if (e.op == EdgeOp::Add) ever.insert(pair_key(e.src, e.dst));
  }
  const auto n = tel.node_count();
  const std::size_t capacity = n * (n - 1);
  const std::size_t available = capacity - ever.size();
  const std::size_t wanted = std::min(split.positives.size(), available);

  std::set<Edge> chosen;
  if (available <= 2 * wanted) {
    std::vector<Edge> pool;
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (i != j && !ever.contains(pair_key(i, j))) pool.push_back({i, j});
      }
    }
    std::mt19937_64 rng(seed);
    std::sample(pool.begin(), pool.end(), std::inserter(chosen, chosen.end()), wanted, rng);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    while (chosen.size() < wanted) {
      const NodeId i = pick(rng);
      const NodeId j = pick(rng);
      if (i != j && !ever.contains(pair_key(i, j))) chosen.insert({i, j});
    }
  }
  split.negatives.assign(chosen.begin(), chosen.end());
  return split;
}

APResult evaluate_link_prediction(const TemporalEdgeList& tel, Measure measure,
                                  DegreeCombination combo, double fraction, std::uint64_t seed,
                                  TieBreak ties) {
  const auto split = creation_split(tel, fraction, seed);
  const Graph g = tel.snapshot_at(split.t1);
  std::vector<RankedItem> items;
  items.reserve(split.positives.size() + split.negatives.size());
  for (const auto& e : split.positives) {
    items.push_back({e, link_prediction_score(g, e.src, e.dst, measure, combo), Label::Test});
  }
  for (const auto& e : split.negatives) {
    items.push_back({e, link_prediction_score(g, e.src, e.dst, measure, combo), Label::Zero});
  }
  return average_precision(std::move(items), ties);
}

APResult random_ranking(std::span<const Edge> positives, std::span<const Edge> negatives,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<RankedItem> items;
  items.reserve(positives.size() + negatives.size());
  for (const auto& e : positives) items.push_back({e, uniform(rng), Label::Test});
  for (const auto& e : negatives) items.push_back({e, uniform(rng), Label::Zero});
  return average_precision(std::move(items));
}

APResult random_baseline(const EvaluationSplit& split, std::uint64_t seed) {
  return random_ranking(split.test_set, split.zero_test_set, seed);
}

std::vector<std::pair<Edge, Timestamp>> edge_ages_at(const TemporalEdgeList& tel, Timestamp t) {
  std::unordered_map<std::uint64_t, Timestamp> added;
  for (const auto& e : tel.events()) {
    if (e.time > t) break;
    if (e.op == EdgeOp::Add) {
      added[pair_key(e.src, e.dst)] = e.time;
    } else {
      added.erase(pair_key(e.src, e.dst));
    }
  }
  std::vector<std::pair<Edge, Timestamp>> ages;
  ages.reserve(added.size());
  for (const auto& [key, time] : added) ages.emplace_back(key_pair(key), t - time);
  std::sort(ages.begin(), ages.end());
  return ages;
}

std::vector<Lifetime> edge_lifetimes(const TemporalEdgeList& tel) {
  std::vector<Lifetime> records;
  if (tel.empty()) return records;
  // Open edge -> (record index, add time).
  std::unordered_map<std::uint64_t, std::pair<std::size_t, Timestamp>> open;
  for (const auto& e : tel.events()) {
    const auto key = pair_key(e.src, e.dst);
    if (e.op == EdgeOp::Add) {
      open[key] = {records.size(), e.time};
      records.push_back({});
    } else {
      auto it = open.find(key);
      if (it == open.end()) continue;
      records[it->second.first] = {e.time - it->second.second, false};
      open.erase(it);
    }
  }
  const auto end = tel.last_time();
  for (const auto& [key, slot] : open) records[slot.first] = {end - slot.second, true};
  return records;
}

SurvivalFit fit_exponential_half_life(std::span<const Lifetime> lifetimes) {
  SurvivalFit fit;
  double exposure = 0.0;
  std::size_t events = 0;
  for (const auto& l : lifetimes) {
    if (l.duration < 0) throw Error("negative lifetime");
    exposure += static_cast<double>(l.duration);
    if (l.censored) {
      ++fit.censored;
    } else {
      ++events;
    }
  }
  if (events < 2) {
    throw Error("half-life fit needs at least 2 uncensored lifetimes, got " +
                std::to_string(events));
  }
  if (exposure <= 0.0) throw Error("half-life fit needs positive total exposure time");
  fit.lifetimes_used = lifetimes.size();
  fit.rate = static_cast<double>(events) / exposure;
  fit.half_life = std::numbers::ln2 / fit.rate;
  return fit;
}

std::vector<SurvivalPoint> survival_curve(std::span<const Lifetime> lifetimes) {
  // duration -> (deaths, censored)
  std::map<Timestamp, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& l : lifetimes) {
    auto& slot = counts[l.duration];
    (l.censored ? slot.second : slot.first) += 1;
  }
  std::vector<SurvivalPoint> curve{{0, 1.0}};
  double surviving = 1.0;
  std::size_t at_risk = lifetimes.size();
  for (const auto& [t, c] : counts) {
    if (c.first > 0 && at_risk > 0) {
      surviving *= 1.0 - static_cast<double>(c.first) / static_cast<double>(at_risk);
      if (t == 0) {
        curve.front().fraction_surviving = surviving;
      } else {
        curve.push_back({t, surviving});
      }
    }
    at_risk -= c.first + c.second;
  }
  return curve;
}

}  // namespace linkdecay
