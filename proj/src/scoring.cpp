#include "linkdecay/scoring.hpp"

#include <cmath>

#include "linkdecay/error.hpp"

namespace linkdecay {

std::string_view to_string(Measure measure) noexcept {
  switch (measure) {
    case Measure::PA: return "pa";
    case Measure::CN: return "cn";
    case Measure::Cos: return "cos";
    case Measure::Jacc: return "jacc";
    case Measure::Adad: return "adad";
  }
  return "?";
}

std::string_view to_string(Model model) noexcept {
  switch (model) {
    case Model::ComplementScore: return "score";
    case Model::ComplementNetwork: return "network";
  }
  return "?";
}

std::optional<Measure> parse_measure(std::string_view text) {
  for (auto m : kAllMeasures) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

std::optional<Model> parse_model(std::string_view text) {
  for (auto m : kAllModels) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

std::vector<ScoreSpec> all_score_specs() {
  std::vector<ScoreSpec> specs;
  for (auto model : kAllModels) {
    for (auto measure : kAllMeasures) {
      for (auto combo : kAllCombinations) specs.push_back({model, measure, combo, false});
    }
  }
  return specs;
}

std::string describe(const ScoreSpec& spec) {
  std::string out = "model=";
  out += to_string(spec.model);
  out += " measure=";
  out += to_string(spec.measure);
  out += " combo=";
  out += to_string(spec.combo);
  out += " adad-complement-weights=";
  out += spec.adad_complement_weights ? "true" : "false";
  return out;
}

std::size_t adad_weight_degree(const Graph& g, NodeId k, DegreeCombination combo) {
  switch (combo) {
    case DegreeCombination::Out: return g.degree(k, DegreeMode::Out);
    case DegreeCombination::In: return g.degree(k, DegreeMode::In);
    case DegreeCombination::Sym:
    case DegreeCombination::Asym: return g.undirected_neighbors(k).size();
  }
  return 0;
}

double adad_weight(std::size_t degree) noexcept {
  if (degree <= 1) return 0.0;
  return 1.0 / std::log(static_cast<double>(degree));
}

namespace {

void require_distinct(NodeId i, NodeId j) {
  if (i == j) {
    throw Error("cannot score a self-pair (" + std::to_string(i) + "," + std::to_string(i) + ")");
  }
}

// Folds -0.0 into +0.0 so output never prints a signed zero.
double finite_score(double value) noexcept { return value + 0.0; }

double ratio_or_zero(double numerator, double denominator) noexcept {
  return denominator == 0.0 ? 0.0 : numerator / denominator;
}

}  // namespace

double link_prediction_score(const Graph& g, NodeId i, NodeId j, Measure measure,
                             DegreeCombination combo) {
  require_distinct(i, j);
  const auto sets = select_neighbors(g, i, j, combo);
  const double d1 = static_cast<double>(sets.first.size());
  const double d2 = static_cast<double>(sets.second.size());

  switch (measure) {
    case Measure::PA: return d1 * d2;
    case Measure::CN: return static_cast<double>(intersection_size(sets.first, sets.second));
    case Measure::Cos: {
      const double cn = static_cast<double>(intersection_size(sets.first, sets.second));
      return ratio_or_zero(cn, std::sqrt(d1) * std::sqrt(d2));
    }
    case Measure::Jacc: {
      const auto cn = intersection_size(sets.first, sets.second);
      const auto uni = sets.first.size() + sets.second.size() - cn;
      return ratio_or_zero(static_cast<double>(cn), static_cast<double>(uni));
    }
    case Measure::Adad: {
      double sum = 0.0;
      auto a = sets.first.begin();
      auto b = sets.second.begin();
      while (a != sets.first.end() && b != sets.second.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          sum += adad_weight(adad_weight_degree(g, *a, combo));
          ++a;
          ++b;
        }
      }
      return sum;
    }
  }
  return 0.0;
}

double complement_score(const Graph& g, NodeId i, NodeId j, Measure measure,
                        DegreeCombination combo) {
  return finite_score(-link_prediction_score(g, i, j, measure, combo));
}

double complement_network_score(const Graph& g, NodeId i, NodeId j, Measure measure,
                                DegreeCombination combo, bool adad_complement_weights) {
  return DecayScorer(g, {Model::ComplementNetwork, measure, combo, adad_complement_weights})(i, j);
}

DecayScorer::DecayScorer(const Graph& g, const ScoreSpec& spec) : graph_(&g), spec_(spec) {
  if (spec_.model != Model::ComplementNetwork || spec_.measure != Measure::Adad) return;
  const auto n = g.node_count();
  weights_.resize(n);
  for (NodeId k = 0; k < n; ++k) {
    auto degree = adad_weight_degree(g, k, spec_.combo);
    if (spec_.adad_complement_weights) degree = n - 1 - degree;
    weights_[k] = adad_weight(degree);
    total_weight_ += weights_[k];
  }
}

double DecayScorer::adad_sum(std::span<const NodeId> nodes) const {
  double sum = 0.0;
  for (NodeId k : nodes) sum += weights_[k];
  return sum;
}

double DecayScorer::adad_common_sum(std::span<const NodeId> a, std::span<const NodeId> b) const {
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      sum += weights_[*ia];
      ++ia;
      ++ib;
    }
  }
  return sum;
}

double DecayScorer::operator()(NodeId i, NodeId j) const {
  const Graph& g = *graph_;
  if (spec_.model == Model::ComplementScore) {
    return complement_score(g, i, j, spec_.measure, spec_.combo);
  }

  require_distinct(i, j);
  const auto sets = select_neighbors(g, i, j, spec_.combo);
  const double n = static_cast<double>(g.node_count());
  const double d1 = static_cast<double>(sets.first.size());
  const double d2 = static_cast<double>(sets.second.size());
  const auto cn_count = intersection_size(sets.first, sets.second);
  const double cn = static_cast<double>(cn_count);
  // n - δ1 - δ2 + cn, shared by CN, Cos and Jacc.
  const double complement_cn = n - d1 - d2 + cn;

  switch (spec_.measure) {
    case Measure::PA: return finite_score((n - 1 - d1) * (n - 1 - d2));
    case Measure::CN: return finite_score(complement_cn);
    case Measure::Cos:
      return finite_score(
          ratio_or_zero(complement_cn, std::sqrt(n - 1 - d1) * std::sqrt(n - 1 - d2)));
    case Measure::Jacc: {
      // Denominator is the union in the original graph.
      const auto uni = sets.first.size() + sets.second.size() - cn_count;
      return finite_score(ratio_or_zero(complement_cn, static_cast<double>(uni)));
    }
    case Measure::Adad:
      return finite_score(total_weight_ - adad_sum(sets.first) - adad_sum(sets.second) +
                          adad_common_sum(sets.first, sets.second));
  }
  return 0.0;
}

std::vector<ScoredEdge> score_batch(const Graph& g, std::span<const Edge> pairs,
                                    const ScoreSpec& spec) {
  std::vector<ScoredEdge> scored;
  scored.reserve(pairs.size());
  if (pairs.empty()) return scored;
  const DecayScorer scorer(g, spec);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& p = pairs[k];
    try {
      scored.push_back({p.src, p.dst, scorer(p.src, p.dst)});
    } catch (const Error& e) {
      throw Error("pair #" + std::to_string(k) + ": " + e.what());
    }
  }
  return scored;
}

}  // namespace linkdecay
