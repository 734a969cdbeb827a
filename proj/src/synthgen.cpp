#include "linkdecay/synthgen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <unordered_set>
#include <vector>

#include "linkdecay/error.hpp"
#include "linkdecay/format.hpp"

namespace linkdecay {

std::string_view to_string(DecayBias bias) noexcept {
  switch (bias) {
    case DecayBias::None: return "none";
    case DecayBias::LowDegree: return "low-degree";
    case DecayBias::FewCommonNeighbors: return "few-common-neighbors";
  }
  return "?";
}

std::optional<DecayBias> parse_bias(std::string_view text) {
  for (auto bias : {DecayBias::None, DecayBias::LowDegree, DecayBias::FewCommonNeighbors}) {
    if (to_string(bias) == text) return bias;
  }
  return std::nullopt;
}

void validate(const GenConfig& config) {
  if (config.n_nodes < 2) throw Error("n-nodes must be at least 2");
  if (config.n_nodes > (std::size_t{1} << 31)) throw Error("n-nodes too large");
  if (!(config.decay_half_life > 0.0)) throw Error("half-life must be positive");
  if (!(config.attach_exponent >= 0.0)) throw Error("attach-exponent must be non-negative");
  if (!(config.hazard_multiplier > 0.0)) throw Error("hazard-multiplier must be positive");
  if (!(config.deletion_share > 0.0 && config.deletion_share < 0.5)) {
    throw Error("deletion-share must lie in (0, 0.5)");
  }
  if (!(config.closure_probability >= 0.0 && config.closure_probability <= 1.0)) {
    throw Error("closure-probability must lie in [0, 1]");
  }
  const auto capacity = config.n_nodes * (config.n_nodes - 1);
  if (config.n_add_events > capacity) {
    throw Error("infeasible config: " + std::to_string(config.n_add_events) +
                " adds exceed the simple-graph capacity " + std::to_string(capacity));
  }
}

double observation_horizon(const GenConfig& config) {
  // Fraction of adds deleted inside [0, T) when add times are uniform:
  // q(x) = 1 - (1 - e^-x) / x with x = λT, increasing in x.
  const double target = config.deletion_share / (1.0 - config.deletion_share);
  auto deleted_fraction = [](double x) { return 1.0 - (-std::expm1(-x)) / x; };
  double lo = 1e-9;
  double hi = 1.0;
  while (deleted_fraction(hi) < target) hi *= 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (deleted_fraction(mid) < target ? lo : hi) = mid;
  }
  const double rate = std::numbers::ln2 / config.decay_half_life;
  return 0.5 * (lo + hi) / rate;
}

namespace {

// Fenwick tree over non-negative weights with weighted sampling.
class WeightedSampler {
 public:
  explicit WeightedSampler(std::size_t n) : tree_(n + 1, 0.0), weights_(n, 0.0) {
    for (std::size_t bit = 1; bit <= n; bit <<= 1) top_ = bit;
  }

  void set(std::size_t index, double weight) {
    const double delta = weight - weights_[index];
    weights_[index] = weight;
    for (std::size_t k = index + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
  }

  double total() const {
    double sum = 0.0;
    for (std::size_t k = weights_.size(); k > 0; k -= k & (~k + 1)) sum += tree_[k];
    return sum;
  }

  template <class Rng>
  std::size_t sample(Rng& rng) const {
    std::uniform_real_distribution<double> uniform(0.0, total());
    double target = uniform(rng);
    std::size_t pos = 0;
    for (std::size_t step = top_; step > 0; step >>= 1) {
      const auto next = pos + step;
      if (next < tree_.size() && tree_[next] <= target) {
        pos = next;
        target -= tree_[next];
      }
    }
    // Guard against rounding placing us past the last positive weight.
    while (pos < weights_.size() && weights_[pos] == 0.0) ++pos;
    return std::min(pos, weights_.size() - 1);
  }

 private:
  std::vector<double> tree_;
  std::vector<double> weights_;
  std::size_t top_ = 1;
};

struct PendingDelete {
  double time;
  std::uint64_t seq;
  NodeId src;
  NodeId dst;

  bool operator>(const PendingDelete& other) const {
    return time != other.time ? time > other.time : seq > other.seq;
  }
};

class ChurnProcess {
 public:
  explicit ChurnProcess(const GenConfig& config)
      : config_(config),
        n_(config.n_nodes),
        rng_(config.seed),
        sampler_(n_),
        degree_(n_, 0),
        degree_histogram_(1, n_),
        neighbors_(n_) {
    for (std::size_t v = 0; v < n_; ++v) sampler_.set(v, attach_weight(0));
  }

  TemporalEdgeList run() {
    horizon_ = observation_horizon(config_);
    const double base_rate = std::numbers::ln2 / config_.decay_half_life;
    // Biased edges switch class as degrees change, so deletions are drawn by
    // thinning: candidate clocks tick at the peak rate and a candidate is
    // accepted with probability current_rate / peak_rate.
    peak_factor_ =
        config_.decay_bias == DecayBias::None ? 1.0 : std::max(1.0, config_.hazard_multiplier);
    peak_rate_ = base_rate * peak_factor_;

    std::uniform_real_distribution<double> when(0.0, horizon_);
    std::vector<double> add_times(config_.n_add_events);
    for (auto& t : add_times) t = when(rng_);
    std::sort(add_times.begin(), add_times.end());

    for (double now : add_times) {
      drain_deletes(now);
      const auto [src, dst] = pick_pair();
      add_edge(src, dst, now);
      schedule_candidate(src, dst, now);
    }
    drain_deletes(horizon_);

    std::vector<std::string> labels;
    labels.reserve(n_);
    for (std::size_t v = 0; v < n_; ++v) labels.push_back(std::to_string(v));
    return TemporalEdgeList(std::move(labels), std::move(events_));
  }

 private:
  void schedule_candidate(NodeId src, NodeId dst, double now) {
    std::exponential_distribution<double> clock(peak_rate_);
    const double t = now + clock(rng_);
    if (t < horizon_) pending_.push({t, seq_++, src, dst});
  }

  bool accept_candidate(NodeId src, NodeId dst) {
    if (peak_factor_ == 1.0) return true;
    const double factor = in_biased_class(src, dst) ? config_.hazard_multiplier : 1.0;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    return uniform(rng_) < factor / peak_factor_;
  }

  double attach_weight(std::size_t degree) const {
    return std::pow(static_cast<double>(degree) + 1.0, config_.attach_exponent);
  }

  static Timestamp tick(double t) { return static_cast<Timestamp>(std::floor(t)); }

  bool live(NodeId src, NodeId dst) const { return live_.contains(pair_key(src, dst)); }

  std::pair<NodeId, NodeId> pick_pair() {
    const auto src = static_cast<NodeId>(sampler_.sample(rng_));
    std::bernoulli_distribution close(config_.closure_probability);
    if (config_.closure_probability > 0.0 && close(rng_)) {
      if (auto dst = closing_target(src)) return {src, *dst};
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
      const auto dst = static_cast<NodeId>(sampler_.sample(rng_));
      if (dst != src && !live(src, dst)) return {src, dst};
    }
    // Saturated neighborhood of a hub: fall back to a uniform free target.
    std::uniform_int_distribution<NodeId> uniform(0, static_cast<NodeId>(n_ - 1));
    for (std::size_t attempt = 0; attempt < 64 * n_; ++attempt) {
      const auto dst = uniform(rng_);
      if (dst != src && !live(src, dst)) return {src, dst};
    }
    throw Error("generator could not find a free target for node " + std::to_string(src));
  }

  std::optional<NodeId> closing_target(NodeId src) {
    const auto& first = neighbors_[src];
    if (first.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick_mid(0, first.size() - 1);
    const NodeId mid = first[pick_mid(rng_)];
    const auto& second = neighbors_[mid];
    std::uniform_int_distribution<std::size_t> pick_end(0, second.size() - 1);
    const NodeId dst = second[pick_end(rng_)];
    if (dst == src || live(src, dst)) return std::nullopt;
    return dst;
  }

  std::size_t median_degree() const {
    const std::size_t half = (n_ + 1) / 2;
    std::size_t seen = 0;
    for (std::size_t d = 0; d < degree_histogram_.size(); ++d) {
      seen += degree_histogram_[d];
      if (seen >= half) return d;
    }
    return degree_histogram_.size() - 1;
  }

  std::size_t undirected_common(NodeId a, NodeId b) const {
    std::unordered_set<NodeId> side(neighbors_[a].begin(), neighbors_[a].end());
    std::unordered_set<NodeId> counted;
    for (NodeId k : neighbors_[b]) {
      if (side.contains(k)) counted.insert(k);
    }
    return counted.size();
  }

  bool in_biased_class(NodeId src, NodeId dst) const {
    switch (config_.decay_bias) {
      case DecayBias::None: return false;
      case DecayBias::LowDegree: {
        const auto median = median_degree();
        return degree_[src] < median || degree_[dst] < median;
      }
      case DecayBias::FewCommonNeighbors: return undirected_common(src, dst) == 0;
    }
    return false;
  }

  void set_degree(NodeId v, std::size_t degree) {
    --degree_histogram_[degree_[v]];
    if (degree >= degree_histogram_.size()) degree_histogram_.resize(degree + 1, 0);
    ++degree_histogram_[degree];
    degree_[v] = degree;
    sampler_.set(v, attach_weight(degree));
  }

  static void erase_one(std::vector<NodeId>& list, NodeId value) {
    auto it = std::find(list.begin(), list.end(), value);
    *it = list.back();
    list.pop_back();
  }

  void add_edge(NodeId src, NodeId dst, double now) {
    live_.insert(pair_key(src, dst));
    neighbors_[src].push_back(dst);
    neighbors_[dst].push_back(src);
    set_degree(src, degree_[src] + 1);
    set_degree(dst, degree_[dst] + 1);
    events_.push_back({src, dst, EdgeOp::Add, tick(now)});
  }

  void drain_deletes(double now) {
    while (!pending_.empty() && pending_.top().time <= now) {
      const auto d = pending_.top();
      pending_.pop();
      if (!accept_candidate(d.src, d.dst)) {
        schedule_candidate(d.src, d.dst, d.time);
        continue;
      }
      live_.erase(pair_key(d.src, d.dst));
      erase_one(neighbors_[d.src], d.dst);
      erase_one(neighbors_[d.dst], d.src);
      set_degree(d.src, degree_[d.src] - 1);
      set_degree(d.dst, degree_[d.dst] - 1);
      events_.push_back({d.src, d.dst, EdgeOp::Delete, tick(d.time)});
    }
  }

  const GenConfig& config_;
  std::size_t n_;
  std::mt19937_64 rng_;
  WeightedSampler sampler_;
  std::vector<std::size_t> degree_;
  std::vector<std::size_t> degree_histogram_;
  // Undirected adjacency with multiplicity (a reciprocated pair appears twice).
  std::vector<std::vector<NodeId>> neighbors_;
  std::unordered_set<std::uint64_t> live_;
  std::priority_queue<PendingDelete, std::vector<PendingDelete>, std::greater<>> pending_;
  std::uint64_t seq_ = 0;
  double horizon_ = 0.0;
  double peak_rate_ = 0.0;
  double peak_factor_ = 1.0;
  std::vector<EdgeEvent> events_;
};

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error("invalid value for " + key + ": '" + text + "'");
  }
  return value;
}

}  // namespace

TemporalEdgeList generate(const GenConfig& config) {
  validate(config);
  return ChurnProcess(config).run();
}

Graph random_digraph(std::size_t n, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) throw Error("density must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i != j && coin(rng)) edges.push_back({i, j});
    }
  }
  return Graph(n, std::move(edges));
}

void apply_settings(GenConfig& config, const std::map<std::string, std::string>& settings) {
  for (const auto& [key, value] : settings) {
    if (key == "n-nodes") {
      config.n_nodes = parse_number<std::size_t>(key, value);
    } else if (key == "add-events") {
      config.n_add_events = parse_number<std::size_t>(key, value);
    } else if (key == "attach-exponent") {
      config.attach_exponent = parse_number<double>(key, value);
    } else if (key == "half-life") {
      config.decay_half_life = parse_number<double>(key, value);
    } else if (key == "bias") {
      auto bias = parse_bias(value);
      if (!bias) throw Error("invalid value for bias: '" + value + "'");
      config.decay_bias = *bias;
    } else if (key == "hazard-multiplier") {
      config.hazard_multiplier = parse_number<double>(key, value);
    } else if (key == "deletion-share") {
      config.deletion_share = parse_number<double>(key, value);
    } else if (key == "closure-probability") {
      config.closure_probability = parse_number<double>(key, value);
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(key, value);
    } else {
      throw Error("unknown generator setting '" + key + "'");
    }
  }
}

std::map<std::string, std::string> to_settings(const GenConfig& config) {
  return {
      {"n-nodes", std::to_string(config.n_nodes)},
      {"add-events", std::to_string(config.n_add_events)},
      {"attach-exponent", format_real(config.attach_exponent)},
      {"half-life", format_real(config.decay_half_life)},
      {"bias", std::string(to_string(config.decay_bias))},
      {"hazard-multiplier", format_real(config.hazard_multiplier)},
      {"deletion-share", format_real(config.deletion_share)},
      {"closure-probability", format_real(config.closure_probability)},
      {"seed", std::to_string(config.seed)},
  };
}

}  // namespace linkdecay
