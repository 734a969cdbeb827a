#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "linkdecay/temporal.hpp"

namespace linkdecay {

enum class DecayBias { None, LowDegree, FewCommonNeighbors };

std::string_view to_string(DecayBias bias) noexcept;
std::optional<DecayBias> parse_bias(std::string_view text);

/// Parameters of the synthetic churn process. Time is in abstract ticks;
/// with the defaults one tick reads as one month.
struct GenConfig {
  std::size_t n_nodes = 5000;
  std::size_t n_add_events = 40000;
  /// Endpoint weight is (degree + 1)^attach_exponent.
  double attach_exponent = 0.8;
  double decay_half_life = 23.0;
  DecayBias decay_bias = DecayBias::None;
  /// Hazard factor applied to the biased edge class.
  double hazard_multiplier = 4.0;
  /// Target share of deletions among all operations for the unbiased
  /// process; fixes the length of the observation window.
  double deletion_share = 0.27;
  /// Probability that a new edge closes a path src - k - dst instead of
  /// picking dst by attachment.
  double closure_probability = 0.0;
  std::uint64_t seed = 0;
};

/// Throws linkdecay::Error on an invalid or infeasible configuration.
void validate(const GenConfig& config);

/// Length T of the window [0, T) over which adds are spread uniformly, such
/// that an unbiased edge is deleted before T with probability
/// share / (1 - share).
double observation_horizon(const GenConfig& config);

/// Runs the process:
///  - add times uniform on [0, T), endpoints drawn by degree-weighted
///    attachment (optionally closing a triangle);
///  - every live edge is deleted at a constant hazard ln 2 / half-life,
///    multiplied while the edge is in the biased class (LowDegree: either
///    endpoint's current degree below the median node degree;
///    FewCommonNeighbors: no common neighbor in the undirected view);
///  - deletions past T are censored.
/// Event times are floored to integer ticks. Fully determined by the seed.
TemporalEdgeList generate(const GenConfig& config);

/// Directed G(n, p): each ordered pair (i != j) is an edge independently
/// with probability `density`.
Graph random_digraph(std::size_t n, double density, std::uint64_t seed);

/// Applies `key=value` settings (n-nodes, add-events, attach-exponent,
/// half-life, bias, hazard-multiplier, deletion-share, closure-probability,
/// seed) onto `config`. Unknown keys throw.
void apply_settings(GenConfig& config, const std::map<std::string, std::string>& settings);
std::map<std::string, std::string> to_settings(const GenConfig& config);

}  // namespace linkdecay
