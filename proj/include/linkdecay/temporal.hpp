#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "linkdecay/graph.hpp"

namespace linkdecay {

enum class EdgeOp { Add, Delete };

struct EdgeEvent {
  NodeId src = 0;
  NodeId dst = 0;
  EdgeOp op = EdgeOp::Add;
  Timestamp time = 0;

  friend bool operator==(const EdgeEvent&, const EdgeEvent&) = default;
};

enum class SelfLoopPolicy { Skip, Fail };

struct IngestOptions {
  SelfLoopPolicy self_loops = SelfLoopPolicy::Skip;
  /// Fail on a Delete of an absent edge or an Add of a present one instead
  /// of dropping the event.
  bool strict = false;
};

struct IngestReport {
  std::size_t records = 0;
  std::size_t skipped_self_loops = 0;
  std::size_t ignored_deletes = 0;
  std::size_t ignored_duplicate_adds = 0;
  std::vector<std::string> diagnostics;
};

/// Time-ordered stream of edge additions and deletions over a fixed node set.
///
/// Construction sorts events stably by time and replays them, dropping the
/// ones that would not change the edge set. The stored stream therefore
/// alternates Add/Delete per pair, and an edge is present at t exactly when
/// its last event at or before t is an Add.
class TemporalEdgeList {
 public:
  TemporalEdgeList() = default;

  /// `labels[v]` is the external token of node v; `labels.size()` is n.
  /// Throws on self-loops, out-of-range ids, negative times, and (in strict
  /// mode) on state-neutral events.
  TemporalEdgeList(std::vector<std::string> labels, std::vector<EdgeEvent> events,
                   const IngestOptions& options = {}, IngestReport* report = nullptr);

  std::span<const EdgeEvent> events() const noexcept { return events_; }
  std::size_t node_count() const noexcept { return labels_.size(); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  const std::string& label(NodeId v) const { return labels_.at(v); }
  bool empty() const noexcept { return events_.empty(); }

  /// Throws when empty.
  Timestamp first_time() const;
  Timestamp last_time() const;

  /// Edges present at time t, in (src, dst) order.
  std::vector<Edge> edges_at(Timestamp t) const;
  Graph snapshot_at(Timestamp t) const;

 private:
  std::vector<std::string> labels_;
  std::vector<EdgeEvent> events_;
};

/// Reads the tab/space separated `src dst sign time` event format. Lines
/// starting with `#` or `%` and blank lines are ignored. Node tokens are
/// compacted to 0..n-1 in order of first appearance.
TemporalEdgeList ingest_events(std::istream& in, const IngestOptions& options = {},
                               IngestReport* report = nullptr);

void write_events(std::ostream& out, const TemporalEdgeList& tel);
/// `token<TAB>index` per node.
void write_id_map(std::ostream& out, const TemporalEdgeList& tel);

/// Packs an ordered pair into one key for hashing.
constexpr std::uint64_t pair_key(NodeId src, NodeId dst) noexcept {
  return (std::uint64_t{src} << 32) | dst;
}
constexpr Edge key_pair(std::uint64_t key) noexcept {
  return {static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffu)};
}

}  // namespace linkdecay
