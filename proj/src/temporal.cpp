#include "linkdecay/temporal.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "linkdecay/error.hpp"

namespace linkdecay {

TemporalEdgeList::TemporalEdgeList(std::vector<std::string> labels, std::vector<EdgeEvent> events,
                                   const IngestOptions& options, IngestReport* report)
    : labels_(std::move(labels)) {
  const auto n = labels_.size();
  for (const auto& e : events) {
    if (e.src >= n || e.dst >= n) throw Error("event endpoint outside node range");
    if (e.src == e.dst) throw Error("self-loop event at node " + labels_[e.src]);
    if (e.time < 0) throw Error("negative event time " + std::to_string(e.time));
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const EdgeEvent& a, const EdgeEvent& b) { return a.time < b.time; });

  std::unordered_set<std::uint64_t> live;
  events_.reserve(events.size());
  for (const auto& e : events) {
    const auto key = pair_key(e.src, e.dst);
    const bool present = live.contains(key);
    if (e.op == EdgeOp::Add && present) {
      if (options.strict) {
        throw Error("add of present edge (" + labels_[e.src] + "," + labels_[e.dst] + ") at " +
                    std::to_string(e.time));
      }
      if (report) ++report->ignored_duplicate_adds;
      continue;
    }
    if (e.op == EdgeOp::Delete && !present) {
      if (options.strict) {
        throw Error("delete of absent edge (" + labels_[e.src] + "," + labels_[e.dst] + ") at " +
                    std::to_string(e.time));
      }
      if (report) ++report->ignored_deletes;
      continue;
    }
    if (e.op == EdgeOp::Add) {
      live.insert(key);
    } else {
      live.erase(key);
    }
    events_.push_back(e);
  }
}

Timestamp TemporalEdgeList::first_time() const {
  if (events_.empty()) throw Error("temporal edge list is empty");
  return events_.front().time;
}

Timestamp TemporalEdgeList::last_time() const {
  if (events_.empty()) throw Error("temporal edge list is empty");
  return events_.back().time;
}

std::vector<Edge> TemporalEdgeList::edges_at(Timestamp t) const {
  std::unordered_set<std::uint64_t> live;
  for (const auto& e : events_) {
    if (e.time > t) break;
    if (e.op == EdgeOp::Add) {
      live.insert(pair_key(e.src, e.dst));
    } else {
      live.erase(pair_key(e.src, e.dst));
    }
  }
  std::vector<Edge> edges;
  edges.reserve(live.size());
  for (auto key : live) edges.push_back(key_pair(key));
  std::sort(edges.begin(), edges.end());
  return edges;
}

Graph TemporalEdgeList::snapshot_at(Timestamp t) const {
  return Graph(node_count(), edges_at(t));
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    auto end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

}  // namespace

TemporalEdgeList ingest_events(std::istream& in, const IngestOptions& options,
                               IngestReport* report) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> index;
  std::vector<EdgeEvent> events;

  auto intern = [&](std::string_view token) {
    auto [it, inserted] = index.try_emplace(std::string(token), static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    auto fields = split_fields(view);
    if (fields.empty() || fields[0].front() == '#' || fields[0].front() == '%') continue;
    if (fields.size() != 4) {
      throw ParseError(line_no, "expected 4 fields (src dst sign time), got " +
                                    std::to_string(fields.size()));
    }
    EdgeOp op;
    if (fields[2] == "+1" || fields[2] == "1") {
      op = EdgeOp::Add;
    } else if (fields[2] == "-1") {
      op = EdgeOp::Delete;
    } else {
      throw ParseError(line_no, "sign must be +1 or -1, got '" + std::string(fields[2]) + "'");
    }
    Timestamp time = 0;
    auto [ptr, ec] = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), time);
    if (ec != std::errc{} || ptr != fields[3].data() + fields[3].size()) {
      throw ParseError(line_no, "time must be an integer, got '" + std::string(fields[3]) + "'");
    }
    if (time < 0) throw ParseError(line_no, "time must be non-negative");
    if (report) ++report->records;

    if (fields[0] == fields[1]) {
      if (options.self_loops == SelfLoopPolicy::Fail) {
        throw ParseError(line_no, "self-loop on '" + std::string(fields[0]) + "'");
      }
      if (report) {
        ++report->skipped_self_loops;
        report->diagnostics.push_back("line " + std::to_string(line_no) +
                                      ": skipped self-loop on '" + std::string(fields[0]) + "'");
      }
      continue;
    }
    const NodeId src = intern(fields[0]);
    const NodeId dst = intern(fields[1]);
    events.push_back({src, dst, op, time});
  }
  return TemporalEdgeList(std::move(labels), std::move(events), options, report);
}

void write_events(std::ostream& out, const TemporalEdgeList& tel) {
  for (const auto& e : tel.events()) {
    out << tel.label(e.src) << '\t' << tel.label(e.dst) << '\t'
        << (e.op == EdgeOp::Add ? "+1" : "-1") << '\t' << e.time << '\n';
  }
}

void write_id_map(std::ostream& out, const TemporalEdgeList& tel) {
  for (NodeId v = 0; v < tel.node_count(); ++v) out << tel.label(v) << '\t' << v << '\n';
}

}  // namespace linkdecay
