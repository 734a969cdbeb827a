#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include "linkdecay/temporal.hpp"

#ifndef LINKDECAY_FIXTURE_DIR
#error "LINKDECAY_FIXTURE_DIR must be defined"
#endif

inline std::string fixture_path(const std::string& name) {
  return std::string(LINKDECAY_FIXTURE_DIR) + "/" + name;
}

inline linkdecay::TemporalEdgeList load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  return linkdecay::ingest_events(in);
}

/// Node id of `token` in `tel`.
inline linkdecay::NodeId node(const linkdecay::TemporalEdgeList& tel, const std::string& token) {
  for (linkdecay::NodeId v = 0; v < tel.node_count(); ++v)
    if (tel.label(v) == token) return v;
  throw std::runtime_error("no node " + token);
}
