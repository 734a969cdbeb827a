// Python bindings for the linkdecay core. Kept thin: graphs, event streams,
// scores, the oracle check, evaluation and the generator.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "linkdecay/linkdecay.hpp"

namespace py = pybind11;
using namespace linkdecay;

namespace {

std::vector<Edge> to_edges(const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [s, d] : pairs) edges.push_back({s, d});
  return edges;
}

std::vector<std::pair<NodeId, NodeId>> to_pairs(const std::vector<Edge>& edges) {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.emplace_back(e.src, e.dst);
  return out;
}

template <class T, class Parse>
T parse_or_throw(const std::string& text, Parse parse, const char* what) {
  auto v = parse(text);
  if (!v) throw py::value_error(std::string("unknown ") + what + " '" + text + "'");
  return *v;
}

Measure measure_arg(const std::string& s) { return parse_or_throw<Measure>(s, parse_measure, "measure"); }
DegreeCombination combo_arg(const std::string& s) {
  return parse_or_throw<DegreeCombination>(s, parse_combination, "combination");
}
Model model_arg(const std::string& s) { return parse_or_throw<Model>(s, parse_model, "model"); }

TieBreak ties_arg(const std::string& s) {
  if (s == "lexicographic") return TieBreak::Lexicographic;
  if (s == "expected") return TieBreak::Expected;
  throw py::value_error("ties must be 'lexicographic' or 'expected'");
}

py::dict ap_dict(const APResult& r) {
  py::dict d;
  d["ap"] = r.ap;
  d["positives"] = r.positives;
  py::list ranking;
  for (const auto& it : r.ranking)
    ranking.append(py::make_tuple(it.edge.src, it.edge.dst, it.score, it.label == Label::Test ? "test" : "zero"));
  d["ranking"] = ranking;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Link decay prediction: complement scores, oracle checks, evaluation";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "LinkDecayError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
             return Graph(n, to_edges(edges));
           }),
           py::arg("node_count"), py::arg("edges"))
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("has_edge", &Graph::has_edge)
      .def("edges", [](const Graph& g) { return to_pairs(g.edges()); })
      .def("degree", [](const Graph& g, NodeId v, const std::string& mode) {
             if (mode == "in") return g.degree(v, DegreeMode::In);
             if (mode == "out") return g.degree(v, DegreeMode::Out);
             if (mode == "total") return g.degree(v, DegreeMode::Total);
             throw py::value_error("mode must be in, out or total");
           }, py::arg("v"), py::arg("mode") = "total")
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.node_count()) + " m=" + std::to_string(g.edge_count()) + ">";
      });

  py::class_<TemporalEdgeList>(m, "TemporalEdgeList")
      .def_static("from_text", [](const std::string& text, bool strict) {
             std::istringstream in(text);
             IngestOptions opts;
             opts.strict = strict;
             return ingest_events(in, opts);
           }, py::arg("text"), py::arg("strict") = false)
      .def("to_text", [](const TemporalEdgeList& t) {
        std::ostringstream out;
        write_events(out, t);
        return out.str();
      })
      .def_property_readonly("node_count", &TemporalEdgeList::node_count)
      .def_property_readonly("labels", [](const TemporalEdgeList& t) {
        return std::vector<std::string>(t.labels().begin(), t.labels().end());
      })
      .def_property_readonly("events", [](const TemporalEdgeList& t) {
        py::list out;
        for (const auto& e : t.events())
          out.append(py::make_tuple(e.src, e.dst, e.op == EdgeOp::Add ? 1 : -1, e.time));
        return out;
      })
      .def_property_readonly("first_time", &TemporalEdgeList::first_time)
      .def_property_readonly("last_time", &TemporalEdgeList::last_time)
      .def("snapshot_at", &TemporalEdgeList::snapshot_at)
      .def("__len__", [](const TemporalEdgeList& t) { return t.events().size(); });

  m.def("link_prediction_score",
        [](const Graph& g, NodeId i, NodeId j, const std::string& measure, const std::string& combo) {
          return link_prediction_score(g, i, j, measure_arg(measure), combo_arg(combo));
        },
        py::arg("g"), py::arg("i"), py::arg("j"), py::arg("measure"), py::arg("combo") = "sym");
  m.def("complement_score",
        [](const Graph& g, NodeId i, NodeId j, const std::string& measure, const std::string& combo) {
          return complement_score(g, i, j, measure_arg(measure), combo_arg(combo));
        },
        py::arg("g"), py::arg("i"), py::arg("j"), py::arg("measure"), py::arg("combo") = "sym");
  m.def("complement_network_score",
        [](const Graph& g, NodeId i, NodeId j, const std::string& measure, const std::string& combo,
           bool complement_weights) {
          return complement_network_score(g, i, j, measure_arg(measure), combo_arg(combo), complement_weights);
        },
        py::arg("g"), py::arg("i"), py::arg("j"), py::arg("measure"), py::arg("combo") = "sym",
        py::arg("adad_complement_weights") = false);
  m.def("brute_force_g2",
        [](const Graph& g, NodeId i, NodeId j, const std::string& measure, const std::string& combo) {
          return brute_force_g2(g, i, j, measure_arg(measure), combo_arg(combo));
        },
        py::arg("g"), py::arg("i"), py::arg("j"), py::arg("measure"), py::arg("combo") = "sym");
  m.def("materialize_complement", [](const Graph& g) { return materialize_complement(g); });

  m.def("check_closed_form",
        [](const Graph& g, const std::string& measure, const std::string& combo, bool all_pairs,
           std::uint64_t seed) {
          ScoreSpec spec{Model::ComplementNetwork, measure_arg(measure), combo_arg(combo)};
          auto r = check_closed_form(g, spec, all_pairs ? PairSelection::AllPairs : PairSelection::EdgesOnly, seed);
          py::dict d;
          d["pairs_checked"] = r.pairs_checked;
          d["max_abs_deviation"] = r.max_abs_deviation;
          d["worst_pair"] = py::make_tuple(r.worst_pair.src, r.worst_pair.dst);
          d["edge_exact"] = r.edge_exact;
          return d;
        },
        py::arg("g"), py::arg("measure"), py::arg("combo") = "sym", py::arg("all_pairs") = false,
        py::arg("seed") = 0);

  m.def("average_precision",
        [](const std::vector<double>& scores, const std::vector<bool>& positive, const std::string& ties) {
          if (scores.size() != positive.size()) throw py::value_error("scores and labels differ in length");
          std::vector<RankedItem> items;
          for (std::size_t k = 0; k < scores.size(); ++k)
            items.push_back({{NodeId(k), 0}, scores[k], positive[k] ? Label::Test : Label::Zero});
          return average_precision(std::move(items), ties_arg(ties)).ap;
        },
        py::arg("scores"), py::arg("positive"), py::arg("ties") = "lexicographic");

  m.def("evaluate",
        [](const TemporalEdgeList& tel, const std::string& model, const std::string& measure,
           const std::string& combo, std::uint64_t seed, double fraction, const std::string& ties) {
          ScoreSpec spec{model_arg(model), measure_arg(measure), combo_arg(combo)};
          auto split = temporal_split(tel, fraction, seed);
          auto d = ap_dict(evaluate_split(tel, split, spec, ties_arg(ties)));
          d["t1"] = split.t1;
          d["t_end"] = split.t_end;
          d["random_baseline_ap"] = random_baseline(split, seed).ap;
          return d;
        },
        py::arg("tel"), py::arg("model"), py::arg("measure"), py::arg("combo"), py::arg("seed"),
        py::arg("fraction") = kDefaultTrainingFraction, py::arg("ties") = "lexicographic");

  m.def("evaluate_link_prediction",
        [](const TemporalEdgeList& tel, const std::string& measure, const std::string& combo,
           std::uint64_t seed, double fraction) {
          return ap_dict(evaluate_link_prediction(tel, measure_arg(measure), combo_arg(combo), fraction, seed));
        },
        py::arg("tel"), py::arg("measure"), py::arg("combo"), py::arg("seed"),
        py::arg("fraction") = kDefaultTrainingFraction);

  m.def("fit_half_life", [](const TemporalEdgeList& tel) {
    auto fit = fit_exponential_half_life(edge_lifetimes(tel));
    py::dict d;
    d["half_life"] = fit.half_life;
    d["rate"] = fit.rate;
    d["lifetimes"] = fit.lifetimes_used;
    d["censored"] = fit.censored;
    return d;
  });

  // generate(seed=1, n_nodes=500, bias="low-degree", ...): keyword names
  // follow the CLI with '-' spelled '_'.
  m.def("generate", [](py::kwargs kwargs) {
    std::map<std::string, std::string> settings;
    for (auto [key, value] : kwargs) {
      auto name = py::str(key).cast<std::string>();
      std::replace(name.begin(), name.end(), '_', '-');
      settings[name] = py::str(value).cast<std::string>();
    }
    GenConfig config;
    apply_settings(config, settings);
    validate(config);
    return generate(config);
  });
  m.def("random_digraph", &random_digraph, py::arg("n"), py::arg("density"), py::arg("seed"));
}
