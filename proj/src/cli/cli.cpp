#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>

#include "linkdecay/linkdecay.hpp"

namespace linkdecay::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptionSpec {
  std::string name;
  std::string default_value;
  std::string help;
};

/// Resolved option values: command line, then --config file, then default.
/// An empty string means "not set".
class Settings {
 public:
  explicit Settings(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  const std::string& text(const std::string& key) const { return values_.at(key); }
  bool has(const std::string& key) const { return !values_.at(key).empty(); }

  std::string require(const std::string& key) const {
    if (!has(key)) throw UsageError("--" + key + " is required");
    return text(key);
  }

  template <class T>
  T number(const std::string& key) const {
    const auto& value = require(key);
    T parsed{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      throw UsageError("invalid value for --" + key + ": '" + value + "'");
    }
    return parsed;
  }

  bool flag(const std::string& key) const {
    const auto& value = text(key);
    if (value == "true") return true;
    if (value == "false") return false;
    throw UsageError("--" + key + " must be true or false, got '" + value + "'");
  }

  const std::map<std::string, std::string>& all() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

/// Reads `path` ("-" for the injected stdin) fully.
std::string slurp(const std::string& path, Streams& io) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << io.in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open input '" + path + "'");
  buffer << file.rdbuf();
  return buffer.str();
}

void emit(const std::string& path, const std::string& content, Streams& io) {
  if (path == "-") {
    io.out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open output '" + path + "'");
  file << content;
  if (!file) throw Error("failed writing '" + path + "'");
}

TemporalEdgeList load_events(const Settings& s, Streams& io, IngestReport* report = nullptr) {
  std::istringstream text(slurp(s.text("input"), io));
  IngestOptions options;
  if (s.all().contains("self-loops")) {
    const auto& policy = s.text("self-loops");
    if (policy == "skip") {
      options.self_loops = SelfLoopPolicy::Skip;
    } else if (policy == "fail") {
      options.self_loops = SelfLoopPolicy::Fail;
    } else {
      throw UsageError("--self-loops must be skip or fail");
    }
  }
  if (s.all().contains("strict")) options.strict = s.flag("strict");
  return ingest_events(text, options, report);
}

Timestamp resolve_time(const Settings& s, const TemporalEdgeList& tel) {
  if (s.has("at")) return s.number<Timestamp>("at");
  return tel.empty() ? 0 : tel.last_time();
}

Measure measure_of(const Settings& s) {
  auto m = parse_measure(s.require("measure"));
  if (!m) throw UsageError("--measure must be one of pa, cn, cos, jacc, adad");
  return *m;
}

DegreeCombination combo_of(const Settings& s) {
  auto c = parse_combination(s.require("combo"));
  if (!c) throw UsageError("--combo must be one of sym, asym, in, out");
  return *c;
}

ScoreSpec spec_of(const Settings& s) {
  ScoreSpec spec;
  auto model = parse_model(s.require("model"));
  if (!model) throw UsageError("--model must be score or network");
  spec.model = *model;
  spec.measure = measure_of(s);
  spec.combo = combo_of(s);
  spec.adad_complement_weights = s.flag("adad-complement-weights");
  return spec;
}

TieBreak ties_of(const Settings& s) {
  const auto& ties = s.text("ties");
  if (ties == "lexicographic") return TieBreak::Lexicographic;
  if (ties == "expected") return TieBreak::Expected;
  throw UsageError("--ties must be lexicographic or expected");
}

double fraction_of(const Settings& s) {
  const auto fraction = s.number<double>("fraction");
  if (!(fraction > 0.0 && fraction < 1.0)) throw UsageError("--fraction must lie in (0, 1)");
  return fraction;
}

std::string ranking_tsv(const APResult& result, const TemporalEdgeList& tel) {
  std::ostringstream out;
  out << "src\tdst\tscore\tlabel\trank\n";
  for (std::size_t k = 0; k < result.ranking.size(); ++k) {
    const auto& item = result.ranking[k];
    out << tel.label(item.edge.src) << '\t' << tel.label(item.edge.dst) << '\t'
        << format_real(item.score) << '\t' << (item.label == Label::Test ? "test" : "zero") << '\t'
        << k + 1 << '\n';
  }
  return out.str();
}

// ---- subcommands -----------------------------------------------------------

int cmd_ingest(const Settings& s, Streams& io) {
  IngestReport report;
  const auto tel = load_events(s, io, &report);
  if (s.has("events")) {
    std::ostringstream events;
    write_events(events, tel);
    emit(s.text("events"), events.str(), io);
  }
  if (s.has("id-map")) {
    std::ostringstream ids;
    write_id_map(ids, tel);
    emit(s.text("id-map"), ids.str(), io);
  }
  for (const auto& d : report.diagnostics) io.err << d << '\n';
  std::ostringstream summary;
  summary << "records=" << report.records << '\n'
          << "events=" << tel.events().size() << '\n'
          << "nodes=" << tel.node_count() << '\n'
          << "skipped_self_loops=" << report.skipped_self_loops << '\n'
          << "ignored_deletes=" << report.ignored_deletes << '\n'
          << "ignored_duplicate_adds=" << report.ignored_duplicate_adds << '\n';
  emit(s.text("output"), summary.str(), io);
  return kExitOk;
}

int cmd_snapshot(const Settings& s, Streams& io) {
  const auto tel = load_events(s, io);
  std::ostringstream out;
  for (const auto& e : tel.edges_at(resolve_time(s, tel))) {
    out << tel.label(e.src) << '\t' << tel.label(e.dst) << '\n';
  }
  emit(s.text("output"), out.str(), io);
  return kExitOk;
}

std::vector<Edge> read_pairs(const std::string& text, const TemporalEdgeList& tel) {
  std::unordered_map<std::string, NodeId> index;
  for (NodeId v = 0; v < tel.node_count(); ++v) index.emplace(tel.label(v), v);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<Edge> pairs;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string a;
    std::string b;
    if (!(fields >> a) || a.front() == '#') continue;
    if (!(fields >> b)) throw ParseError(line_no, "expected 'src dst'");
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      throw ParseError(line_no, "unknown node in pair '" + a + " " + b + "'");
    }
    pairs.push_back({ia->second, ib->second});
  }
  return pairs;
}

int cmd_score(const Settings& s, Streams& io) {
  const auto spec = spec_of(s);
  const auto tel = load_events(s, io);
  const auto g = tel.snapshot_at(resolve_time(s, tel));
  const auto pairs = s.has("pairs") ? read_pairs(slurp(s.text("pairs"), io), tel) : g.edges();
  std::ostringstream out;
  out << "src\tdst\tscore\n";
  for (const auto& e : score_batch(g, pairs, spec)) {
    out << tel.label(e.src) << '\t' << tel.label(e.dst) << '\t' << format_real(e.score) << '\n';
  }
  emit(s.text("output"), out.str(), io);
  return kExitOk;
}

int cmd_verify(const Settings& s, Streams& io) {
  ScoreSpec spec{Model::ComplementNetwork, measure_of(s), combo_of(s),
                 s.flag("adad-complement-weights")};
  const auto& pair_mode = s.text("pairs");
  PairSelection selection;
  if (pair_mode == "edges") {
    selection = PairSelection::EdgesOnly;
  } else if (pair_mode == "all") {
    selection = PairSelection::AllPairs;
  } else {
    throw UsageError("--pairs must be edges or all");
  }
  const auto limit = s.number<std::size_t>("max-nodes");

  Graph g;
  std::vector<std::string> labels;
  std::uint64_t seed = 0;
  if (s.has("random-nodes")) {
    seed = s.number<std::uint64_t>("seed");
    g = random_digraph(s.number<std::size_t>("random-nodes"), s.number<double>("density"), seed);
    for (NodeId v = 0; v < g.node_count(); ++v) labels.push_back(std::to_string(v));
  } else {
    if (s.has("seed")) seed = s.number<std::uint64_t>("seed");
    const auto tel = load_events(s, io);
    g = tel.snapshot_at(resolve_time(s, tel));
    labels.assign(tel.labels().begin(), tel.labels().end());
  }

  const auto report = check_closed_form(g, spec, selection, seed, limit);
  std::ostringstream out;
  out << "measure=" << to_string(spec.measure) << '\n'
      << "combo=" << to_string(spec.combo) << '\n'
      << "adad_complement_weights=" << (spec.adad_complement_weights ? "true" : "false") << '\n'
      << "pairs=" << pair_mode << '\n'
      << "nodes=" << g.node_count() << '\n'
      << "edges=" << g.edge_count() << '\n'
      << "pairs_checked=" << report.pairs_checked << '\n'
      << "max_abs_deviation=" << format_real(report.max_abs_deviation) << '\n'
      << "worst_pair=" << labels[report.worst_pair.src] << ',' << labels[report.worst_pair.dst]
      << '\n'
      << "edge_exact=" << (report.edge_exact ? "true" : "false") << '\n';
  emit(s.text("output"), out.str(), io);
  return kExitOk;
}

int cmd_evaluate(const Settings& s, Streams& io) {
  const auto spec = spec_of(s);
  const auto seed = s.number<std::uint64_t>("seed");
  const auto fraction = fraction_of(s);
  const auto ties = ties_of(s);
  const auto tel = load_events(s, io);
  const auto split = temporal_split(tel, fraction, seed);
  if (split.zero_test_truncated) {
    io.err << "warning: only " << split.zero_test_set.size() << " surviving edges for "
           << split.test_set.size() << " decayed edges; zero test set is smaller\n";
  }
  const auto result = evaluate_split(tel, split, spec, ties);

  if (s.has("ranking")) emit(s.text("ranking"), ranking_tsv(result, tel), io);
  if (s.has("survival")) {
    const auto lifetimes = edge_lifetimes(tel);
    std::ostringstream curve;
    curve << "t\tfraction_surviving\n";
    for (const auto& p : survival_curve(lifetimes)) {
      curve << p.t << '\t' << format_real(p.fraction_surviving) << '\n';
    }
    emit(s.text("survival"), curve.str(), io);
  }

  std::ostringstream out;
  out << "ap=" << format_real(result.ap) << '\n'
      << "positives=" << result.positives << '\n'
      << "zero_tests=" << split.zero_test_set.size() << '\n'
      << "training_edges=" << split.training_edges.size() << '\n'
      << "t1=" << split.t1 << '\n'
      << "t_end=" << split.t_end << '\n'
      << "seed=" << seed << '\n'
      << "model=" << to_string(spec.model) << '\n'
      << "measure=" << to_string(spec.measure) << '\n'
      << "combo=" << to_string(spec.combo) << '\n'
      << "random_baseline_ap=" << format_real(random_baseline(split, seed).ap) << '\n';
  emit(s.text("output"), out.str(), io);
  return kExitOk;
}

int cmd_evaluate_lp(const Settings& s, Streams& io) {
  const auto measure = measure_of(s);
  const auto combo = combo_of(s);
  const auto seed = s.number<std::uint64_t>("seed");
  const auto fraction = fraction_of(s);
  const auto ties = ties_of(s);
  const auto tel = load_events(s, io);
  const auto split = creation_split(tel, fraction, seed);
  const auto result = evaluate_link_prediction(tel, measure, combo, fraction, seed, ties);
  if (s.has("ranking")) emit(s.text("ranking"), ranking_tsv(result, tel), io);
  std::ostringstream out;
  out << "ap=" << format_real(result.ap) << '\n'
      << "positives=" << split.positives.size() << '\n'
      << "negatives=" << split.negatives.size() << '\n'
      << "t1=" << split.t1 << '\n'
      << "t_end=" << split.t_end << '\n'
      << "seed=" << seed << '\n'
      << "measure=" << to_string(measure) << '\n'
      << "combo=" << to_string(combo) << '\n';
  emit(s.text("output"), out.str(), io);
  return kExitOk;
}

int cmd_survival(const Settings& s, Streams& io) {
  const auto tel = load_events(s, io);
  const auto lifetimes = edge_lifetimes(tel);
  const auto fit = fit_exponential_half_life(lifetimes);
  if (s.has("curve")) {
    std::ostringstream curve;
    curve << "t\tfraction_surviving\n";
    for (const auto& p : survival_curve(lifetimes)) {
      curve << p.t << '\t' << format_real(p.fraction_surviving) << '\n';
    }
    emit(s.text("curve"), curve.str(), io);
  }
  std::ostringstream out;
  out << "half_life=" << format_real(fit.half_life) << '\n'
      << "rate=" << format_real(fit.rate) << '\n'
      << "lifetimes=" << fit.lifetimes_used << '\n'
      << "censored=" << fit.censored << '\n';
  emit(s.text("output"), out.str(), io);
  return kExitOk;
}

GenConfig gen_config_of(const Settings& s) {
  GenConfig config;
  std::map<std::string, std::string> settings;
  for (const char* key : {"n-nodes", "add-events", "attach-exponent", "half-life", "bias",
                          "hazard-multiplier", "deletion-share", "closure-probability"}) {
    settings[key] = s.text(key);
  }
  settings["seed"] = s.require("seed");
  try {
    apply_settings(config, settings);
    validate(config);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return config;
}

int cmd_gen(const Settings& s, Streams& io) {
  const auto config = gen_config_of(s);
  std::ostringstream out;
  write_events(out, generate(config));
  emit(s.text("output"), out.str(), io);
  return kExitOk;
}

int cmd_sweep(const Settings& s, Streams& io) {
  const auto seed = s.number<std::uint64_t>("seed");
  const auto fraction = fraction_of(s);
  const auto ties = ties_of(s);
  const bool complement_weights = s.flag("adad-complement-weights");
  const auto tel = load_events(s, io);
  const auto split = temporal_split(tel, fraction, seed);

  std::ostringstream out;
  out << "model\tmeasure\tcombo\tap\tpositives\tzero_tests\n";
  for (auto spec : all_score_specs()) {
    spec.adad_complement_weights = complement_weights;
    const auto result = evaluate_split(tel, split, spec, ties);
    out << to_string(spec.model) << '\t' << to_string(spec.measure) << '\t'
        << to_string(spec.combo) << '\t' << format_real(result.ap) << '\t' << result.positives
        << '\t' << split.zero_test_set.size() << '\n';
  }
  emit(s.text("output"), out.str(), io);
  return kExitOk;
}

// ---- option tables ---------------------------------------------------------

const std::vector<OptionSpec> kIo = {
    {"input", "-", "event file (- for stdin)"},
    {"output", "-", "output path (- for stdout); the manifest goes to <output>.manifest"},
};
const std::vector<OptionSpec> kIngestPolicy = {
    {"self-loops", "skip", "skip|fail"},
    {"strict", "false", "fail on deletes of absent / adds of present edges"},
};
const std::vector<OptionSpec> kSpec = {
    {"model", "score", "score|network"},
    {"measure", "pa", "pa|cn|cos|jacc|adad"},
    {"combo", "sym", "sym|asym|in|out"},
    {"adad-complement-weights", "false", "weight Adamic-Adar by complement degrees"},
};
const std::vector<OptionSpec> kProtocol = {
    {"fraction", "0.75", "training fraction of the time span"},
    {"seed", "", "RNG seed (required)"},
    {"ties", "lexicographic", "lexicographic|expected"},
};

std::vector<OptionSpec> join(std::initializer_list<std::vector<OptionSpec>> parts) {
  std::vector<OptionSpec> all;
  for (const auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  return all;
}

struct Command {
  std::string name;
  std::string description;
  std::vector<OptionSpec> options;
  std::function<int(const Settings&, Streams&)> handler;
};

std::vector<Command> commands() {
  GenConfig defaults;
  auto gen_defaults = to_settings(defaults);
  std::vector<OptionSpec> gen_options = {
      {"n-nodes", gen_defaults["n-nodes"], "number of nodes"},
      {"add-events", gen_defaults["add-events"], "number of edge additions"},
      {"attach-exponent", gen_defaults["attach-exponent"], "attachment weight (degree+1)^x"},
      {"half-life", gen_defaults["half-life"], "edge half-life in ticks"},
      {"bias", gen_defaults["bias"], "none|low-degree|few-common-neighbors"},
      {"hazard-multiplier", gen_defaults["hazard-multiplier"], "hazard factor of biased edges"},
      {"deletion-share", gen_defaults["deletion-share"], "target share of deletions"},
      {"closure-probability", gen_defaults["closure-probability"], "triadic closure probability"},
      {"seed", "", "RNG seed (required)"},
      {"output", "-", "event file path (- for stdout)"},
  };

  return {
      {"ingest", "Parse and normalize an event file",
       join({kIo, kIngestPolicy,
             {{"events", "", "write normalized events here"},
              {"id-map", "", "write the token<TAB>index map here"}}}),
       cmd_ingest},
      {"snapshot", "Edge list at a point in time",
       join({kIo, kIngestPolicy, {{"at", "", "timestamp (default: last event)"}}}), cmd_snapshot},
      {"score", "Decay scores for snapshot edges or given pairs",
       join({kIo, kIngestPolicy, kSpec,
             {{"at", "", "timestamp (default: last event)"},
              {"pairs", "", "file of 'src dst' pairs (default: all edges)"}}}),
       cmd_score},
      {"verify", "Check complement-network closed forms against brute force",
       join({kIo, kIngestPolicy,
             {{"measure", "cn", "pa|cn|cos|jacc|adad"},
              {"combo", "sym", "sym|asym|in|out"},
              {"adad-complement-weights", "false", "weight Adamic-Adar by complement degrees"},
              {"pairs", "edges", "edges|all"},
              {"at", "", "timestamp (default: last event)"},
              {"random-nodes", "", "check a random G(n,p) digraph with this many nodes"},
              {"density", "0.2", "edge probability of the random digraph"},
              {"seed", "", "seed for the random digraph and pair sampling"},
              {"max-nodes", std::to_string(kComplementNodeLimit), "complement size limit"}}}),
       cmd_verify},
      {"evaluate", "Average precision of a decay score on a temporal split",
       join({kIo, kIngestPolicy, kSpec, kProtocol,
             {{"ranking", "", "write the ranking TSV here"},
              {"survival", "", "write the survival curve TSV here"}}}),
       cmd_evaluate},
      {"evaluate-lp", "Average precision of link prediction on a temporal split",
       join({kIo, kIngestPolicy,
             {{"measure", "cn", "pa|cn|cos|jacc|adad"}, {"combo", "sym", "sym|asym|in|out"}},
             kProtocol, {{"ranking", "", "write the ranking TSV here"}}}),
       cmd_evaluate_lp},
      {"survival", "Fit an exponential half-life to edge lifetimes",
       join({kIo, kIngestPolicy, {{"curve", "", "write the Kaplan-Meier curve TSV here"}}}),
       cmd_survival},
      {"gen", "Generate a synthetic temporal network", gen_options, cmd_gen},
      {"sweep", "Evaluate all 40 model/measure/combination specs",
       join({kIo, kIngestPolicy, kProtocol,
             {{"adad-complement-weights", "false", "weight Adamic-Adar by complement degrees"}}}),
       cmd_sweep},
  };
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open config '" + path + "'");
  try {
    return read_settings(file);
  } catch (const ParseError& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
}

std::string manifest_text(const std::string& subcommand, const Settings& settings) {
  std::ostringstream out;
  out << "# linkdecay run manifest; rerun with: linkdecay " << subcommand
      << " --config <this file>\n";
  out << "subcommand=" << subcommand << '\n';
  out << "tool-version=" << kVersion << '\n';
  for (const auto& [key, value] : settings.all()) out << key << '=' << value << '\n';
  return out.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Streams io{in, out, err};
  CLI::App app{"Link decay prediction toolkit", "linkdecay"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  const auto table = commands();
  struct Bound {
    CLI::App* app;
    std::map<std::string, std::string> given;
    std::map<std::string, CLI::Option*> options;
    std::string config;
  };
  std::vector<std::unique_ptr<Bound>> bound;
  for (const auto& command : table) {
    auto b = std::make_unique<Bound>();
    b->app = app.add_subcommand(command.name, command.description);
    b->app->add_option("--config", b->config, "key=value defaults; command-line flags override");
    for (const auto& opt : command.options) {
      auto& slot = b->given[opt.name];
      auto* option = b->app->add_option("--" + opt.name, slot, opt.help);
      if (!opt.default_value.empty()) option->description(opt.help + " [" + opt.default_value + "]");
      b->options[opt.name] = option;
    }
    bound.push_back(std::move(b));
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto selected = app.get_subcommands();
    err << (selected.empty() ? app.help() : selected.front()->help());
    return kExitUsage;
  }

  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto& command = table[k];
    auto& b = *bound[k];
    if (!b.app->parsed()) continue;
    try {
      std::map<std::string, std::string> config;
      if (!b.config.empty()) config = read_config(b.config);
      std::map<std::string, std::string> resolved;
      for (const auto& opt : command.options) {
        if (b.options[opt.name]->count() > 0) {
          resolved[opt.name] = b.given[opt.name];
        } else if (auto it = config.find(opt.name); it != config.end()) {
          resolved[opt.name] = it->second;
        } else {
          resolved[opt.name] = opt.default_value;
        }
        config.erase(opt.name);
      }
      if (auto it = config.find("subcommand"); it != config.end()) {
        if (it->second != command.name) {
          throw UsageError("config was written for '" + it->second + "', not '" + command.name +
                           "'");
        }
        config.erase(it);
      }
      config.erase("tool-version");
      if (!config.empty()) {
        throw UsageError("unknown config key '" + config.begin()->first + "' for " +
                         command.name);
      }

      const Settings settings(std::move(resolved));
      const int status = command.handler(settings, io);
      const auto manifest = manifest_text(command.name, settings);
      const auto& output = settings.text("output");
      if (output == "-") {
        err << manifest;
      } else {
        emit(output + ".manifest", manifest, io);
      }
      return status;
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n\n" << b.app->help();
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitData;
    }
  }
  return kExitUsage;
}

}  // namespace linkdecay::cli
