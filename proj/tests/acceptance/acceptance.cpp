// Acceptance suite: one PASS/FAIL line per headline criterion, followed by
// indented detail lines. Exit status is non-zero on any unexpected FAIL.
//
// One criterion is known not to hold as stated (edge-exact directed CN, see
// README "Known deviation"); it still prints FAIL, and only that exact
// signature is tolerated by the exit status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "linkdecay/linkdecay.hpp"
#include "naive.hpp"

using namespace linkdecay;
using Clock = std::chrono::steady_clock;

namespace {

int unexpected_failures = 0;
int known_failures = 0;

struct Outcome {
  bool pass = true;
  bool known_deviation = false;  // failure matches the documented signature exactly
  std::vector<std::string> details;

  template <class... T>
  void note(T&&... parts) {
    std::ostringstream s;
    (s << ... << parts);
    details.push_back(s.str());
  }
};

void report(const std::string& name, const Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name;
  if (!o.pass && o.known_deviation) std::cout << "  [known deviation]";
  std::cout << '\n';
  for (const auto& d : o.details) std::cout << "      " << d << '\n';
  std::cout.flush();
  if (!o.pass) (o.known_deviation ? known_failures : unexpected_failures)++;
}

void criterion(const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.known_deviation = false;
    o.note("exception: ", e.what());
  }
  report(name, o);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// The shared corpus: 100 seeded digraphs, n = 30, density spread over 0.1–0.3.
std::vector<Graph> closed_form_corpus() {
  std::vector<Graph> corpus;
  for (int k = 0; k < 100; ++k) {
    const double density = 0.1 + 0.2 * k / 99.0;
    corpus.push_back(random_digraph(30, density, 1000 + k));
  }
  return corpus;
}

double mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
}

GenConfig planted(std::uint64_t seed) {
  GenConfig c;
  c.n_nodes = 5000;
  c.decay_bias = DecayBias::LowDegree;
  c.seed = seed;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  std::cout << "linkdecay acceptance " << kVersion << "\n\n";
  const auto corpus = closed_form_corpus();

  criterion("closed-form correctness (edges-only CN/PA exact, all-pairs CN <= 2, < 10 s)",
            [&](Outcome& o) {
    const auto t0 = Clock::now();
    bool others_ok = true;
    bool directed_cn_signature = true;  // In/Out CN deviates by exactly 1, only on one-way edges
    bool directed_cn_exact = true;
    for (auto combo : kAllCombinations) {
      double pa_edges = 0, cn_edges = 0, cn_all = 0;
      for (const auto& g : corpus) {
        ScoreSpec pa{Model::ComplementNetwork, Measure::PA, combo};
        ScoreSpec cn{Model::ComplementNetwork, Measure::CN, combo};
        pa_edges = std::max(pa_edges, check_closed_form(g, pa, PairSelection::EdgesOnly).max_abs_deviation);
        cn_edges = std::max(cn_edges, check_closed_form(g, cn, PairSelection::EdgesOnly).max_abs_deviation);
        cn_all = std::max(cn_all, check_closed_form(g, cn, PairSelection::AllPairs).max_abs_deviation);

        if (combo == DegreeCombination::In || combo == DegreeCombination::Out) {
          for (const auto& e : g.edges()) {
            const double dev = complement_network_score(g, e.src, e.dst, Measure::CN, combo) -
                               brute_force_g2(g, e.src, e.dst, Measure::CN, combo);
            const double expected = g.has_edge(e.dst, e.src) ? 0.0 : 1.0;
            if (dev != expected) directed_cn_signature = false;
          }
        }
      }
      o.note("combo=", to_string(combo), "  edges-only PA max_abs_deviation=", format_real(pa_edges),
             "  edges-only CN max_abs_deviation=", format_real(cn_edges),
             "  all-pairs CN max_abs_deviation=", format_real(cn_all));
      if (pa_edges != 0.0 || cn_all > 2.0) others_ok = false;
      if (cn_edges != 0.0) {
        if (combo == DegreeCombination::In || combo == DegreeCombination::Out) {
          directed_cn_exact = false;
        } else {
          others_ok = false;
        }
      }
    }
    const double elapsed = seconds_since(t0);
    o.note("graphs=", corpus.size(), "  runtime=", elapsed, " s");
    if (elapsed >= 10.0) others_ok = false;
    o.pass = others_ok && directed_cn_exact;
    if (!directed_cn_exact) {
      o.note("in/out CN on an edge i->j: the candidate set V \\ ({i,j} u N(i) u N(j)) misses i");
      o.note("unless j->i exists, so the closed form n - d1 - d2 + cn exceeds the complement");
      o.note("count by exactly 1 on every one-way edge (signature ",
             directed_cn_signature ? "confirmed" : "NOT matched", ")");
    }
    o.known_deviation = others_ok && directed_cn_signature;
  });

  criterion("complement involution and degree identity", [&](Outcome& o) {
    std::size_t checked = 0;
    for (const auto& g : corpus) {
      const auto c = materialize_complement(g);
      if (!(materialize_complement(c) == g)) o.pass = false;
      const auto n = g.node_count();
      for (NodeId v = 0; v < n; ++v) {
        if (c.degree(v, DegreeMode::Out) != n - 1 - g.degree(v, DegreeMode::Out)) o.pass = false;
        if (c.degree(v, DegreeMode::In) != n - 1 - g.degree(v, DegreeMode::In)) o.pass = false;
      }
      if (c.edge_count() != n * (n - 1) - g.edge_count()) o.pass = false;
      ++checked;
    }
    o.note("graphs=", checked);
  });

  criterion("model-1 duality g1 = -f_m, exact, 10^4 edges, five measures", [&](Outcome& o) {
    std::mt19937_64 rng(77);
    std::size_t edges = 0, mismatches = 0;
    while (edges < 10000) {
      const std::size_t n = 150;
      auto list = naive::random_edges(n, 0.06, rng);
      Graph g(n, list);
      naive::Adjacency a(n, list);
      for (const auto& e : list) {
        if (edges == 10000) break;
        for (auto c : kAllCombinations)
          for (auto m : kAllMeasures) {
            const double want = -naive::f(a, e.src, e.dst, m, c) + 0.0;
            if (complement_score(g, e.src, e.dst, m, c) != want) ++mismatches;
          }
        ++edges;
      }
    }
    o.note("edges=", edges, "  combos=4  mismatches=", mismatches);
    o.pass = mismatches == 0;
  });

  criterion("AP engine: worked examples to 1e-12, monotone-transform invariance", [&](Outcome& o) {
    auto make = [](std::vector<Label> labels) {
      std::vector<RankedItem> items;
      for (std::size_t k = 0; k < labels.size(); ++k)
        items.push_back({{NodeId(k), NodeId(k + 1)}, 1.0 - 0.1 * double(k), labels[k]});
      return items;
    };
    const double a = average_precision(make({Label::Test, Label::Zero})).ap;
    const double b = average_precision(make({Label::Zero, Label::Test})).ap;
    const double c = average_precision(make({Label::Test, Label::Zero, Label::Test, Label::Zero})).ap;
    o.note("examples: ", format_real(a), " ", format_real(b), " ", format_real(c));
    if (std::abs(a - 1.0) > 1e-12 || std::abs(b - 0.5) > 1e-12 || std::abs(c - 5.0 / 6.0) > 1e-12)
      o.pass = false;

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> coarse(0, 20);
    double worst = 0.0;
    const std::vector<std::function<double(double)>> transforms = {
        [](double x) { return 3.0 * x + 7.0; },
        [](double x) { return std::exp(x); },
        [](double x) { return x * x * x; },
        [](double x) { return std::atan(x) - 5.0; },
    };
    for (int r = 0; r < 100; ++r) {
      std::vector<RankedItem> items;
      const bool ties = r % 2 == 1;  // half the rankings carry heavy ties
      for (NodeId k = 0; k < 200; ++k) {
        const double s = ties ? coarse(rng) / 20.0 : unit(rng);
        items.push_back({{k, NodeId(k + 1000)}, s, unit(rng) < 0.5 ? Label::Test : Label::Zero});
      }
      items[0].label = Label::Test;
      for (auto mode : {TieBreak::Lexicographic, TieBreak::Expected}) {
        const double base = average_precision(items, mode).ap;
        for (const auto& f : transforms) {
          auto moved = items;
          for (auto& it : moved) it.score = f(it.score);
          worst = std::max(worst, std::abs(average_precision(moved, mode).ap - base));
        }
      }
    }
    o.note("rankings=100  transforms=4  max |dAP|=", format_real(worst));
    if (worst > 1e-12) o.pass = false;
  });

  criterion("random baseline: mean AP over 100 seeds (1000+1000) in [0.48, 0.52]", [&](Outcome& o) {
    EvaluationSplit split;
    for (NodeId k = 0; k < 1000; ++k) {
      split.test_set.push_back({k, 5000});
      split.zero_test_set.push_back({k, 6000});
    }
    std::vector<double> aps;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) aps.push_back(random_baseline(split, seed).ap);
    const double m = mean(aps);
    o.note("mean AP=", format_real(m));
    o.pass = m >= 0.48 && m <= 0.52;
  });

  // Planted-signal suite, reused by the difficulty-ordering criterion.
  std::vector<double> pa_out, baseline, decay_cn, creation_cn;
  double slowest = 0.0;
  criterion("planted signal: (score, PA, Out) mean AP >= 0.60 and >= baseline + 0.08, < 60 s/run",
            [&](Outcome& o) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto t0 = Clock::now();
      const auto tel = generate(planted(seed));
      const auto split = temporal_split(tel, kDefaultTrainingFraction, seed);
      pa_out.push_back(evaluate_split(tel, split, {Model::ComplementScore, Measure::PA, DegreeCombination::Out}).ap);
      baseline.push_back(random_baseline(split, seed).ap);
      slowest = std::max(slowest, seconds_since(t0));
      decay_cn.push_back(evaluate_split(tel, split, {Model::ComplementScore, Measure::CN, DegreeCombination::Sym}).ap);
      creation_cn.push_back(
          evaluate_link_prediction(tel, Measure::CN, DegreeCombination::Sym, kDefaultTrainingFraction, seed).ap);
    }
    o.note("mean PA-Out AP=", format_real(mean(pa_out)), "  mean random AP=", format_real(mean(baseline)),
           "  margin=", format_real(mean(pa_out) - mean(baseline)));
    o.note("slowest run=", slowest, " s");
    o.pass = mean(pa_out) >= 0.60 && mean(pa_out) - mean(baseline) >= 0.08 && slowest < 60.0;
  });

  criterion("difficulty ordering: creation CN AP > decay CN AP in >= 8 of 10 seeds", [&](Outcome& o) {
    if (creation_cn.size() != 10) throw std::runtime_error("planted-signal suite did not complete");
    int wins = 0;
    for (std::size_t k = 0; k < creation_cn.size(); ++k) wins += creation_cn[k] > decay_cn[k];
    o.note("wins=", wins, "/10  mean creation AP=", format_real(mean(creation_cn)),
           "  mean decay AP=", format_real(mean(decay_cn)));
    o.pass = wins >= 8;
  });

  criterion("half-life recovery 23 +/- 5% on 10^5 lifetimes; age scorer AP in [0.48, 0.52]",
            [&](Outcome& o) {
    GenConfig c;
    c.n_add_events = 100000;
    c.decay_half_life = 23.0;
    c.seed = 23;
    const auto tel = generate(c);
    const auto lifetimes = edge_lifetimes(tel);
    const auto fit = fit_exponential_half_life(lifetimes);
    o.note("lifetimes=", lifetimes.size(), "  censored=", fit.censored,
           "  half_life=", format_real(fit.half_life));
    const bool half_ok = std::abs(fit.half_life - 23.0) <= 0.05 * 23.0;

    // older edges ranked as more likely to decay
    const auto split = temporal_split(tel, kDefaultTrainingFraction, c.seed);
    std::vector<std::pair<Edge, Timestamp>> ages = edge_ages_at(tel, split.t1);
    auto age_of = [&](const Edge& e) {
      auto it = std::lower_bound(ages.begin(), ages.end(), e,
                                 [](const auto& a, const Edge& x) { return a.first < x; });
      return double(it->second);
    };
    const double ap = rank_split(split, age_of, TieBreak::Expected).ap;
    o.note("age scorer AP=", format_real(ap), "  positives=", split.test_set.size());
    o.pass = half_ok && ap >= 0.48 && ap <= 0.52;
  });

  criterion("deletion share within 24-31% at default config", [&](Outcome& o) {
    double lo = 1.0, hi = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      GenConfig c;
      c.seed = seed;
      const auto tel = generate(c);
      std::size_t deletes = 0;
      for (const auto& e : tel.events()) deletes += e.op == EdgeOp::Delete;
      const double share = double(deletes) / double(tel.events().size());
      lo = std::min(lo, share);
      hi = std::max(hi, share);
    }
    o.note("seeds=10  min share=", format_real(lo), "  max share=", format_real(hi));
    o.pass = lo >= 0.24 && hi <= 0.31;
  });

  criterion("determinism: sweep re-run from its manifest is byte-identical", [&](Outcome& o) {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "linkdecay_acceptance";
    fs::create_directories(dir);
    auto cli = [](std::vector<std::string> args) {
      std::istringstream in;
      std::ostringstream out, err;
      const int code = cli::run(args, in, out, err);
      if (code != 0) throw std::runtime_error("linkdecay " + args[0] + " failed: " + err.str());
    };
    for (std::string seed : {"5", "6"}) {
      const auto events = (dir / ("events" + seed + ".tsv")).string();
      const auto first = (dir / ("sweep" + seed + ".tsv")).string();
      const auto second = (dir / ("sweep" + seed + "_rerun.tsv")).string();
      cli({"gen", "--seed", seed, "--n-nodes", "2000", "--add-events", "15000", "--bias", "low-degree",
           "--output", events});
      cli({"sweep", "--input", events, "--seed", seed, "--ties", "expected", "--output", first});
      cli({"sweep", "--config", first + ".manifest", "--output", second});
      const auto a = slurp(first), b = slurp(second);
      const auto rows = std::count(a.begin(), a.end(), '\n') - 1;
      o.note("seed=", seed, "  rows=", rows, "  identical=", a == b ? "yes" : "no");
      if (a != b || rows != 40) o.pass = false;
    }
  });

  std::cout << "\nunexpected failures: " << unexpected_failures
            << "  known deviations: " << known_failures << '\n';
  return unexpected_failures == 0 ? 0 : 1;
}
