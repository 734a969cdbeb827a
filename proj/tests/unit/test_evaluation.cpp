#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <random>
#include <sstream>

#include "linkdecay/error.hpp"
#include "linkdecay/evaluation.hpp"

using namespace linkdecay;

namespace {
TemporalEdgeList parse(const std::string& text) {
  std::istringstream in(text);
  return ingest_events(in);
}

std::vector<RankedItem> ordered(std::initializer_list<Label> labels) {
  std::vector<RankedItem> items;
  double s = 1.0;
  NodeId k = 0;
  for (auto l : labels) {
    items.push_back({{k, k + 1}, s, l});
    s -= 0.1;
    ++k;
  }
  return items;
}

// AP straight from Σ P(i)·I(i) / positives on an already ordered list.
double direct_ap(const std::vector<Label>& order) {
  double hits = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] == Label::Test) sum += ++hits / double(i + 1);
  return sum / hits;
}
}  // namespace

TEST_CASE("worked AP values") {
  CHECK(average_precision(ordered({Label::Test, Label::Zero})).ap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(average_precision(ordered({Label::Zero, Label::Test})).ap == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(average_precision(ordered({Label::Test, Label::Zero, Label::Test, Label::Zero})).ap ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK_THROWS_AS(average_precision(ordered({Label::Zero})), Error);
}

TEST_CASE("ranking order, ties and stored precision") {
  std::vector<RankedItem> items = {
      {{2, 0}, 1.0, Label::Zero}, {{1, 5}, 1.0, Label::Test}, {{0, 3}, 0.5, Label::Test}};
  auto r = average_precision(items);
  REQUIRE(r.ranking.size() == 3);
  CHECK(r.ranking[0].edge == Edge{1, 5});  // tie broken by (src, dst)
  CHECK(r.precision_at == std::vector<double>{1.0, 0.5, 2.0 / 3.0});
  CHECK(r.positives == 2);
  CHECK(recompute_ap(r) == r.ap);

  // expected AP over the two tie orders: (1 + 2/3)/2 and (1/2 + 2/3)/2
  auto e = average_precision(items, TieBreak::Expected);
  CHECK(e.ap == doctest::Approx(((1.0 + 2.0 / 3.0) / 2 + (0.5 + 2.0 / 3.0) / 2) / 2));
}

TEST_CASE("expected ties equal the mean over all permutations") {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 30; ++round) {
    std::vector<RankedItem> items;
    std::uniform_int_distribution<int> score(0, 2);
    std::bernoulli_distribution pos(0.5);
    for (NodeId k = 0; k < 7; ++k) items.push_back({{k, 0}, double(score(rng)), pos(rng) ? Label::Test : Label::Zero});
    items[0].label = Label::Test;
    // brute force: average over every permutation consistent with the scores
    std::vector<std::size_t> idx(items.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return items[a].score > items[b].score || (items[a].score == items[b].score && a < b); });
    double total = 0.0;
    std::size_t count = 0;
    do {
      bool sorted = true;
      for (std::size_t k = 1; k < idx.size(); ++k) sorted &= items[idx[k - 1]].score >= items[idx[k]].score;
      if (!sorted) continue;
      std::vector<Label> order;
      for (auto k : idx) order.push_back(items[k].label);
      total += direct_ap(order);
      ++count;
    } while (std::next_permutation(idx.begin(), idx.end()));
    CHECK(average_precision(items, TieBreak::Expected).ap == doctest::Approx(total / double(count)).epsilon(1e-12));
  }
}

TEST_CASE("temporal split semantics") {
  auto tel = parse("a b +1 0\nc d +1 10\nc d -1 80\ne f +1 10\ne f -1 50\ne f +1 60\ng h +1 90\na b -1 100\n");
  auto split = temporal_split(tel, 0.75, 1);
  CHECK(split.t1 == 75);
  CHECK(split.t_end == 100);
  std::vector<Edge> expect_test = {{0, 1}, {2, 3}};
  CHECK(split.test_set == expect_test);
  REQUIRE(split.zero_test_set.size() == 1);  // only (e,f) survives
  CHECK(split.zero_test_set[0] == Edge{4, 5});
  CHECK(split.zero_test_truncated);

  CHECK_THROWS_AS(temporal_split(tel, 1.0, 1), Error);
  CHECK_THROWS_AS(temporal_split(parse(""), 0.75, 1), Error);
  try {
    temporal_split(parse("a b +1 0\nc d +1 10\n"), 0.75, 1);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "no decayed edges in window");
  }
}

TEST_CASE("perfect scorer gives AP 1") {
  auto tel = parse("a b +1 0\nb c +1 0\nc d +1 0\nd e +1 0\na b -1 90\nb c -1 95\ne a +1 100\n");
  auto split = temporal_split(tel, 0.75, 3);
  auto r = rank_split(split, [&](const Edge& e) {
    return std::find(split.test_set.begin(), split.test_set.end(), e) != split.test_set.end() ? 1.0 : 0.0;
  });
  CHECK(r.ap == 1.0);
}

TEST_CASE("random baseline") {
  std::vector<Edge> pos = {{0, 1}}, neg = {{2, 3}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    double ap = random_ranking(pos, neg, seed).ap;
    CHECK((ap == 0.5 || ap == 1.0));
  }
  std::vector<Edge> p, n;
  for (NodeId k = 0; k < 300; ++k) {
    p.push_back({k, 1000});
    n.push_back({k, 2000});
  }
  CHECK(random_ranking(p, n, 8).ap == random_ranking(p, n, 8).ap);
}

TEST_CASE("lifetimes and half-life fit") {
  auto tel = parse("a b +1 10\na b -1 80\nc d +1 10\na b +1 85\na b -1 90\nx y +1 100\n");
  auto life = edge_lifetimes(tel);
  std::vector<Lifetime> want = {{70, false}, {90, true}, {5, false}, {0, true}};
  CHECK(life == want);

  std::vector<Lifetime> same(50, Lifetime{12, false});
  auto fit = fit_exponential_half_life(same);
  CHECK(fit.half_life == doctest::Approx(12 * std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(fit_exponential_half_life(std::vector<Lifetime>{{3, false}}), Error);

  // heavy censoring: exponential law cut at a horizon that censors ~90%
  std::mt19937_64 rng(12);
  const double half = 23.0, rate = std::log(2.0) / half;
  std::exponential_distribution<double> draw(rate);
  std::vector<Lifetime> heavy;
  const double horizon = -std::log(0.9) / rate;
  for (int k = 0; k < 100000; ++k) {
    double t = draw(rng) * 100.0;  // scale ticks so flooring is negligible
    auto h = Timestamp(horizon * 100.0);
    heavy.push_back(t < double(h) ? Lifetime{Timestamp(t), false} : Lifetime{h, true});
  }
  auto hf = fit_exponential_half_life(heavy);
  CHECK(hf.half_life / 100.0 == doctest::Approx(half).epsilon(0.10));
  CHECK(double(hf.censored) / 100000.0 == doctest::Approx(0.9).epsilon(0.02));
}

TEST_CASE("kaplan-meier") {
  std::vector<Lifetime> l = {{2, false}, {2, true}, {4, false}, {6, true}};
  auto curve = survival_curve(l);
  REQUIRE(curve.size() == 3);
  CHECK(curve[0].t == 0);
  CHECK(curve[0].fraction_surviving == 1.0);
  CHECK(curve[1].fraction_surviving == doctest::Approx(0.75));
  CHECK(curve[2].t == 4);
  CHECK(curve[2].fraction_surviving == doctest::Approx(0.75 * 0.5));
}

TEST_CASE("edge ages") {
  auto tel = parse("a b +1 3\nb c +1 5\na b -1 6\na b +1 8\n");
  auto ages = edge_ages_at(tel, 10);
  REQUIRE(ages.size() == 2);
  CHECK(ages[0].second == 2);
  CHECK(ages[1].second == 5);
}

TEST_CASE("creation split negatives are never linked") {
  std::ostringstream text;
  for (int k = 0; k < 40; ++k) text << k << ' ' << (k + 1) % 40 << " +1 " << k << '\n';
  for (int k = 0; k < 20; ++k) text << k << ' ' << (k + 7) % 40 << " +1 " << 40 + k << '\n';
  auto tel = parse(text.str());
  auto split = creation_split(tel, 0.75, 5);
  CHECK_FALSE(split.positives.empty());
  CHECK(split.negatives.size() == split.positives.size());
  std::set<Edge> linked;
  for (const auto& e : tel.events()) linked.insert({e.src, e.dst});
  for (const auto& e : split.negatives) CHECK_FALSE(linked.count(e));
  auto r = evaluate_link_prediction(tel, Measure::CN, DegreeCombination::Sym, 0.75, 5);
  CHECK(r.positives == split.positives.size());
}
