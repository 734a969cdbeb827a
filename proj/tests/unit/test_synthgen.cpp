#include <doctest.h>

#include <sstream>

#include "linkdecay/error.hpp"
#include "linkdecay/evaluation.hpp"
#include "linkdecay/synthgen.hpp"

using namespace linkdecay;

namespace {
GenConfig small(std::uint64_t seed) {
  GenConfig c;
  c.n_nodes = 600;
  c.n_add_events = 6000;
  c.seed = seed;
  return c;
}

std::string dump(const TemporalEdgeList& tel) {
  std::ostringstream out;
  write_events(out, tel);
  return out.str();
}
}  // namespace

TEST_CASE("generator is seeded") {
  CHECK(dump(generate(small(3))) == dump(generate(small(3))));
  CHECK(dump(generate(small(3))) != dump(generate(small(4))));
}

TEST_CASE("generated stream is well formed") {
  auto tel = generate(small(1));
  CHECK(tel.node_count() == 600);
  std::size_t adds = 0;
  for (const auto& e : tel.events()) adds += e.op == EdgeOp::Add;
  CHECK(adds == 6000);
  CHECK(tel.first_time() >= 0);
  CHECK(double(tel.last_time()) < observation_horizon(small(1)));
}

TEST_CASE("deletion share near target") {
  auto c = small(2);
  c.n_add_events = 20000;
  auto tel = generate(c);
  std::size_t dels = 0;
  for (const auto& e : tel.events()) dels += e.op == EdgeOp::Delete;
  CHECK(double(dels) / double(tel.events().size()) == doctest::Approx(0.27).epsilon(0.05));
}

TEST_CASE("half-life round trip") {
  for (double half : {10.0, 23.0}) {
    auto c = small(7);
    c.n_add_events = 30000;
    c.decay_half_life = half;
    auto fit = fit_exponential_half_life(edge_lifetimes(generate(c)));
    CHECK(fit.half_life == doctest::Approx(half).epsilon(0.05));
  }
}

TEST_CASE("biases run and differ") {
  auto c = small(5);
  c.decay_bias = DecayBias::LowDegree;
  auto low = dump(generate(c));
  c.decay_bias = DecayBias::FewCommonNeighbors;
  c.closure_probability = 0.3;
  auto few = dump(generate(c));
  CHECK(low != few);
}

TEST_CASE("config validation and settings") {
  auto c = small(1);
  c.deletion_share = 0.6;
  CHECK_THROWS_AS(validate(c), Error);
  c = small(1);
  c.n_nodes = 1;
  CHECK_THROWS_AS(validate(c), Error);

  GenConfig g;
  apply_settings(g, {{"n-nodes", "77"}, {"bias", "low-degree"}, {"half-life", "12.5"}, {"seed", "9"}});
  CHECK(g.n_nodes == 77);
  CHECK(g.decay_bias == DecayBias::LowDegree);
  CHECK(g.decay_half_life == 12.5);
  GenConfig back;
  apply_settings(back, to_settings(g));
  CHECK(to_settings(back) == to_settings(g));
  CHECK_THROWS_AS(apply_settings(g, {{"colour", "red"}}), Error);
  CHECK_THROWS_AS(apply_settings(g, {{"n-nodes", "many"}}), Error);
  for (auto b : {DecayBias::None, DecayBias::LowDegree, DecayBias::FewCommonNeighbors})
    CHECK(parse_bias(to_string(b)) == b);
}

TEST_CASE("random digraph density") {
  auto g = random_digraph(200, 0.1, 1);
  CHECK(double(g.edge_count()) / (200.0 * 199.0) == doctest::Approx(0.1).epsilon(0.05));
  CHECK(random_digraph(200, 0.1, 1) == g);
  CHECK(random_digraph(10, 0.0, 1).edge_count() == 0);
  CHECK(random_digraph(10, 1.0, 1).edge_count() == 90);
}
