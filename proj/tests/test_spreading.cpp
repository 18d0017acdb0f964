#include <doctest.h>

#include <algorithm>

#include "socnet/generators.hpp"
#include "socnet/spreading.hpp"

using namespace socnet;

namespace {

AttributedGraph path3() {
  auto g = new_graph(false, {0, 0, 1});
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return g;
}

AttributedGraph clique(std::size_t n) {
  auto g = new_graph(false, std::vector<ClassLabel>(n, 0));
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) g.add_edge(a, b);
  }
  return g;
}

void check_trace(const CascadeTrace& t, std::span<const NodeId> seeds) {
  for (NodeId s : seeds) CHECK(t.activation_time[s] == 0);
  for (std::size_t v = 0; v < t.activation_time.size(); ++v) {
    if (std::find(seeds.begin(), seeds.end(), v) == seeds.end()) {
      CHECK((t.activation_time[v] == kNever || t.activation_time[v] >= 1));
    }
  }
  for (std::size_t i = 0; i < t.steps(); ++i) {
    for (const auto* s : {&t.frac_class0, &t.frac_class1, &t.frac_all}) {
      CHECK((*s)[i] >= 0.0);
      CHECK((*s)[i] <= 1.0);
      if (i > 0) CHECK((*s)[i] >= (*s)[i - 1]);
    }
  }
}

}  // namespace

TEST_CASE("independent cascade examples") {
  Rng r(1);
  const std::vector<NodeId> one{0};
  const auto full = cascade(clique(6), one, 1.0, 1.0, r);
  for (NodeId v = 1; v < 6; ++v) CHECK(full.activation_time[v] == 1);

  const auto none = cascade(clique(6), one, 0.0, 0.0, r);
  for (NodeId v = 1; v < 6; ++v) CHECK(none.activation_time[v] == kNever);
  CHECK(none.frac_all.back() == doctest::Approx(1.0 / 6.0));

  const auto chain = cascade(path3(), one, 1.0, 1.0, r);
  CHECK(chain.activation_time == std::vector<std::int64_t>{0, 1, 2});
  CHECK_THROWS_AS(cascade(path3(), std::vector<NodeId>{}, 0.5, 0.5, r), std::invalid_argument);
  CHECK_THROWS_AS(cascade(path3(), one, 1.5, 0.5, r), std::invalid_argument);
}

TEST_CASE("threshold cascade examples") {
  const std::vector<NodeId> zero{0};
  // Node 1 sees one of two neighbors active: 1/2 meets 0.5 but not 1.0.
  const auto chain = threshold_cascade(path3(), zero, 0.5);
  CHECK(chain.activation_time == std::vector<std::int64_t>{0, 1, 2});
  const auto blocked = threshold_cascade(path3(), zero, 1.0);
  CHECK(blocked.activation_time == std::vector<std::int64_t>{0, kNever, kNever});
  auto pair = new_graph(false, {0, 0});
  pair.add_edge(0, 1);
  CHECK(threshold_cascade(pair, zero, 1.0).activation_time == std::vector<std::int64_t>{0, 1});

  auto star = new_graph(false, std::vector<ClassLabel>(6, 0));
  for (NodeId v = 1; v < 6; ++v) star.add_edge(0, v);
  const auto s = threshold_cascade(star, zero, 0.6);
  for (NodeId v = 1; v < 6; ++v) CHECK(s.activation_time[v] == 1);

  const auto stuck = threshold_cascade(clique(4), zero, 0.6);
  for (NodeId v = 1; v < 4; ++v) CHECK(stuck.activation_time[v] == kNever);
  CHECK(stuck.steps() == 1);

  CHECK_THROWS_AS(threshold_cascade(path3(), zero, 0.0), std::invalid_argument);
  CHECK(threshold_cascade(star, zero, 0.6).activation_time == s.activation_time);
}

TEST_CASE("equality report") {
  const std::vector<NodeId> both{0, 2};
  Rng r(3);
  const auto g = path3();
  const auto t = cascade(g, both, 1.0, 1.0, r);
  const auto rep = equality_report(t, g.labels());
  for (std::size_t i = 1; i < rep.equality.size(); ++i) CHECK(rep.equality[i] == 1.0);

  auto split = new_graph(false, {0, 0, 1, 1});
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  const std::vector<NodeId> maj{0};
  const auto only = cascade(split, maj, 1.0, 1.0, r);
  const auto rep2 = equality_report(only, split.labels());
  for (std::size_t i = 0; i < rep2.equality.size(); ++i) CHECK(rep2.equality[i] == 0.0);
  CHECK(rep2.terminal_class0 == 1.0);
  CHECK(rep2.terminal_class1 == 0.0);
  CHECK(rep2.efficiency == std::optional<std::size_t>(1));

  // Overall informed share reaches one half at t = 3 on an 8-node path.
  auto line = new_graph(false, std::vector<ClassLabel>(8, 0));
  for (NodeId v = 0; v + 1 < 8; ++v) line.add_edge(v, v + 1);
  const auto walk = cascade(line, maj, 1.0, 1.0, r);
  CHECK(equality_report(walk, line.labels()).efficiency == std::optional<std::size_t>(3));
  CHECK(first_reaching(walk.frac_all, 0.5) == std::optional<std::size_t>(3));
  CHECK_FALSE(first_reaching(walk.frac_all, 1.5).has_value());
}

TEST_CASE("cascade invariants on generated graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_pah(400, 2, 0.2, MixingMatrix::symmetric(0.8), seed).graph;
    Rng r(seed);
    const auto seeds = seeding(g, SeedingCondition::kUniform, 5, r);
    const auto ic = cascade(g, seeds, 0.3, 0.05, r);
    check_trace(ic, seeds);
    const auto rep = equality_report(ic, g.labels());
    for (double e : rep.equality) {
      CHECK(e >= 0.0);
      CHECK(e <= 1.0);
    }
    check_trace(threshold_cascade(g, seeds, 0.3), seeds);
    const auto d = gen_directed(Model::kDPAH, 200, 0.02, 0.3, MixingMatrix::symmetric(0.6), 2.5, seed).graph;
    const auto ds = seeding(d, SeedingCondition::kTopDegree, 3, r);
    check_trace(cascade(d, ds, 0.5, 0.5, r), ds);
    check_trace(threshold_cascade(d, ds, 0.2), ds);
  }
}

TEST_CASE("equal rates make the cascade label-blind") {
  const auto g = gen_pah(300, 2, 0.3, MixingMatrix::symmetric(0.8), 5).graph;
  std::vector<ClassLabel> flipped(g.labels().begin(), g.labels().end());
  for (auto& c : flipped) c = static_cast<ClassLabel>(1 - c);
  auto h = new_graph(false, flipped);
  for (const auto& e : g.edges()) h.add_edge(e.source, e.target);
  const std::vector<NodeId> seeds{3, 40};
  Rng a(9);
  Rng b(9);
  CHECK(cascade(g, seeds, 0.2, 0.2, a).activation_time == cascade(h, seeds, 0.2, 0.2, b).activation_time);
}

TEST_CASE("seeding conditions") {
  const auto g = gen_pah(100, 2, 0.2, MixingMatrix::symmetric(0.5), 1).graph;
  Rng r(4);
  const auto minority = seeding(g, SeedingCondition::kMinorityOnly, 20, r);
  CHECK(minority.size() == 20);
  for (NodeId v : minority) CHECK(g.label(v) == 1);
  const auto majority = seeding(g, SeedingCondition::kMajorityOnly, 10, r);
  for (NodeId v : majority) CHECK(g.label(v) == 0);
  CHECK(std::is_sorted(majority.begin(), majority.end()));
  CHECK_THROWS_AS(seeding(g, SeedingCondition::kMajorityOnly, 81, r), std::invalid_argument);
  CHECK_THROWS_AS(seeding(g, SeedingCondition::kUniform, 0, r), std::invalid_argument);

  auto star = new_graph(false, std::vector<ClassLabel>(5, 0));
  for (NodeId v = 1; v < 5; ++v) star.add_edge(0, v);
  CHECK(seeding(star, SeedingCondition::kTopDegree, 1, r) == std::vector<NodeId>{0});
  for (SeedingCondition c : {SeedingCondition::kUniform, SeedingCondition::kMajorityOnly,
                             SeedingCondition::kMinorityOnly, SeedingCondition::kTopDegree}) {
    CHECK(parse_seeding(seeding_name(c)) == c);
  }
}
