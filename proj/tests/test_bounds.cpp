#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "coalition/bounds.hpp"
#include "coalition/equilibrium.hpp"
#include "coalition/generators.hpp"
#include "coalition/topology.hpp"

using namespace coalition;

TEST_CASE("line richest bound 1/(1+2(1-r))") {
  CHECK(line_richest_bound(0.5) == doctest::Approx(0.5));
  CHECK(line_richest_bound(0.9) == doctest::Approx(1.0 / 1.2));
  CHECK(line_richest_bound(0.999999) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(line_richest_bound(0.0), std::invalid_argument);
  CHECK_THROWS_AS(line_richest_bound(1.0), std::invalid_argument);
  // strictly increasing in r
  double prev = 0;
  for (double r = 0.05; r < 1.0; r += 0.05) {
    double b = line_richest_bound(r);
    CHECK(b > prev);
    prev = b;
  }
}

TEST_CASE("basic Euclidean bound 3^-d") {
  CHECK(euclid_bound_basic(1) == doctest::Approx(1.0 / 3.0));
  CHECK(euclid_bound_basic(2) == doctest::Approx(1.0 / 9.0));
  CHECK(euclid_bound_basic(3) == doctest::Approx(1.0 / 27.0));
  CHECK_THROWS_AS(euclid_bound_basic(0), std::invalid_argument);
}

TEST_CASE("improved Euclidean bound and its delta") {
  double delta = euclid_bound_delta(2, 0.5);
  CHECK(delta == doctest::Approx(std::sqrt(1.0 - std::pow(0.125, 2.0))).epsilon(1e-9));
  CHECK(delta == doctest::Approx(0.992157).epsilon(1e-5));
  CHECK(euclid_bound_improved(2, 0.5) == doctest::Approx(0.112283).epsilon(1e-5));
  CHECK_THROWS_AS(euclid_bound_improved(1, 0.5), std::invalid_argument);
  // r -> 0 degenerates to the basic bound
  CHECK(euclid_bound_improved(2, 1e-12) == doctest::Approx(1.0 / 9.0).epsilon(1e-6));
  for (int d = 2; d <= 10; ++d)
    for (double r = 0.1; r < 0.95; r += 0.1) {
      double del = euclid_bound_delta(d, r);
      CHECK(del > 0.0);
      CHECK(del < 1.0);
      CHECK(euclid_bound_improved(d, r) > euclid_bound_basic(d));
    }
}

TEST_CASE("regular graph bound") {
  CHECK(regular_graph_bound(3, 0.5) == doctest::Approx(0.5));
  CHECK(regular_graph_bound(1, 0.3) == doctest::Approx(1.0));
  CHECK(regular_graph_bound(5, 0.25) == doctest::Approx(1.0 / (4.0 / 1.5 + 1.0)));
  CHECK(regular_graph_bound(5, 0.25) == doctest::Approx(0.272727).epsilon(1e-5));
  // strictly increasing in r
  CHECK(regular_graph_bound(3, 0.6) > regular_graph_bound(3, 0.5));
  CHECK_THROWS_AS(regular_graph_bound(0, 0.5), std::invalid_argument);
}

TEST_CASE("minimum prize money formulas") {
  CHECK(min_money_by_area(0.5, 100.0, 1.0, 0.7) == doctest::Approx(50.0));
  CHECK(min_money_by_area(1.0, 1.0, 4.0, 0.5) == doctest::Approx(16.0));
  CHECK(min_money_by_area(0.5, 100.0, 1e-9, 0.5) < 1e-9);
  CHECK(min_money_by_size(10, 0.5, 20.0, 10, 0.3) == doctest::Approx(10.0));
  CHECK(min_money_by_size(1, 2.0, 8.0, 8, 0.5) == doctest::Approx(4.0));
  CHECK(min_money_by_size(7, 1.0, 7.0, 7, 0.42) == doctest::Approx(7.0));
}

TEST_CASE("outsider marginal-contribution caps") {
  CHECK(exclusive_contribution_cap(TopologyKind::Line, 0.5) == doctest::Approx(1.0));
  CHECK(exclusive_contribution_cap(TopologyKind::Euclid, 0.5, 2) ==
        doctest::Approx(0.5 * std::numbers::pi));
  CHECK(exclusive_contribution_cap(TopologyKind::Graph, 0.25, 3) ==
        doctest::Approx(3.0));
  Instance line{Line1D{{0.0, 4.0}}};
  CHECK(exclusive_contribution_cap(line, 0.5) == doctest::Approx(1.0));
  Instance k3{GraphTopology(3, {{0, 1}, {1, 2}, {0, 2}})};
  CHECK(exclusive_contribution_cap(k3, 0.5) == doctest::Approx(1.5));
}

TEST_CASE("grand coalition of two covering line players satisfies the line bound") {
  Instance inst{Line1D{{0.0, 4.0}}};
  auto check = verify_richest_bound(inst, Partition::grand_coalition(2), RiskModel(0.5));
  CHECK(check.outcome == BoundOutcome::Bound);
  CHECK(check.bound_value == doctest::Approx(0.5));
  CHECK(check.observed == doctest::Approx(1.0));
  CHECK(check.satisfied);
  CHECK(check.margin == doctest::Approx(0.5));
  CHECK(check.partition_is_nash);
}

TEST_CASE("non-Nash partitions are flagged but still compared") {
  Instance inst{Line1D{{0.0, 4.0}}};
  auto check = verify_richest_bound(inst, Partition::singletons(2), RiskModel(0.5));
  CHECK_FALSE(check.partition_is_nash);
  CHECK(check.observed == doctest::Approx(0.5));
}

TEST_CASE("irregular graphs get no richest-fraction bound") {
  GzResult gz = gen_gz(4, 0.5);
  Instance inst{gz.graph};
  Partition grand = Partition::grand_coalition(gz.graph.n);
  auto check = verify_richest_bound(inst, grand, RiskModel(0.5));
  CHECK(check.outcome == BoundOutcome::NoBound);
}

TEST_CASE("regular graphs route to the regular bound") {
  Instance inst = gen_random_regular(8, 3, 5);
  RiskModel risk(0.5);
  auto nash = enumerate_nash(inst, risk);
  REQUIRE_FALSE(nash.empty());
  for (const Partition& p : nash) {
    auto check = verify_richest_bound(inst, p, risk);
    CHECK(check.outcome == BoundOutcome::Bound);
    CHECK(check.bound_value == doctest::Approx(0.5));
    CHECK(check.satisfied);
    CHECK(check.partition_is_nash);
  }
}

TEST_CASE("enumerated line Nash partitions respect the line bound") {
  RiskModel risk(0.5);
  for (std::uint64_t seed : {3ULL, 14ULL, 159ULL}) {
    Instance inst = gen_random_line(7, 14.0, seed);
    for (const Partition& p : enumerate_nash(inst, risk)) {
      auto check = verify_richest_bound(inst, p, risk);
      CHECK(check.satisfied);
      CHECK(check.observed >= line_richest_bound(0.5) - 1e-9);
    }
  }
}

TEST_CASE("Euclid d=1 instances use the line bound") {
  EuclideanD e;
  e.d = 1;
  e.positions = {{0.0}, {4.0}};
  Instance inst{e};
  auto check = verify_richest_bound(inst, Partition::grand_coalition(2), RiskModel(0.5));
  CHECK(check.outcome == BoundOutcome::Bound);
  CHECK(check.bound_value == doctest::Approx(0.5));
}
