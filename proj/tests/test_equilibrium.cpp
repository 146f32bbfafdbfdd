#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "coalition/equilibrium.hpp"
#include "coalition/generators.hpp"
#include "coalition/topology.hpp"

using namespace coalition;

namespace {

const std::vector<long long> kBell = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};

}  // namespace

TEST_CASE("two disjoint singletons: the merge fires first") {
  Instance inst{Line1D{{0.0, 4.0}}};
  CoverageOracle oracle(inst);
  RiskModel risk(0.5);
  Partition singles = Partition::singletons(2);
  auto move = find_incentivized_move(singles, oracle, risk);
  REQUIRE(move.has_value());
  CHECK(*move == MoveDescriptor::merge(0, 1));
  auto report = is_nash(singles, oracle, risk);
  CHECK_FALSE(report.is_nash);
  CHECK(report.violating_move == MoveDescriptor::merge(0, 1));
  CHECK(report.confidence == Confidence::Exact);
}

TEST_CASE("grand coalition of two covering players is Nash even with empty defects") {
  Instance inst{Line1D{{0.0, 4.0}}};
  CoverageOracle oracle(inst);
  RiskModel risk(0.5);
  auto report = is_nash(Partition::grand_coalition(2), oracle, risk, true);
  CHECK(report.is_nash);
  CHECK(report.richest_index == 0);
  CHECK(report.richest_fraction == doctest::Approx(1.0));
}

TEST_CASE("G_{23,3} star partition is Nash without empty defection, not with it") {
  GklResult gkl = gen_gkl(23, 3, 0.5);
  Instance inst{gkl.graph};
  CoverageOracle oracle(inst);
  RiskModel risk(0.5);
  auto report = is_nash(gkl.star_partition, oracle, risk, false);
  CHECK(report.is_nash);
  CHECK(report.richest_fraction == doctest::Approx(26.0 / 92.0).epsilon(1e-12));
  CHECK_FALSE(find_incentivized_move(gkl.star_partition, oracle, risk, false).has_value());

  auto relaxed = is_nash(gkl.star_partition, oracle, risk, true);
  CHECK_FALSE(relaxed.is_nash);
  REQUIRE(relaxed.violating_move.has_value());
  CHECK(relaxed.violating_move->kind == MoveKind::DefectToEmpty);
}

TEST_CASE("single grand group has no available move") {
  GklResult gkl = gen_gkl(23, 3, 0.5);
  Instance inst{gkl.graph};
  CoverageOracle oracle(inst);
  RiskModel risk(0.5);
  Partition grand = Partition::grand_coalition(92);
  CHECK_FALSE(find_incentivized_move(grand, oracle, risk, false).has_value());
  CHECK(is_nash(grand, oracle, risk, false).is_nash);
}

TEST_CASE("richest group ties break to the lowest index") {
  Instance inst{Line1D{{0.0, 4.0, 8.0}}};
  CoverageOracle oracle(inst);
  RiskModel risk(0.5);
  auto [idx, frac] = richest_group(Partition::singletons(3), oracle, risk);
  CHECK(idx == 0);
  CHECK(frac == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("richest group on G_z is the attachment singleton") {
  GzResult gz = gen_gz(4, 0.5);
  Instance inst{gz.graph};
  CoverageOracle oracle(inst);
  RiskModel risk(0.5);
  // {v} against one contiguous path group
  Partition part;
  part.groups.push_back(Group{{gz.attach_vertex}});
  for (int i = 1; i < gz.spec.clique_size; ++i) part.groups.push_back(Group{{i}});
  Group path_group;
  for (int i = 0; i < gz.spec.path_len; ++i)
    path_group.members.push_back(static_cast<int>(gz.spec.clique_size) + i);
  part.groups.push_back(path_group);
  auto [idx, frac] = richest_group(part, oracle, risk);
  CHECK(idx == 0);
  CHECK(frac == doctest::Approx(25.0 / 36.0).epsilon(1e-12));
}

TEST_CASE("dynamics converge in one step for two disjoint singletons") {
  Instance inst{Line1D{{0.0, 4.0}}};
  CoverageOracle oracle(inst);
  RiskModel risk(0.5);
  DynamicsConfig cfg;
  auto res = best_response_dynamics(Partition::singletons(2), oracle, risk, cfg);
  CHECK(res.converged);
  CHECK(res.trace.size() == 1);
  CHECK(res.final_partition == Partition::grand_coalition(2));
}

TEST_CASE("max_steps=1 leaves three disjoint singletons unconverged") {
  Instance inst{Line1D{{0.0, 4.0, 8.0}}};
  CoverageOracle oracle(inst);
  RiskModel risk(0.5);
  DynamicsConfig cfg;
  cfg.max_steps = 1;
  auto res = best_response_dynamics(Partition::singletons(3), oracle, risk, cfg);
  CHECK_FALSE(res.converged);
  CHECK(res.trace.size() == 1);
  DynamicsConfig bad;
  bad.max_steps = 0;
  CHECK_THROWS_AS(best_response_dynamics(Partition::singletons(3), oracle, risk, bad),
                  std::invalid_argument);
}

TEST_CASE("dynamics from singletons on G_{23,3} end in a Nash partition") {
  GklResult gkl = gen_gkl(23, 3, 0.5);
  Instance inst{gkl.graph};
  CoverageOracle oracle(inst);
  RiskModel risk(0.5);
  DynamicsConfig cfg;
  auto res = best_response_dynamics(Partition::singletons(92), oracle, risk, cfg);
  CHECK(res.converged);
  CHECK(is_nash(res.final_partition, oracle, risk).is_nash);

  DynamicsConfig rnd;
  rnd.random_order = true;
  rnd.seed = 2024;
  auto rres = best_response_dynamics(Partition::singletons(92), oracle, risk, rnd);
  CHECK(rres.converged);
  CHECK(is_nash(rres.final_partition, oracle, risk).is_nash);
  // same seed, same trajectory
  auto rres2 = best_response_dynamics(Partition::singletons(92), oracle, risk, rnd);
  CHECK(rres.final_partition == rres2.final_partition);
  CHECK(rres.trace.size() == rres2.trace.size());
}

TEST_CASE("every applied move strictly improves the consulted parties") {
  Instance inst{Line1D{{0.0, 1.2, 3.7, 5.0, 9.1}}};
  CoverageOracle oracle(inst);
  RiskModel risk(0.4);
  Partition part = Partition::singletons(5);
  for (int step = 0; step < 100; ++step) {
    auto move = find_incentivized_move(part, oracle, risk);
    if (!move) break;
    if (move->kind == MoveKind::Merge) {
      auto dec = merge_incentivized(move->i, move->j, part, oracle, risk);
      CHECK(dec.utility_after > dec.utility_before_first);
      CHECK(dec.utility_after > dec.utility_before_second);
    } else if (move->kind == MoveKind::Defect) {
      auto dec = defect_incentivized(move->player, move->from, move->to, part,
                                     oracle, risk);
      CHECK(dec.utility_after > dec.utility_before_first);
      CHECK(dec.utility_after > dec.utility_before_second);
    }
    part = apply_move(part, *move);
    part.validate(5);
  }
  CHECK(is_nash(part, oracle, risk).is_nash);
}

TEST_CASE("set-partition enumeration counts match Bell numbers") {
  for (int n = 1; n <= 10; ++n) {
    long long count = 0;
    for_each_set_partition(n, [&](const std::vector<int>& rgs) {
      ++count;
      Partition p = partition_from_rgs(rgs);
      p.validate(n);
    });
    CHECK(count == kBell[n]);
  }
}

TEST_CASE("one player enumerates to the single vacuous Nash partition") {
  Instance inst{Line1D{{0.0}}};
  auto nash = enumerate_nash(inst, RiskModel(0.5), true);
  REQUIRE(nash.size() == 1);
  CHECK(nash[0] == Partition::grand_coalition(1));
}

TEST_CASE("two distant line players: grand coalition is the only Nash") {
  Instance inst{Line1D{{0.0, 4.0}}};
  auto nash = enumerate_nash(inst, RiskModel(0.5), true);
  REQUIRE(nash.size() == 1);
  CHECK(nash[0] == Partition::grand_coalition(2));
}

TEST_CASE("triangle: every Nash partition has full richest coverage") {
  Instance inst{GraphTopology(3, {{0, 1}, {1, 2}, {0, 2}})};
  CoverageOracle oracle(inst);
  RiskModel risk(0.5);
  auto nash = enumerate_nash(inst, risk);
  CHECK_FALSE(nash.empty());
  for (const Partition& p : nash) {
    auto [idx, frac] = richest_group(p, oracle, risk);
    CHECK(frac == doctest::Approx(1.0));
  }
}

TEST_CASE("enumeration refuses oversized instances") {
  Instance inst = gen_random_line(13, 20.0, 7);
  CHECK_THROWS_AS(enumerate_nash(inst, RiskModel(0.5), false, 12),
                  std::invalid_argument);
}

TEST_CASE("enumerate_nash output is invariant under prize rescaling") {
  Instance inst = gen_random_line(6, 12.0, 31);
  auto a = enumerate_nash(inst, RiskModel(0.5, 1.0), false);
  auto b = enumerate_nash(inst, RiskModel(0.5, 40000.0), false);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("fast checker agrees with the general scan on random partitions") {
  RiskModel risk(0.5);
  for (std::uint64_t seed : {11ULL, 22ULL, 33ULL}) {
    Instance graph = gen_random_regular(8, 3, seed);
    Instance line = gen_random_line(7, 14.0, seed);
    for (const Instance* inst : {&graph, &line}) {
      CoverageOracle oracle(*inst);
      FastNashChecker fast(*inst, risk);
      int n = inst->player_count();
      int checked = 0;
      for_each_set_partition(n, [&](const std::vector<int>& rgs) {
        if (++checked > 300) return;
        Partition p = partition_from_rgs(rgs);
        for (bool allow_empty : {false, true}) {
          bool general = is_nash(p, oracle, risk, allow_empty).is_nash;
          CHECK(fast.is_nash(p, allow_empty) == general);
        }
      });
    }
  }
}

TEST_CASE("move descriptors print usable text") {
  CHECK(MoveDescriptor::merge(0, 1).describe() == "MERGE(0,1)");
  CHECK(MoveDescriptor::defect(4, 1, 2).describe() == "DEFECT(4:1->2)");
  CHECK(MoveDescriptor::defect_to_empty(4, 1).describe() == "DEFECT_TO_EMPTY(4:1)");
}

TEST_CASE("apply_move handles source-emptying defections") {
  Partition part{{Group{{0}}, Group{{1, 2}}}};
  Partition after = apply_move(part, MoveDescriptor::defect(0, 0, 1));
  CHECK(after.group_count() == 1);
  CHECK(after == Partition::grand_coalition(3));

  Partition split = apply_move(Partition::grand_coalition(3),
                               MoveDescriptor::defect_to_empty(1, 0));
  CHECK(split.group_count() == 2);
  split.validate(3);
}
