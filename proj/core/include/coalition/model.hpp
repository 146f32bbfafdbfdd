#ifndef COALITION_MODEL_HPP
#define COALITION_MODEL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "coalition/topology.hpp"

namespace coalition {

/// Risk aversion factor r in (0,1) and prize money M > 0. tie_eps is the
/// relative tolerance of the strict-increase comparisons: a exceeds b iff
/// a > b * (1 + tie_eps). Ties are never incentivized.
struct RiskModel {
  double r;
  double M;
  double tie_eps;

  explicit RiskModel(double r, double M = 1.0, double tie_eps = 1e-12);
};

/// u(x) = x^(1-r).
double utility(double x, const RiskModel& risk);

/// Expected utility of each member of a size-n group with coverage
/// fraction p: (M/n)^(1-r) * p.
double group_expected_utility(int n, double p, const RiskModel& risk);

struct Group {
  std::vector<PlayerId> members;  // sorted, unique, nonempty
  int size() const { return static_cast<int>(members.size()); }
  bool contains(PlayerId p) const;
};

/// Disjoint nonempty groups covering all players.
struct Partition {
  std::vector<Group> groups;

  static Partition singletons(int n);
  static Partition grand_coalition(int n);

  int group_count() const { return static_cast<int>(groups.size()); }
  // Index of the group containing p, or -1.
  int group_of(PlayerId p) const;
  void validate(int n_players) const;
  std::uint64_t mask(int group_index) const;  // requires player ids < 64
  bool operator==(const Partition& other) const;
};

enum class Verdict { Yes, No, Marginal };

struct IncentiveDecision {
  Verdict verdict = Verdict::No;
  bool incentivized() const { return verdict == Verdict::Yes; }
  // Per-member expected utilities, in M-and-A units.
  double utility_before_first = 0;   // group i, or the defector x
  double utility_before_second = 0;  // group j / the target group
  double utility_after = 0;          // the merged / receiving group
};

/// Merging S_i and S_j is incentivized iff the merged per-member utility
/// strictly exceeds the current per-member utility of S_i and of S_j.
/// Verdict::Marginal can only occur on Monte Carlo topologies, when a
/// comparison falls within 3 combined standard errors.
IncentiveDecision merge_incentivized(int i, int j, const Partition& partition,
                                     const CoverageOracle& oracle,
                                     const RiskModel& risk);

/// x defecting from groups[from] to groups[*to] is incentivized iff the
/// receiving group's new per-member utility strictly exceeds both x's current
/// utility and the target's current per-member utility. A disengaged `to`
/// means defection to a fresh empty group (allowed only when allow_empty is
/// set): incentivized iff x's singleton utility strictly exceeds his current
/// utility. The abandoned group is not consulted.
IncentiveDecision defect_incentivized(PlayerId x, int from, std::optional<int> to,
                                      const Partition& partition,
                                      const CoverageOracle& oracle,
                                      const RiskModel& risk,
                                      bool allow_empty = false);

// Convenience overloads building a throwaway oracle.
IncentiveDecision merge_incentivized(int i, int j, const Partition& partition,
                                     const Instance& inst, const RiskModel& risk,
                                     SamplingConfig cfg = {});
IncentiveDecision defect_incentivized(PlayerId x, int from, std::optional<int> to,
                                      const Partition& partition,
                                      const Instance& inst, const RiskModel& risk,
                                      bool allow_empty = false,
                                      SamplingConfig cfg = {});

namespace detail {
// Incentive comparisons drop the common factors M^(1-r) and 1/A and compare
// (1/n)^(1-r) * A_S directly.
double group_score(int n, double a_s, const RiskModel& risk);
Verdict strictly_exceeds(double a, double err_a, double b, double err_b,
                         const RiskModel& risk, bool exact);
}  // namespace detail

}  // namespace coalition

#endif
