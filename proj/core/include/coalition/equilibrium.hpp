#ifndef COALITION_EQUILIBRIUM_HPP
#define COALITION_EQUILIBRIUM_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coalition/model.hpp"
#include "coalition/topology.hpp"

namespace coalition {

enum class MoveKind { Merge, Defect, DefectToEmpty };

struct MoveDescriptor {
  MoveKind kind = MoveKind::Merge;
  int i = -1, j = -1;     // Merge: group indices, i < j
  PlayerId player = -1;   // Defect / DefectToEmpty
  int from = -1, to = -1; // Defect source / target group

  static MoveDescriptor merge(int i, int j);
  static MoveDescriptor defect(PlayerId x, int from, int to);
  static MoveDescriptor defect_to_empty(PlayerId x, int from);
  std::string describe() const;
  bool operator==(const MoveDescriptor&) const = default;
};

enum class Confidence { Exact, MonteCarlo };

struct EquilibriumReport {
  bool is_nash = false;
  std::optional<MoveDescriptor> violating_move;
  // Monte Carlo only: some comparison fell inside the 3-sigma band.
  bool indeterminate = false;
  std::optional<MoveDescriptor> marginal_move;
  int richest_index = -1;
  double richest_fraction = 0;
  std::vector<double> group_utilities;
  Confidence confidence = Confidence::Exact;
};

struct DynamicsConfig {
  long long max_steps = 10000;
  bool random_order = false;
  std::uint64_t seed = 0;
  bool allow_empty_defect = false;
};

struct DynamicsResult {
  Partition final_partition;
  bool converged = false;
  std::vector<MoveDescriptor> trace;
};

/// First incentivized move in deterministic scan order: merges in
/// lexicographic (i,j) order, then defects in (player, target) order, then
/// empty-group defections when allowed.
std::optional<MoveDescriptor> find_incentivized_move(const Partition& partition,
                                                     const CoverageOracle& oracle,
                                                     const RiskModel& risk,
                                                     bool allow_empty_defect = false);

EquilibriumReport is_nash(const Partition& partition, const CoverageOracle& oracle,
                          const RiskModel& risk, bool allow_empty_defect = false);

/// Index of a group with maximum per-member expected utility (lowest index
/// on ties) and its coverage fraction.
std::pair<int, double> richest_group(const Partition& partition,
                                     const CoverageOracle& oracle,
                                     const RiskModel& risk);

Partition apply_move(const Partition& partition, const MoveDescriptor& move);

DynamicsResult best_response_dynamics(const Partition& initial,
                                      const CoverageOracle& oracle,
                                      const RiskModel& risk,
                                      const DynamicsConfig& config);

/// All Nash partitions of the instance, found by exhausting the set
/// partitions of the player set (restricted-growth-string order). Refuses
/// instances with more than n_limit players.
std::vector<Partition> enumerate_nash(const Instance& inst, const RiskModel& risk,
                                      bool allow_empty_defect = false,
                                      int n_limit = 12, SamplingConfig cfg = {});

/// Calls f with the restricted growth string of every set partition of
/// {0..n-1}.
void for_each_set_partition(int n, const std::function<void(const std::vector<int>&)>& f);

Partition partition_from_rgs(const std::vector<int>& rgs);

/// Bitmask-based Nash check over a precomputed coverage table. Exact
/// topologies with at most 20 players; an independent, much faster route
/// than the move-by-move scan.
class FastNashChecker {
 public:
  FastNashChecker(const Instance& inst, const RiskModel& risk);

  bool is_nash(const Partition& partition, bool allow_empty_defect = false) const;
  bool is_nash_masks(const std::vector<std::uint64_t>& masks,
                     const std::vector<int>& sizes,
                     bool allow_empty_defect = false) const;
  double coverage_of(std::uint64_t mask) const { return cov_[mask]; }
  double total() const { return total_; }
  int player_count() const { return n_; }

 private:
  int n_;
  double total_;
  double tie_eps_;
  std::vector<double> cov_;      // union measure per member bitmask
  std::vector<double> inv_pow_;  // (1/n)^(1-r) for n = 0..N
};

}  // namespace coalition

#endif
