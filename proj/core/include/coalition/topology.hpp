#ifndef COALITION_TOPOLOGY_HPP
#define COALITION_TOPOLOGY_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace coalition {

using PlayerId = int;

/// Players on a line; player i covers the closed interval
/// [positions[i]-1, positions[i]+1].
struct Line1D {
  std::vector<double> positions;
};

/// Players in d-dimensional Euclidean space; player i covers the closed
/// unit ball around positions[i]. positions[i].size() == d.
struct EuclideanD {
  int d = 1;
  std::vector<std::vector<double>> positions;
};

/// Players occupy the vertices of a simple undirected graph; player i covers
/// the closed neighborhood of vertex i.
struct GraphTopology {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  GraphTopology() = default;
  GraphTopology(int n, std::vector<std::pair<int, int>> edges);

  const std::vector<std::vector<int>>& adjacency() const { return adj_; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;
  // Engaged iff every vertex has the same degree.
  std::optional<int> regular_degree() const;

 private:
  std::vector<std::vector<int>> adj_;
};

struct Instance {
  std::variant<Line1D, EuclideanD, GraphTopology> topo;

  int player_count() const;
  // True when coverage measures carry no sampling error.
  bool exact() const;
  bool is_graph() const { return std::holds_alternative<GraphTopology>(topo); }
};

struct SamplingConfig {
  long long samples = 100000;
  std::uint64_t seed = 0x5eed5eed5eedULL;
};

struct CoverageReport {
  double a_s = 0;        // measure covered by the queried member set
  double a_total = 0;    // total measure A
  double fraction = 0;   // a_s / a_total
  double std_error = 0;  // one-sigma error of a_s (0 on exact topologies)
};

/// Caches coverage measures for one instance. Monte Carlo results are
/// deterministic per (seed, samples), so caching keeps verdicts consistent
/// across repeated queries of the same member set.
class CoverageOracle {
 public:
  explicit CoverageOracle(const Instance& inst, SamplingConfig cfg = {});

  const Instance& instance() const { return *inst_; }
  const SamplingConfig& sampling() const { return cfg_; }
  int player_count() const { return n_; }
  bool exact() const;

  double total() const { return total_; }
  double total_std_error() const { return total_err_; }

  CoverageReport coverage(const std::vector<PlayerId>& members) const;
  // (a_s, std_error) without the fraction bookkeeping.
  std::pair<double, double> measure(const std::vector<PlayerId>& members) const;

 private:
  const Instance* inst_;
  SamplingConfig cfg_;
  int n_;
  double total_ = 0, total_err_ = 0;
  mutable std::unordered_map<std::uint64_t, std::pair<double, double>> cache_;
};

CoverageReport coverage_measure(const std::vector<PlayerId>& members,
                                const Instance& inst,
                                SamplingConfig cfg = {});
CoverageReport total_measure(const Instance& inst, SamplingConfig cfg = {});

/// coverage(members + x) - coverage(members). On Monte Carlo topologies both
/// measures come from one shared point set, so the difference is consistent
/// and never negative.
double marginal_contribution(PlayerId x, const std::vector<PlayerId>& members,
                             const Instance& inst, SamplingConfig cfg = {});

/// Volume of the d-dimensional unit ball via V_n = (2*pi/n) V_{n-2},
/// V_0 = 1, V_1 = 2.
double unit_ball_volume(int d);

/// Cylinder upper bound 2 (1-a^2)^{(d-1)/2} V_{d-1} on the intersection
/// volume of two unit balls whose centers are 2a apart. Zero for a > 1.
double two_ball_intersection_bound(double a, int d);

// Lebesgue measure of a union of closed intervals.
double interval_union_length(std::vector<std::pair<double, double>> intervals);

struct McEstimate {
  double value = 0;
  double std_error = 0;
};

/// Monte Carlo volume of a union of equal-radius balls: stratified uniform
/// sampling over the per-ball bounding boxes with first-owner deduplication.
/// Deterministic per (seed, samples) and independent of stratum evaluation
/// order.
McEstimate mc_union_ball_volume(const std::vector<std::vector<double>>& centers,
                                int d, double radius, SamplingConfig cfg);

}  // namespace coalition

#endif
