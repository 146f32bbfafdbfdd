#ifndef COALITION_BOUNDS_HPP
#define COALITION_BOUNDS_HPP

#include "coalition/model.hpp"
#include "coalition/topology.hpp"

namespace coalition {

/// Lower bound on the richest group's coverage fraction on the line:
/// 1 / (1 + 2(1-r)).
double line_richest_bound(double r);

/// Dimension-only Euclidean bound 3^-d.
double euclid_bound_basic(int d);

/// Risk-dependent Euclidean bound (2*delta+1)^-d with
/// delta = sqrt(1 - (r/(2d))^(2/(d-1))). Defined for d >= 2; the line bound
/// applies at d = 1.
double euclid_bound_improved(int d, double r);
double euclid_bound_delta(int d, double r);

/// Richest-fraction bound 1 / ((f-1)/(r(f+1)) + 1) on f-regular graphs.
double regular_graph_bound(int f, double r);

/// Minimum prize money lambda * A * c^(1/(1-r)) for a Nash Equilibrium with a
/// group covering a lambda-fraction whose members each get utility >= c.
double min_money_by_area(double lambda, double A, double c, double r);

/// Minimum prize money k * (cA/N)^(1/(1-r)) for a Nash Equilibrium containing
/// a group of size k whose members each get utility >= c.
double min_money_by_size(int k, double c, double A, long long N, double r);

enum class TopologyKind { Line, Euclid, Graph };

/// Threshold that no outsider's marginal contribution to a richest group can
/// reach in a Nash Equilibrium: 2(1-r) on the line, (1-r)V_d in d dimensions,
/// (1-r)(max_degree+1) on graphs.
double exclusive_contribution_cap(TopologyKind kind, double r, int d_or_delta = 0);
double exclusive_contribution_cap(const Instance& inst, double r);

enum class BoundOutcome { Bound, NoBound };

struct BoundCheck {
  BoundOutcome outcome = BoundOutcome::Bound;
  double bound_value = 0;
  double observed = 0;  // richest group's coverage fraction
  bool satisfied = true;
  double margin = 0;  // observed - bound_value
  bool partition_is_nash = false;
};

/// Compares a partition's richest-group coverage fraction with the theorem
/// bound applicable to its topology. Non-regular graphs get NoBound. Flags
/// non-Nash partitions but still reports the comparison.
BoundCheck verify_richest_bound(const Instance& inst, const Partition& partition,
                                const RiskModel& risk, SamplingConfig cfg = {});

}  // namespace coalition

#endif
