#include "coalition/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "coalition/equilibrium.hpp"

namespace coalition {

namespace {
void check_r(double r) {
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("risk aversion r must lie in (0,1)");
}
}  // namespace

double line_richest_bound(double r) {
  check_r(r);
  return 1.0 / (1.0 + 2.0 * (1.0 - r));
}

double euclid_bound_basic(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  return std::pow(3.0, -d);
}

double euclid_bound_delta(int d, double r) {
  check_r(r);
  if (d < 2)
    throw std::invalid_argument(
        "delta is undefined at d=1; use line_richest_bound instead");
  return std::sqrt(1.0 - std::pow(r / (2.0 * d), 2.0 / (d - 1)));
}

double euclid_bound_improved(int d, double r) {
  double delta = euclid_bound_delta(d, r);
  return std::pow(2.0 * delta + 1.0, -d);
}

double regular_graph_bound(int f, double r) {
  check_r(r);
  if (f < 1) throw std::invalid_argument("degree must be >= 1");
  return 1.0 / ((f - 1.0) / (r * (f + 1.0)) + 1.0);
}

double min_money_by_area(double lambda, double A, double c, double r) {
  check_r(r);
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in (0,1]");
  if (!(A > 0.0)) throw std::invalid_argument("total measure must be positive");
  if (!(c > 0.0)) throw std::invalid_argument("utility threshold must be positive");
  return lambda * A * std::pow(c, 1.0 / (1.0 - r));
}

double min_money_by_size(int k, double c, double A, long long N, double r) {
  check_r(r);
  if (k < 1) throw std::invalid_argument("group size must be >= 1");
  if (!(c > 0.0)) throw std::invalid_argument("utility threshold must be positive");
  if (!(A > 0.0)) throw std::invalid_argument("total measure must be positive");
  if (N < 1) throw std::invalid_argument("player count must be >= 1");
  return k * std::pow(c * A / N, 1.0 / (1.0 - r));
}

double exclusive_contribution_cap(TopologyKind kind, double r, int d_or_delta) {
  check_r(r);
  switch (kind) {
    case TopologyKind::Line:
      return 2.0 * (1.0 - r);
    case TopologyKind::Euclid:
      return (1.0 - r) * unit_ball_volume(d_or_delta);
    case TopologyKind::Graph:
      return (1.0 - r) * (d_or_delta + 1);
  }
  throw std::logic_error("unknown topology kind");
}

double exclusive_contribution_cap(const Instance& inst, double r) {
  if (std::holds_alternative<Line1D>(inst.topo))
    return exclusive_contribution_cap(TopologyKind::Line, r);
  if (const auto* e = std::get_if<EuclideanD>(&inst.topo))
    return exclusive_contribution_cap(TopologyKind::Euclid, r, e->d);
  return exclusive_contribution_cap(
      TopologyKind::Graph, r, std::get<GraphTopology>(inst.topo).max_degree());
}

BoundCheck verify_richest_bound(const Instance& inst, const Partition& partition,
                                const RiskModel& risk, SamplingConfig cfg) {
  CoverageOracle oracle(inst, cfg);
  EquilibriumReport rep = is_nash(partition, oracle, risk);

  BoundCheck check;
  check.partition_is_nash = rep.is_nash;
  check.observed = rep.richest_fraction;

  if (std::holds_alternative<Line1D>(inst.topo)) {
    check.bound_value = line_richest_bound(risk.r);
  } else if (const auto* e = std::get_if<EuclideanD>(&inst.topo)) {
    check.bound_value = e->d == 1 ? line_richest_bound(risk.r)
                                  : euclid_bound_improved(e->d, risk.r);
  } else {
    auto f = std::get<GraphTopology>(inst.topo).regular_degree();
    if (!f) {
      check.outcome = BoundOutcome::NoBound;
      return check;
    }
    check.bound_value = regular_graph_bound(*f, risk.r);
  }

  check.margin = check.observed - check.bound_value;
  double tol = 1e-9;
  if (!oracle.exact()) {
    CoverageReport c = oracle.coverage(partition.groups[rep.richest_index].members);
    tol = 3.0 * (c.std_error + oracle.total_std_error()) / oracle.total();
  }
  check.satisfied = check.margin >= -tol;
  return check;
}

}  // namespace coalition
