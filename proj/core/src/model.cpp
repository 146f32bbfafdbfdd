#include "coalition/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coalition {

RiskModel::RiskModel(double r, double M, double tie_eps)
    : r(r), M(M), tie_eps(tie_eps) {
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("risk aversion r must lie in the open interval (0,1)");
  if (!(M > 0.0)) throw std::invalid_argument("prize money M must be positive");
  if (!(tie_eps >= 0.0)) throw std::invalid_argument("tie_eps must be nonnegative");
}

double utility(double x, const RiskModel& risk) {
  if (x < 0) throw std::invalid_argument("utility is defined for nonnegative amounts");
  return std::pow(x, 1.0 - risk.r);
}

double group_expected_utility(int n, double p, const RiskModel& risk) {
  if (n < 1) throw std::invalid_argument("group size must be >= 1");
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("coverage fraction must lie in [0,1]");
  return utility(risk.M / n, risk) * p;
}

bool Group::contains(PlayerId p) const {
  return std::binary_search(members.begin(), members.end(), p);
}

Partition Partition::singletons(int n) {
  Partition part;
  part.groups.reserve(n);
  for (int i = 0; i < n; ++i) part.groups.push_back(Group{{i}});
  return part;
}

Partition Partition::grand_coalition(int n) {
  Group g;
  g.members.resize(n);
  for (int i = 0; i < n; ++i) g.members[i] = i;
  return Partition{{g}};
}

int Partition::group_of(PlayerId p) const {
  for (int gi = 0; gi < group_count(); ++gi)
    if (groups[gi].contains(p)) return gi;
  return -1;
}

void Partition::validate(int n_players) const {
  std::vector<char> seen(n_players, 0);
  for (const Group& g : groups) {
    if (g.members.empty()) throw std::invalid_argument("empty group in partition");
    for (std::size_t i = 0; i < g.members.size(); ++i) {
      PlayerId p = g.members[i];
      if (p < 0 || p >= n_players)
        throw std::invalid_argument("player id " + std::to_string(p) + " out of range");
      if (i > 0 && g.members[i - 1] >= p)
        throw std::invalid_argument("group members must be sorted and unique");
      if (seen[p])
        throw std::invalid_argument("player " + std::to_string(p) +
                                    " appears in more than one group");
      seen[p] = 1;
    }
  }
  for (int p = 0; p < n_players; ++p)
    if (!seen[p])
      throw std::invalid_argument("player " + std::to_string(p) +
                                  " missing from partition");
}

std::uint64_t Partition::mask(int gi) const {
  std::uint64_t m = 0;
  for (PlayerId p : groups[gi].members) m |= (1ULL << p);
  return m;
}

bool Partition::operator==(const Partition& other) const {
  auto canon = [](const Partition& p) {
    std::vector<std::vector<PlayerId>> gs;
    for (const Group& g : p.groups) gs.push_back(g.members);
    std::sort(gs.begin(), gs.end());
    return gs;
  };
  return canon(*this) == canon(other);
}

namespace detail {

double group_score(int n, double a_s, const RiskModel& risk) {
  return std::pow(1.0 / n, 1.0 - risk.r) * a_s;
}

Verdict strictly_exceeds(double a, double err_a, double b, double err_b,
                         const RiskModel& risk, bool exact) {
  if (exact) return a > b * (1.0 + risk.tie_eps) ? Verdict::Yes : Verdict::No;
  double gap = a - b;
  double sigma = std::sqrt(err_a * err_a + err_b * err_b);
  if (gap > 3.0 * sigma) return Verdict::Yes;
  if (gap < -3.0 * sigma) return Verdict::No;
  return Verdict::Marginal;
}

// AND of two strict comparisons: No dominates, then Marginal.
static Verdict both(Verdict a, Verdict b) {
  if (a == Verdict::No || b == Verdict::No) return Verdict::No;
  if (a == Verdict::Marginal || b == Verdict::Marginal) return Verdict::Marginal;
  return Verdict::Yes;
}

}  // namespace detail

IncentiveDecision merge_incentivized(int i, int j, const Partition& partition,
                                     const CoverageOracle& oracle,
                                     const RiskModel& risk) {
  int gc = partition.group_count();
  if (i < 0 || j < 0 || i >= gc || j >= gc)
    throw std::invalid_argument("group index out of range");
  if (i == j) throw std::invalid_argument("cannot merge a group with itself");

  const bool exact = oracle.exact();
  const Group& gi = partition.groups[i];
  const Group& gj = partition.groups[j];
  auto [ai, ei] = oracle.measure(gi.members);
  auto [aj, ej] = oracle.measure(gj.members);

  std::vector<PlayerId> merged = gi.members;
  merged.insert(merged.end(), gj.members.begin(), gj.members.end());
  std::sort(merged.begin(), merged.end());
  auto [am, em] = oracle.measure(merged);

  double si = detail::group_score(gi.size(), ai, risk);
  double sj = detail::group_score(gj.size(), aj, risk);
  int nm = gi.size() + gj.size();
  double sm = detail::group_score(nm, am, risk);
  double sig_i = detail::group_score(gi.size(), ei, risk);
  double sig_j = detail::group_score(gj.size(), ej, risk);
  double sig_m = detail::group_score(nm, em, risk);

  IncentiveDecision dec;
  dec.verdict = detail::both(
      detail::strictly_exceeds(sm, sig_m, si, sig_i, risk, exact),
      detail::strictly_exceeds(sm, sig_m, sj, sig_j, risk, exact));
  double total = oracle.total();
  dec.utility_before_first = group_expected_utility(gi.size(), ai / total, risk);
  dec.utility_before_second = group_expected_utility(gj.size(), aj / total, risk);
  dec.utility_after = group_expected_utility(nm, am / total, risk);
  return dec;
}

IncentiveDecision defect_incentivized(PlayerId x, int from, std::optional<int> to,
                                      const Partition& partition,
                                      const CoverageOracle& oracle,
                                      const RiskModel& risk, bool allow_empty) {
  int gc = partition.group_count();
  if (from < 0 || from >= gc) throw std::invalid_argument("source group index out of range");
  if (!partition.groups[from].contains(x))
    throw std::invalid_argument("player is not a member of the source group");
  if (!to.has_value() && !allow_empty)
    throw std::invalid_argument("defection to an empty group is not allowed");
  if (to.has_value() && (*to < 0 || *to >= gc))
    throw std::invalid_argument("target group index out of range");
  if (to.has_value() && *to == from)
    throw std::invalid_argument("target group must differ from the source");

  const bool exact = oracle.exact();
  const Group& src = partition.groups[from];
  auto [a_src, e_src] = oracle.measure(src.members);
  double s_x = detail::group_score(src.size(), a_src, risk);
  double sig_x = detail::group_score(src.size(), e_src, risk);
  double total = oracle.total();

  IncentiveDecision dec;
  dec.utility_before_first = group_expected_utility(src.size(), a_src / total, risk);

  if (!to.has_value()) {
    auto [a_solo, e_solo] = oracle.measure({x});
    double s_solo = detail::group_score(1, a_solo, risk);
    double sig_solo = detail::group_score(1, e_solo, risk);
    dec.verdict = detail::strictly_exceeds(s_solo, sig_solo, s_x, sig_x, risk, exact);
    dec.utility_before_second = 0;
    dec.utility_after = group_expected_utility(1, a_solo / total, risk);
    return dec;
  }

  const Group& tgt = partition.groups[*to];
  auto [a_tgt, e_tgt] = oracle.measure(tgt.members);
  std::vector<PlayerId> grown = tgt.members;
  grown.insert(std::lower_bound(grown.begin(), grown.end(), x), x);
  auto [a_new, e_new] = oracle.measure(grown);

  double s_tgt = detail::group_score(tgt.size(), a_tgt, risk);
  double sig_tgt = detail::group_score(tgt.size(), e_tgt, risk);
  double s_new = detail::group_score(tgt.size() + 1, a_new, risk);
  double sig_new = detail::group_score(tgt.size() + 1, e_new, risk);

  dec.verdict = detail::both(
      detail::strictly_exceeds(s_new, sig_new, s_x, sig_x, risk, exact),
      detail::strictly_exceeds(s_new, sig_new, s_tgt, sig_tgt, risk, exact));
  dec.utility_before_second = group_expected_utility(tgt.size(), a_tgt / total, risk);
  dec.utility_after = group_expected_utility(tgt.size() + 1, a_new / total, risk);
  return dec;
}

IncentiveDecision merge_incentivized(int i, int j, const Partition& partition,
                                     const Instance& inst, const RiskModel& risk,
                                     SamplingConfig cfg) {
  CoverageOracle oracle(inst, cfg);
  return merge_incentivized(i, j, partition, oracle, risk);
}

IncentiveDecision defect_incentivized(PlayerId x, int from, std::optional<int> to,
                                      const Partition& partition,
                                      const Instance& inst, const RiskModel& risk,
                                      bool allow_empty, SamplingConfig cfg) {
  CoverageOracle oracle(inst, cfg);
  return defect_incentivized(x, from, to, partition, oracle, risk, allow_empty);
}

}  // namespace coalition
