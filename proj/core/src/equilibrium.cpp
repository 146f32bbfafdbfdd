#include "coalition/equilibrium.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace coalition {

MoveDescriptor MoveDescriptor::merge(int i, int j) {
  MoveDescriptor m;
  m.kind = MoveKind::Merge;
  m.i = std::min(i, j);
  m.j = std::max(i, j);
  return m;
}

MoveDescriptor MoveDescriptor::defect(PlayerId x, int from, int to) {
  MoveDescriptor m;
  m.kind = MoveKind::Defect;
  m.player = x;
  m.from = from;
  m.to = to;
  return m;
}

MoveDescriptor MoveDescriptor::defect_to_empty(PlayerId x, int from) {
  MoveDescriptor m;
  m.kind = MoveKind::DefectToEmpty;
  m.player = x;
  m.from = from;
  return m;
}

std::string MoveDescriptor::describe() const {
  switch (kind) {
    case MoveKind::Merge:
      return "MERGE(" + std::to_string(i) + "," + std::to_string(j) + ")";
    case MoveKind::Defect:
      return "DEFECT(" + std::to_string(player) + ":" + std::to_string(from) +
             "->" + std::to_string(to) + ")";
    case MoveKind::DefectToEmpty:
      return "DEFECT_TO_EMPTY(" + std::to_string(player) + ":" +
             std::to_string(from) + ")";
  }
  return "?";
}

namespace {

struct ScanResult {
  std::optional<MoveDescriptor> incentivized;
  std::optional<MoveDescriptor> marginal;
};

ScanResult scan_moves(const Partition& partition, const CoverageOracle& oracle,
                      const RiskModel& risk, bool allow_empty) {
  ScanResult res;
  const int gc = partition.group_count();
  auto note = [&](Verdict v, const MoveDescriptor& m) {
    if (v == Verdict::Yes && !res.incentivized) res.incentivized = m;
    if (v == Verdict::Marginal && !res.marginal) res.marginal = m;
    return res.incentivized.has_value();
  };

  for (int i = 0; i < gc && !res.incentivized; ++i)
    for (int j = i + 1; j < gc; ++j) {
      auto dec = merge_incentivized(i, j, partition, oracle, risk);
      if (note(dec.verdict, MoveDescriptor::merge(i, j))) break;
    }
  if (res.incentivized) return res;

  const int n = oracle.player_count();
  for (PlayerId x = 0; x < n && !res.incentivized; ++x) {
    int from = partition.group_of(x);
    for (int to = 0; to < gc; ++to) {
      if (to == from) continue;
      auto dec = defect_incentivized(x, from, to, partition, oracle, risk);
      if (note(dec.verdict, MoveDescriptor::defect(x, from, to))) break;
    }
  }
  if (res.incentivized || !allow_empty) return res;

  for (PlayerId x = 0; x < n; ++x) {
    int from = partition.group_of(x);
    if (partition.groups[from].size() == 1) continue;  // already a singleton
    auto dec = defect_incentivized(x, from, std::nullopt, partition, oracle,
                                   risk, true);
    if (note(dec.verdict, MoveDescriptor::defect_to_empty(x, from))) break;
  }
  return res;
}

unsigned long long bell_number(int n) {
  // Bell triangle; saturates well before overflow for the n we refuse at
  std::vector<unsigned long long> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<unsigned long long> next{row.back()};
    for (unsigned long long v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace

std::optional<MoveDescriptor> find_incentivized_move(const Partition& partition,
                                                     const CoverageOracle& oracle,
                                                     const RiskModel& risk,
                                                     bool allow_empty_defect) {
  partition.validate(oracle.player_count());
  return scan_moves(partition, oracle, risk, allow_empty_defect).incentivized;
}

std::pair<int, double> richest_group(const Partition& partition,
                                     const CoverageOracle& oracle,
                                     const RiskModel& risk) {
  int best = 0;
  double best_util = -1;
  double best_fraction = 0;
  for (int gi = 0; gi < partition.group_count(); ++gi) {
    CoverageReport rep = oracle.coverage(partition.groups[gi].members);
    double u = group_expected_utility(partition.groups[gi].size(), rep.fraction, risk);
    if (u > best_util) {
      best_util = u;
      best = gi;
      best_fraction = rep.fraction;
    }
  }
  return {best, best_fraction};
}

EquilibriumReport is_nash(const Partition& partition, const CoverageOracle& oracle,
                          const RiskModel& risk, bool allow_empty_defect) {
  partition.validate(oracle.player_count());
  EquilibriumReport rep;
  ScanResult scan = scan_moves(partition, oracle, risk, allow_empty_defect);
  rep.is_nash = !scan.incentivized.has_value();
  rep.violating_move = scan.incentivized;
  rep.marginal_move = scan.marginal;
  rep.indeterminate = rep.is_nash && scan.marginal.has_value();
  rep.confidence = oracle.exact() ? Confidence::Exact : Confidence::MonteCarlo;
  for (int gi = 0; gi < partition.group_count(); ++gi) {
    CoverageReport c = oracle.coverage(partition.groups[gi].members);
    rep.group_utilities.push_back(
        group_expected_utility(partition.groups[gi].size(), c.fraction, risk));
  }
  auto [ri, rf] = richest_group(partition, oracle, risk);
  rep.richest_index = ri;
  rep.richest_fraction = rf;
  return rep;
}

Partition apply_move(const Partition& partition, const MoveDescriptor& move) {
  Partition out = partition;
  switch (move.kind) {
    case MoveKind::Merge: {
      Group& gi = out.groups[move.i];
      Group& gj = out.groups[move.j];
      gi.members.insert(gi.members.end(), gj.members.begin(), gj.members.end());
      std::sort(gi.members.begin(), gi.members.end());
      out.groups.erase(out.groups.begin() + move.j);
      return out;
    }
    case MoveKind::Defect: {
      Group& src = out.groups[move.from];
      src.members.erase(
          std::remove(src.members.begin(), src.members.end(), move.player),
          src.members.end());
      Group& dst = out.groups[move.to];
      dst.members.insert(
          std::lower_bound(dst.members.begin(), dst.members.end(), move.player),
          move.player);
      if (src.members.empty()) out.groups.erase(out.groups.begin() + move.from);
      return out;
    }
    case MoveKind::DefectToEmpty: {
      Group& src = out.groups[move.from];
      src.members.erase(
          std::remove(src.members.begin(), src.members.end(), move.player),
          src.members.end());
      out.groups.push_back(Group{{move.player}});
      if (src.members.empty()) out.groups.erase(out.groups.begin() + move.from);
      return out;
    }
  }
  throw std::logic_error("unknown move kind");
}

namespace {

std::vector<MoveDescriptor> collect_incentivized(const Partition& partition,
                                                 const CoverageOracle& oracle,
                                                 const RiskModel& risk,
                                                 bool allow_empty) {
  std::vector<MoveDescriptor> moves;
  const int gc = partition.group_count();
  for (int i = 0; i < gc; ++i)
    for (int j = i + 1; j < gc; ++j)
      if (merge_incentivized(i, j, partition, oracle, risk).incentivized())
        moves.push_back(MoveDescriptor::merge(i, j));
  const int n = oracle.player_count();
  for (PlayerId x = 0; x < n; ++x) {
    int from = partition.group_of(x);
    for (int to = 0; to < gc; ++to) {
      if (to == from) continue;
      if (defect_incentivized(x, from, to, partition, oracle, risk).incentivized())
        moves.push_back(MoveDescriptor::defect(x, from, to));
    }
    if (allow_empty && partition.groups[from].size() > 1 &&
        defect_incentivized(x, from, std::nullopt, partition, oracle, risk, true)
            .incentivized())
      moves.push_back(MoveDescriptor::defect_to_empty(x, from));
  }
  return moves;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

DynamicsResult best_response_dynamics(const Partition& initial,
                                      const CoverageOracle& oracle,
                                      const RiskModel& risk,
                                      const DynamicsConfig& config) {
  if (config.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  initial.validate(oracle.player_count());

  DynamicsResult res;
  res.final_partition = initial;
  std::uint64_t rng_state = config.seed;

  for (long long step = 0; step < config.max_steps; ++step) {
    std::optional<MoveDescriptor> chosen;
    if (config.random_order) {
      auto moves = collect_incentivized(res.final_partition, oracle, risk,
                                        config.allow_empty_defect);
      if (!moves.empty()) {
        rng_state = mix64(rng_state);
        chosen = moves[rng_state % moves.size()];
      }
    } else {
      chosen = scan_moves(res.final_partition, oracle, risk,
                          config.allow_empty_defect)
                   .incentivized;
    }
    if (!chosen) {
      res.converged = true;
      return res;
    }
    res.trace.push_back(*chosen);
    res.final_partition = apply_move(res.final_partition, *chosen);
  }
  res.converged = !scan_moves(res.final_partition, oracle, risk,
                              config.allow_empty_defect)
                       .incentivized.has_value();
  return res;
}

void for_each_set_partition(int n,
                            const std::function<void(const std::vector<int>&)>& f) {
  if (n < 1) throw std::invalid_argument("need at least one element");
  std::vector<int> rgs(n, 0);
  std::vector<int> prefmax(n, 0);  // max of rgs[0..i]
  while (true) {
    f(rgs);
    int i = n - 1;
    // next restricted growth string
    for (; i >= 1; --i) {
      if (rgs[i] <= prefmax[i - 1]) {
        ++rgs[i];
        prefmax[i] = std::max(prefmax[i - 1], rgs[i]);
        for (int j = i + 1; j < n; ++j) {
          rgs[j] = 0;
          prefmax[j] = prefmax[i];
        }
        break;
      }
    }
    if (i == 0) return;
  }
}

Partition partition_from_rgs(const std::vector<int>& rgs) {
  int blocks = 0;
  for (int v : rgs) blocks = std::max(blocks, v + 1);
  Partition part;
  part.groups.resize(blocks);
  for (int p = 0; p < static_cast<int>(rgs.size()); ++p)
    part.groups[rgs[p]].members.push_back(p);
  return part;
}

FastNashChecker::FastNashChecker(const Instance& inst, const RiskModel& risk)
    : n_(inst.player_count()), tie_eps_(risk.tie_eps) {
  if (!inst.exact())
    throw std::invalid_argument("fast checker requires an exact topology");
  if (n_ < 1 || n_ > 20)
    throw std::invalid_argument("fast checker supports 1..20 players");

  const std::size_t size = std::size_t{1} << n_;
  cov_.assign(size, 0.0);

  if (const auto* g = std::get_if<GraphTopology>(&inst.topo)) {
    std::vector<std::uint64_t> nb(n_, 0);
    for (int v = 0; v < n_; ++v) {
      nb[v] = 1ULL << v;
      for (int u : g->adjacency()[v]) nb[v] |= 1ULL << u;
    }
    std::vector<std::uint64_t> umask(size, 0);
    for (std::size_t m = 1; m < size; ++m) {
      int low = std::countr_zero(m);
      umask[m] = umask[m & (m - 1)] | nb[low];
      cov_[m] = static_cast<double>(std::popcount(umask[m]));
    }
    total_ = g->n;
  } else {
    std::vector<double> pos;
    if (const auto* line = std::get_if<Line1D>(&inst.topo)) {
      pos = line->positions;
    } else {
      for (const auto& p : std::get<EuclideanD>(inst.topo).positions)
        pos.push_back(p[0]);
    }
    std::vector<int> order(n_);
    for (int i = 0; i < n_; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return pos[a] < pos[b]; });
    for (std::size_t m = 1; m < size; ++m) {
      double len = 0, lo = 0, hi = 0;
      bool open = false;
      for (int idx : order) {
        if (!(m >> idx & 1)) continue;
        double a = pos[idx] - 1.0, b = pos[idx] + 1.0;
        if (!open) {
          lo = a; hi = b; open = true;
        } else if (a > hi) {
          len += hi - lo;
          lo = a; hi = b;
        } else {
          hi = std::max(hi, b);
        }
      }
      cov_[m] = len + (hi - lo);
    }
    total_ = cov_[size - 1];
  }

  inv_pow_.assign(n_ + 1, 0.0);
  for (int k = 1; k <= n_; ++k) inv_pow_[k] = std::pow(1.0 / k, 1.0 - risk.r);
}

bool FastNashChecker::is_nash_masks(const std::vector<std::uint64_t>& masks,
                                    const std::vector<int>& sizes,
                                    bool allow_empty) const {
  const int gc = static_cast<int>(masks.size());
  double score[64];
  for (int g = 0; g < gc; ++g) score[g] = inv_pow_[sizes[g]] * cov_[masks[g]];

  for (int i = 0; i < gc; ++i)
    for (int j = i + 1; j < gc; ++j) {
      double sm = inv_pow_[sizes[i] + sizes[j]] * cov_[masks[i] | masks[j]];
      if (sm > score[i] * (1.0 + tie_eps_) && sm > score[j] * (1.0 + tie_eps_))
        return false;
    }

  for (PlayerId x = 0; x < n_; ++x) {
    const std::uint64_t bit = 1ULL << x;
    int from = -1;
    for (int g = 0; g < gc; ++g)
      if (masks[g] & bit) { from = g; break; }
    for (int j = 0; j < gc; ++j) {
      if (j == from) continue;
      double sn = inv_pow_[sizes[j] + 1] * cov_[masks[j] | bit];
      if (sn > score[from] * (1.0 + tie_eps_) && sn > score[j] * (1.0 + tie_eps_))
        return false;
    }
    if (allow_empty && sizes[from] > 1) {
      double solo = inv_pow_[1] * cov_[bit];
      if (solo > score[from] * (1.0 + tie_eps_)) return false;
    }
  }
  return true;
}

bool FastNashChecker::is_nash(const Partition& partition, bool allow_empty) const {
  partition.validate(n_);
  std::vector<std::uint64_t> masks;
  std::vector<int> sizes;
  for (int g = 0; g < partition.group_count(); ++g) {
    masks.push_back(partition.mask(g));
    sizes.push_back(partition.groups[g].size());
  }
  return is_nash_masks(masks, sizes, allow_empty);
}

std::vector<Partition> enumerate_nash(const Instance& inst, const RiskModel& risk,
                                      bool allow_empty_defect, int n_limit,
                                      SamplingConfig cfg) {
  const int n = inst.player_count();
  if (n > n_limit)
    throw std::invalid_argument(
        "refusing to enumerate " + std::to_string(n) + " players: Bell(" +
        std::to_string(n) + ") = " + std::to_string(bell_number(n)) +
        " set partitions exceeds the n_limit of " + std::to_string(n_limit));

  std::vector<Partition> result;
  if (inst.exact() && n <= 20) {
    FastNashChecker fast(inst, risk);
    std::vector<std::uint64_t> masks(n);
    std::vector<int> sizes(n);
    for_each_set_partition(n, [&](const std::vector<int>& rgs) {
      int blocks = 0;
      for (int v : rgs) blocks = std::max(blocks, v + 1);
      std::fill(masks.begin(), masks.begin() + blocks, 0);
      std::fill(sizes.begin(), sizes.begin() + blocks, 0);
      for (int p = 0; p < n; ++p) {
        masks[rgs[p]] |= 1ULL << p;
        ++sizes[rgs[p]];
      }
      masks.resize(blocks);
      sizes.resize(blocks);
      if (fast.is_nash_masks(masks, sizes, allow_empty_defect))
        result.push_back(partition_from_rgs(rgs));
      masks.resize(n);
      sizes.resize(n);
    });
    return result;
  }

  CoverageOracle oracle(inst, cfg);
  for_each_set_partition(n, [&](const std::vector<int>& rgs) {
    Partition part = partition_from_rgs(rgs);
    if (!scan_moves(part, oracle, risk, allow_empty_defect).incentivized)
      result.push_back(std::move(part));
  });
  return result;
}

}  // namespace coalition
