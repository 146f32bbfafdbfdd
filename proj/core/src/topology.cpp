#include "coalition/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "detail_rng.hpp"

namespace coalition {

namespace {

using detail::Rng;
using detail::splitmix64;

void check_members(const std::vector<PlayerId>& members, int n) {
  if (members.empty()) throw std::invalid_argument("member set is empty");
  for (PlayerId p : members) {
    if (p < 0 || p >= n)
      throw std::invalid_argument("player id " + std::to_string(p) +
                                  " out of range [0," + std::to_string(n) + ")");
  }
}

double sq(double x) { return x * x; }

}  // namespace

GraphTopology::GraphTopology(int n, std::vector<std::pair<int, int>> e)
    : n(n), edges(std::move(e)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  adj_.assign(n, {});
  std::vector<std::pair<int, int>> canon;
  canon.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  edges = std::move(canon);
  for (auto [u, v] : edges) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
}

int GraphTopology::max_degree() const {
  int m = 0;
  for (int v = 0; v < n; ++v) m = std::max(m, degree(v));
  return m;
}

std::optional<int> GraphTopology::regular_degree() const {
  if (n == 0) return std::nullopt;
  int f = degree(0);
  for (int v = 1; v < n; ++v)
    if (degree(v) != f) return std::nullopt;
  return f;
}

int Instance::player_count() const {
  return std::visit(
      [](const auto& t) -> int {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, GraphTopology>)
          return t.n;
        else
          return static_cast<int>(t.positions.size());
      },
      topo);
}

bool Instance::exact() const {
  if (std::holds_alternative<EuclideanD>(topo))
    return std::get<EuclideanD>(topo).d == 1;
  return true;
}

double interval_union_length(std::vector<std::pair<double, double>> iv) {
  if (iv.empty()) return 0;
  std::sort(iv.begin(), iv.end());
  double total = 0;
  double lo = iv[0].first, hi = iv[0].second;
  for (std::size_t i = 1; i < iv.size(); ++i) {
    if (iv[i].first > hi) {
      total += hi - lo;
      lo = iv[i].first;
      hi = iv[i].second;
    } else {
      hi = std::max(hi, iv[i].second);
    }
  }
  return total + (hi - lo);
}

double unit_ball_volume(int d) {
  if (d < 0) throw std::invalid_argument("negative dimension");
  if (d == 0) return 1.0;
  if (d == 1) return 2.0;
  return (2.0 * std::numbers::pi / d) * unit_ball_volume(d - 2);
}

double two_ball_intersection_bound(double a, int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (a < 0) throw std::invalid_argument("negative half-distance");
  if (a > 1) return 0.0;  // balls disjoint
  return 2.0 * std::pow(1.0 - a * a, (d - 1) / 2.0) * unit_ball_volume(d - 1);
}

McEstimate mc_union_ball_volume(const std::vector<std::vector<double>>& centers,
                                int d, double radius, SamplingConfig cfg) {
  if (centers.empty()) throw std::invalid_argument("no ball centers");
  if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");
  const std::size_t k = centers.size();
  const double box_vol = std::pow(2.0 * radius, d);
  const double r2 = radius * radius;

  double value = 0, var = 0;
  std::vector<double> p(d);
  for (std::size_t i = 0; i < k; ++i) {
    long long ni = cfg.samples / static_cast<long long>(k) +
                   (static_cast<long long>(i) < cfg.samples % static_cast<long long>(k) ? 1 : 0);
    if (ni == 0) continue;
    Rng rng(splitmix64(cfg.seed ^ (0xba11c0de5eedULL + i * 0x9e3779b97f4a7c15ULL)));
    long long hits = 0;
    for (long long s = 0; s < ni; ++s) {
      for (int t = 0; t < d; ++t)
        p[t] = centers[i][t] + (2.0 * rng.u01() - 1.0) * radius;
      // first-owner attribution: count the point only in the first box
      // that contains it
      bool owned = true;
      for (std::size_t j = 0; j < i; ++j) {
        bool inside_box = true;
        for (int t = 0; t < d; ++t)
          if (std::abs(p[t] - centers[j][t]) > radius) { inside_box = false; break; }
        if (inside_box) { owned = false; break; }
      }
      if (!owned) continue;
      for (std::size_t j = 0; j < k; ++j) {
        double dist2 = 0;
        for (int t = 0; t < d; ++t) dist2 += sq(p[t] - centers[j][t]);
        if (dist2 <= r2) { ++hits; break; }
      }
    }
    double ph = static_cast<double>(hits) / static_cast<double>(ni);
    value += box_vol * ph;
    var += sq(box_vol) * ph * (1.0 - ph) / static_cast<double>(ni);
  }
  return {value, std::sqrt(var)};
}

namespace {

// Shared-sample marginal: one point set measures both unions, so the
// difference is pointwise nonnegative.
McEstimate mc_union_marginal(const std::vector<std::vector<double>>& members,
                             const std::vector<double>& extra, int d,
                             double radius, SamplingConfig cfg) {
  std::vector<std::vector<double>> all = members;
  all.push_back(extra);
  const std::size_t k = all.size();
  const double box_vol = std::pow(2.0 * radius, d);
  const double r2 = radius * radius;

  double value = 0, var = 0;
  std::vector<double> p(d);
  for (std::size_t i = 0; i < k; ++i) {
    long long ni = cfg.samples / static_cast<long long>(k) +
                   (static_cast<long long>(i) < cfg.samples % static_cast<long long>(k) ? 1 : 0);
    if (ni == 0) continue;
    Rng rng(splitmix64(cfg.seed ^ (0xba11c0de5eedULL + i * 0x9e3779b97f4a7c15ULL)));
    long long gained = 0;
    for (long long s = 0; s < ni; ++s) {
      for (int t = 0; t < d; ++t)
        p[t] = all[i][t] + (2.0 * rng.u01() - 1.0) * radius;
      bool owned = true;
      for (std::size_t j = 0; j < i; ++j) {
        bool inside_box = true;
        for (int t = 0; t < d; ++t)
          if (std::abs(p[t] - all[j][t]) > radius) { inside_box = false; break; }
        if (inside_box) { owned = false; break; }
      }
      if (!owned) continue;
      bool in_members = false;
      for (const auto& c : members) {
        double dist2 = 0;
        for (int t = 0; t < d; ++t) dist2 += sq(p[t] - c[t]);
        if (dist2 <= r2) { in_members = true; break; }
      }
      if (in_members) continue;
      double dist2 = 0;
      for (int t = 0; t < d; ++t) dist2 += sq(p[t] - extra[t]);
      if (dist2 <= r2) ++gained;
    }
    double ph = static_cast<double>(gained) / static_cast<double>(ni);
    value += box_vol * ph;
    var += sq(box_vol) * ph * (1.0 - ph) / static_cast<double>(ni);
  }
  return {value, std::sqrt(var)};
}

std::pair<double, double> measure_exact_or_mc(const Instance& inst,
                                              const std::vector<PlayerId>& members,
                                              SamplingConfig cfg) {
  if (const auto* line = std::get_if<Line1D>(&inst.topo)) {
    std::vector<std::pair<double, double>> iv;
    iv.reserve(members.size());
    for (PlayerId p : members)
      iv.emplace_back(line->positions[p] - 1.0, line->positions[p] + 1.0);
    return {interval_union_length(std::move(iv)), 0.0};
  }
  if (const auto* g = std::get_if<GraphTopology>(&inst.topo)) {
    std::vector<char> covered(g->n, 0);
    for (PlayerId p : members) {
      covered[p] = 1;
      for (int u : g->adjacency()[p]) covered[u] = 1;
    }
    long long c = std::count(covered.begin(), covered.end(), char(1));
    return {static_cast<double>(c), 0.0};
  }
  const auto& e = std::get<EuclideanD>(inst.topo);
  if (e.d == 1) {
    std::vector<std::pair<double, double>> iv;
    for (PlayerId p : members)
      iv.emplace_back(e.positions[p][0] - 1.0, e.positions[p][0] + 1.0);
    return {interval_union_length(std::move(iv)), 0.0};
  }
  std::vector<std::vector<double>> centers;
  centers.reserve(members.size());
  for (PlayerId p : members) centers.push_back(e.positions[p]);
  McEstimate est = mc_union_ball_volume(centers, e.d, 1.0, cfg);
  return {est.value, est.std_error};
}

}  // namespace

CoverageOracle::CoverageOracle(const Instance& inst, SamplingConfig cfg)
    : inst_(&inst), cfg_(cfg), n_(inst.player_count()) {
  if (n_ < 1) throw std::invalid_argument("instance has no players");
  if (const auto* e = std::get_if<EuclideanD>(&inst.topo)) {
    for (const auto& pos : e->positions)
      if (static_cast<int>(pos.size()) != e->d)
        throw std::invalid_argument("position dimension mismatch");
  }
  if (inst.is_graph()) {
    // every vertex covers itself, so the union of all coverages is V
    total_ = std::get<GraphTopology>(inst.topo).n;
  } else {
    std::vector<PlayerId> all(n_);
    for (int i = 0; i < n_; ++i) all[i] = i;
    auto [a, err] = measure_exact_or_mc(inst, all, cfg_);
    total_ = a;
    total_err_ = err;
  }
}

bool CoverageOracle::exact() const { return inst_->exact(); }

std::pair<double, double> CoverageOracle::measure(
    const std::vector<PlayerId>& members) const {
  check_members(members, n_);
  if (n_ <= 64) {
    std::uint64_t mask = 0;
    for (PlayerId p : members) mask |= (1ULL << p);
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;
    auto res = measure_exact_or_mc(*inst_, members, cfg_);
    cache_.emplace(mask, res);
    return res;
  }
  return measure_exact_or_mc(*inst_, members, cfg_);
}

CoverageReport CoverageOracle::coverage(const std::vector<PlayerId>& members) const {
  auto [a, err] = measure(members);
  CoverageReport rep;
  rep.a_s = a;
  rep.a_total = total_;
  rep.fraction = total_ > 0 ? a / total_ : 0.0;
  rep.std_error = err;
  return rep;
}

CoverageReport coverage_measure(const std::vector<PlayerId>& members,
                                const Instance& inst, SamplingConfig cfg) {
  return CoverageOracle(inst, cfg).coverage(members);
}

CoverageReport total_measure(const Instance& inst, SamplingConfig cfg) {
  CoverageOracle oracle(inst, cfg);
  CoverageReport rep;
  rep.a_s = oracle.total();
  rep.a_total = oracle.total();
  rep.fraction = 1.0;
  rep.std_error = oracle.total_std_error();
  return rep;
}

double marginal_contribution(PlayerId x, const std::vector<PlayerId>& members,
                             const Instance& inst, SamplingConfig cfg) {
  check_members(members, inst.player_count());
  if (x < 0 || x >= inst.player_count())
    throw std::invalid_argument("player id out of range");
  if (std::find(members.begin(), members.end(), x) != members.end())
    throw std::invalid_argument("player already in member set");

  if (inst.exact()) {
    auto [base, e0] = measure_exact_or_mc(inst, members, cfg);
    std::vector<PlayerId> with = members;
    with.push_back(x);
    auto [grown, e1] = measure_exact_or_mc(inst, with, cfg);
    return grown - base;
  }
  const auto& e = std::get<EuclideanD>(inst.topo);
  std::vector<std::vector<double>> centers;
  for (PlayerId p : members) centers.push_back(e.positions[p]);
  return mc_union_marginal(centers, e.positions[x], e.d, 1.0, cfg).value;
}

}  // namespace coalition
