#include "coalition/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "detail_rng.hpp"

namespace coalition {

namespace {

void check_r(double r) {
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("risk aversion r must lie in (0,1)");
}

// 12 z^r must be a vertex count; rounding would break the construction's
// exact inequalities.
long long integral_clique_size(long long z, double r) {
  double val = 12.0 * std::pow(static_cast<double>(z), r);
  double rounded = std::round(val);
  if (std::abs(val - rounded) > 1e-9 * std::max(1.0, rounded)) return -1;
  return static_cast<long long>(rounded);
}

}  // namespace

GzResult gen_gz(long long z, double r) {
  check_r(r);
  if (z < 1) throw std::invalid_argument("z must be a positive integer");

  GzSpec spec;
  spec.z = z;
  spec.r = r;
  spec.feasibility_lhs = std::pow(static_cast<double>(z), r);
  spec.feasibility_rhs = 1.0 / (3.0 * (std::pow(2.0, 1.0 - r) - 1.0));
  if (!(spec.feasibility_lhs > spec.feasibility_rhs))
    throw std::invalid_argument(
        "infeasible z: requires z^r > 1/(3(2^(1-r)-1)), got " +
        std::to_string(spec.feasibility_lhs) + " <= " +
        std::to_string(spec.feasibility_rhs));
  spec.clique_size = integral_clique_size(z, r);
  if (spec.clique_size < 0)
    throw std::invalid_argument("12 z^r is not integral for z=" +
                                std::to_string(z) + "; pick z so that 12 z^r "
                                "is a whole vertex count");
  spec.path_len = 3 * z;

  const long long K = spec.clique_size;
  const long long n = K + spec.path_len;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(K * (K - 1) / 2 + spec.path_len));
  for (int u = 0; u < K; ++u)
    for (int v = u + 1; v < K; ++v) edges.emplace_back(u, v);
  // path hangs off clique vertex 0
  int prev = 0;
  for (long long p = 0; p < spec.path_len; ++p) {
    int cur = static_cast<int>(K + p);
    edges.emplace_back(prev, cur);
    prev = cur;
  }

  GzResult res;
  res.graph = GraphTopology(static_cast<int>(n), std::move(edges));
  res.spec = spec;
  res.attach_vertex = 0;
  res.richest_fraction =
      static_cast<double>(K + 1) / static_cast<double>(K + spec.path_len);
  return res;
}

GzClaims verify_gz_claims(const GzResult& gz, const RiskModel& risk) {
  const GraphTopology& g = gz.graph;
  const long long K = gz.spec.clique_size;
  const long long n = g.n;
  const double inv2 = std::pow(0.5, 1.0 - risk.r);
  const double eps = risk.tie_eps;

  auto closed_size = [&](int v) { return g.degree(v) + 1; };

  GzClaims claims;
  claims.no_clique_clique_merge = true;
  claims.no_clique_path_merge = true;

  std::vector<char> marked(n, 0);
  for (int x = 0; x < K; ++x) {
    marked[x] = 1;
    for (int u : g.adjacency()[x]) marked[u] = 1;
    const double cov_x = closed_size(x);

    // singleton merges with every other clique vertex
    for (int y = x + 1; y < K && claims.no_clique_clique_merge; ++y) {
      long long extra = marked[y] ? 0 : 1;
      for (int u : g.adjacency()[y]) extra += !marked[u];
      double cov_y = closed_size(y);
      double merged = inv2 * static_cast<double>(cov_x + extra);
      if (merged > cov_x * (1.0 + eps) && merged > cov_y * (1.0 + eps))
        claims.no_clique_clique_merge = false;
    }
    // singleton merges with every path vertex
    for (long long y = K; y < n && claims.no_clique_path_merge; ++y) {
      int yi = static_cast<int>(y);
      long long extra = marked[yi] ? 0 : 1;
      for (int u : g.adjacency()[yi]) extra += !marked[u];
      double cov_y = closed_size(yi);
      double merged = inv2 * static_cast<double>(cov_x + extra);
      if (merged > cov_x * (1.0 + eps) && merged > cov_y * (1.0 + eps))
        claims.no_clique_path_merge = false;
    }

    marked[x] = 0;
    for (int u : g.adjacency()[x]) marked[u] = 0;
    if (!claims.no_clique_clique_merge && !claims.no_clique_path_merge) break;
  }

  // Every group of b path vertices covers at most 3b vertices, so its
  // per-member score is at most (1/b)^(1-r) * 3b; compare against the
  // attachment vertex alone, which scores 12 z^r + 1.
  claims.path_groups_poorer = true;
  const double u1 = static_cast<double>(K + 1);
  for (long long b = 1; b <= gz.spec.path_len; ++b) {
    double u2 = std::pow(1.0 / static_cast<double>(b), 1.0 - risk.r) * 3.0 *
                static_cast<double>(b);
    if (!(u2 < u1)) {
      claims.path_groups_poorer = false;
      break;
    }
  }
  return claims;
}

std::vector<long long> gz_feasible_z(double r, long long max_z) {
  check_r(r);
  std::vector<long long> out;
  double rhs = 1.0 / (3.0 * (std::pow(2.0, 1.0 - r) - 1.0));
  for (long long z = 1; z <= max_z; ++z) {
    if (integral_clique_size(z, r) < 0) continue;
    if (std::pow(static_cast<double>(z), r) > rhs) out.push_back(z);
  }
  return out;
}

GklResult gen_gkl(int k, int l, double r) {
  check_r(r);
  if (k < 1 || l < 1) throw std::invalid_argument("k and l must be >= 1");

  GklSpec spec;
  spec.k = k;
  spec.l = l;
  spec.r = r;
  spec.f_ell = std::pow(1.0 + 1.0 / (l + 1.0), 1.0 - r);
  double two_pow = std::pow(2.0, 1.0 - r);
  spec.gamma = (2.0 - two_pow) / (two_pow - 1.0);
  spec.k_threshold = l * (2.0 - spec.f_ell) / (spec.f_ell - 1.0);
  if (!(k > spec.k_threshold))
    throw std::invalid_argument(
        "infeasible (k,l): requires k > l(2-f(l))/(f(l)-1) = " +
        std::to_string(spec.k_threshold) + ", got k = " + std::to_string(k));

  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) edges.emplace_back(u, v);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < l; ++j) edges.emplace_back(i, k + i * l + j);

  GklResult res;
  res.graph = GraphTopology(k + k * l, std::move(edges));
  res.spec = spec;
  for (int i = 0; i < k; ++i) {
    Group gi;
    gi.members.push_back(i);
    for (int j = 0; j < l; ++j) gi.members.push_back(k + i * l + j);
    res.star_partition.groups.push_back(std::move(gi));
  }
  res.group_fraction =
      static_cast<double>(k + l) / static_cast<double>(k + k * l);
  return res;
}

std::pair<int, int> feasible_kl(double r, double c) {
  check_r(r);
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in (0,1)");
  double two_pow = std::pow(2.0, 1.0 - r);
  double gamma = (2.0 - two_pow) / (two_pow - 1.0);
  int l = 1;
  while (!((1.0 + 1.0 / gamma) / (1.0 + l) < c)) ++l;
  double f_ell = std::pow(1.0 + 1.0 / (l + 1.0), 1.0 - r);
  double threshold = l * (2.0 - f_ell) / (f_ell - 1.0);
  int k = static_cast<int>(std::floor(threshold)) + 1;
  if (k < 1) k = 1;
  return {k, l};
}

Instance gen_random_line(int n, double extent, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one player");
  if (!(extent > 0)) throw std::invalid_argument("extent must be positive");
  detail::Rng rng(detail::splitmix64(seed ^ 0x11111ULL));
  Line1D line;
  line.positions.reserve(n);
  for (int i = 0; i < n; ++i) line.positions.push_back(rng.u01() * extent);
  return Instance{std::move(line)};
}

Instance gen_random_euclid(int d, int n, double extent, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (n < 1) throw std::invalid_argument("need at least one player");
  if (!(extent > 0)) throw std::invalid_argument("extent must be positive");
  detail::Rng rng(detail::splitmix64(seed ^ 0x22222ULL));
  EuclideanD e;
  e.d = d;
  e.positions.resize(n);
  for (int i = 0; i < n; ++i) {
    e.positions[i].resize(d);
    for (int t = 0; t < d; ++t) e.positions[i][t] = rng.u01() * extent;
  }
  return Instance{std::move(e)};
}

Instance gen_random_regular(int n, int f, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one vertex");
  if (f < 1 || f >= n)
    throw std::invalid_argument("degree must satisfy 1 <= f < n");
  if ((static_cast<long long>(n) * f) % 2 != 0)
    throw std::invalid_argument("n*f must be even for an f-regular graph");

  detail::Rng rng(detail::splitmix64(seed ^ 0x33333ULL));
  std::vector<int> stubs(static_cast<std::size_t>(n) * f);
  for (int v = 0; v < n; ++v)
    for (int s = 0; s < f; ++s) stubs[static_cast<std::size_t>(v) * f + s] = v;

  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (std::size_t i = stubs.size() - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.below(i + 1)]);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(stubs.size() / 2);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) ok = false;
      else edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return Instance{GraphTopology(n, std::move(edges))};
  }
  throw std::runtime_error("pairing model failed to produce a simple graph");
}

}  // namespace coalition
