#ifndef COALITION_GENERATORS_HPP
#define COALITION_GENERATORS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "coalition/model.hpp"
#include "coalition/topology.hpp"

namespace coalition {

/// Clique of size 12 z^r with a path of 3z extra vertices attached at one
/// clique vertex. Witnesses that a richest group's coverage fraction can be
/// made arbitrarily small on general graphs.
struct GzSpec {
  long long z = 0;
  double r = 0;
  long long clique_size = 0;  // 12 z^r, must be integral
  long long path_len = 0;     // 3z vertices beyond the attachment point
  double feasibility_lhs = 0; // z^r
  double feasibility_rhs = 0; // 1 / (3 (2^(1-r) - 1))
};

struct GzResult {
  GraphTopology graph;
  GzSpec spec;
  PlayerId attach_vertex = 0;  // the clique vertex carrying the path
  // (12 z^r + 1) / (12 z^r + 3z), the coverage fraction of {attach_vertex}
  double richest_fraction = 0;
};

GzResult gen_gz(long long z, double r);

/// The three claims constraining Nash group shapes on G_z: no two clique
/// vertices merge, no clique vertex merges with a path vertex, and every
/// path-only group is poorer than the singleton attachment vertex.
struct GzClaims {
  bool no_clique_clique_merge = false;
  bool no_clique_path_merge = false;
  bool path_groups_poorer = false;
  bool all() const {
    return no_clique_clique_merge && no_clique_path_merge && path_groups_poorer;
  }
};

GzClaims verify_gz_claims(const GzResult& gz, const RiskModel& risk);

/// Integers z <= max_z for which 12 z^r is integral and the G_z feasibility
/// condition holds.
std::vector<long long> gz_feasible_z(double r, long long max_z);

/// k-clique of primary vertices, each carrying l leaves. The star partition
/// {v_i} + leaves(v_i) is a Nash Equilibrium when k clears the f(l) threshold
/// (empty-group defection barred).
struct GklSpec {
  int k = 0;
  int l = 0;
  double r = 0;
  double f_ell = 0;        // (1 + 1/(l+1))^(1-r)
  double gamma = 0;        // (2 - 2^(1-r)) / (2^(1-r) - 1)
  double k_threshold = 0;  // l (2 - f_ell) / (f_ell - 1); require k > this
};

struct GklResult {
  GraphTopology graph;
  GklSpec spec;
  Partition star_partition;
  double group_fraction = 0;  // (k + l) / (k + k*l), per star group
};

GklResult gen_gkl(int k, int l, double r);

/// Smallest l with (1 + 1/gamma)/(1 + l) < c and the smallest integral k
/// above the gen_gkl threshold for that l; the resulting star partition's
/// per-group coverage fraction is < c.
std::pair<int, int> feasible_kl(double r, double c);

Instance gen_random_line(int n, double extent, std::uint64_t seed);
Instance gen_random_euclid(int d, int n, double extent, std::uint64_t seed);

/// Uniform random f-regular graph via the pairing model with full rejection
/// of loops and multi-edges. Requires n*f even and f < n.
Instance gen_random_regular(int n, int f, std::uint64_t seed);

}  // namespace coalition

#endif
