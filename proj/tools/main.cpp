// coalition: batch front door for the group-formation engine.
// Subcommands: check-nash, dynamics, enumerate, bounds, gen, coverage.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "coalition/bounds.hpp"
#include "coalition/equilibrium.hpp"
#include "coalition/generators.hpp"
#include "coalition/io.hpp"
#include "coalition/model.hpp"

using nlohmann::json;
using namespace coalition;

namespace {

constexpr int kExitNash = 0;
constexpr int kExitNotNash = 1;
constexpr int kExitIndeterminate = 2;
constexpr int kExitError = 3;

struct RunConfig {
  double r = 0.5;
  double M = 1.0;
  long long samples = 100000;
  std::uint64_t seed = 0x5eed5eed5eedULL;
  bool allow_empty_defect = false;
  double tolerance = 1e-12;
  int n_limit = 12;
};

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j = json::parse(in);
  if (j.value("schema_version", 1) != 1)
    throw std::runtime_error("unsupported config schema_version");
  RunConfig cfg;
  cfg.r = j.value("r", cfg.r);
  cfg.M = j.value("M", cfg.M);
  cfg.samples = j.value("samples", cfg.samples);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.allow_empty_defect = j.value("allow_empty_defect", cfg.allow_empty_defect);
  cfg.tolerance = j.value("tolerance", cfg.tolerance);
  cfg.n_limit = j.value("n_limit", cfg.n_limit);
  return cfg;
}

// Shared options; precedence is flag > COALITION_SEED (seed only) > config.
struct CommonOpts {
  std::string config_path;
  RunConfig cfg;
  CLI::App* app = nullptr;

  void attach(CLI::App* a) {
    app = a;
    a->add_option("--config", config_path, "JSON config file");
    a->add_option("--r", cfg.r, "risk aversion factor, in (0,1)");
    a->add_option("--M", cfg.M, "prize money");
    a->add_option("--samples", cfg.samples, "Monte Carlo sample count");
    a->add_option("--seed", cfg.seed, "RNG seed");
    a->add_flag("--allow-empty-defect", cfg.allow_empty_defect,
                "permit defection to an empty group");
    a->add_option("--tolerance", cfg.tolerance,
                  "relative tolerance of strict comparisons");
    a->add_option("--n-limit", cfg.n_limit, "player cap for enumeration");
  }

  RunConfig resolve() const {
    RunConfig out = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (const char* env = std::getenv("COALITION_SEED"))
      out.seed = std::stoull(env);
    if (app->count("--r")) out.r = cfg.r;
    if (app->count("--M")) out.M = cfg.M;
    if (app->count("--samples")) out.samples = cfg.samples;
    if (app->count("--seed")) out.seed = cfg.seed;
    if (app->count("--allow-empty-defect")) out.allow_empty_defect = cfg.allow_empty_defect;
    if (app->count("--tolerance")) out.tolerance = cfg.tolerance;
    if (app->count("--n-limit")) out.n_limit = cfg.n_limit;
    return out;
  }
};

json move_json(const MoveDescriptor& m) {
  return json::parse(moves_to_json({m}))[0];
}

json report_json(const EquilibriumReport& rep, const RunConfig& cfg) {
  json j;
  j["is_nash"] = rep.is_nash;
  j["confidence"] =
      rep.confidence == Confidence::Exact ? "EXACT" : "MONTE_CARLO";
  j["indeterminate"] = rep.indeterminate;
  if (rep.violating_move) j["violating_move"] = move_json(*rep.violating_move);
  if (rep.marginal_move) j["marginal_move"] = move_json(*rep.marginal_move);
  j["richest_index"] = rep.richest_index;
  j["richest_fraction"] = rep.richest_fraction;
  j["group_utilities"] = rep.group_utilities;
  j["seed"] = cfg.seed;
  return j;
}

std::string partition_string(const Partition& p) {
  std::ostringstream out;
  for (std::size_t g = 0; g < p.groups.size(); ++g) {
    if (g) out << "|";
    for (std::size_t i = 0; i < p.groups[g].members.size(); ++i)
      out << (i ? " " : "") << p.groups[g].members[i];
  }
  return out.str();
}

int cmd_check_nash(const RunConfig& cfg, const std::string& instance_path,
                   const std::string& partition_path) {
  Instance inst = read_instance(instance_path);
  Partition part = read_partition(partition_path, inst.player_count());
  RiskModel risk(cfg.r, cfg.M, cfg.tolerance);
  CoverageOracle oracle(inst, SamplingConfig{cfg.samples, cfg.seed});
  EquilibriumReport rep = is_nash(part, oracle, risk, cfg.allow_empty_defect);
  std::cout << report_json(rep, cfg).dump(2) << "\n";
  if (!rep.is_nash) return kExitNotNash;
  return rep.indeterminate ? kExitIndeterminate : kExitNash;
}

int cmd_dynamics(const RunConfig& cfg, const std::string& instance_path,
                 const std::string& init_path, const std::string& out_path,
                 const std::string& trace_path, long long max_steps,
                 const std::string& order) {
  Instance inst = read_instance(instance_path);
  Partition initial = init_path.empty()
                          ? Partition::singletons(inst.player_count())
                          : read_partition(init_path, inst.player_count());
  RiskModel risk(cfg.r, cfg.M, cfg.tolerance);
  CoverageOracle oracle(inst, SamplingConfig{cfg.samples, cfg.seed});
  DynamicsConfig dyn;
  dyn.max_steps = max_steps;
  dyn.random_order = order == "random";
  dyn.seed = cfg.seed;
  dyn.allow_empty_defect = cfg.allow_empty_defect;
  DynamicsResult res = best_response_dynamics(initial, oracle, risk, dyn);

  if (!out_path.empty()) write_partition(out_path, res.final_partition);
  json trace;
  trace["converged"] = res.converged;
  trace["steps"] = res.trace.size();
  trace["seed"] = cfg.seed;
  trace["moves"] = json::parse(moves_to_json(res.trace));
  trace["final_partition"] = partition_string(res.final_partition);
  if (!trace_path.empty())
    atomic_write(trace_path, trace.dump(2) + "\n");
  else
    std::cout << trace.dump(2) << "\n";
  return res.converged ? 0 : 1;
}

int cmd_enumerate(const RunConfig& cfg, const std::string& instance_path,
                  const std::string& out_path) {
  Instance inst = read_instance(instance_path);
  RiskModel risk(cfg.r, cfg.M, cfg.tolerance);
  auto nash = enumerate_nash(inst, risk, cfg.allow_empty_defect, cfg.n_limit,
                             SamplingConfig{cfg.samples, cfg.seed});
  std::ostringstream out;
  out.precision(12);
  out << "partition,richest_fraction,bound,satisfied\n";
  for (const Partition& p : nash) {
    BoundCheck check = verify_richest_bound(inst, p, risk,
                                            SamplingConfig{cfg.samples, cfg.seed});
    out << "\"" << partition_string(p) << "\"," << check.observed << ",";
    if (check.outcome == BoundOutcome::NoBound)
      out << "NO_BOUND,";
    else
      out << check.bound_value << ",";
    out << (check.outcome == BoundOutcome::NoBound
                ? "NO_BOUND"
                : (check.satisfied ? "true" : "false"))
        << "\n";
  }
  if (out_path.empty())
    std::cout << out.str();
  else
    atomic_write(out_path, out.str());
  return 0;
}

int cmd_bounds(const std::string& out_path, double r_min, double r_max,
               double r_step, int d_max, int f_max) {
  std::ostringstream out;
  out.precision(12);
  out << "topology,params,bound_value\n";
  for (double r = r_min; r <= r_max + 1e-12; r += r_step) {
    out << "line,r=" << r << "," << line_richest_bound(r) << "\n";
    for (int d = 2; d <= d_max; ++d) {
      out << "euclid_basic,r=" << r << ";d=" << d << ","
          << euclid_bound_basic(d) << "\n";
      out << "euclid_improved,r=" << r << ";d=" << d << ","
          << euclid_bound_improved(d, r) << "\n";
    }
    for (int f = 1; f <= f_max; ++f)
      out << "regular_graph,r=" << r << ";f=" << f << ","
          << regular_graph_bound(f, r) << "\n";
  }
  if (out_path.empty())
    std::cout << out.str();
  else
    atomic_write(out_path, out.str());
  return 0;
}

int cmd_coverage(const RunConfig& cfg, const std::string& instance_path,
                 const std::string& members_arg,
                 const std::string& partition_path) {
  Instance inst = read_instance(instance_path);
  CoverageOracle oracle(inst, SamplingConfig{cfg.samples, cfg.seed});
  json j;
  j["a_total"] = oracle.total();
  j["seed"] = cfg.seed;
  auto emit = [&](const std::vector<PlayerId>& members) {
    CoverageReport rep = oracle.coverage(members);
    json g;
    g["members"] = members;
    g["a_s"] = rep.a_s;
    g["fraction"] = rep.fraction;
    g["std_error"] = rep.std_error;
    return g;
  };
  if (!partition_path.empty()) {
    Partition part = read_partition(partition_path, inst.player_count());
    j["groups"] = json::array();
    for (const Group& g : part.groups) j["groups"].push_back(emit(g.members));
  } else {
    std::vector<PlayerId> members;
    std::stringstream ss(members_arg);
    PlayerId p;
    while (ss >> p) members.push_back(p);
    if (members.empty())
      for (int i = 0; i < inst.player_count(); ++i) members.push_back(i);
    j["groups"] = json::array({emit(members)});
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_gen(const RunConfig& cfg, const std::string& kind, long long z, int k,
            int l, int d, int n, int f, double extent,
            const std::string& out_path) {
  json meta;
  meta["kind"] = kind;
  meta["seed"] = cfg.seed;
  meta["r"] = cfg.r;
  if (kind == "gz") {
    GzResult gz = gen_gz(z, cfg.r);
    write_edge_list(out_path, gz.graph);
    meta["z"] = gz.spec.z;
    meta["clique_size"] = gz.spec.clique_size;
    meta["path_len"] = gz.spec.path_len;
    meta["feasibility_lhs_z^r"] = gz.spec.feasibility_lhs;
    meta["feasibility_rhs"] = gz.spec.feasibility_rhs;
    meta["attach_vertex"] = gz.attach_vertex;
    meta["richest_fraction"] = gz.richest_fraction;
  } else if (kind == "gkl") {
    GklResult gkl = gen_gkl(k, l, cfg.r);
    write_edge_list(out_path, gkl.graph);
    write_partition(out_path + ".partition", gkl.star_partition);
    meta["k"] = gkl.spec.k;
    meta["l"] = gkl.spec.l;
    meta["f_ell"] = gkl.spec.f_ell;
    meta["gamma"] = gkl.spec.gamma;
    meta["k_threshold"] = gkl.spec.k_threshold;
    meta["group_fraction"] = gkl.group_fraction;
    meta["partition_file"] = out_path + ".partition";
  } else if (kind == "line") {
    Instance inst = gen_random_line(n, extent, cfg.seed);
    write_positions_csv(out_path, inst);
    meta["n"] = n;
    meta["extent"] = extent;
  } else if (kind == "euclid") {
    Instance inst = gen_random_euclid(d, n, extent, cfg.seed);
    write_positions_csv(out_path, inst);
    meta["d"] = d;
    meta["n"] = n;
    meta["extent"] = extent;
  } else if (kind == "regular") {
    Instance inst = gen_random_regular(n, f, cfg.seed);
    write_edge_list(out_path, std::get<GraphTopology>(inst.topo));
    meta["n"] = n;
    meta["f"] = f;
  } else {
    throw std::invalid_argument("unknown generator kind '" + kind + "'");
  }
  atomic_write(out_path + ".meta.json", meta.dump(2) + "\n");
  std::cout << meta.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coalition formation game engine"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check-nash", "decide whether a partition is a Nash Equilibrium");
  std::string instance_path, partition_path;
  check->add_option("--instance", instance_path, "positions CSV or edge list")->required();
  check->add_option("--partition", partition_path, "partition file")->required();

  auto* dynamics = app.add_subcommand("dynamics", "run best-response dynamics");
  std::string dyn_instance, dyn_init, dyn_out, dyn_trace, dyn_order = "deterministic";
  long long dyn_steps = 10000;
  dynamics->add_option("--instance", dyn_instance)->required();
  dynamics->add_option("--init", dyn_init, "initial partition (default all singletons)");
  dynamics->add_option("--out", dyn_out, "final partition file");
  dynamics->add_option("--trace", dyn_trace, "trace JSON file (default stdout)");
  dynamics->add_option("--max-steps", dyn_steps);
  dynamics->add_option("--order", dyn_order, "deterministic or random");

  auto* enumerate = app.add_subcommand("enumerate", "list all Nash partitions of a small instance");
  std::string enum_instance, enum_out;
  enumerate->add_option("--instance", enum_instance)->required();
  enumerate->add_option("--out", enum_out, "CSV output (default stdout)");

  auto* bounds_cmd = app.add_subcommand("bounds", "tabulate the theorem bounds over a parameter grid");
  std::string bounds_out;
  double r_min = 0.1, r_max = 0.9, r_step = 0.1;
  int d_max = 4, f_max = 5;
  bounds_cmd->add_option("--out", bounds_out);
  bounds_cmd->add_option("--r-min", r_min);
  bounds_cmd->add_option("--r-max", r_max);
  bounds_cmd->add_option("--r-step", r_step);
  bounds_cmd->add_option("--d-max", d_max);
  bounds_cmd->add_option("--f-max", f_max);

  auto* gen = app.add_subcommand("gen", "generate instances (gz, gkl, line, euclid, regular)");
  std::string gen_kind, gen_out;
  long long gen_z = 4;
  int gen_k = 0, gen_l = 0, gen_d = 2, gen_n = 10, gen_f = 3;
  double gen_extent = 20.0;
  gen->add_option("kind", gen_kind, "gz | gkl | line | euclid | regular")->required();
  gen->add_option("--out", gen_out)->required();
  gen->add_option("--z", gen_z);
  gen->add_option("--k", gen_k);
  gen->add_option("--l", gen_l);
  gen->add_option("--d", gen_d);
  gen->add_option("--n", gen_n);
  gen->add_option("--f", gen_f);
  gen->add_option("--extent", gen_extent);

  auto* coverage = app.add_subcommand("coverage", "report coverage measures");
  std::string cov_instance, cov_members, cov_partition;
  coverage->add_option("--instance", cov_instance)->required();
  coverage->add_option("--members", cov_members, "space-separated player ids");
  coverage->add_option("--partition", cov_partition, "report every group of a partition");

  // common options live on every subcommand
  CommonOpts opt_check, opt_dyn, opt_enum, opt_gen, opt_cov;
  opt_check.attach(check);
  opt_dyn.attach(dynamics);
  opt_enum.attach(enumerate);
  opt_gen.attach(gen);
  opt_cov.attach(coverage);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return cmd_check_nash(opt_check.resolve(), instance_path, partition_path);
    if (dynamics->parsed())
      return cmd_dynamics(opt_dyn.resolve(), dyn_instance, dyn_init, dyn_out,
                          dyn_trace, dyn_steps, dyn_order);
    if (enumerate->parsed())
      return cmd_enumerate(opt_enum.resolve(), enum_instance, enum_out);
    if (bounds_cmd->parsed())
      return cmd_bounds(bounds_out, r_min, r_max, r_step, d_max, f_max);
    if (gen->parsed())
      return cmd_gen(opt_gen.resolve(), gen_kind, gen_z, gen_k, gen_l, gen_d,
                     gen_n, gen_f, gen_extent, gen_out);
    if (coverage->parsed())
      return cmd_coverage(opt_cov.resolve(), cov_instance, cov_members,
                          cov_partition);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
