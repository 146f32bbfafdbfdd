#include "coalition/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace coalition {

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

Instance read_positions_csv(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error(path + ": empty positions file");
  auto cols = split_csv(header);
  if (cols.size() < 2 || cols[0] != "id")
    throw std::runtime_error(path + ": expected header id,x1,...,xd");
  int d = static_cast<int>(cols.size()) - 1;

  std::vector<std::vector<double>> positions;
  std::string line;
  int expected_id = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (static_cast<int>(fields.size()) != d + 1)
      throw std::runtime_error(path + ": wrong column count in row '" + line + "'");
    if (std::stoi(fields[0]) != expected_id)
      throw std::runtime_error(path + ": ids must be consecutive from 0");
    std::vector<double> pos(d);
    for (int t = 0; t < d; ++t) pos[t] = std::stod(fields[t + 1]);
    positions.push_back(std::move(pos));
    ++expected_id;
  }
  if (positions.empty()) throw std::runtime_error(path + ": no players");

  if (d == 1) {
    Line1D line1d;
    for (const auto& p : positions) line1d.positions.push_back(p[0]);
    return Instance{std::move(line1d)};
  }
  EuclideanD e;
  e.d = d;
  e.positions = std::move(positions);
  return Instance{std::move(e)};
}

void write_positions_csv(const std::string& path, const Instance& inst) {
  std::ostringstream out;
  out.precision(17);
  if (const auto* line = std::get_if<Line1D>(&inst.topo)) {
    out << "id,x1\n";
    for (std::size_t i = 0; i < line->positions.size(); ++i)
      out << i << "," << line->positions[i] << "\n";
  } else if (const auto* e = std::get_if<EuclideanD>(&inst.topo)) {
    out << "id";
    for (int t = 1; t <= e->d; ++t) out << ",x" << t;
    out << "\n";
    for (std::size_t i = 0; i < e->positions.size(); ++i) {
      out << i;
      for (double x : e->positions[i]) out << "," << x;
      out << "\n";
    }
  } else {
    throw std::invalid_argument("graph instances are written as edge lists");
  }
  atomic_write(path, out.str());
}

Instance read_edge_list(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::string tag;
  int n = 0;
  if (!(in >> tag >> n) || tag != "n")
    throw std::runtime_error(path + ": expected first line 'n <count>'");
  std::vector<std::pair<int, int>> edges;
  int u, v;
  while (in >> u >> v) edges.emplace_back(u, v);
  return Instance{GraphTopology(n, std::move(edges))};
}

void write_edge_list(const std::string& path, const GraphTopology& g) {
  std::ostringstream out;
  out << "n " << g.n << "\n";
  for (auto [u, v] : g.edges) out << u << " " << v << "\n";
  atomic_write(path, out.str());
}

Instance read_instance(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
    return read_positions_csv(path);
  return read_edge_list(path);
}

Partition read_partition(const std::string& path, int n_players) {
  std::ifstream in = open_or_throw(path);
  Partition part;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::stringstream ss(line);
    Group g;
    PlayerId p;
    while (ss >> p) g.members.push_back(p);
    if (!ss.eof())
      throw std::runtime_error(path + ": malformed partition line '" + line + "'");
    if (g.members.empty()) continue;
    std::sort(g.members.begin(), g.members.end());
    part.groups.push_back(std::move(g));
  }
  part.validate(n_players);
  return part;
}

void write_partition(const std::string& path, const Partition& partition) {
  std::ostringstream out;
  for (const Group& g : partition.groups) {
    for (std::size_t i = 0; i < g.members.size(); ++i)
      out << (i ? " " : "") << g.members[i];
    out << "\n";
  }
  atomic_write(path, out.str());
}

std::string moves_to_json(const std::vector<MoveDescriptor>& moves) {
  nlohmann::json arr = nlohmann::json::array();
  for (const MoveDescriptor& m : moves) {
    nlohmann::json j;
    switch (m.kind) {
      case MoveKind::Merge:
        j["kind"] = "MERGE";
        j["i"] = m.i;
        j["j"] = m.j;
        break;
      case MoveKind::Defect:
        j["kind"] = "DEFECT";
        j["player"] = m.player;
        j["from"] = m.from;
        j["to"] = m.to;
        break;
      case MoveKind::DefectToEmpty:
        j["kind"] = "DEFECT_TO_EMPTY";
        j["player"] = m.player;
        j["from"] = m.from;
        break;
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace coalition
