#ifndef COALITION_IO_HPP
#define COALITION_IO_HPP

#include <string>
#include <vector>

#include "coalition/equilibrium.hpp"
#include "coalition/model.hpp"
#include "coalition/topology.hpp"

namespace coalition {

// Position files: CSV with header `id,x1,...,xd`. d=1 loads as Line1D.
Instance read_positions_csv(const std::string& path);
void write_positions_csv(const std::string& path, const Instance& inst);

// Graph files: first line `n <count>`, then one `u v` edge per line,
// 0-indexed.
Instance read_edge_list(const std::string& path);
void write_edge_list(const std::string& path, const GraphTopology& g);

// Dispatches on extension: .csv -> positions, anything else -> edge list.
Instance read_instance(const std::string& path);

// Partition files: one group per line, space-separated player ids;
// `#` starts a comment.
Partition read_partition(const std::string& path, int n_players);
void write_partition(const std::string& path, const Partition& partition);

std::string moves_to_json(const std::vector<MoveDescriptor>& moves);

// Write-then-rename so readers never observe a partial file.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace coalition

#endif
