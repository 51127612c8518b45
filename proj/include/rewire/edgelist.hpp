#pragma once

#include <iosfwd>
#include <string>

#include "rewire/graph.hpp"

namespace rewire {

// Edge-list text format: header line "n=<count> m=<count>", then one
// "a b [marked]" line per edge with 1-based IDs.

void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list(const Graph& g, const std::string& path);

Graph load_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);

}  // namespace rewire
