#include "rewire/edgelist.hpp"

#include <fstream>
#include <sstream>

namespace rewire {

void save_edge_list(const Graph& g, std::ostream& out) {
  out << "n=" << g.node_count() << " m=" << g.edge_count() << "\n";
  for (NodeId v = 1; v <= g.node_count(); ++v) {
    for (NodeId u : g.neighbors(v)) {
      if (u < v) continue;  // each edge once
      out << v << " " << u;
      if (g.is_marked(v, u)) out << " marked";
      out << "\n";
    }
  }
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save_edge_list(g, out);
}

Graph load_edge_list(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("edge list: empty input");
  int n = -1, m = -1;
  if (std::sscanf(header.c_str(), "n=%d m=%d", &n, &m) != 2 || n < 1 || m < 0)
    throw std::runtime_error("edge list: bad header '" + header + "'");
  Graph g(n);
  std::string line;
  int seen = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    NodeId a = 0, b = 0;
    std::string flag;
    if (!(ls >> a >> b))
      throw std::runtime_error("edge list: bad edge line '" + line + "'");
    ls >> flag;
    if (!g.add_edge(a, b))
      throw std::runtime_error("edge list: duplicate edge in '" + line + "'");
    if (flag == "marked") g.set_mark(a, b, true);
    else if (!flag.empty())
      throw std::runtime_error("edge list: unknown flag '" + flag + "'");
    ++seen;
  }
  if (seen != m)
    throw std::runtime_error("edge list: header says m=" + std::to_string(m) +
                             " but found " + std::to_string(seen) + " edges");
  return g;
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return load_edge_list(in);
}

}  // namespace rewire
