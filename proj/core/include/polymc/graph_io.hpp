#pragma once

// Text graph format:
//   n m [bipartite]
//   <part-0 vertex ids>          (only when bipartite)
//   u v                          (m lines)
// '#' starts a comment; blank lines are ignored.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "polymc/host_graph.hpp"

namespace polymc {

HostGraph parse_graph(std::istream& in);
HostGraph parse_graph_string(const std::string& text);
HostGraph load_graph(const std::filesystem::path& path);

void write_graph(std::ostream& out, const HostGraph& g);
std::string graph_to_string(const HostGraph& g);
void save_graph(const std::filesystem::path& path, const HostGraph& g);

}  // namespace polymc
