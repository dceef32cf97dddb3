#pragma once

#include "specls/graph.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace specls {

class Graph6Error : public std::runtime_error
{
public:
  Graph6Error(const std::string &what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset)
  {
  }
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// Parses one graph6 record. A single trailing newline is tolerated; the
/// optional ">>graph6<<" header is not.
Graph parse_graph6(std::string_view text);
std::string emit_graph6(const Graph &g);

} // namespace specls
