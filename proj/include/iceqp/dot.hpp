#pragma once

#include <sstream>
#include <string>

#include "iceqp/quiver.hpp"
#include "iceqp/seed.hpp"

namespace iceqp {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// Frozen vertices are drawn as boxes and frozen arrows dashed.
inline std::string to_dot(const IceQuiver& ice, const std::string& name = "Q") {
  const Quiver& q = ice.quiver();
  std::ostringstream os;
  os << "digraph " << dot_quote(name) << " {\n";
  for (int v = 0; v < q.num_vertices(); ++v) {
    const auto& vx = q.vertex(v);
    os << "  " << dot_quote(vx.id);
    std::string label = vx.label.empty() ? vx.id : vx.label;
    os << " [label=" << dot_quote(label);
    if (ice.is_frozen_vertex(v)) os << ", shape=box";
    os << "];\n";
  }
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& ar = q.arrow(a);
    os << "  " << dot_quote(q.vertex(ar.tail).id) << " -> " << dot_quote(q.vertex(ar.head).id)
       << " [label=" << dot_quote(ar.id);
    if (ice.is_frozen_arrow(a)) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const ExchangeGraph& g) {
  std::ostringstream os;
  os << "graph exchange {\n";
  for (std::size_t i = 0; i < g.seeds.size(); ++i) {
    std::string label;
    for (std::size_t v = 0; v < g.seeds[i].n; ++v) {
      if (!label.empty()) label += '\n';
      label += render(g.seeds[i].variables[v], g.seeds[i].names);
    }
    os << "  s" << i << " [label=" << dot_quote(label) << "];\n";
  }
  for (const auto& [u, v] : g.edges) os << "  s" << u << " -- s" << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace iceqp
