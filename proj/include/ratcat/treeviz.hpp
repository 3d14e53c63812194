#pragma once

// DOT rendering of decision traces.

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratcat/algebra.hpp"
#include "ratcat/sequences.hpp"
#include "ratcat/solvers.hpp"
#include "ratcat/trace.hpp"

namespace ratcat {

namespace detail {

inline const char* color_name(EdgeColor c) {
  switch (c) {
    case EdgeColor::Red:
      return "red";
    case EdgeColor::Blue:
      return "blue";
    default:
      return "black";
  }
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// collapsible[v]: the subtree at v is a single path ending at a terminal.
inline std::vector<char> collapsible_vertices(const TraceGraph& g, std::vector<LaurentPoly>& path_weight) {
  const std::size_t n = g.vertices.size();
  std::vector<char> ok(n, 0);
  path_weight.assign(n, LaurentPoly(1));
  // Children always have larger indices, so a reverse sweep sees them first.
  for (std::size_t i = n; i-- > 0;) {
    const TraceVertex& v = g.vertices[i];
    if (v.kind == VertexKind::Terminal) {
      ok[i] = 1;
      continue;
    }
    if (v.kind == VertexKind::Reference) continue;
    auto out = g.out_edges(i);
    if (out.size() == 1 && !out[0]->back && ok[out[0]->to]) {
      ok[i] = 1;
      path_weight[i] = out[0]->weight * path_weight[out[0]->to];
    }
  }
  return ok;
}

}  // namespace detail

/// Compact form: each maximal single-path branch ending in 1^{M+N} becomes
/// one leaf labelled by the product of its edge weights.
inline TraceGraph compact(const TraceGraph& g) {
  std::vector<LaurentPoly> weight;
  const std::vector<char> ok = detail::collapsible_vertices(g, weight);
  std::vector<char> keep(g.vertices.size(), 0);
  std::vector<char> leaf(g.vertices.size(), 0);
  auto mark = [&](auto&& self, std::size_t v) -> void {
    keep[v] = 1;
    if (ok[v] && g.vertices[v].kind != VertexKind::Terminal) {
      leaf[v] = 1;
      return;
    }
    for (const TraceEdge* e : g.out_edges(v)) {
      if (!e->back) self(self, e->to);
    }
  };
  mark(mark, g.root);

  TraceGraph out;
  std::vector<std::size_t> index(g.vertices.size(), 0);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (!keep[i]) continue;
    index[i] = out.vertices.size();
    TraceVertex v = g.vertices[i];
    if (leaf[i]) {
      v.kind = VertexKind::Terminal;
      v.label = to_text(weight[i]);
    }
    out.vertices.push_back(v);
  }
  for (auto& v : out.vertices) {
    if (v.ref) v.ref = index[*v.ref];
  }
  for (const auto& e : g.edges) {
    if (keep[e.from] && !leaf[e.from] && keep[e.to]) {
      TraceEdge c = e;
      c.from = index[e.from];
      c.to = index[e.to];
      out.edges.push_back(c);
    }
  }
  out.root = index[g.root];
  return out;
}

inline std::string to_dot(const TraceGraph& trace, bool compact_form = false) {
  const TraceGraph g = compact_form ? compact(trace) : trace;
  std::ostringstream os;
  os << "digraph trace {\n";
  os << "  node [fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const TraceVertex& v = g.vertices[i];
    os << "  n" << i << " [label=\"" << detail::dot_escape(v.label) << "\"";
    if (v.kind == VertexKind::Terminal) os << ", shape=box";
    if (v.kind == VertexKind::Reference) os << ", style=dashed, comment=\"ref n" << *v.ref << "\"";
    os << "];\n";
  }
  for (const auto& e : g.edges) {
    const char* c = detail::color_name(e.color);
    os << "  n" << e.from << " -> n" << e.to << " [label=\"" << to_text(e.weight) << "\"";
    if (e.color != EdgeColor::Black) os << ", color=" << c << ", fontcolor=" << c;
    if (e.back) os << ", constraint=false";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string to_dot_hm(const MarkerWord& x, const MarkerWord& y, bool include_a = true) {
  return to_dot(hm_trace(x, y, include_a), false);
}

/// Number of self-loops in a trace.
inline std::size_t self_loop_count(const TraceGraph& g) {
  std::size_t k = 0;
  for (const auto& e : g.edges) k += e.from == e.to;
  return k;
}

struct Covering {
  MarkerPair image;  // common phi-image of every word on the cycle
  int p_power = 0;   // cycle weight q^p_power in the P recursion
  int r_power = 0;   // self-loop weight q^r_power in the R recursion
  int degree = 0;    // p_power / r_power
};

/// Projects the rotation cycle through `start` onto the R recursion.  Throws
/// if `start` is not on a cycle or the words do not share a phi-image.
inline Covering cycle_covering(const BinaryWord& start) {
  detail::BinaryStep step;
  std::vector<BinaryWord> cycle{start};
  LaurentPoly weight(1);
  while (true) {
    auto ex = step(cycle.back());
    if (!ex.next) throw std::invalid_argument("cycle_covering: " + start.str() + " is not on a rotation cycle");
    weight *= ex.next->weight;
    if (ex.next->target == start) break;
    if (cycle.size() > static_cast<std::size_t>(start.size())) {
      throw std::invalid_argument("cycle_covering: " + start.str() + " is not on a rotation cycle");
    }
    cycle.push_back(ex.next->target);
  }
  Covering c;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const MarkerPair p = to_markers(cycle[i]);
    const MarkerPair img{phi(p.v), phi(p.w)};
    if (i == 0) c.image = img;
    if (!(img == c.image)) throw std::logic_error("cycle_covering: phi-images differ along the cycle");
  }
  c.p_power = detail::pure_q_exponent(weight);
  auto ex = detail::HmStep{true}(c.image);
  if (!ex.next || !(ex.next->target == c.image)) {
    throw std::logic_error("cycle_covering: image has no self-loop");
  }
  c.r_power = detail::pure_q_exponent(ex.next->weight);
  c.degree = c.p_power / c.r_power;
  return c;
}

}  // namespace ratcat
