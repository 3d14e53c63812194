#pragma once

// Edge-weighted graphs recording the steps a recursion actually took.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratcat/algebra.hpp"

namespace ratcat {

/// Black: q-edges; red: t^lambda edges of the binary recursion; blue: the
/// first R relation.
enum class EdgeColor { Black, Red, Blue };

enum class VertexKind { Internal, Terminal, Reference };

struct TraceVertex {
  std::string label;
  VertexKind kind = VertexKind::Internal;
  std::optional<std::size_t> ref;  // expanded vertex, for Reference
};

struct TraceEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  LaurentPoly weight;
  EdgeColor color = EdgeColor::Black;
  bool back = false;  // closes a cycle onto an ancestor (or the vertex itself)
};

struct TraceGraph {
  std::vector<TraceVertex> vertices;
  std::vector<TraceEdge> edges;
  std::size_t root = 0;

  std::vector<const TraceEdge*> out_edges(std::size_t v) const {
    std::vector<const TraceEdge*> out;
    for (const auto& e : edges) {
      if (e.from == v) out.push_back(&e);
    }
    return out;
  }
};

namespace detail {

struct PartialSum {
  SeriesSum value;
  std::optional<std::size_t> pending;
  LaurentPoly pending_coef;
};

inline int pure_q_exponent(const LaurentPoly& w) {
  if (!w.is_monomial()) return -1;
  const auto& [e, c] = *w.terms().begin();
  if (c != 1 || e.t != 0 || e.a != 0 || e.q <= 0) return -1;
  return e.q;
}

inline PartialSum path_sum_from(const TraceGraph& g, std::size_t v, std::vector<std::optional<SeriesSum>>& done) {
  const TraceVertex& vx = g.vertices.at(v);
  if (vx.kind == VertexKind::Terminal) return {SeriesSum(LaurentPoly(1)), std::nullopt, {}};
  if (vx.kind == VertexKind::Reference) {
    const std::size_t target = vx.ref.value();
    if (!done[target]) {
      PartialSum p = path_sum_from(g, target, done);
      if (p.pending) throw std::logic_error("reference to a subtree with an open cycle");
      done[target] = p.value;
    }
    return {*done[target], std::nullopt, {}};
  }
  PartialSum acc;
  auto merge_pending = [&](std::size_t target, const LaurentPoly& coef) {
    if (acc.pending && *acc.pending != target) throw std::logic_error("two open cycles at one vertex");
    acc.pending = target;
    acc.pending_coef += coef;
  };
  for (const TraceEdge* e : g.out_edges(v)) {
    if (e->back) {
      merge_pending(e->to, e->weight);
      continue;
    }
    PartialSum child = path_sum_from(g, e->to, done);
    acc.value += e->weight * child.value;
    if (child.pending) merge_pending(*child.pending, e->weight * child.pending_coef);
  }
  if (acc.pending && *acc.pending == v) {
    const int l = pure_q_exponent(acc.pending_coef);
    if (l < 0) throw std::logic_error("cycle weight is not a positive power of q");
    acc.value = acc.value.divided_by_one_minus_q(l);
    acc.pending.reset();
    acc.pending_coef = LaurentPoly();
  }
  return acc;
}

}  // namespace detail

/// Sum over all root-to-terminal paths of the product of edge weights, with
/// each cycle summed as a geometric series.
inline SeriesSum path_sum(const TraceGraph& g) {
  std::vector<std::optional<SeriesSum>> done(g.vertices.size());
  detail::PartialSum p = detail::path_sum_from(g, g.root, done);
  if (p.pending) throw std::logic_error("open cycle at the root");
  return p.value;
}

}  // namespace ratcat
