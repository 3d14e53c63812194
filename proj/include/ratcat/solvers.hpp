#pragma once

// Memoized recursions for P, P-hat, Q, Q-hat and R.
//
// Every recursion step rewrites a node into "exits", which are strictly
// smaller and solved first, plus at most one "next" node of the same size.
// Following next-links from a node either reaches something already known or
// returns to the start; in the second case the accumulated weight is q^l and
// the start node's value is (sum of exits along the way) / (1 - q^l).

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ratcat/algebra.hpp"
#include "ratcat/sequences.hpp"
#include "ratcat/trace.hpp"

namespace ratcat {

namespace detail {

template <class Key>
struct Branch {
  LaurentPoly weight;
  Key target;
  EdgeColor color = EdgeColor::Black;
};

template <class Key>
struct Expansion {
  bool base = false;  // value 1
  std::vector<Branch<Key>> exits;
  std::optional<Branch<Key>> next;
  bool branching = false;  // exits and next both present

  std::vector<Branch<Key>> children() const {
    std::vector<Branch<Key>> out = exits;
    if (next) out.push_back(*next);
    return out;
  }
};

template <class Key>
struct CycleRecord {
  Key start;
  int length = 0;  // chain length
  int q_power = 0;
};

template <class Key, class ExpandFn>
class RotationSolver {
 public:
  explicit RotationSolver(ExpandFn expand) : expand_(std::move(expand)) {}

  const SeriesSum& solve(const Key& start) {
    if (auto it = memo_.find(start); it != memo_.end()) return it->second;
    SeriesSum acc;
    LaurentPoly weight(1);
    std::set<Key> seen;
    Key node = start;
    int steps = 0;
    while (true) {
      if (!seen.insert(node).second) throw std::logic_error("rotation chain revisits a node other than its start");
      Expansion<Key> ex = expand_(node);
      if (ex.base) {
        acc += SeriesSum(weight);
        break;
      }
      for (const auto& b : ex.exits) acc += (weight * b.weight) * solve(b.target);
      if (!ex.next) break;
      weight *= ex.next->weight;
      node = ex.next->target;
      ++steps;
      if (node == start) {
        const int l = pure_q_exponent(weight);
        if (l < 0) throw std::logic_error("cycle weight is not a positive power of q");
        cycles_.push_back({start, steps, l});
        acc = acc.divided_by_one_minus_q(l);
        break;
      }
      if (auto it = memo_.find(node); it != memo_.end()) {
        acc += weight * it->second;
        break;
      }
    }
    return memo_.emplace(start, std::move(acc)).first->second;
  }

  const ExpandFn& expand_fn() const { return expand_; }
  std::size_t size() const { return memo_.size(); }
  const std::vector<CycleRecord<Key>>& cycles() const { return cycles_; }
  int max_factor() const {
    int best = 0;
    for (const auto& [key, s] : memo_) {
      for (const auto& [den, num] : s.groups()) best = std::max(best, static_cast<int>(den.size()));
    }
    return best;
  }

 private:
  ExpandFn expand_;
  std::map<Key, SeriesSum> memo_;
  std::vector<CycleRecord<Key>> cycles_;
};

/// One step of the P (or P-hat) recursion.
struct BinaryStep {
  bool hat = false;

  Expansion<BinaryWord> operator()(const BinaryWord& u) const {
    Expansion<BinaryWord> ex;
    if (!is_admissible(u)) return ex;
    if (u.is_all_ones()) {
      ex.base = true;
      return ex;
    }
    const int N = u.grid().N();
    const int M = u.grid().M();
    const BinaryWord w1 = rotate_set_last(u, 1);
    if (u[0] == 1) {
      ex.next = Branch<BinaryWord>{LaurentPoly::t(lambda(u)), w1, EdgeColor::Red};
      return ex;
    }
    const int s = u[N] + u[M];
    if (s == 0) {
      ex.exits.push_back({LaurentPoly::q(1), w1, EdgeColor::Black});
      ex.next = Branch<BinaryWord>{LaurentPoly::q(1), rotate_set_last(u, 0), EdgeColor::Black};
      ex.branching = true;
    } else if (hat && s == 2) {
      LaurentPoly wt = LaurentPoly::q(1) * (LaurentPoly(1) + LaurentPoly::monomial(1, 0, lambda(w1), 1));
      ex.exits.push_back({wt, w1, EdgeColor::Black});
    } else {
      ex.exits.push_back({LaurentPoly::q(1), w1, EdgeColor::Black});
    }
    return ex;
  }
};

inline MarkerWord plus(const MarkerWord& x, Marker m) { return x.appended(m); }

/// One step of the Q (or Q-hat) recursion on marker pairs.
struct MarkerStep {
  bool hat = false;

  Expansion<MarkerPair> operator()(const MarkerPair& p) const {
    Expansion<MarkerPair> ex;
    if (p.v.count(Marker::Old) == p.v.size() && p.w.count(Marker::Old) == p.w.size()) {
      ex.base = true;
      return ex;
    }
    if (p.v.empty() || p.w.empty()) return ex;
    const Marker a = p.v[0];
    const Marker b = p.w[0];
    const MarkerWord x = p.v.tail();
    const MarkerWord y = p.w.tail();
    const int k = x.crosses();
    using enum Marker;
    if (a == Gap && b == Gap) {
      ex.exits.push_back({LaurentPoly::t(-k), {plus(x, New), plus(y, New)}, EdgeColor::Blue});
      ex.next = Branch<MarkerPair>{LaurentPoly::monomial(1, 1, -k, 0), {plus(x, Gap), plus(y, Gap)}, EdgeColor::Blue};
      ex.branching = true;
    } else if (a == New && b == Gap) {
      ex.exits.push_back({LaurentPoly(1), {plus(x, New), plus(y, Old)}});
    } else if (a == Gap && b == New) {
      ex.exits.push_back({LaurentPoly(1), {plus(x, Old), plus(y, New)}});
    } else if (a == New && b == New) {
      LaurentPoly wt = LaurentPoly::t(k);
      if (hat) wt += LaurentPoly::a(1);
      ex.exits.push_back({wt, {plus(x, Old), plus(y, Old)}});
    } else if (a == Old && b == Old) {
      ex.next = Branch<MarkerPair>{LaurentPoly(1), {plus(x, Old), plus(y, Old)}};
    }
    return ex;
  }
};

/// One step of the R recursion on words over {0, x}.
struct HmStep {
  bool include_a = true;

  Expansion<MarkerPair> operator()(const MarkerPair& p) const {
    Expansion<MarkerPair> ex;
    if (p.v.empty() && p.w.empty()) {
      ex.base = true;
      return ex;
    }
    if (p.v.empty() || p.w.empty()) return ex;
    const Marker a = p.v[0];
    const Marker b = p.w[0];
    const MarkerWord x = p.v.tail();
    const MarkerWord y = p.w.tail();
    const int k = x.crosses();
    using enum Marker;
    if (a == Gap && b == Gap) {
      ex.exits.push_back({LaurentPoly::t(-k), {plus(x, New), plus(y, New)}, EdgeColor::Blue});
      ex.next = Branch<MarkerPair>{LaurentPoly::monomial(1, 1, -k, 0), {plus(x, Gap), plus(y, Gap)}, EdgeColor::Blue};
      ex.branching = true;
    } else if (a == New && b == Gap) {
      ex.exits.push_back({LaurentPoly(1), {plus(x, New), y}});
    } else if (a == Gap && b == New) {
      ex.exits.push_back({LaurentPoly(1), {x, plus(y, New)}});
    } else {
      LaurentPoly wt = LaurentPoly::t(k);
      if (include_a) wt += LaurentPoly::a(1);
      ex.exits.push_back({wt, {x, y}});
    }
    return ex;
  }
};

inline void require_hm_word(const MarkerWord& x) {
  if (x.count(Marker::Old) > 0) throw std::invalid_argument("R takes words over {0, x}; got " + x.str());
}

}  // namespace detail

struct SolverStats {
  std::size_t nodes = 0;
  std::size_t cycles = 0;
  int max_factor = 0;  // most (1 - q^l) factors in any memoized group
};

/// Per-grid caches for every recursion.  Not thread-safe; use one Solver per
/// thread.
class Solver {
 public:
  explicit Solver(Grid grid)
      : grid_(grid),
        p_(detail::BinaryStep{false}),
        phat_(detail::BinaryStep{true}),
        q_(detail::MarkerStep{false}),
        qhat_(detail::MarkerStep{true}),
        r_(detail::HmStep{false}),
        ra_(detail::HmStep{true}) {}

  const Grid& grid() const { return grid_; }

  const SeriesSum& positive_P(const BinaryWord& u) { return p_.solve(checked(u)); }
  const SeriesSum& positive_Phat(const BinaryWord& u) { return phat_.solve(checked(u)); }
  const SeriesSum& positive_Q(const MarkerWord& v, const MarkerWord& w) {
    return is_admissible_pair(v, w, grid_) ? q_.solve({v, w}) : zero_;
  }
  const SeriesSum& positive_Qhat(const MarkerWord& v, const MarkerWord& w) {
    return is_admissible_pair(v, w, grid_) ? qhat_.solve({v, w}) : zero_;
  }
  /// R does not depend on the grid; the cache lives here for convenience.
  const SeriesSum& positive_R(const MarkerWord& x, const MarkerWord& y, bool include_a) {
    detail::require_hm_word(x);
    detail::require_hm_word(y);
    return include_a ? ra_.solve({x, y}) : r_.solve({x, y});
  }

  RationalSeries solve_P(const BinaryWord& u) { return positive_P(u).to_rational(); }
  RationalSeries solve_Phat(const BinaryWord& u) { return positive_Phat(u).to_rational(); }
  RationalSeries solve_Q(const MarkerWord& v, const MarkerWord& w) { return positive_Q(v, w).to_rational(); }
  RationalSeries solve_Qhat(const MarkerWord& v, const MarkerWord& w) {
    return positive_Qhat(v, w).to_rational();
  }
  RationalSeries solve_R(const MarkerWord& x, const MarkerWord& y, bool include_a = true) {
    return positive_R(x, y, include_a).to_rational();
  }

  /// Cycles closed while solving P, with their q-exponents.
  const std::vector<detail::CycleRecord<BinaryWord>>& p_cycles() const { return p_.cycles(); }

  SolverStats stats() const {
    SolverStats s;
    s.nodes = p_.size() + phat_.size() + q_.size() + qhat_.size() + r_.size() + ra_.size();
    s.cycles = p_.cycles().size() + phat_.cycles().size() + q_.cycles().size() + qhat_.cycles().size() +
               r_.cycles().size() + ra_.cycles().size();
    s.max_factor = std::max({p_.max_factor(), phat_.max_factor(), q_.max_factor(), qhat_.max_factor(),
                             r_.max_factor(), ra_.max_factor()});
    return s;
  }

 private:
  const BinaryWord& checked(const BinaryWord& u) const {
    detail::require_same_grid(u.grid(), grid_);
    return u;
  }

  Grid grid_;
  SeriesSum zero_;
  detail::RotationSolver<BinaryWord, detail::BinaryStep> p_;
  detail::RotationSolver<BinaryWord, detail::BinaryStep> phat_;
  detail::RotationSolver<MarkerPair, detail::MarkerStep> q_;
  detail::RotationSolver<MarkerPair, detail::MarkerStep> qhat_;
  detail::RotationSolver<MarkerPair, detail::HmStep> r_;
  detail::RotationSolver<MarkerPair, detail::HmStep> ra_;
};

namespace detail {

// Single-successor walk from u: does it reach a node with two children?
inline bool leads_to_branch(const BinaryWord& u) {
  BinaryStep step;
  BinaryWord cur = u;
  for (int i = 0; i <= 4 * u.size() * u.size(); ++i) {
    Expansion<BinaryWord> ex = step(cur);
    if (ex.base || ex.children().empty()) return false;
    if (ex.branching) return true;
    cur = ex.children().front().target;
  }
  throw std::logic_error("single-successor walk did not terminate");
}

}  // namespace detail

/// The graph of steps taken while solving P_u, in depth-first order with the
/// b = 1 child first.  A child equal to a word on the current path closes a
/// cycle (a back edge).  A word already expanded elsewhere, whose walk
/// reaches a branching node and whose subtree is self-contained, becomes a
/// Reference vertex instead of being expanded again.  Terminal 1^L leaves are
/// never merged.
inline TraceGraph decision_trace(const BinaryWord& u) {
  if (!is_admissible(u)) throw std::invalid_argument("decision_trace: word " + u.str() + " is not admissible");
  TraceGraph g;
  detail::BinaryStep step;
  std::map<BinaryWord, std::size_t> on_path;
  std::map<BinaryWord, std::size_t> expanded;

  auto build = [&](auto&& self, const BinaryWord& w) -> std::size_t {
    const std::size_t idx = g.vertices.size();
    g.vertices.push_back({w.str(), VertexKind::Internal, std::nullopt});
    if (w.is_all_ones()) {
      g.vertices[idx].kind = VertexKind::Terminal;
      return idx;
    }
    if (auto it = expanded.find(w); it != expanded.end() && detail::leads_to_branch(w)) {
      g.vertices[idx].kind = VertexKind::Reference;
      g.vertices[idx].ref = it->second;
      return idx;
    }
    on_path[w] = idx;
    for (const auto& c : step(w).children()) {
      if (auto it = on_path.find(c.target); it != on_path.end()) {
        g.edges.push_back({idx, it->second, c.weight, c.color, true});
      } else {
        const std::size_t child = self(self, c.target);
        g.edges.push_back({idx, child, c.weight, c.color, false});
      }
    }
    on_path.erase(w);
    // Only subtrees without edges escaping above idx may be referenced later.
    bool closed = true;
    for (const auto& e : g.edges) {
      if (e.from >= idx && e.back && e.to < idx) closed = false;
    }
    if (closed && !expanded.contains(w)) expanded[w] = idx;
    return idx;
  };
  g.root = build(build, u);
  std::stable_sort(g.edges.begin(), g.edges.end(), [](const TraceEdge& x, const TraceEdge& y) { return x.from < y.from; });
  return g;
}

/// Full expansion of the R recursion from (x, y).  Only a node equal to one
/// of its own ancestors is identified, which gives the self-loops at
/// all-zero pairs.
inline TraceGraph hm_trace(const MarkerWord& x, const MarkerWord& y, bool include_a = true) {
  detail::require_hm_word(x);
  detail::require_hm_word(y);
  TraceGraph g;
  detail::HmStep step{include_a};
  std::map<MarkerPair, std::size_t> on_path;
  auto label = [](const MarkerPair& p) {
    auto s = [](const MarkerWord& m) { return m.empty() ? std::string("-") : m.str(); };
    return p.v == p.w ? s(p.v) : s(p.v) + "," + s(p.w);
  };
  auto build = [&](auto&& self, const MarkerPair& p) -> std::size_t {
    const std::size_t idx = g.vertices.size();
    g.vertices.push_back({label(p), VertexKind::Internal, std::nullopt});
    detail::Expansion<MarkerPair> ex = step(p);
    if (ex.base) {
      g.vertices[idx].kind = VertexKind::Terminal;
      return idx;
    }
    on_path[p] = idx;
    for (const auto& c : ex.children()) {
      if (auto it = on_path.find(c.target); it != on_path.end()) {
        g.edges.push_back({idx, it->second, c.weight, c.color, true});
      } else {
        const std::size_t child = self(self, c.target);
        g.edges.push_back({idx, child, c.weight, c.color, false});
      }
    }
    on_path.erase(p);
    return idx;
  };
  g.root = build(build, MarkerPair{x, y});
  std::stable_sort(g.edges.begin(), g.edges.end(), [](const TraceEdge& x, const TraceEdge& y) { return x.from < y.from; });
  return g;
}

}  // namespace ratcat
