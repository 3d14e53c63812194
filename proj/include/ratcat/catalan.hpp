#pragma once

// c_{M,N}(q,t), its polynomial form, symmetry, the colored-knot series and
// term counts.

#include <numeric>
#include <stdexcept>
#include <vector>

#include "ratcat/algebra.hpp"
#include "ratcat/sequences.hpp"
#include "ratcat/solvers.hpp"

namespace ratcat {

struct CatalanResult {
  Grid grid;
  RationalSeries series;        // c_{M,N}
  LaurentPoly polynomial_form;  // (1-q)^{d-1} c_{M,N}
  bool symmetric = false;
};

inline bool is_qt_symmetric(const LaurentPoly& p) { return p.swap_qt() == p; }

/// c_{M,N} = q^{-N-M} t^delta (1-q) P_{0^{M+N}}(q, 1/t).
inline CatalanResult catalan_series(Solver& solver) {
  const Grid g = solver.grid();
  const RationalSeries p0 = solver.solve_P(BinaryWord::zeros(g));
  RationalSeries c = reduce(p0.invert_t().shifted(-g.length(), g.delta()) * RationalSeries(one_minus_q()));
  RationalSeries scaled = c;
  for (int i = 0; i < g.d() - 1; ++i) scaled = scaled * RationalSeries(one_minus_q());
  scaled = reduce(scaled);
  if (!scaled.is_polynomial()) {
    throw std::logic_error("(1-q)^{d-1} c_{M,N} is not a polynomial for " + to_string(g));
  }
  CatalanResult r{g, c, scaled.numerator(), false};
  r.symmetric = is_qt_symmetric(r.polynomial_form);
  return r;
}

inline CatalanResult catalan_series(int M, int N) {
  Solver s(Grid(M, N));
  return catalan_series(s);
}

inline bool check_symmetry(int M, int N) { return catalan_series(M, N).symmetric; }
inline bool check_symmetry(const LaurentPoly& polynomial_form) { return is_qt_symmetric(polynomial_form); }

/// R-part times prod_{i=1}^d 1/(1 - q t^{s_i}); the prefactor is kept as the
/// list of t-shifts s_i = i - d.
struct KnotSeries {
  RationalSeries r_part;
  std::vector<int> t_shifts;

  /// Coefficients up to q^q_max.
  LaurentPoly expand(int q_max) const {
    LaurentPoly out = ratcat::expand(r_part, q_max);
    for (int s : t_shifts) {
      LaurentPoly geo;
      for (int j = 0; j <= q_max; ++j) geo += LaurentPoly::monomial(1, j, j * s, 0);
      out = (out * geo).truncated(q_max);
    }
    return out;
  }
};

inline MarkerWord zeros_then_crosses(int zeros, int crosses) {
  return MarkerWord(std::string(zeros, static_cast<char>(Marker::Gap)) +
                    std::string(crosses, static_cast<char>(Marker::New)));
}

/// Poincare series of the (md, nd) torus link colored by Sym^d.
inline KnotSeries colored_knot_series(int m, int n, int d, bool include_a) {
  if (m < 1 || n < 1 || d < 1) throw std::invalid_argument("colored_knot_series: m, n, d must be positive");
  if (std::gcd(m, n) != 1) throw std::invalid_argument("colored_knot_series: gcd(m, n) must be 1");
  const int M = m * d;
  const int N = n * d;
  Solver s(Grid(M, N));
  KnotSeries k;
  k.r_part = s.solve_R(zeros_then_crosses(M - d, d), zeros_then_crosses(N - d, d), include_a);
  for (int i = 1; i <= d; ++i) k.t_shifts.push_back(i - d);
  return k;
}

/// Value at q = t = 1 of P_{0^{M+N-d} 1^d}, which has finitely many subsets.
inline Integer term_count(const BinaryWord& u) {
  const RationalSeries p = reduce(Solver(u.grid()).solve_P(u));
  if (!p.is_polynomial()) throw std::logic_error("term_count: P_" + u.str() + " is not a polynomial");
  return p.numerator().coefficient_sum();
}

inline Integer term_count(int M, int N) {
  const Grid g(M, N);
  return term_count(BinaryWord::zeros_then_ones(g, g.d()));
}

}  // namespace ratcat
