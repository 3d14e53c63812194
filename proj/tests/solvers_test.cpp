#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ratcat/solvers.hpp"
#include "ratcat/subsets.hpp"

using namespace ratcat;
using ratcat::testing::P;
using ratcat::testing::S;

namespace {

BinaryWord W(int M, int N, const char* s) { return BinaryWord::parse(Grid(M, N), s); }
MarkerWord X(const char* s) { return MarkerWord::parse(s); }

std::vector<Grid> oracle_grids() {
  std::vector<Grid> out;
  for (int M = 1; M <= 4; ++M)
    for (int N = 1; N <= 4; ++N) out.emplace_back(M, N);
  out.emplace_back(4, 6);
  return out;
}

}  // namespace

TEST(SolveP, Golden22) {
  Solver s(Grid(2, 2));
  EXPECT_TRUE(equals(s.solve_P(W(2, 2, "1011")), S("q*t")));
  EXPECT_TRUE(equals(s.solve_P(W(2, 2, "0101")), S("q^2*t", {1})));
  EXPECT_TRUE(equals(s.solve_P(W(2, 2, "0000")), S("q^4", {1}) + S("q^5*t", {1, 1})));
  EXPECT_EQ(to_text(s.positive_P(W(2, 2, "0000"))), "q^4/(1-q) + q^5*t/(1-q)^2");
}

TEST(SolveP, Golden33) {
  Solver s(Grid(3, 3));
  EXPECT_TRUE(equals(s.solve_P(W(3, 3, "011011")), S("q^2*t^2", {1})));
  EXPECT_TRUE(equals(s.solve_P(W(3, 3, "001011")), S("q^3*t") + S("q^4*t^2", {1})));
  EXPECT_TRUE(equals(s.solve_P(W(3, 3, "001001")), S("q^4*t^2", {1}) + S("q^5*t^3", {1, 1})));
}

TEST(SolveP, Golden46Periodic) {
  Solver s(Grid(4, 6));
  EXPECT_TRUE(equals(s.solve_P(W(4, 6, "(01)^5")), RationalSeries(P("q^5*t^6") * P("1 + q*t"), {1})));
}

TEST(SolveP, BaseAndInadmissible) {
  Solver s(Grid(2, 3));
  EXPECT_EQ(s.solve_P(BinaryWord::ones(Grid(2, 3))), RationalSeries(1));
  EXPECT_TRUE(s.solve_P(W(2, 3, "01000")).is_zero());
  EXPECT_THROW(s.solve_P(W(2, 2, "0000")), std::invalid_argument);
}

TEST(SolveP, Deterministic) {
  for (const Grid& g : {Grid(3, 3), Grid(4, 6), Grid(2, 5)}) {
    Solver a(g), b(g);
    for (const BinaryWord& u : all_words(g)) {
      ASSERT_EQ(a.solve_P(u), b.solve_P(u));
      ASSERT_EQ(to_text(a.positive_P(u)), to_text(b.positive_P(u)));
    }
  }
}

TEST(SolveP, CycleCoefficientAndDenominatorBound) {
  for (const Grid& g : {Grid(2, 2), Grid(3, 3), Grid(4, 6), Grid(2, 4), Grid(4, 4), Grid(6, 9)}) {
    Solver s(g);
    const RationalSeries p = s.solve_P(BinaryWord::zeros(g));
    ASSERT_FALSE(s.p_cycles().empty());
    for (const auto& c : s.p_cycles()) {
      const int k = c.start.zero_count();
      const int per = minimal_period(c.start);
      EXPECT_EQ(c.q_power * g.length(), k * per) << c.start.str();
      EXPECT_GT(c.q_power, 0);
      EXPECT_LE(c.q_power, g.d()) << c.start.str();
    }
    EXPECT_EQ(reduce(p).denominator(), std::vector<int>(g.d(), 1)) << to_string(g);
  }
}

TEST(SolvePhat, Golden33) {
  Solver s(Grid(3, 3));
  EXPECT_TRUE(equals(s.solve_Phat(W(3, 3, "011011")), RationalSeries(P("q^2*t^2") * P("1 + a"), {1})));
  const LaurentPoly A1 = P("1 + a"), At = P("1 + a*t"), At2 = P("1 + a*t^2");
  const RationalSeries expected = RationalSeries(P("q^6") * At2 * At * A1 + P("q^7*t") * At * At * A1) +
                                  RationalSeries(P("q^7*t^2 + 2*q^8*t^2") * At * A1 * A1, {1}) +
                                  RationalSeries(P("q^9*t^3") * A1 * A1 * A1, {1, 1});
  EXPECT_TRUE(equals(s.solve_Phat(BinaryWord::zeros(Grid(3, 3))) * RationalSeries(P("1 - q")), expected));
}

TEST(SolvePhat, AtAZeroIsP) {
  for (const Grid& g : {Grid(3, 3), Grid(2, 4), Grid(3, 4)}) {
    Solver s(g);
    for (const BinaryWord& u : all_words(g)) EXPECT_TRUE(equals(s.solve_Phat(u).at_a_zero(), s.solve_P(u)));
  }
}

TEST(SolveQ, Examples) {
  Solver s(Grid(2, 2));
  EXPECT_TRUE(equals(s.solve_Q(X("00"), X("00")), S("1", {1}) + S("q*t^-1", {1, 1})));
  EXPECT_EQ(s.solve_Q(X("bb"), X("bb")), RationalSeries(1));
  EXPECT_EQ(s.solve_Qhat(X("bb"), X("bb")), RationalSeries(1));
  EXPECT_TRUE(s.solve_Q(X("x0"), X("00")).is_zero());
}

TEST(SolveQ, MatchesPAfterSubstitution) {
  for (const Grid& g : oracle_grids()) {
    Solver s(g);
    const MarkerWord v(std::string(g.M(), '0')), w(std::string(g.N(), '0'));
    const BinaryWord z = BinaryWord::zeros(g);
    EXPECT_TRUE(equals(s.solve_Q(v, w), s.solve_P(z).invert_t().shifted(-g.length(), 0))) << to_string(g);
    EXPECT_TRUE(equals(s.solve_Qhat(v, w), s.solve_Phat(z).invert_t().shifted(-g.length(), 0))) << to_string(g);
  }
}

TEST(SolveQ, HatAtAZeroIsQ) {
  Solver s(Grid(3, 4));
  for (const BinaryWord& u : all_words(Grid(3, 4))) {
    if (!is_admissible(u)) continue;
    const MarkerPair p = to_markers(u);
    EXPECT_TRUE(equals(s.solve_Qhat(p.v, p.w).at_a_zero(), s.solve_Q(p.v, p.w)));
  }
}

TEST(SolveR, SmallCases) {
  Solver s(Grid(1, 1));
  EXPECT_EQ(s.solve_R(X("-"), X("-")), RationalSeries(1));
  EXPECT_TRUE(equals(s.solve_R(X("x"), X("x")), S("1 + a")));
  EXPECT_TRUE(equals(s.solve_R(X("0"), X("0")), S("1 + a", {1})));
  EXPECT_TRUE(equals(s.solve_R(X("x"), X("x"), false), S("1")));
  EXPECT_TRUE(s.solve_R(X("x"), X("-")).is_zero());
  EXPECT_THROW(s.solve_R(X("b"), X("b")), std::invalid_argument);
}

TEST(SolveR, Golden33WithA) {
  Solver s(Grid(3, 3));
  const LaurentPoly A1 = P("1 + a"), Ta = P("t + a");
  const RationalSeries expected =
      RationalSeries(P("t^2 + a + q*t + q*a") * P("t^-3") * Ta * A1, {1}) +
      RationalSeries(P("q + 2*q^2") * P("t^-3") * Ta * A1 * A1, {1, 1}) +
      RationalSeries(P("q^3*t^-3") * A1 * A1 * A1, {1, 1, 1});
  EXPECT_TRUE(equals(s.solve_R(X("000"), X("000")), expected));
  const RationalSeries hatp = s.solve_Phat(BinaryWord::zeros(Grid(3, 3)));
  EXPECT_TRUE(equals(hatp.invert_t().shifted(-6, 0), s.solve_R(X("000"), X("000"))));
}

TEST(SolveR, IgnoresBullets) {
  for (int M = 1; M <= 4; ++M) {
    for (int N = 1; N <= 4; ++N) {
      const Grid g(M, N);
      Solver s(g);
      for (const BinaryWord& u : all_words(g)) {
        if (!is_admissible(u)) continue;
        const MarkerPair p = to_markers(u);
        const MarkerWord x = phi(p.v), y = phi(p.w);
        EXPECT_TRUE(equals(s.solve_R(x, y, false), s.solve_Q(p.v, p.w))) << p.v.str() << "," << p.w.str();
        EXPECT_TRUE(equals(s.solve_R(x, y, true), s.solve_Qhat(p.v, p.w))) << p.v.str() << "," << p.w.str();
      }
    }
  }
}

TEST(SolveR, TrailingCrossesMatchP) {
  for (const Grid& g : oracle_grids()) {
    Solver s(g);
    for (int k = 0; k <= std::min(g.M(), g.N()); ++k) {
      const MarkerWord x(std::string(g.M() - k, '0') + std::string(k, 'x'));
      const MarkerWord y(std::string(g.N() - k, '0') + std::string(k, 'x'));
      const RationalSeries rhs =
          s.solve_P(BinaryWord::zeros_then_ones(g, k)).invert_t().shifted(-g.length() + k, k * (k - 1) / 2);
      EXPECT_TRUE(equals(s.solve_R(x, y, false), rhs)) << to_string(g) << " k=" << k;
      if (is_admissible_pair(x, y, g)) {
        EXPECT_TRUE(equals(s.solve_Q(x, y), rhs));
      }
    }
  }
}

class OracleEquivalence : public ::testing::TestWithParam<SeriesKind> {};

TEST_P(OracleEquivalence, AllAdmissibleWords) {
  const SeriesKind kind = GetParam();
  for (const Grid& g : oracle_grids()) {
    Solver s(g);
    const int qmax = g.length() + 6;
    for (const BinaryWord& u : all_words(g)) {
      if (!is_admissible(u)) continue;
      RationalSeries r;
      const MarkerPair p = to_markers(u);
      switch (kind) {
        case SeriesKind::P: r = s.solve_P(u); break;
        case SeriesKind::Phat: r = s.solve_Phat(u); break;
        case SeriesKind::Q: r = s.solve_Q(p.v, p.w); break;
        case SeriesKind::Qhat: r = s.solve_Qhat(p.v, p.w); break;
      }
      ASSERT_EQ(expand(r, qmax), truncated_series(u, kind, qmax)) << to_string(g) << " " << u.str();
    }
  }
}

std::string kind_name(const ::testing::TestParamInfo<SeriesKind>& info) {
  switch (info.param) {
    case SeriesKind::P: return "P";
    case SeriesKind::Q: return "Q";
    case SeriesKind::Phat: return "Phat";
    default: return "Qhat";
  }
}

INSTANTIATE_TEST_SUITE_P(Kinds, OracleEquivalence,
                         ::testing::Values(SeriesKind::P, SeriesKind::Phat, SeriesKind::Q, SeriesKind::Qhat),
                         kind_name);

TEST(Stats, CountsNodesAndCycles) {
  Solver s(Grid(2, 2));
  s.solve_P(BinaryWord::zeros(Grid(2, 2)));
  const SolverStats st = s.stats();
  EXPECT_EQ(st.nodes, 7u);
  EXPECT_EQ(st.cycles, 2u);
  EXPECT_EQ(st.max_factor, 2);
}
