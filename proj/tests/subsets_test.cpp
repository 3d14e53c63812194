#include <algorithm>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ratcat/subsets.hpp"

using namespace ratcat;
using ratcat::testing::P;

namespace {

InvariantSubset D(int M, int N, std::vector<int> gaps) { return InvariantSubset(Grid(M, N), std::move(gaps)); }

// Every subset of I_{M,N} with area <= max_area, via all words.
std::vector<InvariantSubset> all_subsets(const Grid& g, int max_area) {
  std::vector<InvariantSubset> out;
  for (const BinaryWord& u : all_words(g)) {
    for (auto& s : enumerate(u, max_area)) out.push_back(std::move(s));
  }
  return out;
}

// Naive oracle: every gap set inside [0, bound) closed under -N, -M.
std::vector<std::vector<int>> naive_gap_sets(const Grid& g, int bound, int max_area) {
  std::vector<std::vector<int>> out;
  for (unsigned long mask = 0; mask < (1UL << bound); ++mask) {
    if (__builtin_popcountl(mask) > max_area) continue;
    bool closed = true;
    std::vector<int> gaps;
    for (int k = 0; k < bound && closed; ++k) {
      if (!(mask >> k & 1UL)) continue;
      gaps.push_back(k);
      for (int s : {g.N(), g.M()}) {
        if (k - s >= 0 && !(mask >> (k - s) & 1UL)) closed = false;
      }
    }
    if (closed) out.push_back(gaps);
  }
  std::sort(out.begin(), out.end());
  return out;
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(InvariantSubset, ClosureIsChecked) {
  EXPECT_NO_THROW(D(2, 2, {0, 1}));
  EXPECT_THROW(D(2, 2, {2}), std::invalid_argument);
  EXPECT_THROW(D(2, 3, {0, 3}), std::invalid_argument);
  EXPECT_EQ(D(2, 2, {1, 0, 1}).gaps_string(), "{0,1}");
}

TEST(Enumerate, Examples) {
  const Grid g(2, 2);
  const auto zeros = enumerate(BinaryWord::zeros(g), 5);
  EXPECT_EQ(std::count_if(zeros.begin(), zeros.end(), [](const auto& s) { return area(s) == 4; }), 1);
  EXPECT_EQ(zeros.front().gaps(), (std::vector<int>{0, 1, 2, 3}));
  const auto full = enumerate(BinaryWord::ones(g), 0);
  ASSERT_EQ(full.size(), 1u);
  EXPECT_EQ(full[0], InvariantSubset::full(g));
  const auto one = enumerate(BinaryWord::parse(g, "1011"), 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].gaps(), std::vector<int>{1});
  EXPECT_TRUE(enumerate(BinaryWord::parse(g, "0100"), 10).empty());
  EXPECT_THROW(enumerate(BinaryWord::zeros(g), -1), std::invalid_argument);
}

TEST(Enumerate, MatchesNaiveBruteForce) {
  for (auto [M, N, A] : std::vector<std::tuple<int, int, int>>{{2, 2, 6}, {2, 3, 6}, {3, 3, 5}, {1, 3, 7}, {3, 4, 4}}) {
    const Grid g(M, N);
    const int bound = A * std::min(M, N) + 1;
    std::vector<std::vector<int>> got;
    for (const auto& s : all_subsets(g, A)) got.push_back(s.gaps());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, naive_gap_sets(g, std::max(bound, g.length()), A)) << to_string(g);
  }
}

TEST(Statistics, Area) {
  EXPECT_EQ(area(D(2, 2, {})), 0);
  EXPECT_EQ(area(D(2, 2, {1})), 1);
  EXPECT_EQ(area(D(2, 2, {0, 1, 2, 3})), 4);
}

TEST(Statistics, Generators) {
  EXPECT_EQ(ngen(D(2, 2, {1})), (std::vector<int>{0, 3}));
  EXPECT_EQ(ngen(D(2, 2, {})), (std::vector<int>{0, 1}));
  EXPECT_EQ(ngen(D(3, 3, {0})), (std::vector<int>{1, 2, 3}));
  for (const auto& s : all_subsets(Grid(3, 5), 6)) {
    const auto gens = ngen(s);
    ASSERT_EQ(gens.size(), 5u);
    std::vector<int> residues;
    for (int a : gens) residues.push_back(a % 5);
    std::sort(residues.begin(), residues.end());
    EXPECT_EQ(residues, (std::vector<int>{0, 1, 2, 3, 4}));
  }
}

TEST(Statistics, Codinv) {
  EXPECT_EQ(codinv(D(2, 2, {1})), 1);
  EXPECT_EQ(codinv(D(2, 2, {})), 0);
  for (int M = 1; M <= 5; ++M) {
    for (int N = 1; N <= 5; ++N) {
      for (const auto& s : all_subsets(Grid(M, N), 5)) EXPECT_EQ(dinv(s) + codinv(s), s.grid().delta());
    }
  }
}

TEST(Statistics, PrimedOnAllZeroWord) {
  for (auto [M, N] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {2, 3}, {3, 4}, {2, 4}}) {
    const Grid g(M, N);
    for (const auto& s : enumerate(BinaryWord::zeros(g), g.length() + 5)) {
      EXPECT_EQ(area_prime(s), area(s) - g.length());
      EXPECT_EQ(codinv_prime(s), codinv(s));
    }
  }
  EXPECT_EQ(area_prime(D(2, 2, {0, 1, 2, 3})), 0);
  EXPECT_EQ(codinv_prime(D(3, 3, {})), 0);
}

TEST(Statistics, LambdaK) {
  EXPECT_EQ(lambda_k(D(3, 3, {0}), 0), 0);
  EXPECT_EQ(lambda_k(InvariantSubset::full(Grid(2, 2)), 0), 0);
  for (int M = 1; M <= 4; ++M) {
    for (int N = 1; N <= 4; ++N) {
      for (const auto& s : all_subsets(Grid(M, N), 6)) {
        EXPECT_EQ(lambda_k(s, -1), lambda(s.word()));
        EXPECT_EQ(lambda_k(s, 0), lambda(rho(s)));
        for (int k = 0; k < 8; ++k) EXPECT_NO_THROW(lambda_k(s, k));
      }
    }
  }
}

TEST(Statistics, Cogenerators) {
  EXPECT_EQ(cogenerators(D(3, 3, {0})), std::vector<int>{0});
  EXPECT_TRUE(cogenerators(D(3, 3, {})).empty());
  EXPECT_EQ(cogenerators(D(2, 2, {0, 1})), (std::vector<int>{0, 1}));
}

TEST(Rho, Examples) {
  EXPECT_EQ(rho(D(2, 2, {1})).gaps(), std::vector<int>{0});
  EXPECT_TRUE(rho(D(2, 2, {0})).gaps().empty());
  EXPECT_EQ(rho(InvariantSubset::full(Grid(2, 2))), InvariantSubset::full(Grid(2, 2)));
}

TEST(Rho, ShiftProperties) {
  for (int M = 1; M <= 5; ++M) {
    for (int N = 1; N <= 5; ++N) {
      const Grid g(M, N);
      for (const auto& s : all_subsets(g, 10)) {
        const InvariantSubset r = rho(s);
        if (s.contains(0)) {
          EXPECT_EQ(area(r), area(s));
          const int change = -detail::count_gaps_in(s, 0, M - 1) + detail::count_gaps_in(s, N, N + M - 1);
          EXPECT_EQ(codinv(r), codinv(s) + change) << s.gaps_string();
        } else {
          EXPECT_EQ(area(r), area(s) - 1);
          EXPECT_EQ(codinv(r), codinv(s)) << s.gaps_string();
        }
        if (s.contains(N) || s.contains(M)) {
          EXPECT_TRUE(r.contains(N + M - 1));
        }
      }
    }
  }
}

TEST(Counting, CoprimeCatalanNumbers) {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {2, 5}, {3, 5}, {4, 5}, {1, 4}}) {
    const Grid g(m, n);
    long long count = 0;
    for (const BinaryWord& u : all_words(g)) {
      if (u[0] == 1) count += static_cast<long long>(enumerate(u, g.delta()).size());
    }
    EXPECT_EQ(count, binomial(m + n, m) / (m + n)) << m << "," << n;
  }
}

TEST(TruncatedSeries, Examples) {
  const Grid g(2, 2);
  EXPECT_EQ(truncated_series(BinaryWord::zeros(g), SeriesKind::P, 6), P("q^4 + q^5 + q^5*t + q^6 + 2*q^6*t"));
  for (int qmax : {0, 3, 9}) EXPECT_EQ(truncated_series(BinaryWord::ones(g), SeriesKind::P, qmax), LaurentPoly(1));
  EXPECT_TRUE(truncated_series(BinaryWord::parse(g, "0100"), SeriesKind::Q, 5).is_zero());
}

TEST(Csv, Header) {
  const std::string csv = subsets_csv(enumerate(BinaryWord::parse(Grid(2, 2), "1011"), 1));
  EXPECT_EQ(csv, "gaps,area,codinv,dinv,area_prime,codinv_prime,cogenerators\n\"{1}\",1,1,0,0,0,\"{1}\"\n");
}
