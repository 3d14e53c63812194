#pragma once

// Brute-force side: (M,N)-invariant subsets of Z_{>=0} stored by their gap
// sets, every statistic computed straight from its set definition, and
// truncated generating series summed over an explicit enumeration.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratcat/algebra.hpp"
#include "ratcat/sequences.hpp"

namespace ratcat {

class InvariantSubset {
 public:
  /// Throws unless `gaps` is closed: g a gap implies g-N and g-M are gaps or negative.
  InvariantSubset(Grid grid, std::vector<int> gaps) : grid_(grid), gaps_(std::move(gaps)) {
    std::sort(gaps_.begin(), gaps_.end());
    gaps_.erase(std::unique(gaps_.begin(), gaps_.end()), gaps_.end());
    for (int g : gaps_) {
      if (g < 0) throw std::invalid_argument("gaps must be nonnegative");
      for (int s : {grid_.N(), grid_.M()}) {
        if (g - s >= 0 && !is_gap(g - s)) {
          throw std::invalid_argument("gap set " + gaps_string() + " is not (M,N)-invariant");
        }
      }
    }
  }

  /// Z_{>=0} itself.
  static InvariantSubset full(Grid grid) { return InvariantSubset(grid, {}); }

  const Grid& grid() const { return grid_; }
  const std::vector<int>& gaps() const { return gaps_; }

  bool is_gap(int k) const { return k >= 0 && std::binary_search(gaps_.begin(), gaps_.end(), k); }
  bool contains(int k) const { return k >= 0 && !is_gap(k); }

  /// Indicator of the subset on [0, M+N).
  BinaryWord word() const {
    std::vector<int> bits(grid_.length());
    for (int i = 0; i < grid_.length(); ++i) bits[i] = contains(i) ? 1 : 0;
    return BinaryWord(grid_, std::move(bits));
  }

  std::string gaps_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < gaps_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(gaps_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const InvariantSubset& x, const InvariantSubset& y) {
    return x.grid_ == y.grid_ && x.gaps_ == y.gaps_;
  }

 private:
  Grid grid_;
  std::vector<int> gaps_;
};

inline int area(const InvariantSubset& s) { return static_cast<int>(s.gaps().size()); }

namespace detail {

// Delta \ (Delta + step): the least element of Delta in each residue class.
inline std::vector<int> generators(const InvariantSubset& s, int step) {
  std::vector<int> out;
  for (int r = 0; r < step; ++r) {
    int a = r;
    while (s.is_gap(a)) a += step;
    out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline int count_gaps_in(const InvariantSubset& s, int lo, int hi) {
  int k = 0;
  for (int x = lo; x <= hi; ++x) k += s.is_gap(x);
  return k;
}

}  // namespace detail

inline std::vector<int> ngen(const InvariantSubset& s) { return detail::generators(s, s.grid().N()); }
inline std::vector<int> mgen(const InvariantSubset& s) { return detail::generators(s, s.grid().M()); }

/// sum over N-generators a of #([a, a+M-1] cap gaps).
inline int codinv(const InvariantSubset& s) {
  int total = 0;
  for (int a : ngen(s)) total += detail::count_gaps_in(s, a, a + s.grid().M() - 1);
  return total;
}

inline int dinv(const InvariantSubset& s) { return s.grid().delta() - codinv(s); }

/// lambda of the subset: #(Ngen cap [N, N+M-1]).
inline int lambda(const InvariantSubset& s) {
  const int N = s.grid().N();
  const int M = s.grid().M();
  int k = 0;
  for (int a : ngen(s)) k += a >= N && a <= N + M - 1;
  return k;
}

/// #(Ngen cap [k+N+1, k+N+M]); throws if the M-generator count disagrees.
inline int lambda_k(const InvariantSubset& s, int k) {
  const int N = s.grid().N();
  const int M = s.grid().M();
  int by_n = 0;
  for (int a : ngen(s)) by_n += a >= k + N + 1 && a <= k + N + M;
  int by_m = 0;
  for (int a : mgen(s)) by_m += a >= k + M + 1 && a <= k + N + M;
  if (by_n != by_m) throw std::logic_error("lambda_k: N- and M-generator windows disagree");
  return by_n;
}

/// #(gaps >= M+N).
inline int area_prime(const InvariantSubset& s) {
  const int L = s.grid().length();
  return static_cast<int>(std::count_if(s.gaps().begin(), s.gaps().end(), [L](int g) { return g >= L; }));
}

inline int codinv_prime(const InvariantSubset& s) {
  const int L = s.grid().length();
  const int M = s.grid().M();
  int total = 0;
  for (int a : ngen(s)) total += detail::count_gaps_in(s, std::max(a, L), a + M - 1);
  const int lam = lambda(s);
  return total - lam * (lam - 1) / 2;
}

/// Nonnegative gaps k with k+N and k+M both in the subset.
inline std::vector<int> cogenerators(const InvariantSubset& s) {
  std::vector<int> out;
  for (int g : s.gaps()) {
    if (s.contains(g + s.grid().N()) && s.contains(g + s.grid().M())) out.push_back(g);
  }
  return out;
}

/// Drops 0 if present and shifts everything down by one.
inline InvariantSubset rho(const InvariantSubset& s) {
  std::vector<int> gaps;
  for (int g : s.gaps()) {
    if (g > 0) gaps.push_back(g - 1);
  }
  return InvariantSubset(s.grid(), std::move(gaps));
}

/// Every subset in I_u with area <= max_area.  Inadmissible u gives nothing.
///
/// Gaps are decided in increasing order.  A number can only be a gap when its
/// N- and M-predecessors are gaps, so once every residue class mod
/// min(M,N) holds an element of the subset no further gap is possible.
inline std::vector<InvariantSubset> enumerate(const BinaryWord& u, int max_area) {
  if (max_area < 0) throw std::invalid_argument("max_area must be nonnegative");
  std::vector<InvariantSubset> out;
  if (!is_admissible(u)) return out;
  const Grid grid = u.grid();
  const int L = grid.length();
  const int M = grid.M();
  const int N = grid.N();
  const int step = std::min(M, N);

  std::vector<int> gaps;
  for (int i = 0; i < L; ++i) {
    if (u[i] == 0) gaps.push_back(i);
  }
  if (static_cast<int>(gaps.size()) > max_area) return out;

  // is_gap over [0, bound): every gap is < max_area * min(M,N).
  const int bound = std::max(L, max_area * step) + 1;
  std::vector<char> gap(static_cast<std::size_t>(bound), 0);
  for (int g : gaps) gap[g] = 1;

  // Residue classes mod `step` already containing an element below L.
  std::vector<int> covered(step, 0);
  int covered_count = 0;
  for (int i = 0; i < L; ++i) {
    if (u[i] == 1 && !covered[i % step]++) ++covered_count;
  }

  auto can_be_gap = [&](int k) {
    return (k - N < 0 || gap[k - N]) && (k - M < 0 || gap[k - M]);
  };

  // Depth-first over k = L, L+1, ...
  auto dfs = [&](auto&& self, int k, int area) -> void {
    if (covered_count == step || k >= bound) {
      out.emplace_back(grid, gaps);
      return;
    }
    if (area < max_area && can_be_gap(k)) {
      gap[k] = 1;
      gaps.push_back(k);
      self(self, k + 1, area + 1);
      gaps.pop_back();
      gap[k] = 0;
    }
    const bool newly = !covered[k % step]++;
    if (newly) ++covered_count;
    self(self, k + 1, area);
    if (newly) --covered_count;
    --covered[k % step];
  };
  dfs(dfs, L, static_cast<int>(gaps.size()));
  std::sort(out.begin(), out.end(),
            [](const InvariantSubset& x, const InvariantSubset& y) { return x.gaps() < y.gaps(); });
  return out;
}

enum class SeriesKind { P, Q, Phat, Qhat };

/// Sum of the defining monomials over every subset in I_u whose q-statistic
/// (area for P, P-hat; area' for Q, Q-hat) is at most max_q.
inline LaurentPoly truncated_series(const BinaryWord& u, SeriesKind kind, int max_q) {
  if (max_q < 0) throw std::invalid_argument("max_q must be nonnegative");
  const bool primed = kind == SeriesKind::Q || kind == SeriesKind::Qhat;
  const bool hat = kind == SeriesKind::Phat || kind == SeriesKind::Qhat;
  const int max_area = primed ? max_q + u.zero_count() : max_q;
  LaurentPoly total;
  for (const auto& s : enumerate(u, max_area)) {
    if (primed && area_prime(s) > max_q) continue;
    LaurentPoly term = primed ? LaurentPoly::monomial(1, area_prime(s), -codinv_prime(s), 0)
                              : LaurentPoly::monomial(1, area(s), codinv(s), 0);
    if (hat) {
      for (int k : cogenerators(s)) {
        const int lk = lambda_k(s, k);
        term *= LaurentPoly(1) + LaurentPoly::monomial(1, 0, primed ? -lk : lk, 1);
      }
    }
    total += term;
  }
  return total;
}

/// One CSV row per subset: gaps, area, codinv, dinv, area', codinv', cogenerators.
inline std::string subsets_csv(const std::vector<InvariantSubset>& subsets) {
  std::ostringstream os;
  os << "gaps,area,codinv,dinv,area_prime,codinv_prime,cogenerators\n";
  for (const auto& s : subsets) {
    std::string cogs = "{";
    bool first = true;
    for (int k : cogenerators(s)) {
      if (!first) cogs += ',';
      first = false;
      cogs += std::to_string(k);
    }
    cogs += "}";
    os << '"' << s.gaps_string() << "\"," << area(s) << ',' << codinv(s) << ',' << dinv(s) << ','
       << area_prime(s) << ',' << codinv_prime(s) << ",\"" << cogs << "\"\n";
  }
  return os.str();
}

}  // namespace ratcat
