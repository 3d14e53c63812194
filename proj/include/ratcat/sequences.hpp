#pragma once

// Binary words of length M+N over a grid (M, N), their admissibility and
// lambda statistic, and the marker-word re-encoding over {0, b, x}.

#include <cctype>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ratcat {

class Grid {
 public:
  Grid(int M, int N) : M_(M), N_(N) {
    if (M < 1 || N < 1) throw std::invalid_argument("grid dimensions must be positive");
    d_ = std::gcd(M, N);
  }

  int M() const { return M_; }
  int N() const { return N_; }
  int length() const { return M_ + N_; }
  int d() const { return d_; }
  int m() const { return M_ / d_; }
  int n() const { return N_ / d_; }
  /// Maximal value of dinv: (NM - N - M + d) / 2.
  int delta() const { return (N_ * M_ - N_ - M_ + d_) / 2; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int M_;
  int N_;
  int d_;
};

inline std::string to_string(const Grid& g) {
  return "(" + std::to_string(g.M()) + "," + std::to_string(g.N()) + ")";
}

namespace detail {

inline void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw std::invalid_argument("words belong to different grids");
}

// Expands "0^4 1^2", "(01)^5", "0000011" and mixtures into a flat string.  A
// bare exponent applies to the preceding character, a parenthesized group is
// repeated as a whole.
inline std::string expand_runs(std::string_view text, std::string_view alphabet) {
  std::string out;
  std::size_t pos = 0;
  auto is_symbol = [&](char c) { return alphabet.find(c) != std::string_view::npos; };
  auto read_count = [&]() {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("expected repeat count in '" + std::string(text) + "'");
    return std::stoi(std::string(text.substr(start, pos - start)));
  };
  while (pos < text.size()) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else if (c == '(') {
      std::size_t close = text.find(')', pos);
      if (close == std::string_view::npos) throw std::invalid_argument("unbalanced '(' in word");
      std::string group = expand_runs(text.substr(pos + 1, close - pos - 1), alphabet);
      pos = close + 1;
      int count = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        count = read_count();
      }
      for (int i = 0; i < count; ++i) out += group;
    } else if (is_symbol(c)) {
      ++pos;
      int count = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        count = read_count();
      }
      out.append(static_cast<std::size_t>(count), c);
    } else {
      throw std::invalid_argument(std::string("unexpected character '") + c + "' in word '" +
                                  std::string(text) + "'");
    }
  }
  return out;
}

}  // namespace detail

/// u = (u_0, ..., u_{M+N-1}) in {0,1}^{M+N}.
class BinaryWord {
 public:
  BinaryWord(Grid grid, std::vector<int> bits) : grid_(grid), bits_(std::move(bits)) {
    if (static_cast<int>(bits_.size()) != grid_.length()) {
      throw std::invalid_argument("binary word length must equal M+N");
    }
    for (int b : bits_) {
      if (b != 0 && b != 1) throw std::invalid_argument("binary word entries must be 0 or 1");
    }
  }

  /// Parses literal ("010101") or run-length ("0^4 1^2", "(01)^5") forms.
  static BinaryWord parse(Grid grid, std::string_view text) {
    std::string flat = detail::expand_runs(text, "01");
    std::vector<int> bits;
    bits.reserve(flat.size());
    for (char c : flat) bits.push_back(c - '0');
    if (static_cast<int>(bits.size()) != grid.length()) {
      throw std::invalid_argument("word '" + std::string(text) + "' has length " +
                                  std::to_string(bits.size()) + ", expected M+N = " +
                                  std::to_string(grid.length()));
    }
    return BinaryWord(grid, std::move(bits));
  }

  static BinaryWord ones(Grid grid) { return BinaryWord(grid, std::vector<int>(grid.length(), 1)); }
  static BinaryWord zeros(Grid grid) { return BinaryWord(grid, std::vector<int>(grid.length(), 0)); }
  /// 0^{M+N-k} 1^k.
  static BinaryWord zeros_then_ones(Grid grid, int k) {
    if (k < 0 || k > grid.length()) throw std::invalid_argument("k out of range");
    std::vector<int> bits(grid.length(), 0);
    for (int i = grid.length() - k; i < grid.length(); ++i) bits[i] = 1;
    return BinaryWord(grid, std::move(bits));
  }

  const Grid& grid() const { return grid_; }
  int size() const { return static_cast<int>(bits_.size()); }
  int operator[](int i) const { return bits_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& bits() const { return bits_; }

  int zero_count() const {
    int k = 0;
    for (int b : bits_) k += b == 0;
    return k;
  }
  bool is_all_ones() const { return zero_count() == 0; }

  std::string str() const {
    std::string s;
    for (int b : bits_) s += static_cast<char>('0' + b);
    return s;
  }

  friend bool operator==(const BinaryWord& x, const BinaryWord& y) {
    return x.grid_ == y.grid_ && x.bits_ == y.bits_;
  }
  friend bool operator<(const BinaryWord& x, const BinaryWord& y) { return x.bits_ < y.bits_; }

 private:
  Grid grid_;
  std::vector<int> bits_;
};

/// All 2^{M+N} words of a grid, in lexicographic order.
inline std::vector<BinaryWord> all_words(const Grid& g) {
  const int L = g.length();
  if (L > 30) throw std::invalid_argument("grid too large for exhaustive word listing");
  std::vector<BinaryWord> out;
  out.reserve(std::size_t{1} << L);
  for (unsigned long mask = 0; mask < (1UL << L); ++mask) {
    std::vector<int> bits(L);
    for (int i = 0; i < L; ++i) bits[i] = (mask >> (L - 1 - i)) & 1U;
    out.emplace_back(g, std::move(bits));
  }
  return out;
}

/// u is admissible iff u_i <= u_{i+N} and u_i <= u_{i+M} wherever the shifted
/// index stays inside the word.  The witness is {i < M+N : u_i = 1} u Z_{>=M+N}.
inline bool is_admissible(const BinaryWord& u) {
  const int L = u.size();
  const int M = u.grid().M();
  const int N = u.grid().N();
  for (int i = 0; i < L; ++i) {
    if (i + N < L && u[i] > u[i + N]) return false;
    if (i + M < L && u[i] > u[i + M]) return false;
  }
  return true;
}

/// lambda(u) = sum_{i<M} (u_{i+N} - u_i); equal to sum_{i<N} (u_{i+M} - u_i).
inline int lambda(const BinaryWord& u) {
  const int M = u.grid().M();
  const int N = u.grid().N();
  int by_m = 0;
  for (int i = 0; i < M; ++i) by_m += u[i + N] - u[i];
  int by_n = 0;
  for (int i = 0; i < N; ++i) by_n += u[i + M] - u[i];
  if (by_m != by_n) throw std::logic_error("lambda: M-form and N-form disagree");
  return by_m;
}

/// Smallest p >= 1 dividing M+N such that u is cyclically p-periodic.
inline int minimal_period(const BinaryWord& u) {
  const int L = u.size();
  for (int p = 1; p <= L; ++p) {
    if (L % p != 0) continue;
    bool periodic = true;
    for (int i = 0; i < L && periodic; ++i) periodic = u[i] == u[(i + p) % L];
    if (periodic) return p;
  }
  return L;
}

/// (u_1, ..., u_{M+N-1}, b).
inline BinaryWord rotate_set_last(const BinaryWord& u, int b) {
  std::vector<int> bits(u.bits().begin() + 1, u.bits().end());
  bits.push_back(b);
  return BinaryWord(u.grid(), std::move(bits));
}

/// Cyclic rotation (u_1, ..., u_{M+N-1}, u_0).
inline BinaryWord rotate(const BinaryWord& u) { return rotate_set_last(u, u[0]); }

// ---------------------------------------------------------------------------
// Marker words.

enum class Marker : char { Gap = '0', Old = 'b', New = 'x' };

/// Word over {0, b, x}; b stands for an element that is not a generator, x for
/// a new generator, 0 for a gap.
class MarkerWord {
 public:
  MarkerWord() = default;
  explicit MarkerWord(std::string symbols) : s_(std::move(symbols)) {
    for (char c : s_) {
      if (c != '0' && c != 'b' && c != 'x') {
        throw std::invalid_argument(std::string("invalid marker symbol '") + c + "'");
      }
    }
  }
  /// Accepts run-length forms such as "0^2 x" or "(0x)^2".  "-" or "e" is the
  /// empty word.
  static MarkerWord parse(std::string_view text) {
    if (text == "-" || text == "e" || text.empty()) return MarkerWord();
    return MarkerWord(detail::expand_runs(text, "0bx"));
  }

  const std::string& str() const { return s_; }
  int size() const { return static_cast<int>(s_.size()); }
  bool empty() const { return s_.empty(); }
  Marker operator[](int i) const { return static_cast<Marker>(s_[static_cast<std::size_t>(i)]); }

  /// |v|: the number of x entries.
  int crosses() const { return count(Marker::New); }
  int count(Marker m) const {
    int k = 0;
    for (char c : s_) k += c == static_cast<char>(m);
    return k;
  }

  MarkerWord tail() const { return MarkerWord(s_.substr(1)); }
  MarkerWord appended(Marker m) const { return MarkerWord(s_ + static_cast<char>(m)); }

  friend bool operator==(const MarkerWord&, const MarkerWord&) = default;
  friend auto operator<=>(const MarkerWord&, const MarkerWord&) = default;

 private:
  std::string s_;
};

struct MarkerPair {
  MarkerWord v;
  MarkerWord w;
  friend bool operator==(const MarkerPair&, const MarkerPair&) = default;
  friend auto operator<=>(const MarkerPair&, const MarkerPair&) = default;
};

namespace detail {

inline Marker marker_of(int upper, int lower) {
  if (upper == 0) return Marker::Gap;
  return lower == 1 ? Marker::Old : Marker::New;
}

}  // namespace detail

/// (v, w): v_i encodes (u_{N+i}, u_i) for i < M, w_i encodes (u_{M+i}, u_i)
/// for i < N.
inline MarkerPair to_markers(const BinaryWord& u) {
  if (!is_admissible(u)) throw std::invalid_argument("to_markers: word " + u.str() + " is not admissible");
  const int M = u.grid().M();
  const int N = u.grid().N();
  std::string v;
  std::string w;
  for (int i = 0; i < M; ++i) v += static_cast<char>(detail::marker_of(u[N + i], u[i]));
  for (int i = 0; i < N; ++i) w += static_cast<char>(detail::marker_of(u[M + i], u[i]));
  return {MarkerWord(std::move(v)), MarkerWord(std::move(w))};
}

/// Inverse of to_markers.  Throws if (v, w) is not the image of an admissible
/// word of the grid.
inline BinaryWord from_markers(const MarkerWord& v, const MarkerWord& w, const Grid& grid) {
  const int M = grid.M();
  const int N = grid.N();
  if (v.size() != M || w.size() != N) {
    throw std::invalid_argument("from_markers: expected lengths (" + std::to_string(M) + "," +
                                std::to_string(N) + ")");
  }
  std::vector<int> bits(grid.length(), 0);
  for (int i = 0; i < M; ++i) bits[i] = v[i] == Marker::Old ? 1 : 0;
  for (int i = M; i < M + N; ++i) bits[i] = w[i - M] == Marker::Gap ? 0 : 1;
  BinaryWord u(grid, std::move(bits));
  if (!is_admissible(u) || !(to_markers(u) == MarkerPair{v, w})) {
    throw std::invalid_argument("from_markers: (" + v.str() + ", " + w.str() +
                                ") is not an admissible pair");
  }
  return u;
}

inline bool is_admissible_pair(const MarkerWord& v, const MarkerWord& w, const Grid& grid) {
  try {
    from_markers(v, w, grid);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

/// Forgets every b.
inline MarkerWord phi(const MarkerWord& v) {
  std::string out;
  for (char c : v.str()) {
    if (c != static_cast<char>(Marker::Old)) out += c;
  }
  return MarkerWord(std::move(out));
}

}  // namespace ratcat
