#pragma once

// Exact sparse arithmetic in Z[q, t, t^-1, a] and rational series whose
// denominators are products of cyclotomic-style factors (1 - q^l).

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ratcat {

using Integer = boost::multiprecision::cpp_int;

/// Exponent triple of a monomial q^q t^t a^a.  Ordered by (a, q, t), which is
/// also the serialization order.
struct Exponent {
  int q = 0;
  int t = 0;
  int a = 0;

  friend bool operator==(const Exponent&, const Exponent&) = default;
  friend auto operator<=>(const Exponent& x, const Exponent& y) {
    return std::tie(x.a, x.q, x.t) <=> std::tie(y.a, y.q, y.t);
  }
};

class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, Integer>;

  LaurentPoly() = default;
  LaurentPoly(long long c) { add_term({}, Integer(c)); }  // NOLINT: implicit constant
  LaurentPoly(const Integer& c) { add_term({}, c); }      // NOLINT

  static LaurentPoly monomial(const Integer& c, int eq, int et, int ea) {
    LaurentPoly p;
    p.add_term({eq, et, ea}, c);
    return p;
  }
  static LaurentPoly q(int e = 1) { return monomial(1, e, 0, 0); }
  static LaurentPoly t(int e = 1) { return monomial(1, 0, e, 0); }
  static LaurentPoly a(int e = 1) { return monomial(1, 0, 0, e); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_monomial() const { return terms_.size() == 1; }

  Integer coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  /// Adds c * q^e.q t^e.t a^e.a.  Rejects negative q or a exponents.
  void add_term(const Exponent& e, const Integer& c) {
    if (c == 0) return;
    if (e.q < 0 || e.a < 0) {
      throw std::domain_error("negative q or a exponent in LaurentPoly");
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
  friend LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }

  friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
    LaurentPoly r;
    for (const auto& [ex, cx] : x.terms_) {
      for (const auto& [ey, cy] : y.terms_) {
        r.add_term({ex.q + ey.q, ex.t + ey.t, ex.a + ey.a}, cx * cy);
      }
    }
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Multiplies by q^dq t^dt a^da; throws if a q or a exponent would go negative.
  LaurentPoly shifted(int dq, int dt, int da = 0) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.add_term({e.q + dq, e.t + dt, e.a + da}, c);
    return r;
  }

  /// t -> t^-1.
  LaurentPoly invert_t() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.add_term({e.q, -e.t, e.a}, c);
    return r;
  }

  /// Exchanges the q and t exponents.  Requires every t exponent to be >= 0.
  LaurentPoly swap_qt() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.add_term({e.t, e.q, e.a}, c);
    return r;
  }

  /// Keeps only the terms with q exponent <= q_max.
  LaurentPoly truncated(int q_max) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) {
      if (e.q <= q_max) r.terms_.emplace(e, c);
    }
    return r;
  }

  /// The a = 0 specialization.
  LaurentPoly at_a_zero() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) {
      if (e.a == 0) r.terms_.emplace(e, c);
    }
    return r;
  }

  /// Value at q = t = a = 1.
  Integer coefficient_sum() const {
    Integer s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  int min_q() const {
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first || e.q < m) m = e.q;
      first = false;
    }
    return m;
  }
  int max_q() const {
    int m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, e.q);
    return m;
  }

  bool all_coefficients_nonnegative() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& kv) { return kv.second > 0; });
  }

  /// Groups the terms by (t, a) exponent: each slice is a dense univariate
  /// polynomial in q (index = q exponent).
  std::map<std::pair<int, int>, std::vector<Integer>> q_slices() const {
    std::map<std::pair<int, int>, std::vector<Integer>> out;
    for (const auto& [e, c] : terms_) {
      auto& v = out[{e.t, e.a}];
      if (static_cast<int>(v.size()) <= e.q) v.resize(e.q + 1);
      v[e.q] = c;
    }
    return out;
  }

  static LaurentPoly from_q_slices(const std::map<std::pair<int, int>, std::vector<Integer>>& s) {
    LaurentPoly r;
    for (const auto& [ta, coeffs] : s) {
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        r.add_term({static_cast<int>(k), ta.first, ta.second}, coeffs[k]);
      }
    }
    return r;
  }

 private:
  TermMap terms_;
};

namespace detail {

// Exact division of a dense univariate polynomial by a divisor whose leading
// coefficient is +-1.  Returns false if the remainder is nonzero.
inline bool divide_univariate(const std::vector<Integer>& num, const std::vector<Integer>& den,
                              std::vector<Integer>& quot) {
  std::vector<Integer> rem = num;
  while (!rem.empty() && rem.back() == 0) rem.pop_back();
  if (rem.empty()) {
    quot.clear();
    return true;
  }
  const std::size_t dd = den.size() - 1;
  if (rem.size() - 1 < dd) return false;
  const Integer& lead = den.back();
  quot.assign(rem.size() - dd, 0);
  for (std::size_t k = rem.size(); k-- > dd;) {
    if (rem[k] == 0) continue;
    Integer f = rem[k] * lead;  // lead is +-1, so lead^-1 == lead
    quot[k - dd] = f;
    for (std::size_t j = 0; j <= dd; ++j) rem[k - dd + j] -= f * den[j];
  }
  return std::all_of(rem.begin(), rem.end(), [](const Integer& c) { return c == 0; });
}

inline std::vector<Integer> one_minus_q_pow(int l) {
  std::vector<Integer> d(l + 1, 0);
  d[0] = 1;
  d[l] = -1;
  return d;
}

inline std::vector<Integer> q_integer(int l) { return std::vector<Integer>(l, 1); }

}  // namespace detail

/// Divides p by the univariate q-polynomial `divisor` (dense coefficients,
/// leading coefficient +-1).  Returns false and leaves `out` untouched when the
/// division is not exact.
inline bool try_divide_by_q_poly(const LaurentPoly& p, const std::vector<Integer>& divisor,
                                 LaurentPoly& out) {
  std::map<std::pair<int, int>, std::vector<Integer>> result;
  for (const auto& [ta, coeffs] : p.q_slices()) {
    std::vector<Integer> quot;
    if (!detail::divide_univariate(coeffs, divisor, quot)) return false;
    result.emplace(ta, std::move(quot));
  }
  out = LaurentPoly::from_q_slices(result);
  return true;
}

/// (1 - q^l) as a LaurentPoly.
inline LaurentPoly one_minus_q(int l = 1) { return LaurentPoly(1) - LaurentPoly::q(l); }

/// numerator / prod_i (1 - q^{l_i}).  The denominator is kept as the sorted
/// multiset {l_i} and never expanded.
class RationalSeries {
 public:
  RationalSeries() = default;
  RationalSeries(LaurentPoly num) : num_(std::move(num)) {}  // NOLINT: polynomials are series
  RationalSeries(long long c) : num_(c) {}                   // NOLINT
  RationalSeries(LaurentPoly num, std::vector<int> den) : num_(std::move(num)), den_(std::move(den)) {
    for (int l : den_) {
      if (l <= 0) throw std::invalid_argument("denominator factor exponent must be positive");
    }
    canonicalize();
  }

  const LaurentPoly& numerator() const { return num_; }
  const std::vector<int>& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  /// prod_i (1 - q^{l_i}) expanded.
  static LaurentPoly expand_factors(const std::vector<int>& ls) {
    LaurentPoly r(1);
    for (int l : ls) r *= one_minus_q(l);
    return r;
  }
  LaurentPoly denominator_poly() const { return expand_factors(den_); }

  friend RationalSeries operator+(const RationalSeries& x, const RationalSeries& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    // Multiset lcm of the two denominators.
    std::vector<int> lcm;
    std::vector<int> extra_x;
    std::vector<int> extra_y;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.den_.size() || j < y.den_.size()) {
      if (j == y.den_.size() || (i < x.den_.size() && x.den_[i] < y.den_[j])) {
        lcm.push_back(x.den_[i]);
        extra_y.push_back(x.den_[i++]);
      } else if (i == x.den_.size() || y.den_[j] < x.den_[i]) {
        lcm.push_back(y.den_[j]);
        extra_x.push_back(y.den_[j++]);
      } else {
        lcm.push_back(x.den_[i]);
        ++i;
        ++j;
      }
    }
    LaurentPoly num = x.num_ * expand_factors(extra_x) + y.num_ * expand_factors(extra_y);
    return RationalSeries(std::move(num), std::move(lcm));
  }
  friend RationalSeries operator-(const RationalSeries& x, const RationalSeries& y) {
    return x + (-y);
  }
  RationalSeries operator-() const {
    RationalSeries r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalSeries operator*(const RationalSeries& x, const RationalSeries& y) {
    std::vector<int> den = x.den_;
    den.insert(den.end(), y.den_.begin(), y.den_.end());
    std::sort(den.begin(), den.end());
    return RationalSeries(x.num_ * y.num_, std::move(den));
  }
  RationalSeries& operator+=(const RationalSeries& o) { return *this = *this + o; }
  RationalSeries& operator*=(const RationalSeries& o) { return *this = *this * o; }

  /// Returns this / (1 - q^l).
  RationalSeries divided_by_one_minus_q(int l) const {
    std::vector<int> den = den_;
    den.push_back(l);
    return RationalSeries(num_, std::move(den));
  }

  RationalSeries shifted(int dq, int dt, int da = 0) const {
    RationalSeries r = *this;
    r.num_ = num_.shifted(dq, dt, da);
    return r;
  }
  RationalSeries invert_t() const {
    RationalSeries r = *this;
    r.num_ = num_.invert_t();
    return r;
  }
  RationalSeries at_a_zero() const { return RationalSeries(num_.at_a_zero(), den_); }

  /// Representation-independent equality: num1 * den2 == num2 * den1.
  bool equals(const RationalSeries& o) const {
    return num_ * o.denominator_poly() == o.num_ * denominator_poly();
  }

  /// Representation equality (after canonicalization).
  friend bool operator==(const RationalSeries&, const RationalSeries&) = default;

 private:
  // Removes every factor (1 - q^l) that divides the numerator exactly.
  void canonicalize() {
    std::sort(den_.begin(), den_.end());
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    std::vector<int> kept;
    for (int l : den_) {
      LaurentPoly quot;
      if (try_divide_by_q_poly(num_, detail::one_minus_q_pow(l), quot)) {
        num_ = std::move(quot);
      } else {
        kept.push_back(l);
      }
    }
    den_ = std::move(kept);
  }

  friend RationalSeries reduce(const RationalSeries& r);

  LaurentPoly num_;
  std::vector<int> den_;
};

/// Canonical form plus replacement of (1 - q^l) by (1 - q) whenever
/// 1 + q + ... + q^{l-1} divides the numerator.
inline RationalSeries reduce(const RationalSeries& r) {
  RationalSeries cur = r;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cur.den_.size(); ++i) {
      const int l = cur.den_[i];
      if (l <= 1) continue;
      LaurentPoly quot;
      if (try_divide_by_q_poly(cur.num_, detail::q_integer(l), quot)) {
        std::vector<int> den = cur.den_;
        den[i] = 1;
        cur = RationalSeries(std::move(quot), std::move(den));
        changed = true;
        break;
      }
    }
  }
  return cur;
}

/// Polynomial agreeing with the power-series expansion of r in every term
/// with q exponent <= q_max.
inline LaurentPoly expand(const RationalSeries& r, int q_max) {
  if (q_max < 0) throw std::invalid_argument("q_max must be nonnegative");
  auto slices = r.numerator().truncated(q_max).q_slices();
  for (auto& [ta, c] : slices) {
    c.resize(q_max + 1);
    // Multiplying by 1/(1 - q^l) is a running sum with stride l.
    for (int l : r.denominator()) {
      for (int k = l; k <= q_max; ++k) c[k] += c[k - l];
    }
  }
  return LaurentPoly::from_q_slices(slices);
}

inline bool equals(const RationalSeries& x, const RationalSeries& y) { return x.equals(y); }

/// A sum of terms N_i / prod(1 - q^l) kept apart by denominator.  The solvers
/// build these alongside the recursion; every numerator they produce has
/// nonnegative coefficients, which is what the positive-form emitter prints.
class SeriesSum {
 public:
  using GroupMap = std::map<std::vector<int>, LaurentPoly>;

  SeriesSum() = default;
  SeriesSum(LaurentPoly p) { add(std::move(p), {}); }  // NOLINT

  const GroupMap& groups() const { return groups_; }
  bool is_zero() const { return groups_.empty(); }

  void add(LaurentPoly num, std::vector<int> den) {
    if (num.is_zero()) return;
    std::sort(den.begin(), den.end());
    auto [it, inserted] = groups_.try_emplace(std::move(den), num);
    if (!inserted) {
      it->second += num;
      if (it->second.is_zero()) groups_.erase(it);
    }
  }

  SeriesSum& operator+=(const SeriesSum& o) {
    for (const auto& [den, num] : o.groups_) add(num, den);
    return *this;
  }
  friend SeriesSum operator+(SeriesSum x, const SeriesSum& y) { return x += y; }

  friend SeriesSum operator*(const LaurentPoly& w, const SeriesSum& s) {
    SeriesSum r;
    if (w.is_zero()) return r;
    for (const auto& [den, num] : s.groups_) r.add(w * num, den);
    return r;
  }

  /// this / (1 - q^l), then per-group simplification of the new factor.
  SeriesSum divided_by_one_minus_q(int l) const {
    SeriesSum r;
    for (const auto& [den, num] : groups_) {
      std::vector<int> d = den;
      d.push_back(l);
      r.add(num, std::move(d));
    }
    return r.simplified();
  }

  /// Replaces (1 - q^l) by (1 - q) inside a group whenever 1 + ... + q^{l-1}
  /// divides that group's numerator; merges groups that become equal.
  SeriesSum simplified() const {
    SeriesSum r;
    for (const auto& [den, num] : groups_) {
      std::vector<int> d = den;
      LaurentPoly n = num;
      for (int& l : d) {
        if (l <= 1) continue;
        LaurentPoly quot;
        if (try_divide_by_q_poly(n, detail::q_integer(l), quot)) {
          n = std::move(quot);
          l = 1;
        }
      }
      r.add(std::move(n), std::move(d));
    }
    return r;
  }

  SeriesSum shifted(int dq, int dt, int da = 0) const {
    SeriesSum r;
    for (const auto& [den, num] : groups_) r.add(num.shifted(dq, dt, da), den);
    return r;
  }
  SeriesSum invert_t() const {
    SeriesSum r;
    for (const auto& [den, num] : groups_) r.add(num.invert_t(), den);
    return r;
  }
  SeriesSum at_a_zero() const {
    SeriesSum r;
    for (const auto& [den, num] : groups_) r.add(num.at_a_zero(), den);
    return r;
  }

  bool is_positive() const {
    return std::all_of(groups_.begin(), groups_.end(),
                       [](const auto& g) { return g.second.all_coefficients_nonnegative(); });
  }

  RationalSeries to_rational() const {
    RationalSeries r;
    for (const auto& [den, num] : groups_) r += RationalSeries(num, den);
    return r;
  }

 private:
  GroupMap groups_;
};

// ---------------------------------------------------------------------------
// Text form: terms `c*q^i*t^j*a^k` joined by `+`/`-`.

namespace detail {

inline void append_power(std::string& out, char var, int e, bool& first_factor) {
  if (e == 0) return;
  if (!first_factor) out += '*';
  first_factor = false;
  out += var;
  if (e != 1) {
    out += '^';
    out += std::to_string(e);
  }
}

}  // namespace detail

inline std::string to_text(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Integer mag = abs(c);
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    const bool constant = e.q == 0 && e.t == 0 && e.a == 0;
    bool first_factor = true;
    if (constant || mag != 1) {
      out += mag.str();
      first_factor = false;
    }
    detail::append_power(out, 'q', e.q, first_factor);
    detail::append_power(out, 't', e.t, first_factor);
    detail::append_power(out, 'a', e.a, first_factor);
  }
  return out;
}

namespace detail {

inline std::string denominator_text(const std::vector<int>& den) {
  std::string out;
  std::size_t i = 0;
  bool first = true;
  while (i < den.size()) {
    std::size_t j = i;
    while (j < den.size() && den[j] == den[i]) ++j;
    if (!first) out += '*';
    first = false;
    out += den[i] == 1 ? "(1-q)" : "(1-q^" + std::to_string(den[i]) + ")";
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

inline std::string fraction_text(const LaurentPoly& num, const std::vector<int>& den) {
  std::string n = to_text(num);
  if (den.empty()) return n;
  if (num.size() > 1) n = "(" + n + ")";
  return n + "/" + denominator_text(den);
}

}  // namespace detail

inline std::string to_text(const RationalSeries& r) {
  return detail::fraction_text(r.numerator(), r.denominator());
}

/// Positive form: one fraction per denominator group, joined by ` + `.
inline std::string to_text(const SeriesSum& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [den, num] : s.groups()) {
    if (!out.empty()) out += " + ";
    out += detail::fraction_text(num, den);
  }
  return out;
}

/// Parses the text form.  Accepts optional `*` between factors, signed
/// exponents (`t^-2`), integer coefficients, and whitespace anywhere.
inline LaurentPoly parse_poly(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  auto read_int = [&]() {
    const std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || !std::isdigit(static_cast<unsigned char>(s[pos - 1]))) fail("expected integer");
    return s.substr(start, pos - start);
  };
  LaurentPoly out;
  bool first_term = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first_term) {
      fail("expected '+' or '-'");
    }
    first_term = false;
    Integer coeff = 1;
    Exponent e;
    bool any = false;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
      if (s[pos] == '*') {
        ++pos;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        coeff *= Integer(read_int());
        any = true;
      } else if (s[pos] == 'q' || s[pos] == 't' || s[pos] == 'a') {
        const char var = s[pos++];
        int exp = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          exp = std::stoi(read_int());
        }
        (var == 'q' ? e.q : var == 't' ? e.t : e.a) += exp;
        any = true;
      } else {
        fail(std::string("unexpected character '") + s[pos] + "'");
      }
    }
    if (!any) fail("empty term");
    out.add_term(e, sign * coeff);
  }
  return out;
}

}  // namespace ratcat
