#pragma once

// LaTeX and JSON output.

#include <string>
#include <vector>

#include "json.hpp"
#include "ratcat/algebra.hpp"
#include "ratcat/catalan.hpp"

namespace ratcat {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// JSON.  Coefficients are decimal strings so big integers survive.

inline json to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({{"c", c.str()}, {"q", e.q}, {"t", e.t}, {"a", e.a}});
  }
  return terms;
}

inline json to_json(const RationalSeries& r) {
  return {{"num", to_json(r.numerator())}, {"den", r.denominator()}, {"text", to_text(r)}};
}

inline json to_json(const SeriesSum& s) {
  json groups = json::array();
  for (const auto& [den, num] : s.groups()) groups.push_back({{"num", to_json(num)}, {"den", den}});
  return {{"groups", groups}, {"text", to_text(s)}};
}

inline LaurentPoly poly_from_json(const json& terms) {
  LaurentPoly p;
  for (const auto& t : terms) {
    p += LaurentPoly::monomial(Integer(t.at("c").get<std::string>()), t.at("q").get<int>(), t.at("t").get<int>(),
                               t.at("a").get<int>());
  }
  return p;
}

inline RationalSeries series_from_json(const json& j) {
  return RationalSeries(poly_from_json(j.at("num")), j.at("den").get<std::vector<int>>());
}

inline json to_json(const CatalanResult& c) {
  return {{"grid", {c.grid.M(), c.grid.N()}},
          {"series", to_json(c.series)},
          {"polynomial_form", to_json(c.polynomial_form)},
          {"polynomial_text", to_text(c.polynomial_form)},
          {"symmetric", c.symmetric}};
}

// ---------------------------------------------------------------------------
// LaTeX, written the way the displays in the literature are: q^3t^2, no
// multiplication signs, braces only around multi-character exponents.

namespace detail {

inline void latex_power(std::string& out, char var, int e) {
  if (e == 0) return;
  out += var;
  if (e == 1) return;
  const std::string s = std::to_string(e);
  out += s.size() == 1 ? "^" + s : "^{" + s + "}";
}

inline std::string latex_denominator(const std::vector<int>& den) {
  std::string out;
  std::size_t i = 0;
  while (i < den.size()) {
    std::size_t j = i;
    while (j < den.size() && den[j] == den[i]) ++j;
    std::string f = "(1-q";
    if (den[i] != 1) {
      const std::string s = std::to_string(den[i]);
      f += s.size() == 1 ? "^" + s : "^{" + s + "}";
    }
    f += ")";
    if (j - i > 1) f += "^{" + std::to_string(j - i) + "}";
    out += f;
    i = j;
  }
  return out;
}

}  // namespace detail

inline std::string to_latex(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const Integer mag = abs(c);
    if (c < 0) out += "-";
    else if (!first) out += "+";
    first = false;
    const bool constant = e.q == 0 && e.t == 0 && e.a == 0;
    if (constant || mag != 1) out += mag.str();
    detail::latex_power(out, 'q', e.q);
    detail::latex_power(out, 't', e.t);
    detail::latex_power(out, 'a', e.a);
  }
  return out;
}

inline std::string latex_fraction(const LaurentPoly& num, const std::vector<int>& den) {
  if (den.empty()) return to_latex(num);
  return "\\frac{" + to_latex(num) + "}{" + detail::latex_denominator(den) + "}";
}

inline std::string to_latex(const RationalSeries& r) { return latex_fraction(r.numerator(), r.denominator()); }

inline std::string to_latex(const SeriesSum& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [den, num] : s.groups()) {
    if (!out.empty()) out += "+";
    out += latex_fraction(num, den);
  }
  return out;
}

inline std::string to_latex(const CatalanResult& c) {
  const int k = c.grid.d() - 1;
  std::string lhs = k == 0 ? "" : k == 1 ? "(1-q)" : "(1-q)^{" + std::to_string(k) + "}";
  return lhs + "c_{" + std::to_string(c.grid.M()) + "," + std::to_string(c.grid.N()) +
         "}(q,t) = " + to_latex(c.polynomial_form);
}

}  // namespace ratcat
