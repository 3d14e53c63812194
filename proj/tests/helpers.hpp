#pragma once

#include <ostream>
#include <string_view>
#include <vector>

#include "ratcat/algebra.hpp"

namespace ratcat {

inline void PrintTo(const LaurentPoly& p, std::ostream* os) { *os << to_text(p); }
inline void PrintTo(const RationalSeries& r, std::ostream* os) { *os << to_text(r); }

}  // namespace ratcat

namespace ratcat::testing {

inline LaurentPoly P(std::string_view s) { return parse_poly(s); }

inline RationalSeries S(std::string_view num, std::vector<int> den = {}) {
  return RationalSeries(parse_poly(num), std::move(den));
}

}  // namespace ratcat::testing
