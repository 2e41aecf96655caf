#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "glide/wavepacket.hpp"

namespace glide {

using Rational = boost::multiprecision::cpp_rational;

// Parses "inf", integers, fractions "36/7" and decimals "4.8" exactly.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& v);
double to_double(const Rational& v);

// Exponents are stored as reciprocals so that infinity is 0 exactly.
struct StrichartzPair {
  Rational inv_q;
  Rational inv_r;
  int d = 2;

  static StrichartzPair make(const Rational& q, const Rational& r, int d = 2);
  static StrichartzPair with_infinite_r(const Rational& q, int d = 2);
  static StrichartzPair parse(const std::string& q, const std::string& r, int d = 2);
  // Throws ValidationError unless 2 <= q, r <= inf and d >= 2.
  void validate() const;
  std::string q_string() const;
  std::string r_string() const;
};

// d (1/2 - 1/r) - 1/q
Rational beta(const StrichartzPair& p);
// 1/q = alpha (1/2 - 1/r); DomainError at r = 2.
Rational alpha(const StrichartzPair& p);

enum class Region { free, quarter_loss, doi_line, thm1, ilp3, doi2d, thm2 };
Region parse_region(const std::string& name);
std::string to_string(Region r);
const std::vector<Region>& all_regions();

struct RegionCheck {
  bool satisfied = false;
  Rational slack;  // bound on 1/q minus 1/q
};

// DomainError for r < 4 on doi_line, doi2d and thm2, and for d != 2 on
// thm1, ilp3 and doi2d.
RegionCheck region(Region name, const StrichartzPair& p);

// 5/q + 2/r <= 1
bool thm1_condition(const StrichartzPair& p);
// 2(d-2)(1/2-1/r) - 4/q - 4/(3r) + 5/6 >= 0
bool thm2_condition(const StrichartzPair& p);
Rational thm2_margin(const StrichartzPair& p);

// Power of lambda on the right of the budget inequality minus the power on
// the left once a and M follow the rules; negative means the pair fails.
// Supported: (h^(1/3), lambda^(1/3) or M_a) and (h^(1/2-eps), M_a).
Rational budget_exponent(const Rational& inv_q, const Rational& inv_r, ARule a_rule, MRule m_rule,
                         const Rational& eps = 0);

// (d-2)/2 (1/r - 1/2), the h-power of the L^r norm of the transverse bump.
Rational knapp_exponent(int d, const Rational& inv_r);

}  // namespace glide
