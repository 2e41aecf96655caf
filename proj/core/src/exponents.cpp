#include "glide/exponents.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

#include "glide/errors.hpp"

namespace glide {

namespace {

using Int = boost::multiprecision::cpp_int;

const Rational half{1, 2};

Int parse_int(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw ValidationError(fmt::format("not a number: '{}'", s));
  return Int(s);
}

bool is_infinity(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s == "inf" || s == "+inf" || s == "infinity" || s == "∞";
}

// Reciprocal of an exponent given as text, 0 for infinity.
Rational parse_inverse(const std::string& s) {
  if (is_infinity(s)) return 0;
  const Rational v = parse_rational(s);
  if (v <= 0) throw ValidationError(fmt::format("exponent must be positive: '{}'", s));
  return 1 / v;
}

std::string exponent_string(const Rational& inv) { return inv == 0 ? "inf" : to_string(1 / inv); }

void need_r_at_least_4(const StrichartzPair& p, Region name) {
  if (p.inv_r > Rational(1, 4)) throw DomainError(fmt::format("region {} needs r >= 4", to_string(name)));
}

void need_plane(const StrichartzPair& p, Region name) {
  if (p.d != 2) throw DomainError(fmt::format("region {} is stated for d = 2", to_string(name)));
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  Rational v;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const Int den = parse_int(s.substr(slash + 1));
    if (den == 0) throw ValidationError(fmt::format("zero denominator in '{}'", text));
    v = Rational(parse_int(s.substr(0, slash)), den);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    const std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw ValidationError(fmt::format("not a number: '{}'", text));
    Int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    v = Rational((whole.empty() ? Int(0) : parse_int(whole)) * scale + (frac.empty() ? Int(0) : parse_int(frac)),
                 scale);
  } else {
    v = Rational(parse_int(s));
  }
  return neg ? Rational(-v) : v;
}

std::string to_string(const Rational& v) { return v.str(); }

double to_double(const Rational& v) { return v.convert_to<double>(); }

StrichartzPair StrichartzPair::make(const Rational& q, const Rational& r, int d) {
  if (q <= 0 || r <= 0) throw ValidationError("exponents must be positive");
  StrichartzPair p{1 / q, 1 / r, d};
  p.validate();
  return p;
}

StrichartzPair StrichartzPair::with_infinite_r(const Rational& q, int d) {
  if (q <= 0) throw ValidationError("exponents must be positive");
  StrichartzPair p{1 / q, 0, d};
  p.validate();
  return p;
}

StrichartzPair StrichartzPair::parse(const std::string& q, const std::string& r, int d) {
  StrichartzPair p{parse_inverse(q), parse_inverse(r), d};
  p.validate();
  return p;
}

void StrichartzPair::validate() const {
  if (d < 2) throw ValidationError("dimension must be at least 2");
  if (inv_q < 0 || inv_q > half) throw ValidationError("q must lie in [2, inf]");
  if (inv_r < 0 || inv_r > half) throw ValidationError("r must lie in [2, inf]");
}

std::string StrichartzPair::q_string() const { return exponent_string(inv_q); }
std::string StrichartzPair::r_string() const { return exponent_string(inv_r); }

Rational beta(const StrichartzPair& p) { return p.d * (half - p.inv_r) - p.inv_q; }

Rational alpha(const StrichartzPair& p) {
  if (p.inv_r == half) throw DomainError("alpha is undefined at r = 2");
  return p.inv_q / (half - p.inv_r);
}

Region parse_region(const std::string& name) {
  for (Region r : all_regions())
    if (to_string(r) == name) return r;
  throw ValidationError(fmt::format("unknown region '{}'", name));
}

std::string to_string(Region r) {
  switch (r) {
    case Region::free: return "free";
    case Region::quarter_loss: return "quarter_loss";
    case Region::doi_line: return "doi_line";
    case Region::thm1: return "thm1";
    case Region::ilp3: return "ilp3";
    case Region::doi2d: return "doi2d";
    case Region::thm2: return "thm2";
  }
  return "?";
}

const std::vector<Region>& all_regions() {
  static const std::vector<Region> all{Region::free, Region::quarter_loss, Region::doi_line, Region::thm1,
                                       Region::ilp3, Region::doi2d,        Region::thm2};
  return all;
}

RegionCheck region(Region name, const StrichartzPair& p) {
  p.validate();
  const Rational k = Rational(p.d - 1, 2);
  const Rational s = half - p.inv_r;
  Rational bound;
  switch (name) {
    case Region::free: bound = k * s; break;
    case Region::quarter_loss: bound = (k - Rational(1, 4)) * s; break;
    case Region::doi_line: {
      need_r_at_least_4(p, name);
      const Rational q4 = k * Rational(1, 4);
      const Rational qinf = (k - Rational(1, 12)) * half;
      bound = qinf + (q4 - qinf) * 4 * p.inv_r;
      break;
    }
    case Region::thm1:
      need_plane(p, name);
      bound = (half - Rational(1, 10)) * s;
      break;
    case Region::ilp3:
      need_plane(p, name);
      bound = (half - Rational(1, 9)) * s;
      break;
    case Region::doi2d:
    case Region::thm2: {
      need_r_at_least_4(p, name);
      if (name == Region::doi2d) need_plane(p, name);
      const Rational loss = (1 - 4 * p.inv_r) / (12 - 24 * p.inv_r);
      bound = (k - loss) * s;
      break;
    }
  }
  RegionCheck out;
  out.slack = bound - p.inv_q;
  out.satisfied = out.slack >= 0;
  return out;
}

bool thm1_condition(const StrichartzPair& p) {
  if (p.d != 2) throw DomainError("thm1_condition is stated for d = 2");
  return 5 * p.inv_q + 2 * p.inv_r <= 1;
}

Rational thm2_margin(const StrichartzPair& p) {
  return 2 * (p.d - 2) * (half - p.inv_r) - 4 * p.inv_q - Rational(4, 3) * p.inv_r + Rational(5, 6);
}

bool thm2_condition(const StrichartzPair& p) {
  if (p.inv_r > Rational(1, 4)) throw DomainError("the assembled condition needs r >= 4");
  return thm2_margin(p) >= 0;
}

Rational budget_exponent(const Rational& iq, const Rational& ir, ARule a_rule, MRule m_rule, const Rational& eps) {
  if (a_rule == ARule::cube_root && (m_rule == MRule::lambda_cube_root || m_rule == MRule::m_a)) {
    // a = lambda^{-2/3}, so M_a and M are both lambda^{1/3}.
    const Rational ema(1, 3), em(1, 3);
    const Rational lhs = iq * (ema + (em - 1) / 2) - Rational(1, 3) - Rational(5, 3) * ir;
    const Rational rhs = 1 - iq - 2 * ir + ema * (half - ir - 2 * iq) - Rational(5, 4) + em / 4;
    return rhs - lhs;
  }
  if (a_rule == ARule::half_minus_eps && m_rule == MRule::m_a) {
    if (eps < 0 || eps >= Rational(1, 2)) throw ValidationError("eps must lie in [0, 1/2)");
    // h = lambda^{eh}
    const Rational eh = -1 / (Rational(1, 4) + Rational(3, 2) * eps);
    const Rational lhs = iq + eps * iq * eh - Rational(5, 3) * ir - Rational(1, 3);
    const Rational rhs = 1 - iq - 2 * ir + half - ir - 2 * iq - Rational(5, 4) + Rational(1, 4) +
                         2 * eps * (Rational(3, 4) - ir - 3 * iq) * eh;
    return rhs - lhs;
  }
  throw ValidationError(
      fmt::format("budget_exponent: unsupported rules a={} M={}", to_string(a_rule), to_string(m_rule)));
}

Rational knapp_exponent(int d, const Rational& inv_r) {
  if (d < 3) throw DomainError("knapp_exponent needs d >= 3");
  return Rational(d - 2, 2) * (inv_r - half);
}

}  // namespace glide
