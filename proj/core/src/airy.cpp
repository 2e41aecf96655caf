#include "glide/airy.hpp"

#include <array>
#include <iomanip>
#include <istream>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

namespace glide {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kAi0 = 0.35502805388781723926;
constexpr double kAip0 = -0.25881940379280679840;
constexpr double kSeriesRadius = 2.0;
constexpr double kAsymRadius = 9.0;
constexpr double kStep = 0.5;
constexpr int kAsymTerms = 60;

struct AsymCoeffs {
  std::array<double, kAsymTerms> u{}, v{};
  AsymCoeffs() {
    u[0] = v[0] = 1.0;
    for (int k = 1; k < kAsymTerms; ++k) {
      u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
      v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
    }
  }
};
const AsymCoeffs& coeffs() {
  static const AsymCoeffs c;
  return c;
}

// sum_k s^k c_k x^{-k}, stopped at the smallest term.
template <class T>
T asym_sum(const std::array<double, kAsymTerms>& c, T inv, T s) {
  T sum = c[0], p = T(1);
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < kAsymTerms; ++k) {
    p *= s * inv;
    const T term = c[k] * p;
    const double m = std::abs(term);
    if (m > prev) break;
    sum += term;
    if (m < 1e-17 * std::abs(sum)) break;
    prev = m;
  }
  return sum;
}

template <class T>
void maclaurin(T z, T& ai, T& aip) {
  const T z3 = z * z * z;
  T f = 1, g = z, fp = 0, gp = 1;
  T fk = 1, gk = z;  // f_k z^{3k}, g_k z^{3k+1}
  for (int k = 1; k < 80; ++k) {
    fk *= z3 / ((3.0 * k - 1.0) * (3.0 * k));
    gk *= z3 / ((3.0 * k) * (3.0 * k + 1.0));
    f += fk;
    g += gk;
    const T dfk = (3.0 * k) * fk / z;
    const T dgk = (3.0 * k + 1.0) * gk / z;
    fp += dfk;
    gp += dgk;
    if (std::abs(fk) + std::abs(gk) < 1e-18 * (std::abs(f) + std::abs(g)) && k > 2) break;
  }
  if (z == T(0)) {
    fp = 0;
    gp = 1;
  }
  ai = kAi0 * f + kAip0 * g;
  aip = kAi0 * fp + kAip0 * gp;
}

// Taylor integration of w'' = z w along a straight segment.
template <class T>
void ode_walk(T from, T to, T& w, T& wp) {
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(to - from) / kStep)));
  const T h = (to - from) / static_cast<double>(steps);
  const T h2 = h * h, h3 = h2 * h;
  T z0 = from;
  for (int s = 0; s < steps; ++s) {
    T cm1 = 0, c0 = w, c1 = wp * h;
    T sw = c0 + c1, sd = c1;
    const double scale = std::abs(w) + std::abs(wp * h);
    for (int n = 0; n < 120; ++n) {
      const T c2 = (z0 * h2 * c0 + h3 * cm1) / ((n + 1.0) * (n + 2.0));
      sw += c2;
      sd += (n + 2.0) * c2;
      cm1 = c0;
      c0 = c1;
      c1 = c2;
      if (n > 3 && std::abs(c1) + std::abs(c0) < 1e-18 * scale) break;
    }
    w = sw;
    wp = sd / h;
    z0 += h;
  }
}

// Principal-sector expansion, |arg z| <= 2 pi / 3.
void asym_principal(Complex z, Complex& ai, Complex& aip) {
  const Complex sz = std::sqrt(z);
  const Complex zeta = (2.0 / 3.0) * z * sz;
  const Complex z14 = std::sqrt(sz);
  const Complex e = std::exp(-zeta);
  const Complex inv = 1.0 / zeta;
  const Complex su = asym_sum<Complex>(coeffs().u, inv, -1.0);
  const Complex sv = asym_sum<Complex>(coeffs().v, inv, -1.0);
  const double c = 0.5 / std::sqrt(pi);
  ai = c * e * su / z14;
  aip = -c * z14 * e * sv;
}

void asym_complex(Complex z, Complex& ai, Complex& aip) {
  if (std::abs(std::arg(z)) <= 2.0 * pi / 3.0) {
    asym_principal(z, ai, aip);
    return;
  }
  const Complex w = -z;
  const Complex p = std::polar(1.0, -pi / 3.0), q = std::polar(1.0, pi / 3.0);
  Complex a1, d1, a2, d2;
  asym_principal(p * w, a1, d1);
  asym_principal(q * w, a2, d2);
  ai = p * a1 + q * a2;
  aip = -(p * p * d1 + q * q * d2);
}

// Phase-form series on the oscillatory side: S = sum c_k (-i)^k rho^{-k}.
Complex osc_sum(const std::array<double, kAsymTerms>& c, double rho) {
  return asym_sum<Complex>(c, Complex(1.0 / rho, 0.0), Complex(0.0, -1.0));
}

}  // namespace

AiryPairC airy_complex(Complex z) {
  AiryPairC out;
  const double r = std::abs(z);
  if (r <= kSeriesRadius) {
    maclaurin<Complex>(z, out.ai, out.aip);
  } else if (r >= kAsymRadius) {
    asym_complex(z, out.ai, out.aip);
  } else {
    const Complex dir = z / r;
    if (std::abs(std::arg(z)) < pi / 3.0) {
      const Complex start = kAsymRadius * dir;
      asym_complex(start, out.ai, out.aip);
      ode_walk<Complex>(start, z, out.ai, out.aip);
    } else {
      const Complex start = kSeriesRadius * dir;
      maclaurin<Complex>(start, out.ai, out.aip);
      ode_walk<Complex>(start, z, out.ai, out.aip);
    }
  }
  return out;
}

AiryPair airy_real(double x) {
  AiryPair out;
  if (std::abs(x) <= kSeriesRadius) {
    maclaurin<double>(x, out.ai, out.aip);
  } else if (x >= kAsymRadius) {
    const double sx = std::sqrt(x);
    const double zeta = (2.0 / 3.0) * x * sx;
    if (zeta > 745.0) return out;
    const double x14 = std::sqrt(sx);
    const double e = std::exp(-zeta), inv = 1.0 / zeta;
    const double su = asym_sum<double>(coeffs().u, inv, -1.0);
    const double sv = asym_sum<double>(coeffs().v, inv, -1.0);
    const double c = 0.5 / std::sqrt(pi);
    out.ai = c * e * su / x14;
    out.aip = -c * x14 * e * sv;
  } else if (x <= -kAsymRadius) {
    const double t = -x, st = std::sqrt(t);
    const double rho = (2.0 / 3.0) * t * st;
    const double t14 = std::sqrt(st);
    const Complex su = osc_sum(coeffs().u, rho);
    const Complex sv = osc_sum(coeffs().v, rho);
    // reduce the large phase before forming cos/sin
    const double base = std::remainder(rho, 2.0 * pi);
    out.ai = (std::polar(1.0, base - pi / 4.0) * su).real() / (std::sqrt(pi) * t14);
    out.aip = t14 * (std::polar(1.0, base - 3.0 * pi / 4.0) * sv).real() / std::sqrt(pi);
  } else if (x > 0.0) {
    AiryPair s = airy_real(kAsymRadius);
    ode_walk<double>(kAsymRadius, x, s.ai, s.aip);
    out = s;
  } else {
    maclaurin<double>(-kSeriesRadius, out.ai, out.aip);
    ode_walk<double>(-kSeriesRadius, x, out.ai, out.aip);
  }
  return out;
}

Complex ai(Complex z) {
  if (!(std::abs(z) <= kAiryEnvelope)) throw DomainError("ai: |z| exceeds the certified envelope");
  return airy_complex(z).ai;
}

Complex ai_prime(Complex z) {
  if (!(std::abs(z) <= kAiryEnvelope)) throw DomainError("ai_prime: |z| exceeds the certified envelope");
  return airy_complex(z).aip;
}

double ai(double x) {
  if (!(std::abs(x) <= kAiryEnvelope)) throw DomainError("ai: |x| exceeds the certified envelope");
  return airy_real(x).ai;
}

double ai_prime(double x) {
  if (!(std::abs(x) <= kAiryEnvelope)) throw DomainError("ai_prime: |x| exceeds the certified envelope");
  return airy_real(x).aip;
}

double log_ai_positive(double x) {
  if (x < 0.0) throw DomainError("log_ai_positive: x must be non-negative");
  if (x < kAsymRadius) return std::log(airy_real(x).ai);
  const double sx = std::sqrt(x);
  const double zeta = (2.0 / 3.0) * x * sx;
  const double su = asym_sum<double>(coeffs().u, 1.0 / zeta, -1.0);
  return -zeta - std::log(2.0 * std::sqrt(pi) * std::sqrt(sx)) + std::log(su);
}

Complex a_pm(int sign, double w) {
  if (sign != 1 && sign != -1) throw DomainError("a_pm: sign must be +1 or -1");
  if (!(std::abs(w) <= kAiryEnvelope)) throw DomainError("a_pm: |w| exceeds the certified envelope");
  // Re A+- = Ai(-w)/2 is recessive for w < 0; take it from the real evaluator.
  const Complex rot = std::polar(1.0, -sign * pi / 3.0);
  return {0.5 * ai(-w), (rot * airy_complex(rot * w).ai).imag()};
}

double big_l(double w) {
  if (!std::isfinite(w)) throw DomainError("big_l: argument must be finite");
  if (w >= kAsymRadius) {
    const double rho = (2.0 / 3.0) * w * std::sqrt(w);
    return 2.0 * rho + pi / 2.0 + 2.0 * std::arg(osc_sum(coeffs().u, rho));
  }
  if (w <= -kAsymRadius) {
    const double t = -w, zeta = (2.0 / 3.0) * t * std::sqrt(t), inv = 1.0 / zeta;
    const double ratio = std::exp(-2.0 * zeta) * asym_sum<double>(coeffs().u, inv, -1.0) /
                         (2.0 * asym_sum<double>(coeffs().u, inv, 1.0));
    return 2.0 * std::atan(ratio);
  }
  const Complex ap = a_pm(1, w);
  if (w <= 1.0) return 2.0 * std::arg(Complex(0, 1) * ap);
  const double principal = std::arg(ap);
  const double ref = (2.0 / 3.0) * w * std::sqrt(w) - pi / 4.0 - (5.0 / 48.0) / (w * std::sqrt(w));
  const double turns = std::round((ref - principal) / (2.0 * pi));
  return pi + 2.0 * (principal + 2.0 * pi * turns);
}

double big_l_prime(double w) {
  if (!std::isfinite(w)) throw DomainError("big_l_prime: argument must be finite");
  if (w >= kAsymRadius) {
    const double rho = (2.0 / 3.0) * w * std::sqrt(w);
    return 2.0 * std::sqrt(w) / std::norm(osc_sum(coeffs().u, rho));
  }
  if (w <= -kAsymRadius) {
    const double t = -w, zeta = (2.0 / 3.0) * t * std::sqrt(t), inv = 1.0 / zeta;
    const double sp = asym_sum<double>(coeffs().u, inv, 1.0);
    const double ratio = std::exp(-2.0 * zeta) * asym_sum<double>(coeffs().u, inv, -1.0) / (2.0 * sp);
    return 2.0 * std::sqrt(t) * std::exp(-2.0 * zeta) / (sp * sp * (1.0 + ratio * ratio));
  }
  const Complex rot = std::polar(1.0, -pi / 3.0);
  return 1.0 / (2.0 * pi * std::norm(airy_complex(rot * w).ai));
}

double big_l_asymptotic(double w, int n_terms) {
  if (n_terms != 0 && n_terms != 1) throw DomainError("big_l_asymptotic: n_terms must be 0 or 1");
  if (!(w >= 1.0)) throw DomainError("big_l_asymptotic: requires w >= 1");
  const double w32 = w * std::sqrt(w);
  double v = (4.0 / 3.0) * w32 + pi / 2.0;
  if (n_terms == 1) v -= (5.0 / 24.0) / w32;
  return v;
}

double airy_zero(int k) {
  if (k < 1 || k > kMaxZeroIndex) throw DomainError("airy_zero: index out of range");
  const double t = 3.0 * pi * (4.0 * k - 1.0) / 8.0;
  const double t2 = 1.0 / (t * t);
  double w = std::pow(t, 2.0 / 3.0) * (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * 77125.0 / 82944.0)));
  const double target = 2.0 * pi * k;
  for (int it = 0; it < 6; ++it) {
    const double dw = (big_l(w) - target) / big_l_prime(w);
    w -= dw;
    if (std::abs(dw) < 1e-15 * w) break;
  }
  for (int it = 0; it < 3; ++it) {
    const AiryPair p = airy_real(-w);
    if (p.aip == 0.0) break;
    const double dw = p.ai / p.aip;
    w += dw;
    if (std::abs(dw) < 1e-16 * w) break;
  }
  return w;
}

PhaseTable::PhaseTable(int k_max) {
  if (k_max < 1 || k_max > kMaxZeroIndex) throw DomainError("PhaseTable: k_max out of range");
  rows_.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    PhaseRow r;
    r.k = k;
    r.omega = airy_zero(k);
    r.l_prime = big_l_prime(r.omega);
    const double d = airy_real(-r.omega).aip;
    r.ai_prime_sq = d * d;
    rows_.push_back(r);
  }
}

void PhaseTable::write_csv(std::ostream& out) const {
  out << "k,omega_k,L_prime,ai_prime_sq\n";
  out << std::setprecision(17);
  for (const auto& r : rows_) out << r.k << ',' << r.omega << ',' << r.l_prime << ',' << r.ai_prime_sq << '\n';
}

PhaseTable PhaseTable::from_csv(std::istream& in) {
  PhaseTable t;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "k,omega_k,L_prime,ai_prime_sq") throw ValidationError("PhaseTable: unexpected header");
      header = true;
      continue;
    }
    std::istringstream ss(line);
    PhaseRow r;
    char c1 = 0, c2 = 0, c3 = 0;
    ss >> r.k >> c1 >> r.omega >> c2 >> r.l_prime >> c3 >> r.ai_prime_sq;
    if (!ss || c1 != ',' || c2 != ',' || c3 != ',') throw ValidationError("PhaseTable: malformed row: " + line);
    if (r.k != t.size() + 1) throw ValidationError("PhaseTable: rows must be k = 1, 2, ...");
    t.rows_.push_back(r);
  }
  if (!header) throw ValidationError("PhaseTable: missing header");
  const auto bad = t.invariant_violations();
  if (!bad.empty()) throw ValidationError("PhaseTable: " + bad.front());
  return t;
}

std::vector<std::string> PhaseTable::invariant_violations(double tol) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const PhaseRow& r = rows_[i];
    const std::string tag = "k=" + std::to_string(r.k) + ": ";
    if (i > 0 && !(r.omega > rows_[i - 1].omega)) out.push_back(tag + "zeros not increasing");
    if (!(r.l_prime > 0.0)) out.push_back(tag + "L' not positive");
    const double alt = 2.0 * pi * r.ai_prime_sq;
    if (std::abs(r.l_prime - alt) > tol * alt) out.push_back(tag + "L' and 2 pi Ai'^2 disagree");
    if (std::abs(big_l(r.omega) - 2.0 * pi * r.k) > tol * std::max(1.0, 2.0 * pi * r.k))
      out.push_back(tag + "L(omega_k) != 2 pi k");
  }
  return out;
}

std::shared_ptr<const PhaseTable> shared_phase_table(int k_min) {
  static std::mutex mu;
  static std::shared_ptr<const PhaseTable> table;
  std::lock_guard lock(mu);
  if (!table || table->size() < k_min) {
    const int k = std::max(k_min, table ? 2 * table->size() : 256);
    table = std::make_shared<const PhaseTable>(std::min(k, kMaxZeroIndex));
  }
  return table;
}

namespace {
Complex poisson_on(const Rule& r, const SmoothWindow& phi, int n_max) {
  std::vector<double> l(r.size()), f(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    l[i] = big_l(r.x[i]);
    f[i] = r.w[i] * phi(r.x[i]);
  }
  CompensatedSum<double> re;
  for (std::size_t i = 0; i < r.size(); ++i) re.add(f[i]);
  for (int n = 1; n <= n_max; ++n)
    for (std::size_t i = 0; i < r.size(); ++i) re.add(2.0 * f[i] * std::cos(n * l[i]));
  // The +N and -N terms are conjugate, so the symmetric sum is real.
  return {re.value(), 0.0};
}
}  // namespace

PoissonSum poisson_lhs(const SmoothWindow& phi, int n_max, int order, double tol) {
  if (!phi.bounded()) throw DomainError("poisson_lhs: test function must have compact support");
  if (n_max < 0) throw DomainError("poisson_lhs: n_max must be non-negative");
  const double rate = std::max(1.0, n_max * big_l_prime(phi.hi()));
  const Rule coarse = oscillatory_rule(phi.lo(), phi.hi(), rate, 2.0, order, 16);
  const Rule fine = oscillatory_rule(phi.lo(), phi.hi(), rate, 1.0, order, 32);
  PoissonSum out;
  const Complex a = poisson_on(coarse, phi, n_max);
  out.value = poisson_on(fine, phi, n_max);
  out.error = std::abs(out.value - a);
  out.nodes = static_cast<int>(fine.size());
  if (out.error > tol * std::max(1.0, std::abs(out.value)))
    throw QuadratureError("poisson_lhs: quadrature did not converge", out.error);
  return out;
}

double poisson_rhs(const SmoothWindow& phi, const PhaseTable& table) {
  if (!phi.bounded()) throw DomainError("poisson_rhs: test function must have compact support");
  if (table.size() == 0 || phi.hi() > table.omega(table.size()))
    throw DomainError("poisson_rhs: support extends beyond the zero table");
  CompensatedSum<double> sum;
  for (const PhaseRow& r : table.rows())
    if (r.omega > phi.lo() && r.omega < phi.hi()) sum.add(2.0 * pi * phi(r.omega) / r.l_prime);
  return sum.value();
}

}  // namespace glide
