#include "glide/parametrix.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

namespace glide {

namespace {
constexpr double pi = std::numbers::pi;
const Complex I{0.0, 1.0};

double time_factor(double e, double a) { return (e - 1.0) / (std::sqrt(1.0 + a * e) + std::sqrt(1.0 + a)); }

Complex sigma_tail(double c, double lam, double start, double angle) {
  const Complex dir = std::polar(1.0, angle);
  auto phase = [&](double r) {
    const Complex s = start + r * dir;
    return s * s * s / 3.0 + s * c;
  };
  // Extend until the tail is below e^-60.
  double r_max = 1.0 / lam;
  while (lam * phase(r_max).imag() < 60.0) r_max *= 1.5;
  AdaptiveOptions o;
  o.abs_tol = 1e-15;
  o.initial_panels = 32;
  auto f = [&](double r) { return std::exp(I * lam * phase(r)) * dir; };
  return integrate_adaptive<Complex>(f, 0.0, r_max, o).value;
}
}  // namespace

double ReflectionPhase::time_term(double t, double e) const { return t * time_factor(e, p_.a); }

double ReflectionPhase::psi(double sigma, double s_big, double e, double z, double t, double x,
                            double lam_eta) const {
  return sigma * sigma * sigma / 3.0 + sigma * (x - e) + s_big * s_big * s_big / 3.0 + s_big * (z - e) -
         n_ / lam_eta * big_l(std::cbrt(lam_eta * lam_eta) * e) + time_term(t, e);
}

Complex ReflectionPhase::phi(double sigma, double s, double e, double t, double x, double lam_eta) const {
  const double re = time_term(t, e) - n_ / lam_eta * big_l(std::cbrt(lam_eta * lam_eta) * e) + s * (e - 1.0) +
                    sigma * sigma * sigma / 3.0 + sigma * (x - e);
  return {re, s * s / (2.0 * p_.M)};
}

Complex ReflectionPhase::phi_tilde(double sigma, double e, double t, double x, double lam_eta) const {
  const double re = time_term(t, e) - n_ / lam_eta * big_l(std::cbrt(lam_eta * lam_eta) * e) +
                    sigma * sigma * sigma / 3.0 + sigma * (x - e);
  return {re, 0.5 * p_.M * (e - 1.0) * (e - 1.0)};
}

double stationary_sigma(double t, int n, double lam_eta, double a) {
  const double w = std::cbrt(lam_eta * lam_eta);
  return t / (2.0 * std::sqrt(1.0 + a)) - n / std::cbrt(lam_eta) * big_l_prime(w);
}

void RegionEps::validate() const {
  if (!(eps0 > 0.0 && eps0 < 0.25) || !(eps1 > 0.0 && eps1 < 0.25))
    throw ValidationError("eps0 and eps1 must lie in (0, 1/4)");
  if (!(eps2 > 0.0 && eps2 <= 0.25)) throw ValidationError("eps2 must lie in (0, 1/4]");
}

ReflectionRegion::ReflectionRegion(int j, double a, const RegionEps& eps) : j_(j), sqa_(std::sqrt(1.0 + a)), eps_(eps) {
  if (j < 0) throw ValidationError("reflection index must be non-negative");
  eps.validate();
}

bool ReflectionRegion::contains(double t, double x, double y) const {
  return t >= t_lo() && t < t_hi() && std::abs(x - 1.0) <= eps_.eps1 && std::abs(y - y_center()) <= eps_.eps2;
}

std::optional<int> dominant_reflection(double t, double x, double y, const PacketParams& p, const RegionEps& eps) {
  const int j = static_cast<int>(std::lround(t / (4.0 * std::sqrt(1.0 + p.a))));
  if (j < 0 || j > p.m_a()) return std::nullopt;
  if (ReflectionRegion(j, p.a, eps).contains(t, x, y)) return j;
  return std::nullopt;
}

NRange n_truncation(const PacketParams& p, double t, const TruncationOptions& o) {
  const double center = t / (4.0 * std::sqrt(1.0 + p.a));
  const int cap = static_cast<int>(std::floor(o.cap * std::pow(p.h, -1.0 / 3.0)));
  NRange r{static_cast<int>(std::ceil(center - o.pad)), static_cast<int>(std::floor(center + o.pad))};
  r.lo = std::max(r.lo, -cap);
  r.hi = std::min(r.hi, cap);
  if (r.lo > r.hi) throw ValidationError("N window lies beyond the truncation cap");
  return r;
}

Complex sigma_integral_contour(double c, double lam) {
  if (!(lam > 0.0)) throw DomainError("sigma_integral_contour: lam must be positive");
  constexpr double w = 4.0;
  const Rule r = oscillatory_rule(-w, w, lam * (w * w + std::abs(c)), 2.0, 16, 8);
  CompensatedSum<Complex> acc;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double s = r.x[i];
    acc.add(r.w[i] * std::polar(1.0, lam * (s * s * s / 3.0 + s * c)));
  }
  acc.add(sigma_tail(c, lam, w, pi / 6.0));
  acc.add(-sigma_tail(c, lam, -w, 5.0 * pi / 6.0));
  return acc.value();
}

double sigma_integral_closed(double c, double lam) {
  return 2.0 * pi / std::cbrt(lam) * airy_real(std::cbrt(lam * lam) * c).ai;
}

Complex parametrix_u(double t, double x, double y, const PacketParams& p, const CutoffSpec& c, NRange n,
                     const ParametrixOptions& o) {
  if (x < 0.0) throw DomainError("parametrix_u: X must be non-negative");
  if (n.lo > n.hi) throw ValidationError("parametrix_u: empty N range");
  const double lam = p.lambda();
  const double sqa = std::sqrt(1.0 + p.a);
  const Rule& gl = gauss_legendre(o.eta_order);
  const double e0 = c.psi.lo(), e1 = c.psi.hi();
  CompensatedSum<Complex> total;
  for (std::size_t i = 0; i < gl.size(); ++i) {
    const double eta = 0.5 * (e0 + e1) + 0.5 * (e1 - e0) * gl.x[i];
    const double weta = 0.5 * (e1 - e0) * gl.w[i] * c.psi(eta) * std::sqrt(eta);
    if (weta == 0.0) continue;
    const double le = lam * eta;
    const double le23 = std::cbrt(le * le);
    const double half = o.e_window / std::sqrt(le * p.M);
    const double elo = 1.0 - half, ehi = 1.0 + half;
    // One E rule for the whole N window; Ai and L are shared across N.
    double sc_max = 0.0;
    for (int nn : {n.lo, n.hi}) sc_max = std::max(sc_max, std::abs(t / (2.0 * sqa) - 2.0 * nn));
    const int n_abs = std::max(std::abs(n.lo), std::abs(n.hi));
    const double rate = le * (sc_max + std::sqrt(std::max(ehi - x, 0.0)) + half * (1.0 + std::abs(t) + 2.0 * n_abs)) + 10.0;
    const Rule r = oscillatory_rule(elo, ehi, rate, o.rad_per_panel, 16, 2);
    CompensatedSum<Complex> inner;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double e = r.x[k];
      const double chi = c.chi0(le23 * e) * c.chi1(p.a * e);
      if (chi == 0.0) continue;
      const double de = e - 1.0;
      const Complex sig = o.contour_sigma ? sigma_integral_contour(x - e, le) : Complex(sigma_integral_closed(x - e, le));
      const double l = big_l(le23 * e);
      const Complex step = std::polar(1.0, -l);
      Complex zn = std::polar(1.0, -n.lo * l);
      Complex nsum{};
      for (int nn = n.lo; nn <= n.hi; ++nn, zn *= step) nsum += zn;
      inner.add(r.w[k] * chi * std::exp(-0.5 * le * p.M * de * de) * sig * std::polar(1.0, le * t * time_factor(e, p.a)) * nsum);
    }
    total.add(weta * std::polar(1.0, le * y) * inner.value());
  }
  const double pref = std::sqrt(lam * p.M) / (std::pow(2.0 * pi, 1.5) * p.h);
  return pref * total.value();
}

Complex parametrix_u(double t, double x, double y, const PacketParams& p, const CutoffSpec& c,
                     const ParametrixOptions& o) {
  return parametrix_u(t, x, y, p, c, n_truncation(p, t), o);
}

double airy_lower_bound_constant() {
  static const double value = [] {
    constexpr int angles = 720;
    for (int i = 1000; i >= 1; --i) {
      const double r = i * 1e-3;
      double lo = std::numeric_limits<double>::infinity();
      for (int k = 0; k < angles; ++k) lo = std::min(lo, std::abs(ai(std::polar(r, 2.0 * pi * k / angles))));
      if (lo > 0.1) return r;
    }
    return 0.0;
  }();
  return value;
}

double phase_b(double u) {
  if (!(u > 0.0)) throw DomainError("phase_b: u must be positive");
  return 4.0 * u / 3.0 + 0.5 * pi - big_l(std::cbrt(u * u));
}

AsymptoticProfile::AsymptoticProfile(int j, const PacketParams& p) : j_(j), p_(p) {
  if (j < 0) throw ValidationError("AsymptoticProfile: J must be non-negative");
  p.validate();
}

Complex AsymptoticProfile::nu_a(double tt) const {
  const double a = p_.a, m = p_.M;
  return {1.0 + a, j_ * (1.0 + 2.0 * a) / m + a * tt / (2.0 * m)};
}

Complex AsymptoticProfile::gamma(double tt) const { return 0.5 * I * (1.0 + p_.a) / (p_.M * nu_a(tt)); }

namespace {
template <class T>
T f_of(T et, double a) {
  const T s = std::sqrt(1.0 + a * et);
  return 4.0 * et * (1.0 + a) / (1.0 + s) - 4.0 / 3.0 * std::pow(1.0 + (1.0 + a) * et, 1.5);
}

template <class T>
T psi_m_of(double tt, T et, double sigma, double xt, double a, double m) {
  const T s = std::sqrt(1.0 + a * et);
  return 2.0 * tt * et * (1.0 + a) / (1.0 + s) + I * (0.5 * m * (1.0 + a) * (1.0 + a)) * et * et +
         sigma * sigma * sigma / 3.0 + sigma * (xt - (1.0 + a) * et);
}
}  // namespace

double AsymptoticProfile::f(double et) const { return f_of(et, p_.a); }

Complex AsymptoticProfile::psi_tilde_m(double tt, double et, double sigma, double xt) const {
  return psi_m_of<Complex>(tt, Complex(et), sigma, xt, p_.a, p_.M);
}

Complex AsymptoticProfile::g0(double sigma, double tt, double xt) const {
  const Complex gm = gamma(tt);
  return gm * (tt - sigma) * (tt - sigma) + sigma * sigma * sigma / 3.0 + sigma * xt;
}

Complex AsymptoticProfile::g(double sigma, double tt, double xt) const {
  auto phase = [&](Complex et) {
    return psi_m_of<Complex>(tt, et, sigma, xt, p_.a, p_.M) + double(j_) * (f_of<Complex>(et, p_.a) + 4.0 / 3.0);
  };
  Complex et = I * (tt - sigma) / (p_.M * nu_a(tt));
  for (int it = 0; it < 60; ++it) {
    const double d = 1e-4 * std::max(1e-3, std::abs(et));
    const Complex fp = phase(et + d), f0 = phase(et), fm = phase(et - d);
    const Complex d1 = (fp - fm) / (2.0 * d);
    const Complex d2 = (fp - 2.0 * f0 + fm) / (d * d);
    const Complex step = d1 / d2;
    et -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(et))) break;
  }
  return phase(et);
}

Complex AsymptoticProfile::i0(double tt, double xt, double eta, const SmoothWindow& psi) const {
  const double le = p_.lambda() * eta;
  const Complex gm = gamma(tt);
  const Complex w = gm * gm + 2.0 * gm * tt - xt;
  const Complex ph = gm * w + gm * tt * tt - gm * gm * gm / 3.0;
  return psi(eta) * 2.0 * pi / std::cbrt(le) * std::exp(I * le * ph) * ai(-std::cbrt(le * le) * w);
}

Complex AsymptoticProfile::i0_quadrature(double tt, double xt, double eta, const SmoothWindow& psi) const {
  const double le = p_.lambda() * eta;
  const Complex gm = gamma(tt);
  const double width = std::sqrt(120.0 / (le * gm.imag()));
  const double lo = tt - width, hi = tt + width;
  const double smax = std::max(std::abs(lo), std::abs(hi));
  const double rate = le * (smax * smax + std::abs(xt) + 2.0 * std::abs(gm) * width);
  const Rule r = oscillatory_rule(lo, hi, rate, 2.0, 16, 8);
  CompensatedSum<Complex> acc;
  for (std::size_t i = 0; i < r.size(); ++i) acc.add(r.w[i] * std::exp(I * le * g0(r.x[i], tt, xt)));
  return psi(eta) * acc.value();
}

Complex AsymptoticProfile::i_direct(double tt, double xt, double eta, const SmoothWindow& psi) const {
  const double a = p_.a, m = p_.M;
  const double le = p_.lambda() * eta;
  const double le23 = std::cbrt(le * le);
  const double width = std::sqrt(120.0 / (le * m)) / (1.0 + a);
  auto f = [&](double et) {
    const double e = 1.0 + (1.0 + a) * et;
    const double ph = le * (2.0 * tt * et * (1.0 + a) / (1.0 + std::sqrt(1.0 + a * et)) + j_ * (f_of(et, a) + 4.0 / 3.0)) +
                      (j_ == 0 ? 0.0 : j_ * phase_b(le * std::pow(e, 1.5)));
    const double amp = std::exp(-0.5 * le * m * (1.0 + a) * (1.0 + a) * et * et) *
                       airy_real(le23 * (xt - (1.0 + a) * et)).ai;
    return amp * std::polar(1.0, ph);
  };
  AdaptiveOptions o;
  o.abs_tol = 1e-16;
  o.initial_panels = 16 + static_cast<int>(le * width * (2.0 * std::abs(tt) + 2.0 * j_ * width + 1.0));
  const Complex integral = integrate_adaptive<Complex>(f, -width, width, o).value;
  const Complex norm = std::sqrt(nu_a(tt) * big_lambda() * eta / (2.0 * pi));
  return psi(eta) * norm * 2.0 * pi / std::cbrt(le) * integral;
}

double profile_vs_quadrature(double tt, double xt, const PacketParams& p, int j, double eta, const CutoffSpec& c) {
  const double lam = p.lambda();
  if (std::abs(tt) > std::sqrt(p.M / lam) || std::abs(xt) > std::pow(lam, -2.0 / 3.0))
    throw DomainError("profile_vs_quadrature: (T~, X~) outside the profile window");
  if (p.M < 4.0 * std::cbrt(lam) / airy_lower_bound_constant())
    throw DomainError("profile_vs_quadrature: need M >= 4 lambda^(1/3) / c");
  const AsymptoticProfile prof(j, p);
  const Complex direct = prof.i_direct(tt, xt, eta, c.psi);
  const Complex model = std::polar(1.0, j * phase_b(lam * eta)) * prof.i0(tt, xt, eta, c.psi);
  return std::abs(direct - model);
}

}  // namespace glide
