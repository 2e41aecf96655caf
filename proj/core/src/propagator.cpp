#include "glide/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <fmt/format.h>

#include "glide/parallel.hpp"

namespace glide {

namespace {
constexpr double pi = std::numbers::pi;

int zero_index_estimate(double omega) {
  return static_cast<int>(2.0 / (3.0 * pi) * std::pow(omega, 1.5) + 0.25);
}
}  // namespace

double ModeCoefficients::projected_norm_sq() const {
  CompensatedSum<double> s;
  for (const auto& e : entries) s.add(std::norm(e.c * e.weight));
  return s.value();
}

int max_mode_index(double hbar, const CutoffSpec& c) {
  if (!(hbar > 0.0 && hbar < 1.0)) throw DomainError("hbar must lie in (0, 1)");
  const double omega_max = c.chi1.hi() / std::cbrt(hbar * hbar);
  int k = std::max(1, zero_index_estimate(omega_max) + 2);
  if (k > kMaxZeroIndex) throw DomainError("chi1 support needs more Airy zeros than supported");
  const auto table = shared_phase_table(k);
  while (k > 0 && table->omega(k) >= omega_max) --k;
  return k;
}

ModeCoefficients decompose(const SampledFunction& v0, double hbar, const CutoffSpec& c, const DecomposeOptions& o) {
  ModeCoefficients out;
  out.hbar = hbar;
  const int k_max = max_mode_index(hbar, c);
  if (k_max < 1) return out;
  const double theta = 1.0 / hbar;
  const double h23 = std::cbrt(hbar * hbar);

  auto compute = [&](int k) {
    const EigenMode m = make_mode(k, theta);
    ModeEntry e{k, {}, c.chi0(m.omega) * c.chi1(m.omega * h23)};
    if (e.weight != 0.0) e.c = mode_coefficient(m, v0);
    return e;
  };

  std::vector<ModeEntry> all;
  if (o.prune_tol <= 0.0) {
    for (int k = 1; k <= k_max; ++k) all.push_back(compute(k));
  } else {
    const int k0 = std::clamp(o.k_hint > 0 ? o.k_hint : 1, 1, k_max);
    double peak = 0.0;
    all.push_back(compute(k0));
    peak = std::abs(all.back().c * all.back().weight);
    for (int dir : {+1, -1}) {
      int quiet = 0;
      for (int k = k0 + dir; k >= 1 && k <= k_max && quiet < o.patience; k += dir) {
        all.push_back(compute(k));
        const double mag = std::abs(all.back().c * all.back().weight);
        peak = std::max(peak, mag);
        quiet = mag < o.prune_tol * peak ? quiet + 1 : 0;
      }
    }
  }
  for (const auto& e : all)
    if (e.weight != 0.0 && e.c != Complex{}) out.entries.push_back(e);
  std::stable_sort(out.entries.begin(), out.entries.end(), [](const ModeEntry& a, const ModeEntry& b) {
    return std::abs(a.c * a.weight) > std::abs(b.c * b.weight);
  });
  return out;
}

std::vector<Complex> evolve_modes(const ModeCoefficients& m, double t, const std::vector<double>& xs) {
  const double theta = 1.0 / m.hbar;
  const double h23 = std::cbrt(m.hbar * m.hbar);
  std::vector<EigenMode> modes;
  std::vector<Complex> amp;
  for (const auto& e : m.entries) {
    modes.push_back(make_mode(e.k, theta));
    amp.push_back(std::polar(1.0, t / m.hbar * std::sqrt(1.0 + modes.back().omega * h23)) * e.c * e.weight);
  }
  std::vector<Complex> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CompensatedSum<Complex> s;
    for (std::size_t k = 0; k < modes.size(); ++k) s.add(amp[k] * eigenfunction(modes[k], xs[i]));
    out[i] = s.value();
  }
  return out;
}

double l2_norm(const std::vector<double>& xs, const std::vector<Complex>& v) {
  if (xs.size() != v.size() || xs.size() < 2) throw ValidationError("l2_norm: need matching samples, at least two");
  CompensatedSum<double> s;
  for (std::size_t i = 1; i < xs.size(); ++i) s.add(0.5 * (xs[i] - xs[i - 1]) * (std::norm(v[i]) + std::norm(v[i - 1])));
  return std::sqrt(s.value());
}

SampledFunction packet_datum(const PacketParams& p, double eta) {
  const double le = p.lambda() * eta;
  const double m = p.M;
  const double z_lo = std::max(0.0, 1.0 - 90.0 * m / le);
  const double ref = v0_closed_scaled(1.0, le, m).log_abs;
  double z_hi = 1.0;
  while (v0_closed_scaled(z_hi, le, m).log_abs > ref - 45.0) z_hi += 0.01;
  const double a = p.a;
  SampledFunction f;
  f.f = [a, le, m](double x) { return v0_closed(x / a, le, m); };
  f.x_min = a * z_lo;
  f.x_max = a * z_hi;
  f.wavelength = 2.0 * pi * a / le;
  return f;
}

PacketEvolution::PacketEvolution(const PacketParams& p, const CutoffSpec& c, const SpectralOptions& o) : p_(p), c_(c) {
  p.validate();
  const Rule& gl = gauss_legendre(o.eta_order);
  const double e0 = c.psi.lo(), e1 = c.psi.hi();
  const double lam = p.lambda();
  std::vector<std::optional<Band>> bands(gl.size());
  parallel_for(
      gl.size(),
      [&](std::size_t i) {
        const double eta = 0.5 * (e0 + e1) + 0.5 * (e1 - e0) * gl.x[i];
        if (c.psi(eta) == 0.0) return;
        const double le = lam * eta;
        const double le23 = std::cbrt(le * le);
        const double hbar = p.h / eta;
        DecomposeOptions d;
        d.prune_tol = o.prune_tol;
        d.k_hint = std::max(1, zero_index_estimate(le23));
        const ModeCoefficients mc = decompose(packet_datum(p, eta), hbar, c, d);
        Band b;
        for (const auto& e : mc.entries) {
          const EigenMode m = make_mode(e.k, 1.0 / hbar);
          const double en = m.omega / le23;
          b.omega.push_back(m.omega);
          b.e.push_back(en);
          b.norm.push_back(m.norm);
          b.rate.push_back((en - 1.0) / (std::sqrt(1.0 + p.a * en) + std::sqrt(1.0 + p.a)));
          b.coef.push_back(e.c * e.weight);
        }
        bands[i] = std::move(b);
      },
      o.threads);
  for (std::size_t i = 0; i < gl.size(); ++i) {
    if (!bands[i]) continue;
    const double eta = 0.5 * (e0 + e1) + 0.5 * (e1 - e0) * gl.x[i];
    eta_.push_back(eta);
    lam_eta_.push_back(lam * eta);
    w_eta_.push_back(0.5 * (e1 - e0) * gl.w[i] * c.psi(eta) / (2.0 * pi * p.h));
    band_.push_back(std::move(*bands[i]));
  }
}

int PacketEvolution::mode_count() const {
  int n = 0;
  for (const auto& b : band_) n += static_cast<int>(b.omega.size());
  return n;
}

std::shared_ptr<const PacketEvolution::Rows> PacketEvolution::airy_rows(double x) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(x); it != cache_.end()) return it->second;
  }
  auto rows = std::make_shared<Rows>(band_.size());
  for (std::size_t i = 0; i < band_.size(); ++i) {
    const Band& b = band_[i];
    const double le23 = std::cbrt(lam_eta_[i] * lam_eta_[i]);
    (*rows)[i].resize(b.omega.size());
    for (std::size_t k = 0; k < b.omega.size(); ++k) (*rows)[i][k] = b.norm[k] * airy_real(le23 * x - b.omega[k]).ai;
  }
  std::lock_guard lock(mu_);
  if (cache_.size() > 6000) cache_.clear();
  return cache_.emplace(x, std::move(rows)).first->second;
}

std::vector<Complex> PacketEvolution::y_spectrum(double t, double x) const {
  if (x < 0.0) throw DomainError("PacketEvolution: X must be non-negative");
  const auto rows = airy_rows(x);
  std::vector<Complex> w(band_.size());
  for (std::size_t j = 0; j < band_.size(); ++j) {
    const Band& b = band_[j];
    const auto& row = (*rows)[j];
    const double lt = lam_eta_[j] * t;
    CompensatedSum<Complex> s;
    for (std::size_t k = 0; k < b.omega.size(); ++k) s.add(b.coef[k] * row[k] * std::polar(1.0, lt * b.rate[k]));
    w[j] = w_eta_[j] * s.value();
  }
  return w;
}

Complex PacketEvolution::sum_y(const std::vector<Complex>& w, const std::vector<double>& lam_eta, double y) {
  CompensatedSum<Complex> s;
  for (std::size_t j = 0; j < w.size(); ++j) s.add(w[j] * std::polar(1.0, lam_eta[j] * y));
  return s.value();
}

Complex PacketEvolution::operator()(double t, double x, double y) const { return sum_y(y_spectrum(t, x), lam_eta_, y); }

double PacketEvolution::projected_norm() const {
  CompensatedSum<double> s;
  for (std::size_t j = 0; j < band_.size(); ++j) {
    CompensatedSum<double> b;
    for (const Complex& c : band_[j].coef) b.add(std::norm(c));
    // w_eta carries psi / (2 pi h); the norm needs psi^2 / (2 pi h^2 lambda a).
    const double psi_w = w_eta_[j] * 2.0 * pi * p_.h;
    const double psi = c_.psi(eta_[j]);
    s.add(psi_w * psi * b.value());
  }
  return std::sqrt(s.value() / (2.0 * pi * p_.h * p_.h * p_.lambda() * p_.a));
}

Complex PacketEvolution::lab(double t, double x, double y) const {
  const PacketPoint q = FrameMap(p_).lab_to_packet({t, x, y});
  return (*this)(q.T, q.X, q.Y);
}

ComplexField evolve_full(const PacketEvolution& u, const std::vector<double>& t, const std::vector<double>& x,
                         const std::vector<double>& y) {
  const double lam = u.params().lambda();
  const double dy_max = (2.0 * pi / (2.0 * lam)) / 6.0;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] - y[i - 1] > dy_max)
      throw ResolutionError(fmt::format("Y axis under-resolved: spacing {:.3g} exceeds {:.3g}", y[i] - y[i - 1], dy_max));
  ComplexField f(t, x, y);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      const auto w = u.y_spectrum(t[i], x[j]);
      for (std::size_t k = 0; k < y.size(); ++k) f.at(i, j, k) = PacketEvolution::sum_y(w, u.lam_etas(), y[k]);
    }
  return f;
}

ComplexField evolve_full(const PacketParams& p, const CutoffSpec& c, double t, const std::vector<double>& x,
                         const std::vector<double>& y) {
  return evolve_full(PacketEvolution(p, c), {t}, x, y);
}

Complex green_function(double h, const CutoffSpec& c, double x, double y, double t, double a, double b, double s,
                       int sign, const GreenOptions& o) {
  if (sign != 1 && sign != -1) throw ValidationError("green_function: sign must be +1 or -1");
  if (x < 0.0 || a < 0.0) throw DomainError("green_function: points must satisfy x >= 0");
  const Rule& gl = gauss_legendre(o.eta_order);
  const double e0 = c.psi.lo(), e1 = c.psi.hi();
  long terms = 0;
  CompensatedSum<Complex> total;
  for (std::size_t i = 0; i < gl.size(); ++i) {
    const double eta = 0.5 * (e0 + e1) + 0.5 * (e1 - e0) * gl.x[i];
    const double psi = c.psi(eta);
    if (psi == 0.0) continue;
    const double theta = eta / h;
    const double hbar = 1.0 / theta;
    const double h23 = std::cbrt(hbar * hbar);
    const int k_max = max_mode_index(hbar, c);
    terms += k_max;
    if (terms > o.max_terms) throw ResolutionError("green_function: truncation budget exceeded");
    CompensatedSum<Complex> modes;
    for (int k = 1; k <= k_max; ++k) {
      const EigenMode m = make_mode(k, theta);
      const double chi = c.chi0(m.omega) * c.chi1(m.omega * h23);
      if (chi == 0.0) continue;
      const double ph = sign * (t - s) * std::sqrt(m.lambda);
      modes.add(chi * eigenfunction(m, x) * eigenfunction(m, a) * std::polar(1.0, ph));
    }
    const double w = 0.5 * (e1 - e0) * gl.w[i] / h;
    total.add(w * psi * std::polar(1.0, (y - b) * theta) * modes.value());
  }
  return total.value();
}

}  // namespace glide
