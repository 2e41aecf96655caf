#include "glide/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>

namespace glide {

namespace {

Rule build_gauss_legendre(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = w;
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be positive");
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_gauss_legendre(order)).first;
  return it->second;
}

Rule composite_rule(double a, double b, int panels, int order) {
  const Rule& g = gauss_legendre(order);
  Rule r;
  r.x.reserve(static_cast<std::size_t>(panels) * order);
  r.w.reserve(static_cast<std::size_t>(panels) * order);
  const double step = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * step, hw = 0.5 * step;
    for (int i = 0; i < order; ++i) {
      r.x.push_back(c + hw * g.x[i]);
      r.w.push_back(hw * g.w[i]);
    }
  }
  return r;
}

Rule oscillatory_rule(double a, double b, double max_rate, double rad_per_panel, int order, int min_panels) {
  const double phase = std::abs(max_rate) * std::abs(b - a);
  const int panels = std::max(min_panels, static_cast<int>(std::ceil(phase / rad_per_panel)));
  return composite_rule(a, b, panels, order);
}

}  // namespace glide
