#include "glide/spectrum.hpp"

#include <cmath>
#include <numbers>

namespace glide {

namespace {
constexpr double kTailMargin = 15.0;
}

EigenMode make_mode(int k, double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("make_mode: theta must be positive");
  const auto table = shared_phase_table(k);
  EigenMode m;
  m.k = k;
  m.theta = theta;
  m.omega = table->omega(k);
  m.l_prime = table->l_prime(k);
  m.scale = std::cbrt(theta * theta);
  m.lambda = theta * theta + m.omega * m.scale * m.scale;
  m.norm = std::sqrt(2.0 * std::numbers::pi) * std::cbrt(theta) / std::sqrt(m.l_prime);
  return m;
}

double eigenvalue(int k, double theta) { return make_mode(k, theta).lambda; }

ModeSample sample_eigenfunction(const EigenMode& m, double x) {
  if (x < 0.0) throw DomainError("eigenfunction: x must be non-negative");
  const double arg = m.scale * x - m.omega;
  ModeSample s;
  s.value = m.norm * airy_real(arg).ai;
  s.underflow = s.value == 0.0 && arg > 0.0;
  return s;
}

double eigenfunction(const EigenMode& m, double x) { return sample_eigenfunction(m, x).value; }

double mode_cutoff(const EigenMode& m) { return (m.omega + kTailMargin) / m.scale; }

Complex mode_coefficient(const EigenMode& m, const SampledFunction& g) {
  const double lo = std::max(0.0, g.x_min);
  const double hi = std::min(g.x_max, mode_cutoff(m));
  if (!(hi > lo)) return {};
  const double rate = m.scale * std::sqrt(m.omega) + 2.0 * std::numbers::pi / g.wavelength;
  const Rule r = oscillatory_rule(lo, hi, rate, 4.0, 16, 4);
  CompensatedSum<Complex> acc;
  for (std::size_t i = 0; i < r.size(); ++i) acc.add(r.w[i] * eigenfunction(m, r.x[i]) * g.f(r.x[i]));
  return acc.value();
}

SymmetricMatrix gram_matrix(double theta, int k_max) {
  if (k_max < 1) throw DomainError("gram_matrix: k_max must be positive");
  std::vector<EigenMode> modes;
  for (int k = 1; k <= k_max; ++k) modes.push_back(make_mode(k, theta));
  const EigenMode& top = modes.back();
  const Rule r = oscillatory_rule(0.0, mode_cutoff(top), top.scale * std::sqrt(top.omega), 1.5, 16, 8);
  std::vector<std::vector<double>> v(modes.size(), std::vector<double>(r.size()));
  for (std::size_t j = 0; j < modes.size(); ++j)
    for (std::size_t i = 0; i < r.size(); ++i) v[j][i] = eigenfunction(modes[j], r.x[i]);
  SymmetricMatrix g(k_max);
  for (int j = 0; j < k_max; ++j)
    for (int k = 0; k <= j; ++k) {
      CompensatedSum<double> acc;
      for (std::size_t i = 0; i < r.size(); ++i) acc.add(r.w[i] * v[j][i] * v[k][i]);
      g.at(j, k) = acc.value();
    }
  return g;
}

}  // namespace glide
