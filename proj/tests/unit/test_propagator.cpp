#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "glide/propagator.hpp"

using namespace glide;
using std::numbers::pi;

namespace {

// Quadrature norm on [0, x_max] accurate enough to see 1e-10 drifts.
double quad_norm(const ModeCoefficients& m, double t, double x_max) {
  const Rule r = composite_rule(0.0, x_max, 400, 16);
  const auto v = evolve_modes(m, t, r.x);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::norm(v[i]);
  return std::sqrt(s);
}

const PacketEvolution& small_packet() {
  static const PacketEvolution ev(params_for_lambda(20, {}));
  return ev;
}

}  // namespace

TEST_CASE("decomposing a single mode") {
  const double hbar = 0.01;
  const EigenMode e3 = make_mode(3, 1 / hbar);
  const SampledFunction f{[&](double x) { return Complex(eigenfunction(e3, x)); }, 0.0, mode_cutoff(e3)};
  const ModeCoefficients m = decompose(f, hbar);
  REQUIRE(!m.entries.empty());
  CHECK(m.entries.front().k == 3);
  CHECK(std::abs(m.entries.front().c - 1.0) < 1e-6);
  for (std::size_t i = 1; i < m.entries.size(); ++i) CHECK(std::abs(m.entries[i].c * m.entries[i].weight) < 1e-6);

  const SampledFunction zero{[](double) { return Complex(0.0); }, 0.0, 1.0};
  CHECK(decompose(zero, hbar).entries.empty());
  DecomposeOptions pruned;
  pruned.prune_tol = 1e-8;
  pruned.k_hint = 3;
  const ModeCoefficients p = decompose(f, hbar, {}, pruned);
  REQUIRE(!p.entries.empty());
  CHECK(p.entries.front().k == 3);
  CHECK(p.entries.size() < m.entries.size());
}

TEST_CASE("mode count follows the chi1 support") {
  const auto table = shared_phase_table(2000);
  for (double hbar : {0.02, 0.005, 0.0025}) {
    const double omega_max = 2.0 / std::cbrt(hbar * hbar);
    int count = 0;
    for (const PhaseRow& r : table->rows()) count += r.omega < omega_max;
    CHECK(max_mode_index(hbar, {}) == count);
  }
  const double ratio = static_cast<double>(max_mode_index(0.0025, {})) / max_mode_index(0.02, {});
  CHECK(ratio == doctest::Approx(8.0).epsilon(0.05));
  CHECK_THROWS_AS(max_mode_index(1.5, {}), DomainError);
}

TEST_CASE("unitarity and the semiclassical wave equation") {
  const double hbar = 0.02;
  auto g = [](double x) { return Complex(std::exp(-200 * (x - 0.3) * (x - 0.3)), 0.0) * std::polar(1.0, 30 * x); };
  const ModeCoefficients m = decompose({g, 0.0, 0.8, 2 * pi / 30}, hbar);
  const double x_max = 2.5;
  const double n0 = quad_norm(m, 0.0, x_max);
  CHECK(n0 == doctest::Approx(std::sqrt(m.projected_norm_sq())).epsilon(1e-9));
  for (double t : {0.25, 0.5, 0.75, 1.0}) CHECK(std::abs(quad_norm(m, t, x_max) - n0) <= 1e-10 * n0);

  // (hbar^2 d_t^2 - hbar^2 d_x^2 + 1 + x) v = 0
  const double dt = 1e-3, dx = 1e-4, t = 0.4;
  std::vector<double> xs;
  for (double x = 0.1; x < 0.9; x += 0.05) xs.push_back(x);
  auto at = [&](double tt, double shift) {
    std::vector<double> s(xs);
    for (double& v : s) v += shift;
    return evolve_modes(m, tt, s);
  };
  const auto c = at(t, 0), tp = at(t + dt, 0), tm = at(t - dt, 0), xp = at(t, dx), xm = at(t, -dx);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Complex vtt = (tp[i] - 2.0 * c[i] + tm[i]) / (dt * dt);
    const Complex vxx = (xp[i] - 2.0 * c[i] + xm[i]) / (dx * dx);
    const Complex res = hbar * hbar * (vtt - vxx) + (1 + xs[i]) * c[i];
    worst = std::max(worst, std::abs(res));
    scale = std::max(scale, std::abs((1 + xs[i]) * c[i]));
  }
  CHECK(worst <= 1e-3 * scale);
  const auto boundary = evolve_modes(m, 0.7, {0.0});
  CHECK(std::abs(boundary[0]) < 1e-9 * n0);
}

TEST_CASE("l2 norm on samples") {
  CHECK(l2_norm({0.0, 1.0, 2.0}, {1.0, 1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(l2_norm({0.0}, {1.0}), ValidationError);
}

TEST_CASE("packet evolution basics") {
  const PacketEvolution& ev = small_packet();
  const PacketParams& p = ev.params();
  CHECK(ev.mode_count() > 0);
  CHECK(ev.etas().size() == ev.lam_etas().size());

  // Bessel: the projected datum cannot exceed the datum
  const double data = data_l2_norm(p).norm;
  const double proj = ev.projected_norm();
  CHECK(proj <= data * (1 + 1e-6));
  CHECK(proj >= 0.99 * data);

  // lab and packet frames agree
  const LabPoint l = FrameMap(p).packet_to_lab({0.3, 0.9, 0.05});
  CHECK(std::abs(ev.lab(l.t, l.x, l.y) - ev(0.3, 0.9, 0.05)) < 1e-12 * std::abs(ev(0.3, 0.9, 0.05)));
  CHECK(std::abs(ev(0.5, 0.0, 0.1)) < 1e-9 * std::abs(ev(0.0, 1.0, 0.0)));
  CHECK_THROWS_AS(ev(0.0, -0.1, 0.0), DomainError);
}

TEST_CASE("transverse band limit") {
  const PacketEvolution& ev = small_packet();
  const double lam = ev.params().lambda();
  const int n = 2048;
  const double y0 = -4.0, len = 8.0, dy = len / n;
  std::vector<Complex> u(n);
  const auto w = ev.y_spectrum(0.6, 1.0);
  for (int i = 0; i < n; ++i) u[i] = PacketEvolution::sum_y(w, ev.lam_etas(), y0 + i * dy);
  double in_band = 0.0, out_band = 0.0;
  for (int k = -n / 2; k < n / 2; ++k) {
    const double nu = 2 * pi * k / len;
    Complex s = 0.0;
    for (int i = 0; i < n; ++i) s += u[i] * std::polar(1.0, -nu * (y0 + i * dy));
    const double e = std::norm(s);
    const double band = nu / lam;
    (band >= 0.5 - 0.05 && band <= 2.0 + 0.05 ? in_band : out_band) += e;
  }
  CHECK(out_band <= 1e-6 * in_band);
}

TEST_CASE("field evaluation") {
  const PacketEvolution& ev = small_packet();
  const double lam = ev.params().lambda();
  const auto x = linspace(0.8, 1.1, 4);
  const auto y = linspace(-0.1, 0.1, 64);
  const ComplexField f = evolve_full(ev, {0.0, 0.5}, x, y);
  f.validate();
  CHECK(f.size() == 2 * 4 * 64);
  CHECK(std::abs(f.at(1, 2, 7) - ev(0.5, x[2], y[7])) < 1e-12 * std::abs(f.at(1, 2, 7)) + 1e-300);
  CHECK_THROWS_AS(evolve_full(ev, {0.0}, x, linspace(-1, 1, static_cast<int>(lam / 4))), ResolutionError);

  std::stringstream bin;
  f.write_binary(bin);
  const ComplexField back = ComplexField::read_binary(bin);
  CHECK(back.values() == f.values());
  CHECK(back.y() == f.y());
  std::stringstream csv;
  f.write_csv(csv);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "T,X,Y,re,im,abs");
}

TEST_CASE("Green function symmetries") {
  const CutoffSpec c;
  const double h = 0.05;
  const Complex g = green_function(h, c, 0.4, 0.1, 0.3, 0.5, -0.2, 0.0, 1);
  const Complex swapped = green_function(h, c, 0.5, -0.2, 0.0, 0.4, 0.1, 0.3, 1);
  CHECK(std::abs(swapped - std::conj(g)) < 1e-12 * std::abs(g));
  const Complex plus = green_function(h, c, 0.4, 0.1, 0.3, 0.5, 0.1, 0.0, 1);
  const Complex minus = green_function(h, c, 0.4, 0.1, 0.3, 0.5, 0.1, 0.0, -1);
  CHECK(std::abs(minus - std::conj(plus)) < 1e-12 * std::abs(plus));
  CHECK_THROWS_AS(green_function(h, c, 0.4, 0.1, 0.3, 0.5, 0.1, 0.0, 0), ValidationError);

  // at s = t the sign average is a smoothed delta at (a, b)
  auto kernel = [&](double x, double y) {
    return 0.5 * (green_function(h, c, x, y, 0.2, 0.5, 0.0, 0.2, 1) + green_function(h, c, x, y, 0.2, 0.5, 0.0, 0.2, -1)).real();
  };
  const double peak = kernel(0.5, 0.0);
  CHECK(peak > 0.0);
  for (double dx : {-0.15, -0.08, 0.08, 0.15})
    for (double dy : {-0.15, 0.0, 0.15}) CHECK(std::abs(kernel(0.5 + dx, dy)) < peak);
}
