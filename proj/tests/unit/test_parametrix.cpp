#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "glide/parametrix.hpp"
#include "oracles.hpp"

using namespace glide;
using std::numbers::pi;

namespace {
PacketParams profile_params(double lam) {
  PacketParams p = params_for_lambda(lam, {});
  p.M = 4.0 * std::cbrt(lam) / airy_lower_bound_constant();
  p.validate();
  return p;
}
}  // namespace

TEST_CASE("reflection phases") {
  const PacketParams p = params_for_lambda(50, {});
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2, 2), e(0.8, 1.2), x(0, 1.5);
  for (int n : {-2, 0, 1, 3}) {
    const ReflectionPhase ph(n, p);
    for (int i = 0; i < 50; ++i) {
      const double s = u(rng), ee = e(rng), xx = x(rng), t = 4 * u(rng), le = 40 + 20 * e(rng);
      CHECK(ph.phi_tilde(s, ee, t, xx, le).imag() >= 0.0);
      CHECK(ph.phi(s, u(rng), ee, t, xx, le).imag() >= 0.0);
      const double h = 1e-6;
      const double fd = (ph.phi_tilde(s + h, ee, t, xx, le).real() - ph.phi_tilde(s - h, ee, t, xx, le).real()) / (2 * h);
      CHECK(fd == doctest::Approx(ph.dphi_tilde_dsigma(s, ee, xx)).epsilon(1e-6));
    }
  }
  // the stationary set at E = 1 is where d/dE of the real phase vanishes
  const ReflectionPhase ph1(1, p);
  const double le = 50.0, t = 4.0 * std::sqrt(1 + p.a) + 0.3;
  const double sc = stationary_sigma(t, 1, le, p.a);
  auto re = [&](double ee) { return ph1.phi_tilde(sc, ee, t, 1.0, le).real(); };
  CHECK(std::abs((re(1 + 1e-6) - re(1 - 1e-6)) / 2e-6) < 1e-6);
  CHECK(stationary_sigma(0.0, 0, le, p.a) == 0.0);
}

TEST_CASE("Gaussian s integral") {
  auto s_integral = [](double le, double m, double e) {
    AdaptiveOptions o;
    o.abs_tol = 1e-15;
    const double w = std::sqrt(120 * m / le);
    return integrate_adaptive<Complex>(
               [&](double s) { return std::exp(Complex(0, 1) * le * Complex(s * (e - 1), 0.5 * s * s / m)); }, -w, w, o)
        .value;
  };
  CHECK(std::abs(s_integral(100, 10, 1.0) - std::sqrt(pi / 5)) < 1e-10);
  CHECK(std::sqrt(pi / 5) == doctest::Approx(0.79266).epsilon(1e-5));
  for (double e : {0.97, 1.02}) {
    const double closed = std::sqrt(2 * pi / 100) * std::sqrt(10.0) * std::exp(-100 * 10 * (e - 1) * (e - 1) / 2);
    CHECK(std::abs(s_integral(100, 10, e) - closed) < 1e-10);
  }
}

TEST_CASE("Sigma integral: rotated contour against the Airy form") {
  for (double lam : {20.0, 100.0, 400.0})
    for (double c : {-1.0, -0.3, 0.0, 0.05, 0.4}) {
      const Complex a = sigma_integral_contour(c, lam);
      const double b = sigma_integral_closed(c, lam);
      CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("regions and truncation") {
  const PacketParams p = params_for_lambda(200, {});
  const double sq = std::sqrt(1 + p.a);
  CHECK(dominant_reflection(4 * sq, 1.0, 4.0 / 3.0, p) == 1);
  CHECK_FALSE(dominant_reflection(2 * sq, 1.0, 2.0 / 3.0, p).has_value());
  CHECK(dominant_reflection(0.1, 0.9, 0.1, p) == 0);
  CHECK_FALSE(dominant_reflection(4 * sq, 1.3, 4.0 / 3.0, p).has_value());
  const ReflectionRegion r(2, p.a);
  CHECK(r.contains(r.t_lo(), 1.0, r.y_center()));
  CHECK_FALSE(r.contains(r.t_hi(), 1.0, r.y_center()));
  CHECK_THROWS_AS(ReflectionRegion(1, p.a, {0.25, 0.2, 0.25}), ValidationError);
  CHECK_THROWS_AS(ReflectionRegion(-1, p.a), ValidationError);

  const NRange n0 = n_truncation(p, 0.0);
  CHECK(n0.lo == -3);
  CHECK(n0.hi == 3);
  for (int j : {1, 2, 5}) {
    const NRange n = n_truncation(p, 4 * sq * j);
    CHECK(n.lo == j - 3);
    CHECK(n.hi == j + 3);
  }
  TruncationOptions tight;
  tight.cap = 0.01;
  CHECK_THROWS_AS(n_truncation(p, 40.0, tight), ValidationError);
}

TEST_CASE("padding the reflection sum") {
  const PacketParams p = params_for_lambda(50, {});
  const double sq = std::sqrt(1 + p.a);
  for (auto [t, x, y] : {std::tuple{0.1, 0.99, 0.004}, {4 * sq + 0.05, 0.995, 4.0 / 3.0 + 0.01}}) {
    const NRange n = n_truncation(p, t);
    const Complex base = parametrix_u(t, x, y, p, {}, n);
    const Complex wide = parametrix_u(t, x, y, p, {}, NRange{n.lo - 2, n.hi + 2});
    CHECK(std::abs(wide - base) < 1e-6 * std::abs(base));
  }
  CHECK_THROWS_AS(parametrix_u(0.1, -0.5, 0.0, p), DomainError);
}

TEST_CASE("single reflection dominates inside its region") {
  const PacketParams p = params_for_lambda(100, {});
  const double sq = std::sqrt(1 + p.a);
  for (int j = 0; j <= 3; ++j) {
    const double t = 4 * sq * j + 0.1;
    const double s = stationary_sigma(t, j, p.lambda(), p.a);
    const double x = 1 - s * s, y = 4.0 * j / 3.0 + 2.0 * s * s * s / 3.0;
    REQUIRE(dominant_reflection(t, x, y, p) == j);
    const Complex full = parametrix_u(t, x, y, p);
    const Complex single = parametrix_u(t, x, y, p, {}, NRange{j, j});
    CHECK(std::abs(full - single) <= 1e-3 * std::abs(full));
  }
}

TEST_CASE("Airy lower-bound constant") {
  const double c = airy_lower_bound_constant();
  CHECK(c > 0.0);
  CHECK(c <= 1.0);
  auto circle_min = [](double r, int n) {
    double lo = 1e300;
    for (int k = 0; k < n; ++k) lo = std::min(lo, std::abs(ai(std::polar(r, 2 * pi * k / n))));
    return lo;
  };
  double disk = 1e300;
  for (int i = 0; i <= 50; ++i) disk = std::min(disk, circle_min(c * i / 50.0, 2880));
  CHECK(disk > 0.1);
  CHECK(circle_min(c / 2, 2880) >= circle_min(c, 2880));
}

TEST_CASE("phase defect B") {
  for (double u : {50.0, 200.0, 1000.0}) CHECK(phase_b(u) * u == doctest::Approx(5.0 / 24.0).epsilon(1e-3));
  CHECK(std::abs(phase_b(400.0)) < std::abs(phase_b(100.0)));
  CHECK_THROWS_AS(phase_b(0.0), DomainError);
}

TEST_CASE("asymptotic profile ingredients") {
  const PacketParams p = profile_params(200);
  const AsymptoticProfile prof(1, p);
  const double a = p.a;
  CHECK(prof.f(0.0) == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
  const double h = 1e-4;
  CHECK(std::abs((prof.f(h) - prof.f(-h)) / (2 * h)) < 1e-7);
  const double f2 = (prof.f(h) - 2 * prof.f(0) + prof.f(-h)) / (h * h);
  CHECK(f2 == doctest::Approx(-(1 + a) * (1 + 2 * a)).epsilon(1e-5));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int i = 0; i < 30; ++i) {
    const double tt = u(rng), xt = u(rng), s = u(rng);
    const Complex g = prof.gamma(tt);
    CHECK(g.imag() > 0.0);
    CHECK(std::abs(g) <= 0.5 / p.M * (1 + 1e-12));
    const Complex w = g * g + 2.0 * g * tt - xt;
    const Complex reduced = g * w + g * tt * tt - g * g * g / 3.0 + std::pow(s + g, 3) / 3.0 - (s + g) * w;
    CHECK(std::abs(prof.g0(s, tt, xt) - reduced) < 1e-12);
  }
}

TEST_CASE("closed profile against quadrature") {
  const PacketParams p = profile_params(200);
  const AsymptoticProfile prof(0, p);
  const CutoffSpec c;
  const double l23 = std::pow(200.0, -2.0 / 3.0);
  for (auto [tt, xt] : {std::pair{0.0, 0.0}, {0.1, 0.5 * l23}, {-0.15, -l23}}) {
    const Complex closed = prof.i0(tt, xt, 1.0, c.psi);
    const Complex quad = prof.i0_quadrature(tt, xt, 1.0, c.psi);
    CHECK(std::abs(closed - quad) <= 1e-6 * std::abs(closed));
  }
  // gamma -> 0 leaves the bare Airy value at the origin
  PacketParams flat = params_for_lambda(400, {});
  flat.M = 100;
  const Complex bare = AsymptoticProfile(0, flat).i0(0.0, 0.0, 1.0, c.psi);
  CHECK(std::abs(bare - 2 * pi * std::pow(400.0, -1.0 / 3.0) * oracle::ai(0.0)) < 1e-2 * std::abs(bare));
}

TEST_CASE("profile against the direct reflection integral") {
  const PacketParams p = profile_params(200);
  const double i0 = std::abs(AsymptoticProfile(0, p).i0(0.0, 0.0, 1.0, CutoffSpec{}.psi));
  CHECK(profile_vs_quadrature(0.0, 0.0, p, 0) <= 1e-3 * i0);
  const double d100 = profile_vs_quadrature(0.0, 0.0, profile_params(100), 1);
  const double d400 = profile_vs_quadrature(0.0, 0.0, profile_params(400), 1);
  CHECK(d400 <= d100);
  CHECK_THROWS_AS(profile_vs_quadrature(1.0, 0.0, p, 0), DomainError);
  CHECK_THROWS_AS(profile_vs_quadrature(0.0, 0.0, params_for_lambda(200, {}), 0), DomainError);
}
