#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "glide/experiment.hpp"
#include "glide/exponents.hpp"
#include "glide/norms.hpp"

using namespace glide;
using std::numbers::pi;

namespace {

std::vector<Complex> sample(const std::vector<double>& x, const std::vector<double>& y, auto f) {
  std::vector<Complex> v;
  for (double a : x)
    for (double b : y) v.push_back(f(a, b));
  return v;
}

ComplexField field_of(const std::vector<double>& t, const std::vector<double>& x, const std::vector<double>& y, auto f) {
  ComplexField out(t, x, y);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      for (std::size_t k = 0; k < y.size(); ++k) out.at(i, j, k) = f(t[i], x[j], y[k]);
  return out;
}

const PacketEvolution& small_packet() {
  static const PacketEvolution ev(params_for_lambda(20, {}));
  return ev;
}

}  // namespace

TEST_CASE("spatial norms") {
  const auto x = linspace(0, 1, 11), y = linspace(0, 1, 7);
  const auto one = sample(x, y, [](double, double) { return Complex(1.0); });
  for (double r : {1.0, 2.0, 3.5, kInf}) CHECK(spatial_norm(x, y, one, r) == doctest::Approx(1.0).epsilon(1e-14));

  const double s = 0.3;
  const auto gx = linspace(-2.5, 2.5, 50), gy = linspace(-2.5, 2.5, 50);
  const auto g = sample(gx, gy, [&](double a, double b) { return Complex(std::exp(-(a * a + b * b) / (2 * s * s))); });
  for (double r : {1.0, 2.0, 4.0}) {
    const double exact = std::pow(2 * pi * s * s / r, 1.0 / r);
    CHECK(spatial_norm(gx, gy, g, r) == doctest::Approx(exact).epsilon(0.01));
  }
  CHECK(spatial_norm(gx, gy, g, kInf) <= 1.0);
  CHECK_THROWS_AS(spatial_norm({0.0}, y, std::vector<Complex>(7), 2), ValidationError);
  CHECK_THROWS_AS(spatial_norm(x, y, one, 0.5), ValidationError);
  CHECK_THROWS_AS(spatial_norm(x, y, std::vector<Complex>(3), 2), ValidationError);
}

TEST_CASE("Hoelder, monotonicity and refinement") {
  auto f = [](double a, double b) { return Complex(std::sin(3 * a) * std::cos(2 * b) + 0.2, 0.1 * a * b); };
  const auto x = linspace(0, 1, 41), y = linspace(0, 1, 41);
  const auto v = sample(x, y, f);
  const std::vector<double> rs{1.0, 1.5, 2.0, 3.0, 6.0, kInf};
  for (std::size_t i = 1; i < rs.size(); ++i) CHECK(spatial_norm(x, y, v, rs[i - 1]) <= spatial_norm(x, y, v, rs[i]) * (1 + 1e-12));

  auto bigger = v;
  for (auto& z : bigger) z *= 1.0 + 0.1 * std::abs(z);
  for (double r : rs) CHECK(spatial_norm(x, y, bigger, r) >= spatial_norm(x, y, v, r));

  const auto x2 = linspace(0, 1, 81), y2 = linspace(0, 1, 81);
  for (double r : {1.0, 2.0, 4.0}) CHECK(spatial_norm(x2, y2, sample(x2, y2, f), r) == doctest::Approx(spatial_norm(x, y, v, r)).epsilon(0.01));
}

TEST_CASE("mixed norms") {
  const auto t = linspace(0, 2, 41), x = linspace(0, 1, 21), y = linspace(0, 1, 21);
  auto ft = [](double s) { return 1.0 + 0.5 * std::sin(s); };
  auto gxy = [](double a, double b) { return std::exp(-a) * (1 + b); };
  const ComplexField f = field_of(t, x, y, [&](double s, double a, double b) { return Complex(ft(s) * gxy(a, b)); });
  const ComplexField g = field_of({0.0}, x, y, [&](double, double a, double b) { return Complex(gxy(a, b)); });
  const double gr = spatial_norm(g, 0, 3);
  std::vector<double> fs;
  for (double s : t) fs.push_back(ft(s));
  CHECK(mixed_norm(f, 4, 3, {0, 2}) == doctest::Approx(mixed_norm(t, fs, 4, {0, 2}) * gr).epsilon(1e-12));
  const double exact_fq = std::pow(
      [&] {
        double s = 0;
        for (int i = 0; i < 20000; ++i) s += std::pow(ft((i + 0.5) * 2.0 / 20000), 4) * 2.0 / 20000;
        return s;
      }(),
      0.25);
  CHECK(mixed_norm(t, fs, 4, {0, 2}) == doctest::Approx(exact_fq).epsilon(1e-3));

  // q = inf is the largest slice
  double m = 0;
  for (std::size_t i = 0; i < t.size(); ++i) m = std::max(m, spatial_norm(f, i, 2));
  CHECK(mixed_norm(f, kInf, 2, {0, 2}) == m);

  // windows split at a sample add up in the q-th power
  const double a = mixed_norm(t, fs, 3, {0, 1}), b = mixed_norm(t, fs, 3, {1, 2}), c = mixed_norm(t, fs, 3, {0, 2});
  CHECK(std::pow(a, 3) + std::pow(b, 3) == doctest::Approx(std::pow(c, 3)).epsilon(1e-12));

  CHECK_THROWS_AS(mixed_norm(t, fs, 2, {0, 3}), ValidationError);
  CHECK_THROWS_AS(mixed_norm(t, fs, 2, {1.01, 1.02}), ValidationError);
  CHECK_THROWS_AS(mixed_norm(t, fs, 2, {1.0, 1.0}), ValidationError);
  CHECK(mixed_norm(t, fs, kInf, {1.0, 1.0}) == fs[20]);
}

TEST_CASE("lower-bound window") {
  const PacketParams p = params_for_lambda(100, {});
  const double lam = p.lambda();
  for (int j : {0, 1, 2}) {
    const LowerBoundWindow w = lower_bound_window(p, j);
    CHECK(0.5 * (w.t.lo + w.t.hi) == doctest::Approx(4 * j * std::sqrt(1 + p.a)));
    CHECK(0.5 * (w.y.lo + w.y.hi) == doctest::Approx(4.0 * j / 3.0));
    CHECK(w.x.width() * w.y.width() == doctest::Approx(4 * std::pow(lam, -2.0 / 3.0) / lam));
    CHECK(w.t.width() <= 4 * std::sqrt(1 + p.a) * std::sqrt(p.M / lam) * (1 + 1e-12));
  }
  const LowerBoundWindow c = lower_bound_window(p, 1, [](double, double, double) { return Complex(0, 3.0); });
  CHECK(c.measured_min == doctest::Approx(3 * p.h));
  CHECK_THROWS_AS(lower_bound_window(p, 0, [](double, double, double) { return Complex(1); }, 1), ValidationError);
}

TEST_CASE("Strichartz quotient") {
  const PacketParams p = params_for_lambda(100, {});
  CHECK(strichartz_quotient(p, 5, kInf, 10.0, 2.0) == doctest::Approx(5.0 / reduced_strichartz_rhs(5, kInf, p)));
  CHECK_THROWS_AS(strichartz_quotient(p, 5, kInf, 10.0, 0.0), ValidationError);
}

TEST_CASE("scaling fits") {
  auto scan = [](auto q) {
    ScanResult s;
    for (double lam : {50.0, 70.7, 100.0, 141.4, 200.0, 282.8, 400.0}) s.rows.push_back({0, 0, 0, lam, 4, kInf, 0, 0, q(lam)});
    return s;
  };
  const ScalingFit f = fit_scaling(scan([](double l) { return 3.0 * std::pow(l, 0.1); }));
  CHECK(std::abs(f.slope - 0.1) < 1e-12);
  CHECK(f.stderr_slope < 1e-12);
  CHECK(f.n == 7);
  CHECK(std::abs(fit_scaling(scan([](double) { return 0.7; })).slope) < 1e-12);
  CHECK(f.summary().rfind("slope=0.1", 0) == 0);

  // a quotient following the predicted budget has slope -(net exponent)
  const double net = to_double(budget_exponent(Rational(1, 4), 0, ARule::cube_root, MRule::lambda_cube_root));
  CHECK(fit_scaling(scan([&](double l) { return std::pow(l, -net); })).slope == doctest::Approx(1.0 / 12));

  ScanResult few = scan([](double) { return 1.0; });
  few.rows.resize(3);
  CHECK_THROWS_AS(fit_scaling(few), ValidationError);
  ScanResult narrow;
  for (double lam : {50.0, 60.0, 70.0, 80.0}) narrow.rows.push_back({0, 0, 0, lam, 4, kInf, 0, 0, 1.0});
  CHECK_THROWS_AS(fit_scaling(narrow), ValidationError);
  ScanResult mixed = scan([](double) { return 1.0; });
  mixed.rows[2].q = 5;
  CHECK_THROWS_AS(fit_scaling(mixed), ValidationError);

  std::stringstream ss;
  const ScanResult orig = scan([](double l) { return l; });
  orig.write_csv(ss);
  const ScanResult back = ScanResult::read_csv(ss);
  REQUIRE(back.rows.size() == orig.rows.size());
  CHECK(back.rows[3].lambda == orig.rows[3].lambda);
  CHECK(std::isinf(back.rows[3].r));
}

TEST_CASE("scan times") {
  const PacketParams p = params_for_lambda(200, {});
  const auto t = scan_times(p);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == doctest::Approx(p.m_a()));
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] > t[i - 1]);
  const double c1 = 4 * std::sqrt(1 + p.a);
  REQUIRE(c1 < p.m_a());
  bool has_center = false;
  for (double v : t) has_center = has_center || std::abs(v - c1) < 1e-12;
  CHECK(has_center);
  // denser near a reflection than between reflections
  const double hw = 4 * std::sqrt(1 + p.a) * std::sqrt(p.M / p.lambda());
  int near = 0, mid = 0;
  for (double v : t) {
    near += std::abs(v - c1) < 0.1 * hw;
    mid += std::abs(v - 0.5 * c1) < 0.1 * hw;
  }
  CHECK(near > mid);
  CHECK_THROWS_AS(scan_times(p, 1, 5), ValidationError);
}

TEST_CASE("arc search against a brute-force lattice") {
  const PacketEvolution& ev = small_packet();
  const PacketParams& p = ev.params();
  const double lam = p.lambda();
  for (double t : {0.0, 0.4, 1.3, 2.2}) {
    const SupResult s = arc_sup(ev, t);
    CHECK(std::abs(ev(t, s.x, s.y)) == doctest::Approx(s.value).epsilon(1e-12));
    double brute = 0;
    const auto xs = linspace(0.0, 1.2, 121);
    const auto ys = linspace(-1.0, 2.5, static_cast<int>(3.5 * lam * 8));
    const ComplexField f = evolve_full(ev, {t}, xs, ys);
    for (const Complex& z : f.values()) brute = std::max(brute, std::abs(z));
    CHECK(s.value >= brute * (1 - 1e-3));
  }
}

TEST_CASE("reflections are separated in space") {
  const PacketEvolution& ev = small_packet();
  const PacketParams& p = ev.params();
  const double t = 4 * std::sqrt(1 + p.a);
  auto region_norm = [&](int j) {
    const ReflectionRegion r(j, p.a);
    const auto xs = linspace(1 - r.eps().eps1, 1 + r.eps().eps1, 41);
    const auto ys = linspace(r.y_center() - r.eps().eps2, r.y_center() + r.eps().eps2, 81);
    return spatial_norm(evolve_full(ev, {t}, xs, ys), 0, 2);
  };
  // the frequency band spreads the packet along the ray, so neighbours keep a few percent
  const double own = region_norm(1);
  CHECK(region_norm(0) <= 0.1 * own);
  CHECK(region_norm(2) <= 0.1 * own);
}

TEST_CASE("seeded generator") {
  SeededUniform a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const double v = a();
    CHECK(v == b());
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  CHECK(a() != c());
  SeededUniform d(0);
  const double u = d(2.0, 3.0);
  CHECK(u >= 2.0);
  CHECK(u < 3.0);
}
