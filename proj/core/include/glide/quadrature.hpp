#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <type_traits>
#include <vector>

#include "glide/errors.hpp"

namespace glide {

using Complex = std::complex<double>;

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

// Gauss-Legendre nodes on [-1, 1]; cached per order.
const Rule& gauss_legendre(int order);

// Composite rule: `panels` equal panels of an order-`order` rule on [a, b].
Rule composite_rule(double a, double b, int panels, int order = 16);

// Panels sized so that a phase growing at `max_rate` radians per unit length
// is sampled with at most `rad_per_panel` radians per panel.
Rule oscillatory_rule(double a, double b, double max_rate, double rad_per_panel = 3.0, int order = 16,
                      int min_panels = 2);

// Neumaier compensated accumulator.
template <class T>
class CompensatedSum {
public:
  void add(T v) {
    if constexpr (std::is_same_v<T, Complex>) {
      re_.add(v.real());
      im_.add(v.imag());
    } else {
      const T t = sum_ + v;
      if (std::abs(sum_) >= std::abs(v))
        comp_ += (sum_ - t) + v;
      else
        comp_ += (v - t) + sum_;
      sum_ = t;
    }
  }
  T value() const {
    if constexpr (std::is_same_v<T, Complex>)
      return {re_.value(), im_.value()};
    else
      return sum_ + comp_;
  }

private:
  struct Empty {};
  using Part = std::conditional_t<std::is_same_v<T, Complex>, CompensatedSum<double>, Empty>;
  T sum_{};
  T comp_{};
  Part re_{};
  Part im_{};
};

template <class T>
struct Integral {
  T value{};
  double error = 0.0;
  int evaluations = 0;
};

struct AdaptiveOptions {
  double abs_tol = 1e-12;  // per panel
  double rel_tol = 0.0;
  int order = 16;
  int initial_panels = 8;
  int max_depth = 40;
  long max_evaluations = 20'000'000;
};

namespace detail {
template <class T, class F>
T apply_rule(const Rule& r, double a, double b, F& f, int& evals) {
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  T s{};
  for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * f(c + hw * r.x[i]);
  evals += static_cast<int>(r.size());
  return s * hw;
}

template <class T, class F>
void adapt(const Rule& r, double a, double b, T whole, F& f, const AdaptiveOptions& o, int depth,
           CompensatedSum<T>& acc, double& err, int& evals, bool& failed) {
  const double m = 0.5 * (a + b);
  const T left = apply_rule<T>(r, a, m, f, evals);
  const T right = apply_rule<T>(r, m, b, f, evals);
  const T both = left + right;
  const double diff = std::abs(both - whole);
  const double tol = std::max(o.abs_tol, o.rel_tol * std::abs(both));
  if (diff <= tol || depth >= o.max_depth || evals > o.max_evaluations) {
    if (diff > tol) failed = true;
    acc.add(both);
    err += diff;
    return;
  }
  adapt<T>(r, a, m, left, f, o, depth + 1, acc, err, evals, failed);
  adapt<T>(r, m, b, right, f, o, depth + 1, acc, err, evals, failed);
}
}  // namespace detail

// Gauss-Legendre panels with adaptive bisection.  Throws QuadratureError when
// a panel cannot meet the tolerance.
template <class T, class F>
Integral<T> integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& o = {}) {
  Integral<T> out;
  if (a == b) return out;
  const Rule& r = gauss_legendre(o.order);
  CompensatedSum<T> acc;
  bool failed = false;
  const double step = (b - a) / o.initial_panels;
  for (int p = 0; p < o.initial_panels; ++p) {
    const double lo = a + p * step, hi = (p + 1 == o.initial_panels) ? b : lo + step;
    const T whole = detail::apply_rule<T>(r, lo, hi, f, out.evaluations);
    detail::adapt<T>(r, lo, hi, whole, f, o, 0, acc, out.error, out.evaluations, failed);
  }
  out.value = acc.value();
  if (failed) throw QuadratureError("adaptive quadrature did not converge", out.error);
  return out;
}

}  // namespace glide
