#include "glide/norms.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "glide/parallel.hpp"
#include "glide/parametrix.hpp"

namespace glide {

namespace {

std::vector<double> trapezoid_weights(const std::vector<double>& x) {
  std::vector<double> w(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double d = 0.5 * (x[i] - x[i - 1]);
    w[i - 1] += d;
    w[i] += d;
  }
  return w;
}

void check_exponent(double e, const char* name) {
  if (!(e >= 1.0)) throw ValidationError(fmt::format("{} must lie in [1, inf]", name));
}

// (sum w_i v_i^p)^{1/p} with the largest v factored out.
double weighted_lp(const std::vector<double>& w, const std::vector<double>& v, double p) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, x);
  if (std::isinf(p) || vmax == 0.0) return vmax;
  CompensatedSum<double> s;
  for (std::size_t i = 0; i < v.size(); ++i) s.add(w[i] * std::pow(v[i] / vmax, p));
  return vmax * std::pow(s.value(), 1.0 / p);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi, int iterations, double& arg) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - g * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + g * (hi - lo);
      fd = f(d);
    }
  }
  arg = fc > fd ? c : d;
  return std::max(fc, fd);
}

}  // namespace

double spatial_norm(const std::vector<double>& x, const std::vector<double>& y, const std::vector<Complex>& v,
                    double r) {
  check_exponent(r, "r");
  if (x.size() < 2 || y.size() < 2) throw ValidationError("spatial_norm: degenerate (X, Y) axes");
  if (v.size() != x.size() * y.size()) throw ValidationError("spatial_norm: slice shape does not match axes");
  const auto wx = trapezoid_weights(x), wy = trapezoid_weights(y);
  std::vector<double> w(v.size()), a(v.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      w[i * y.size() + j] = wx[i] * wy[j];
      a[i * y.size() + j] = std::abs(v[i * y.size() + j]);
    }
  return weighted_lp(w, a, r);
}

double spatial_norm(const ComplexField& f, std::size_t it, double r) {
  const std::size_t n = f.x().size() * f.y().size();
  const auto first = f.values().begin() + static_cast<std::ptrdiff_t>(it * n);
  return spatial_norm(f.x(), f.y(), std::vector<Complex>(first, first + static_cast<std::ptrdiff_t>(n)), r);
}

double mixed_norm(const std::vector<double>& t, const std::vector<double>& slice_norms, double q, Interval window) {
  check_exponent(q, "q");
  if (t.size() != slice_norms.size()) throw ValidationError("mixed_norm: one spatial norm per T sample expected");
  if (t.empty() || !(window.lo <= window.hi)) throw ValidationError("mixed_norm: empty time window");
  constexpr double slack = 1e-12;
  if (window.lo < t.front() - slack || window.hi > t.back() + slack)
    throw ValidationError("mixed_norm: time window exceeds the sampled T range");
  std::vector<double> ts, vs;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= window.lo - slack && t[i] <= window.hi + slack) {
      ts.push_back(t[i]);
      vs.push_back(slice_norms[i]);
    }
  if (ts.empty()) throw ValidationError("mixed_norm: empty time window");
  if (std::isinf(q)) return *std::max_element(vs.begin(), vs.end());
  if (ts.size() < 2) throw ValidationError("mixed_norm: a finite q needs two T samples in the window");
  return weighted_lp(trapezoid_weights(ts), vs, q);
}

double mixed_norm(const ComplexField& f, double q, double r, Interval window) {
  std::vector<double> norms(f.t().size(), 0.0);
  for (std::size_t i = 0; i < f.t().size(); ++i)
    if (window.contains(f.t()[i])) norms[i] = spatial_norm(f, i, r);
  return mixed_norm(f.t(), norms, q, window);
}

LowerBoundWindow lower_bound_window(const PacketParams& p, int j) {
  const double lam = p.lambda();
  const double sqa = std::sqrt(1.0 + p.a);
  const double c = airy_lower_bound_constant();
  const double tau = std::min(std::sqrt(p.M / lam), std::cbrt(1.0 / lam) * p.M / (4.0 * std::cbrt(lam) / c));
  const double dx = std::pow(lam, -2.0 / 3.0);
  LowerBoundWindow w;
  w.t = {(4.0 * j - 2.0 * tau) * sqa, (4.0 * j + 2.0 * tau) * sqa};
  w.x = {1.0 - dx, 1.0 + dx};
  w.y = {4.0 * j / 3.0 - 1.0 / lam, 4.0 * j / 3.0 + 1.0 / lam};
  return w;
}

LowerBoundWindow lower_bound_window(const PacketParams& p, int j, const FieldEvaluator& u, int points) {
  if (points < 2) throw ValidationError("lower_bound_window: need at least two probes per axis");
  LowerBoundWindow w = lower_bound_window(p, j);
  const auto ts = linspace(w.t.lo, w.t.hi, points), xs = linspace(w.x.lo, w.x.hi, points),
             ys = linspace(w.y.lo, w.y.hi, points);
  double m = kInf;
  for (double t : ts)
    for (double x : xs)
      for (double y : ys) m = std::min(m, p.h * std::abs(u(t, x, y)));
  w.measured_min = m;
  return w;
}

double strichartz_quotient(const PacketParams& p, double q, double r, double lhs_norm, double data_norm) {
  if (!(data_norm > 0.0)) throw ValidationError("strichartz_quotient: data norm must be positive");
  return lhs_norm / (reduced_strichartz_rhs(q, r, p) * data_norm);
}

double strichartz_quotient(const PacketParams& p, double q, double r, const ComplexField& f, double data_norm) {
  return strichartz_quotient(p, q, r, mixed_norm(f, q, r, {0.0, p.m_a()}), data_norm);
}

void ScanResult::write_csv(std::ostream& out) const {
  out << "h,a,M,lambda,q,r,lhs,rhs,quotient\n";
  for (const auto& s : rows)
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", s.h, s.a, s.M,
                       s.lambda, s.q, s.r, s.lhs, s.rhs, s.quotient);
}

ScanResult ScanResult::read_csv(std::istream& in) {
  ScanResult out;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "h,a,M,lambda,q,r,lhs,rhs,quotient") throw ValidationError("scan CSV: unexpected header");
      header = true;
      continue;
    }
    std::istringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != 9) throw ValidationError("scan CSV: expected 9 columns");
    out.rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]});
  }
  return out;
}

std::string ScalingFit::summary() const {
  return fmt::format("slope={:.10g} stderr={:.10g} n={}", slope, stderr_slope, n);
}

ScalingFit fit_scaling(const ScanResult& scan, double min_span) {
  const auto& rows = scan.rows;
  if (rows.size() < 4) throw ValidationError("fit_scaling: at least four scan rows are needed");
  double lo = kInf, hi = 0.0;
  for (const auto& s : rows) {
    if (s.q != rows[0].q || s.r != rows[0].r) throw ValidationError("fit_scaling: rows mix different (q, r)");
    if (!(s.quotient > 0.0) || !(s.lambda > 0.0)) throw ValidationError("fit_scaling: non-positive quotient");
    lo = std::min(lo, s.lambda);
    hi = std::max(hi, s.lambda);
  }
  if (hi / lo < min_span * (1.0 - 1e-12)) throw ValidationError("fit_scaling: lambda range too narrow");
  const double n = static_cast<double>(rows.size());
  double mx = 0.0, my = 0.0;
  for (const auto& s : rows) {
    mx += std::log(s.lambda) / n;
    my += std::log(s.quotient) / n;
  }
  double sxx = 0.0, sxy = 0.0;
  for (const auto& s : rows) {
    const double dx = std::log(s.lambda) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(s.quotient) - my);
  }
  ScalingFit f;
  f.n = static_cast<int>(rows.size());
  f.slope = sxy / sxx;
  double ssr = 0.0;
  for (const auto& s : rows) {
    const double e = std::log(s.quotient) - my - f.slope * (std::log(s.lambda) - mx);
    ssr += e * e;
  }
  f.stderr_slope = std::sqrt(ssr / (n - 2.0) / sxx);
  return f;
}

std::vector<double> scan_times(const PacketParams& p, int per_window, int between) {
  if (per_window < 2 || between < 0) throw ValidationError("scan_times: bad sample counts");
  const double t_end = p.m_a();
  const double sqa = std::sqrt(1.0 + p.a);
  const double hw = 4.0 * sqa * std::sqrt(p.M / p.lambda());
  std::vector<Interval> windows;
  for (int j = 0; 4.0 * j * sqa - hw < t_end; ++j)
    windows.push_back({std::max(0.0, 4.0 * j * sqa - hw), std::min(t_end, 4.0 * j * sqa + hw)});
  std::vector<double> t{0.0, t_end};
  for (int j = 0; j < static_cast<int>(windows.size()); ++j) {
    const double c = 4.0 * j * sqa;
    for (int k = 0; k < per_window; ++k) {
      const double u = -1.0 + 2.0 * k / (per_window - 1);
      const double v = c + hw * 0.5 * (u + u * u * u);
      if (v >= 0.0 && v <= t_end) t.push_back(v);
    }
    const double gap_hi = j + 1 < static_cast<int>(windows.size()) ? windows[j + 1].lo : t_end;
    const double gap_lo = windows[j].hi;
    for (int k = 1; k <= between && gap_hi > gap_lo; ++k) t.push_back(gap_lo + (gap_hi - gap_lo) * k / (between + 1));
  }
  std::sort(t.begin(), t.end());
  std::vector<double> out;
  for (double v : t)
    if (out.empty() || v - out.back() > 1e-12 * std::max(1.0, t_end)) out.push_back(v);
  return out;
}

SupResult arc_sup(const PacketEvolution& u, double t, const SupOptions& o) {
  const PacketParams& p = u.params();
  const double lam = p.lambda();
  const double w = 4.0 * std::sqrt(2.0 * p.M / lam);
  const double dx = o.x_step * std::pow(lam, -2.0 / 3.0);
  const double dy = o.y_step / lam;
  const double y_reach = 10.0 / lam + 0.02;

  struct Branch {
    int n;
    double sigma;
  };
  std::vector<Branch> arcs;
  const NRange nr = n_truncation(p, t);
  Branch nearest{nr.lo, kInf};
  for (int n = nr.lo; n <= nr.hi; ++n) {
    const double s = stationary_sigma(t, n, lam, p.a);
    if (std::abs(s) <= 1.0 + w) arcs.push_back({n, s});
    if (std::abs(s) < std::abs(nearest.sigma)) nearest = {n, s};
  }
  if (arcs.empty()) arcs.push_back(nearest);

  double x_lo = 1.0;
  for (const auto& b : arcs) x_lo = std::min(x_lo, 1.0 - std::pow(std::abs(b.sigma) + w, 2.0));
  const long i_lo = std::max(1L, static_cast<long>(std::ceil(std::max(0.0, x_lo) / dx)));
  const long i_hi = static_cast<long>(std::floor((1.0 + 4.0 * std::pow(lam, -2.0 / 3.0)) / dx));

  auto y_candidates = [&](double x) {
    std::set<long> ks;
    const double s0 = std::sqrt(std::max(0.0, 1.0 - x));
    for (const auto& b : arcs)
      for (double s : {s0, -s0}) {
        if (std::abs(s - b.sigma) > w + 0.1) continue;
        const double yb = 4.0 * b.n / 3.0 + 2.0 * s * s * s / 3.0;
        for (long k = static_cast<long>(std::floor((yb - y_reach) / dy)); k * dy <= yb + y_reach; ++k) ks.insert(k);
      }
    return ks;
  };

  SupResult best;
  auto scan_x = [&](double x, double& y_at) {
    const auto ws = u.y_spectrum(t, x);
    double m = 0.0;
    for (long k : y_candidates(x)) {
      const double v = std::abs(PacketEvolution::sum_y(ws, u.lam_etas(), k * dy));
      if (v > m) {
        m = v;
        y_at = k * dy;
      }
    }
    return m;
  };
  for (long i = i_lo; i <= i_hi; ++i) {
    double y = 0.0;
    const double v = scan_x(i * dx, y);
    if (v > best.value) best = {v, i * dx, y};
  }
  if (best.value == 0.0 || o.refine_iterations <= 0) return best;

  // Golden refinement in X, with a golden search in Y nested inside.
  auto along_y = [&](double x, double& y_at) {
    const auto ws = u.y_spectrum(t, x);
    double arg = best.y;
    const double v = golden_max([&](double y) { return std::abs(PacketEvolution::sum_y(ws, u.lam_etas(), y)); },
                                best.y - dy, best.y + dy, o.refine_iterations, arg);
    y_at = arg;
    return v;
  };
  double y_ref = best.y;
  const double v0 = along_y(best.x, y_ref);
  if (v0 > best.value) best = {v0, best.x, y_ref};
  double x_arg = best.x;
  const double v = golden_max(
      [&](double x) {
        double y = 0.0;
        return along_y(x, y);
      },
      std::max(0.0, best.x - dx), best.x + dx, o.refine_iterations / 2, x_arg);
  if (v > best.value) {
    double y = best.y;
    best = {along_y(x_arg, y), x_arg, y};
  }
  return best;
}

std::vector<ScanResult> strichartz_scan(const ScanOptions& o) {
  if (!std::isinf(o.r)) throw ValidationError("strichartz_scan: only r = inf is supported");
  if (o.lambdas.empty() || o.qs.empty()) throw ValidationError("strichartz_scan: empty lambda or q list");
  std::vector<ScanResult> out(o.qs.size());
  for (double lam : o.lambdas) {
    const PacketParams p = params_for_lambda(lam, o.rules);
    const PacketEvolution ev(p, {}, o.spectral);
    const auto ts = scan_times(p);
    std::vector<double> sups(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) { sups[i] = arc_sup(ev, ts[i], o.sup).value; }, o.threads);
    const double data = data_l2_norm(p).norm;
    for (std::size_t k = 0; k < o.qs.size(); ++k) {
      ScanRow row{p.h, p.a, p.M, p.lambda(), o.qs[k], o.r};
      row.lhs = mixed_norm(ts, sups, o.qs[k], {0.0, p.m_a()});
      row.rhs = reduced_strichartz_rhs(o.qs[k], o.r, p) * data;
      row.quotient = row.lhs / row.rhs;
      out[k].rows.push_back(row);
    }
  }
  return out;
}

}  // namespace glide
