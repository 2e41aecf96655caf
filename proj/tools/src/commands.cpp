#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "glide/airy.hpp"
#include "glide/experiment.hpp"
#include "glide/exponents.hpp"
#include "glide/field.hpp"
#include "glide/norms.hpp"
#include "glide/parallel.hpp"
#include "glide/parametrix.hpp"
#include "glide/propagator.hpp"

namespace glide::cli {

namespace {

unsigned threads(const Config& c) { return static_cast<unsigned>(c.integer("threads", 0)); }

ParamRules rules_of(const Config& c) {
  ParamRules r;
  r.a_rule = parse_a_rule(c.str("a_rule", "h^(1/3)"));
  r.m_rule = parse_m_rule(c.str("M_rule", "lambda^(1/3)"));
  r.eps = c.num("eps", 0.0);
  return r;
}

PacketParams params_of(const Config& c) {
  auto kv = c.values();
  kv.try_emplace("a_rule", kv.count("a") ? "given" : "h^(1/3)");
  kv.try_emplace("M_rule", kv.count("M") ? "given" : "lambda^(1/3)");
  return params_from_config(kv);
}

struct Lattice {
  std::vector<double> t, x, y;
};

Lattice lattice_of(const Config& c, const PacketParams& p) {
  const Grid g = parse_grid(c.str("grid"));
  const double reflections = std::floor(p.m_a() / (4.0 * std::sqrt(1.0 + p.a)));
  const Range t = parse_range(c.str("t_range", fmt::format("0:{}", p.m_a())));
  const Range x = parse_range(c.str("x_range", "0:1.2"));
  const Range y = parse_range(c.str("y_range", fmt::format("-0.25:{}", 4.0 * reflections / 3.0 + 0.25)));
  if (x.lo < 0.0) throw ValidationError("x_range must stay in X >= 0");
  auto axis = [](Range r, int n) {
    if (n > 1 && !(r.hi > r.lo)) throw ValidationError("a range with several points needs lo < hi");
    return linspace(r.lo, r.hi, n);
  };
  return {axis(t, g.nt), axis(x, g.nx), axis(y, g.ny)};
}

std::string field_summary(const ComplexField& f, const PacketParams& p) {
  double m = 0.0;
  for (const Complex& z : f.values()) m = std::max(m, std::abs(z));
  return fmt::format("h={:.6g} a={:.6g} M={:.6g} lambda={:.6g} points={} max_abs={:.6e}", p.h, p.a, p.M, p.lambda(),
                     f.size(), m);
}

}  // namespace

Output airy_table(const Config& c) {
  const long k = c.integer("k_max", 50);
  if (k < 1 || k > kMaxZeroIndex) throw ValidationError("k_max out of range");
  const PhaseTable table(static_cast<int>(k));
  const auto bad = table.invariant_violations();
  if (!bad.empty()) throw ConvergenceError("phase table invariant violated: " + bad.front());
  std::ostringstream out;
  table.write_csv(out);
  return {out.str(), fmt::format("rows={} omega_max={:.12g}", table.size(), table.omega(table.size()))};
}

Output verify_poisson(const Config& c) {
  const BumpFunction bump{c.num("center"), c.num("width"), c.num("plateau", 0.5)};
  const SmoothWindow w = bump.window();
  if (w.lo() < 0.0) throw ValidationError("the bump must sit on w > 0");
  const long n_max = c.integer("n_max", 400);
  if (n_max < 0) throw ValidationError("n_max must be non-negative");
  const int k = static_cast<int>(2.0 / (3.0 * std::numbers::pi) * std::pow(w.hi(), 1.5)) + 8;
  const auto table = shared_phase_table(k);
  const PoissonSum lhs = poisson_lhs(w, static_cast<int>(n_max));
  const double rhs = poisson_rhs(w, *table);
  int zeros = 0;
  for (const PhaseRow& r : table->rows()) zeros += r.omega > w.lo() && r.omega < w.hi();
  const double diff = std::abs(lhs.value - rhs);
  std::string body = "center,width,n_max,zeros,lhs_re,lhs_im,rhs,abs_diff\n";
  body += fmt::format("{:.17g},{:.17g},{},{},{:.17g},{:.17g},{:.17g},{:.17g}\n", bump.center, bump.half_width, n_max,
                      zeros, lhs.value.real(), lhs.value.imag(), rhs, diff);
  return {body, fmt::format("zeros={} lhs={:.12g} rhs={:.12g} abs_diff={:.3e}", zeros, lhs.value.real(), rhs, diff)};
}

Output propagate(const Config& c) {
  const PacketParams p = params_of(c);
  const Lattice l = lattice_of(c, p);
  SpectralOptions so;
  so.threads = threads(c);
  so.prune_tol = c.num("prune_tol", so.prune_tol);
  const PacketEvolution ev(p, {}, so);
  const ComplexField f = evolve_full(ev, l.t, l.x, l.y);
  std::ostringstream out;
  f.write_csv(out);
  return {out.str(), field_summary(f, p) + fmt::format(" modes={}", ev.mode_count())};
}

Output parametrix(const Config& c) {
  const PacketParams p = params_of(c);
  const Lattice l = lattice_of(c, p);
  ComplexField f(l.t, l.x, l.y);
  const std::size_t nx = l.x.size(), ny = l.y.size();
  parallel_for(
      f.size(),
      [&](std::size_t i) {
        const std::size_t it = i / (nx * ny), ix = (i / ny) % nx, iy = i % ny;
        f.at(it, ix, iy) = parametrix_u(l.t[it], l.x[ix], l.y[iy], p);
      },
      threads(c));
  std::ostringstream out;
  f.write_csv(out);
  return {out.str(), field_summary(f, p)};
}

Output crosscheck(const Config& c) {
  std::vector<int> js;
  for (double j : c.has("reflections") ? c.list("reflections") : std::vector<double>{0, 1, 2})
    js.push_back(static_cast<int>(j));
  const CrosscheckReport r = glide::crosscheck(c.num("lambda", 50.0), static_cast<int>(c.integer("points", 10)),
                                               c.seed(), js, rules_of(c), threads(c));
  std::ostringstream body;
  r.write_csv(body);
  body << fmt::format("# max_rel_err={:.6e}\n", r.max_rel_err);
  const PacketParams& p = r.params;
  return {body.str(), fmt::format("h={:.6g} a={:.6g} M={:.6g} lambda={:.6g} probes={} modes={} max_rel_err={:.3e}", p.h,
                            p.a, p.M, p.lambda(), r.probes.size(), r.modes, r.max_rel_err)};
}

Output strichartz_scan(const Config& c) {
  ScanOptions o;
  o.qs = c.list("q");
  o.r = c.num("r", kInf);
  o.lambdas = c.has("lambdas") ? c.list("lambdas") : std::vector<double>{50, 70.7, 100, 141.4, 200, 282.8, 400};
  o.rules = rules_of(c);
  o.threads = threads(c);
  o.spectral.threads = o.threads;
  const auto scans = glide::strichartz_scan(o);
  std::ostringstream out;
  ScanResult all;
  for (const auto& s : scans) all.rows.insert(all.rows.end(), s.rows.begin(), s.rows.end());
  all.write_csv(out);
  std::string summary;
  for (std::size_t k = 0; k < scans.size(); ++k) {
    std::string fit = "fit unavailable";
    if (scans[k].rows.size() >= 4) {
      try {
        fit = fit_scaling(scans[k]).summary();
      } catch (const ValidationError& e) {
        fit = e.what();
      }
    }
    const std::string line = fmt::format("q={:g} {}", o.qs[k], fit);
    out << "# " << line << "\n";
    summary += (k ? "\n" : "") + line;
  }
  return {out.str(), summary};
}

Output exponents(const Config& c) {
  const std::string path = c.str("pairs");
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot read pairs file {}", path));
  const long d_default = c.integer("d", 2);
  std::string body = "q,r,d,beta,alpha";
  for (Region g : all_regions()) body += "," + to_string(g);
  body += ",thm1_condition,thm2_condition\n";
  auto cell = [](auto&& f) -> std::string {
    try {
      return f();
    } catch (const DomainError&) {
      return "n/a";
    }
  };
  std::string line;
  int rows = 0, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    for (char& ch : line)
      if (ch == ',' || ch == '\t') ch = ' ';
    std::istringstream ss(line);
    std::string qs, rs;
    long d = d_default;
    if (!(ss >> qs)) continue;
    if (!(ss >> rs)) throw ValidationError(fmt::format("{}:{}: expected 'q r [d]'", path, lineno));
    if (std::string ds; ss >> ds) d = std::stol(ds);
    const StrichartzPair p = StrichartzPair::parse(qs, rs, static_cast<int>(d));
    body += fmt::format("{},{},{},{}", p.q_string(), p.r_string(), p.d, to_string(beta(p)));
    body += "," + cell([&] { return to_string(alpha(p)); });
    for (Region g : all_regions()) body += "," + cell([&] { return to_string(region(g, p).slack); });
    body += "," + cell([&] { return std::string(thm1_condition(p) ? "true" : "false"); });
    body += "," + cell([&] { return std::string(thm2_condition(p) ? "true" : "false"); });
    body += "\n";
    ++rows;
  }
  return {body, fmt::format("pairs={}", rows)};
}

}  // namespace glide::cli
