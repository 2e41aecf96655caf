#include "glide/experiment.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "glide/parallel.hpp"

namespace glide {

std::uint64_t SeededUniform::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CrosscheckReport crosscheck(double lambda, int points_per_j, std::uint64_t seed, const std::vector<int>& js,
                            const ParamRules& rules, unsigned threads) {
  if (points_per_j < 1) throw ValidationError("crosscheck: need at least one probe per reflection");
  CrosscheckReport r;
  r.params = params_for_lambda(lambda, rules);
  SeededUniform rng(seed);
  for (int j : js) {
    if (j < 0) throw ValidationError("crosscheck: reflection index must be non-negative");
    const LowerBoundWindow w = lower_bound_window(r.params, j);
    for (int i = 0; i < points_per_j; ++i) {
      Probe p;
      p.j = j;
      p.t = rng(w.t.lo, w.t.hi);
      p.x = rng(w.x.lo, w.x.hi);
      p.y = rng(w.y.lo, w.y.hi);
      r.probes.push_back(p);
    }
  }
  SpectralOptions so;
  so.threads = threads;
  const PacketEvolution ev(r.params, {}, so);
  r.modes = ev.mode_count();
  parallel_for(
      r.probes.size(),
      [&](std::size_t i) {
        Probe& p = r.probes[i];
        p.spectral = ev(p.t, p.x, p.y);
        p.n = n_truncation(r.params, p.t);
        p.parametrix = parametrix_u(p.t, p.x, p.y, r.params, {}, p.n);
        p.rel_err = std::abs(p.parametrix - p.spectral) / std::abs(p.spectral);
      },
      threads);
  for (const Probe& p : r.probes) r.max_rel_err = std::max(r.max_rel_err, p.rel_err);
  return r;
}

void CrosscheckReport::write_csv(std::ostream& out) const {
  out << "T,X,Y,N_lo,N_hi,re,im,abs,abs_spectral,rel_err\n";
  for (const Probe& p : probes)
    out << fmt::format("{:.17g},{:.17g},{:.17g},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.6e}\n", p.t, p.x, p.y, p.n.lo,
                       p.n.hi, p.parametrix.real(), p.parametrix.imag(), std::abs(p.parametrix), std::abs(p.spectral),
                       p.rel_err);
}

}  // namespace glide
