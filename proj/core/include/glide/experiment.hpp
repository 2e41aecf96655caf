#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "glide/norms.hpp"
#include "glide/parametrix.hpp"

namespace glide {

// splitmix64; uniform doubles in [0, 1) that do not depend on the standard
// library's distributions.
class SeededUniform {
public:
  explicit SeededUniform(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double operator()() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

private:
  std::uint64_t state_;
};

struct Probe {
  int j = 0;
  double t = 0.0, x = 0.0, y = 0.0;
  NRange n;  // reflections kept by the parametrix
  Complex spectral, parametrix;
  double rel_err = 0.0;  // |parametrix - spectral| / |spectral|
};

struct CrosscheckReport {
  PacketParams params;
  int modes = 0;
  std::vector<Probe> probes;
  double max_rel_err = 0.0;

  // T,X,Y,N_lo,N_hi,re,im,abs,abs_spectral,rel_err
  void write_csv(std::ostream& out) const;
};

// Random probes inside the focusing window of each reflection in `js`,
// evaluated by the mode sum and by the reflection sum.
CrosscheckReport crosscheck(double lambda, int points_per_j, std::uint64_t seed, const std::vector<int>& js = {0, 1, 2},
                            const ParamRules& rules = {}, unsigned threads = 0);

}  // namespace glide
