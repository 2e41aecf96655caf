#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "glide/airy.hpp"

namespace glide {

// Dirichlet mode of -d^2/dx^2 + (1 + x) theta^2 on the half line.
struct EigenMode {
  int k = 1;
  double theta = 1.0;
  double omega = 0.0;    // k-th zero of Ai(-w)
  double l_prime = 0.0;  // L'(omega)
  double lambda = 0.0;   // theta^2 + omega theta^{4/3}
  double scale = 0.0;    // theta^{2/3}
  double norm = 0.0;     // sqrt(2 pi) theta^{1/3} / sqrt(L'(omega))
};

EigenMode make_mode(int k, double theta);
double eigenvalue(int k, double theta);

double eigenfunction(const EigenMode& m, double x);

struct ModeSample {
  double value = 0.0;
  bool underflow = false;
};
// Same as eigenfunction, but flags samples lost to the super-exponential tail.
ModeSample sample_eigenfunction(const EigenMode& m, double x);

// Right end beyond which the mode is below double precision.
double mode_cutoff(const EigenMode& m);

// A function on the half line given by a callable, its support and the
// shortest wavelength it carries.
struct SampledFunction {
  std::function<Complex(double)> f;
  double x_min = 0.0;
  double x_max = 1.0;
  double wavelength = std::numeric_limits<double>::infinity();
};

Complex mode_coefficient(const EigenMode& m, const SampledFunction& g);

class SymmetricMatrix {
public:
  explicit SymmetricMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0) {}
  int size() const { return n_; }
  double operator()(int i, int j) const { return a_[index(i, j)]; }
  double& at(int i, int j) { return a_[index(i, j)]; }

private:
  std::size_t index(int i, int j) const {
    if (i < j) std::swap(i, j);
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  }
  int n_;
  std::vector<double> a_;
};

// G_jk = <e_j, e_k> for 1 <= j, k <= k_max (0-based storage).
SymmetricMatrix gram_matrix(double theta, int k_max);

}  // namespace glide
