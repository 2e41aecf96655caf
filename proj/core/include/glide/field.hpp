#pragma once

#include <iosfwd>
#include <vector>

#include "glide/quadrature.hpp"

namespace glide {

// U sampled on a (T, X, Y) lattice, row-major with Y fastest.
class ComplexField {
public:
  ComplexField() = default;
  ComplexField(std::vector<double> t, std::vector<double> x, std::vector<double> y);

  const std::vector<double>& t() const { return t_; }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  std::size_t size() const { return v_.size(); }

  Complex& at(std::size_t it, std::size_t ix, std::size_t iy) { return v_[index(it, ix, iy)]; }
  Complex at(std::size_t it, std::size_t ix, std::size_t iy) const { return v_[index(it, ix, iy)]; }
  const std::vector<Complex>& values() const { return v_; }

  // Throws ValidationError on non-increasing axes or NaN values.
  void validate() const;

  void write_binary(std::ostream& out) const;
  static ComplexField read_binary(std::istream& in);
  // Columns T,X,Y,re,im,abs.
  void write_csv(std::ostream& out) const;

private:
  std::size_t index(std::size_t it, std::size_t ix, std::size_t iy) const {
    return (it * x_.size() + ix) * y_.size() + iy;
  }
  std::vector<double> t_, x_, y_;
  std::vector<Complex> v_;
};

// Uniform axis with n points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace glide
