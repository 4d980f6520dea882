#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pamab/types.hpp"

namespace pamab {

// Dense row-major square matrix, sized for D up to a few dozen.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

  static SquareMatrix identity(std::size_t n, double scale = 1.0);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  // this += weight * x x^T
  void add_outer(double weight, std::span<const double> x);

  Vec multiply(std::span<const double> x) const;

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

// Lower-triangular factor L with L L^T = A.
class Cholesky {
 public:
  // Empty when A is not numerically positive definite.
  static std::optional<Cholesky> factor(const SquareMatrix& a);

  Vec solve(std::span<const double> b) const;

  // x^T A^{-1} x computed as |L^{-1} x|^2.
  double inverse_quadratic_form(std::span<const double> x) const;

  const SquareMatrix& lower() const { return l_; }

 private:
  explicit Cholesky(SquareMatrix l) : l_(std::move(l)) {}
  Vec forward(std::span<const double> b) const;

  SquareMatrix l_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm1(std::span<const double> x);
double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);

}  // namespace pamab
