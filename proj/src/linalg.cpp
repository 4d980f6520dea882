#include "pamab/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace pamab {

SquareMatrix SquareMatrix::identity(std::size_t n, double scale) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = scale;
  return m;
}

void SquareMatrix::add_outer(double weight, std::span<const double> x) {
  for (std::size_t i = 0; i < n_; ++i) {
    const double wi = weight * x[i];
    for (std::size_t j = 0; j < n_; ++j) a_[i * n_ + j] += wi * x[j];
  }
}

Vec SquareMatrix::multiply(std::span<const double> x) const {
  Vec y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += a_[i * n_ + j] * x[j];
    y[i] = s;
  }
  return y;
}

std::optional<Cholesky> Cholesky::factor(const SquareMatrix& a) {
  const std::size_t n = a.size();
  SquareMatrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    // Relative floor rejects matrices that are singular up to rounding.
    if (!(diag > 0.0) || !(diag > 1e-13 * a(j, j))) return std::nullopt;
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return Cholesky(std::move(l));
}

Vec Cholesky::forward(std::span<const double> b) const {
  const std::size_t n = l_.size();
  Vec y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= l_(i, k) * y[k];
    y[i] /= l_(i, i);
  }
  return y;
}

Vec Cholesky::solve(std::span<const double> b) const {
  if (b.size() != l_.size()) throw std::invalid_argument("Cholesky::solve: size mismatch");
  Vec x = forward(b);
  const std::size_t n = l_.size();
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) x[ii] -= l_(k, ii) * x[k];
    x[ii] /= l_(ii, ii);
  }
  return x;
}

double Cholesky::inverse_quadratic_form(std::span<const double> x) const {
  if (x.size() != l_.size()) {
    throw std::invalid_argument("Cholesky::inverse_quadratic_form: size mismatch");
  }
  const Vec y = forward(x);
  return dot(y, y);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm1(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace pamab
