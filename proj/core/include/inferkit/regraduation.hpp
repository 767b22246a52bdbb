#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace inferkit {

using BinaryFn = std::function<double(double, double)>;
using UnaryFn = std::function<double(double)>;
using TupleFn = std::function<double(std::span<const double>)>;

/// A binary operation sampled on a strictly increasing grid over [lo, hi].
/// NaN marks a pair where the operation is undefined (e.g. a + b > 1 on
/// [0, 1]); such pairs are skipped by every check. When built from a
/// callable the callable is kept and used for off-grid lookups; otherwise
/// lookups interpolate bilinearly.
class BinaryOpTable {
 public:
  /// `values` is row-major: values[i * n + j] = f(grid[i], grid[j]).
  BinaryOpTable(std::vector<double> grid, std::vector<double> values, BinaryFn exact = {});

  /// Samples `f` on the grid. With `clip`, results outside [lo, hi] become
  /// undefined instead of closure violations.
  static BinaryOpTable sample(std::vector<double> grid, const BinaryFn& f, bool clip = false);

  const std::vector<double>& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }
  double lo() const noexcept { return grid_.front(); }
  double hi() const noexcept { return grid_.back(); }
  double value(std::size_t i, std::size_t j) const { return values_[i * grid_.size() + j]; }
  bool defined(std::size_t i, std::size_t j) const;
  bool has_exact() const noexcept { return static_cast<bool>(exact_); }

  /// f(a, b) anywhere in [lo, hi]^2; NaN outside it or where undefined.
  double operator()(double a, double b) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  BinaryFn exact_;
  bool clip_ = false;
};

/// A strictly monotone map phi tabulated on increasing points, with its
/// inverse. Evaluation interpolates linearly unless an exact map is kept.
class Regraduation {
 public:
  Regraduation(std::vector<double> points, std::vector<double> phi_values, UnaryFn exact = {});
  static Regraduation from_function(std::vector<double> points, const UnaryFn& phi);

  const std::vector<double>& points() const noexcept { return points_; }
  const std::vector<double>& values() const noexcept { return values_; }
  bool increasing() const noexcept { return values_.back() > values_.front(); }

  double phi(double t) const;
  double phi_inverse(double v) const;
  /// max |phi(phi_inverse(v)) - v| over the tabulated values.
  double round_trip_error() const;

 private:
  std::vector<double> points_;
  std::vector<double> values_;
  UnaryFn exact_;
  // values_/points_ reordered so the values increase, for the inverse.
  std::vector<double> inverse_x_;
  std::vector<double> inverse_y_;
  std::vector<double> slopes_;
};

/// max |f(f(a,b),c) - f(a,f(b,c))| over grid triples where both sides are
/// defined. Throws a closure error when a defined value leaves [lo, hi].
double verify_associativity(const BinaryOpTable& f);

/// max |phi(f(a,b)) - phi(a) - phi(b)| over defined grid pairs.
double verify_regraduation(const BinaryOpTable& f, const Regraduation& r);

/// max |psi(f(a,b)) - psi(a) psi(b) / psi(e)| with psi = exp(phi) and e
/// the identity element.
double verify_multiplicative(const BinaryOpTable& f, const Regraduation& r, double identity);

/// Grid point e with f(x, e) = x (or f(e, x) = x) for every defined x.
/// Throws a structure error when there is none.
double find_identity(const BinaryOpTable& f);

struct Reconstruction {
  Regraduation regraduation;
  double identity;
  /// verify_regraduation of the result on the table's own grid.
  double residual;
};

/// Rebuilds phi from the operation alone: phi(e) = 0, phi(anchor) = 1, and
/// phi on dyadic multiples q = m / 2^depth of the anchor level obtained by
/// repeated halving (solving f(s, s) = target) and accumulation with f.
/// Non-associative operations yield a large residual rather than an error.
Reconstruction reconstruct_phi(const BinaryOpTable& f, double anchor, unsigned depth);

struct LinearFit {
  double slope;
  double intercept;
  double r_squared;
};

/// Least-squares fit of phi against basis(t) over the tabulated points.
LinearFit fit_against(const Regraduation& r, const UnaryFn& basis);

struct CauchyReport {
  bool is_additive;
  /// max |g(a, b + c) - g(a, b) - g(a, c)| over grid triples with b + c in range.
  double additivity_residual;
  /// (a, fitted coefficient of b) for each grid row; empty unless additive.
  std::vector<std::pair<double, double>> fitted;
};

/// Checks linearity of g in its second argument to 1e-9 and fits g(a, b) = k(a) b.
CauchyReport verify_cauchy_linearity(const BinaryOpTable& g);

struct PexiderSolution {
  double a;  // h(0)
  double b;  // g(0)
  bool xi_is_linear;
  std::vector<double> coefficients;
  double pexider_residual;     // max |f(x + y) - g(x) - h(y)|
  double additivity_residual;  // max |xi(x + y) - xi(x) - xi(y)|
  double fit_residual;         // max |xi(x) - sum_k c_k x_k|
};

/// Solves f(x + y) = g(x) + h(y) for n-tuples sampled on `grid`^n, which
/// must contain 0. Throws a not-pexider error when the equation fails.
PexiderSolution solve_pexider(const TupleFn& f, const TupleFn& g, const TupleFn& h,
                              std::span<const double> grid, std::size_t arity);

}  // namespace inferkit
