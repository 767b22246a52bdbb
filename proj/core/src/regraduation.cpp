#include "inferkit/regraduation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "inferkit/error.hpp"

namespace inferkit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kExactTolerance = 1e-9;

double scale_of(double x) { return std::max(1.0, std::abs(x)); }

// Index i with grid[i] <= x <= grid[i + 1], clamped to the last segment.
std::size_t segment(const std::vector<double>& xs, double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
  return std::min(i, xs.size() - 2);
}

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  const std::size_t i = segment(xs, x);
  const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
  return ys[i] + t * (ys[i + 1] - ys[i]);
}

// Fritsch-Carlson slopes: the cubic Hermite interpolant through monotone
// data stays monotone.
std::vector<double> monotone_slopes(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  std::vector<double> h(n - 1);
  std::vector<double> delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = xs[k + 1] - xs[k];
    delta[k] = (ys[k + 1] - ys[k]) / h[k];
  }
  std::vector<double> d(n, 0.0);
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double e = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (e * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::abs(e) > 3.0 * std::abs(d0)) return 3.0 * d0;
    return e;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

double hermite(const std::vector<double>& xs, const std::vector<double>& ys, const std::vector<double>& d,
               double x) {
  if (x <= xs.front()) return ys.front() + d.front() * (x - xs.front());
  if (x >= xs.back()) return ys.back() + d.back() * (x - xs.back());
  const std::size_t i = segment(xs, x);
  const double h = xs[i + 1] - xs[i];
  const double t = (x - xs[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * ys[i] + (t3 - 2 * t2 + t) * h * d[i] + (-2 * t3 + 3 * t2) * ys[i + 1] +
         (t3 - t2) * h * d[i + 1];
}

// Root of an increasing function on [lo, hi] by bisection.
double bisect_increasing(const UnaryFn& fn, double target, double lo, double hi) {
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = fn(mid);
    if (std::isnan(v)) break;
    (v < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void require_increasing_grid(const std::vector<double>& grid) {
  if (grid.size() < 2) throw Error(ErrorKind::structural, "grid needs at least two points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw Error(ErrorKind::structural, "grid must be strictly increasing");
    }
  }
}

void check_closure(const BinaryOpTable& f) {
  const double tol = 1e-12 * std::max({1.0, std::abs(f.lo()), std::abs(f.hi())});
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (!f.defined(i, j)) continue;
      const double v = f.value(i, j);
      if (v < f.lo() - tol || v > f.hi() + tol) {
        throw Error(ErrorKind::closure, "f(" + std::to_string(f.grid()[i]) + ", " +
                                            std::to_string(f.grid()[j]) + ") = " +
                                            std::to_string(v) + " leaves the grid interval");
      }
    }
  }
}

void check_monotone(const BinaryOpTable& f) {
  const std::size_t n = f.size();
  for (std::size_t fixed = 0; fixed < n; ++fixed) {
    double prev_row = kNaN;
    double prev_col = kNaN;
    for (std::size_t k = 0; k < n; ++k) {
      if (f.defined(fixed, k)) {
        const double v = f.value(fixed, k);
        if (!std::isnan(prev_row) && !(v > prev_row)) {
          throw Error(ErrorKind::monotonicity, "operation is not strictly increasing in its second argument");
        }
        prev_row = v;
      }
      if (f.defined(k, fixed)) {
        const double v = f.value(k, fixed);
        if (!std::isnan(prev_col) && !(v > prev_col)) {
          throw Error(ErrorKind::monotonicity, "operation is not strictly increasing in its first argument");
        }
        prev_col = v;
      }
    }
  }
}

}  // namespace

BinaryOpTable::BinaryOpTable(std::vector<double> grid, std::vector<double> values, BinaryFn exact)
    : grid_(std::move(grid)), values_(std::move(values)), exact_(std::move(exact)) {
  require_increasing_grid(grid_);
  if (values_.size() != grid_.size() * grid_.size()) {
    throw Error(ErrorKind::structural, "operation table must be n x n");
  }
  for (double v : values_) {
    if (std::isinf(v)) throw Error(ErrorKind::domain, "operation table holds an infinite value");
  }
}

BinaryOpTable BinaryOpTable::sample(std::vector<double> grid, const BinaryFn& f, bool clip) {
  require_increasing_grid(grid);
  const std::size_t n = grid.size();
  // Same slack as the closure check, so rounding at the ends is not clipped.
  const double slack = 1e-12 * std::max({1.0, std::abs(grid.front()), std::abs(grid.back())});
  const double lo = grid.front() - slack;
  const double hi = grid.back() + slack;
  std::vector<double> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double v = f(grid[i], grid[j]);
      if (clip && (v < lo || v > hi)) v = kNaN;
      values[i * n + j] = v;
    }
  }
  BinaryOpTable table(std::move(grid), std::move(values), f);
  table.clip_ = clip;
  return table;
}

bool BinaryOpTable::defined(std::size_t i, std::size_t j) const { return !std::isnan(value(i, j)); }

double BinaryOpTable::operator()(double a, double b) const {
  const double slack = 1e-12 * std::max({1.0, std::abs(lo()), std::abs(hi())});
  if (!(a >= lo() - slack && a <= hi() + slack && b >= lo() - slack && b <= hi() + slack)) {
    return kNaN;
  }
  if (exact_) {
    const double v = exact_(a, b);
    if (clip_ && (v < lo() - slack || v > hi() + slack)) return kNaN;
    return v;
  }
  a = std::clamp(a, lo(), hi());
  b = std::clamp(b, lo(), hi());
  const std::size_t i = segment(grid_, a);
  const std::size_t j = segment(grid_, b);
  const double s = (a - grid_[i]) / (grid_[i + 1] - grid_[i]);
  const double t = (b - grid_[j]) / (grid_[j + 1] - grid_[j]);
  const double w[4] = {(1 - s) * (1 - t), (1 - s) * t, s * (1 - t), s * t};
  const double v[4] = {value(i, j), value(i, j + 1), value(i + 1, j), value(i + 1, j + 1)};
  double out = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (w[k] == 0.0) continue;
    if (std::isnan(v[k])) return kNaN;
    out += w[k] * v[k];
  }
  return out;
}

Regraduation::Regraduation(std::vector<double> points, std::vector<double> phi_values, UnaryFn exact)
    : points_(std::move(points)), values_(std::move(phi_values)), exact_(std::move(exact)) {
  require_increasing_grid(points_);
  if (values_.size() != points_.size()) {
    throw Error(ErrorKind::structural, "regraduation needs one value per point");
  }
  const bool up = values_[1] > values_[0];
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (up ? !(values_[i] > values_[i - 1]) : !(values_[i] < values_[i - 1])) {
      throw Error(ErrorKind::monotonicity, "regraduation is not strictly monotone");
    }
  }
  slopes_ = monotone_slopes(points_, values_);
  inverse_x_ = values_;
  inverse_y_ = points_;
  if (!up) {
    std::reverse(inverse_x_.begin(), inverse_x_.end());
    std::reverse(inverse_y_.begin(), inverse_y_.end());
  }
}

Regraduation Regraduation::from_function(std::vector<double> points, const UnaryFn& phi) {
  std::vector<double> values(points.size());
  std::transform(points.begin(), points.end(), values.begin(), phi);
  return Regraduation(std::move(points), std::move(values), phi);
}

double Regraduation::phi(double t) const {
  if (exact_) return exact_(t);
  return hermite(points_, values_, slopes_, t);
}

double Regraduation::phi_inverse(double v) const {
  const auto& xs = inverse_x_;
  const auto& ys = inverse_y_;
  const double guess = interpolate(xs, ys, v);
  if (v < xs.front() || v > xs.back()) return guess;

  // Refine on the bracketing segment of phi itself.
  const std::size_t i = segment(xs, v);
  const double lo = std::min(ys[i], ys[i + 1]);
  const double hi = std::max(ys[i], ys[i + 1]);
  const double sign = increasing() ? 1.0 : -1.0;
  return bisect_increasing([&](double t) { return sign * phi(t); }, sign * v, lo, hi);
}

double Regraduation::round_trip_error() const {
  double worst = 0.0;
  for (double v : values_) worst = std::max(worst, std::abs(phi(phi_inverse(v)) - v));
  return worst;
}

double verify_associativity(const BinaryOpTable& f) {
  check_closure(f);
  const auto& g = f.grid();
  const std::size_t n = f.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!f.defined(i, j)) continue;
      const double ab = f.value(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (!f.defined(j, k)) continue;
        const double lhs = f(ab, g[k]);
        const double rhs = f(g[i], f.value(j, k));
        if (std::isnan(lhs) || std::isnan(rhs)) continue;
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  return worst;
}

double verify_regraduation(const BinaryOpTable& f, const Regraduation& r) {
  check_closure(f);
  const auto& g = f.grid();
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (!f.defined(i, j)) continue;
      const double residual = std::abs(r.phi(f.value(i, j)) - r.phi(g[i]) - r.phi(g[j]));
      if (!std::isnan(residual)) worst = std::max(worst, residual);
    }
  }
  return worst;
}

double verify_multiplicative(const BinaryOpTable& f, const Regraduation& r, double identity) {
  check_closure(f);
  const auto& g = f.grid();
  const double psi_e = std::exp(r.phi(identity));
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (!f.defined(i, j)) continue;
      const double lhs = std::exp(r.phi(f.value(i, j)));
      const double rhs = std::exp(r.phi(g[i])) * std::exp(r.phi(g[j])) / psi_e;
      if (!std::isnan(lhs - rhs)) worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

double find_identity(const BinaryOpTable& f) {
  const auto& g = f.grid();
  const std::size_t n = f.size();
  for (std::size_t e = 0; e < n; ++e) {
    bool right = true;
    bool left = true;
    // f(x, e) = x never leaves the grid, so an identity is defined everywhere.
    for (std::size_t x = 0; x < n && (right || left); ++x) {
      if (!f.defined(x, e) || std::abs(f.value(x, e) - g[x]) > kExactTolerance * scale_of(g[x])) {
        right = false;
      }
      if (!f.defined(e, x) || std::abs(f.value(e, x) - g[x]) > kExactTolerance * scale_of(g[x])) {
        left = false;
      }
    }
    if (right || left) return g[e];
  }
  throw Error(ErrorKind::structure, "operation has no identity element on the grid");
}

Reconstruction reconstruct_phi(const BinaryOpTable& f, double anchor, unsigned depth) {
  if (depth == 0 || depth > 20) throw Error(ErrorKind::domain, "depth must be between 1 and 20");
  check_closure(f);
  check_monotone(f);
  const double e = find_identity(f);
  if (!(anchor >= f.lo() && anchor <= f.hi()) || anchor == e) {
    throw Error(ErrorKind::domain, "anchor must lie in the grid interval and differ from the identity");
  }
  auto in_range = [&](double v) { return !std::isnan(v) && v >= f.lo() && v <= f.hi(); };

  // psi(1 / 2^k) by halving: f(s, s) = psi(1 / 2^(k-1)), s between e and the target.
  auto halve = [&](double target) {
    return bisect_increasing([&](double s) { return f(s, s); }, target, std::min(e, target),
                             std::max(e, target));
  };
  double unit = anchor;
  for (unsigned k = 0; k < depth; ++k) unit = halve(unit);
  const std::uint64_t per_level = std::uint64_t{1} << depth;
  const double step = 1.0 / static_cast<double>(per_level);
  const std::uint64_t max_steps = per_level << 6;

  // Halving further packs samples toward e, where the chain alone is sparse
  // whenever phi is flat at the identity.
  std::vector<std::pair<double, double>> near_identity;
  {
    double s = unit;
    double q = step;
    for (int k = 0; k < 64; ++k) {
      s = halve(s);
      q *= 0.5;
      if (std::abs(s - e) <= 1e-15 * scale_of(e)) break;
      near_identity.emplace_back(s, q);
    }
  }

  // psi(m / 2^depth) = f(psi((m - 1) / 2^depth), psi(1 / 2^depth)) until it leaves the domain.
  std::vector<std::pair<double, double>> samples{{e, 0.0}};
  samples.insert(samples.end(), near_identity.begin(), near_identity.end());
  double v = unit;
  samples.emplace_back(v, step);
  for (std::uint64_t m = 2; m < max_steps; ++m) {
    v = f(v, unit);
    if (std::isnan(v)) break;
    samples.emplace_back(v, static_cast<double>(m) * step);
    if (!in_range(v)) break;
  }

  // Beyond the identity on the side away from the anchor: psi(-q) solves f(s, psi(q)) = e.
  const bool room_below = anchor > e ? f.lo() < e : f.hi() > e;
  if (room_below) {
    const double lo = anchor > e ? f.lo() : e;
    const double hi = anchor > e ? e : f.hi();
    const double neg_unit = bisect_increasing([&](double s) { return f(s, unit); }, e, lo, hi);
    double s = neg_unit;
    double q = step;
    for (int k = 0; k < 64; ++k) {
      s = halve(s);
      q *= 0.5;
      if (std::abs(s - e) <= 1e-15 * scale_of(e)) break;
      samples.emplace_back(s, -q);
    }
    v = neg_unit;
    samples.emplace_back(v, -step);
    for (std::uint64_t m = 2; m < max_steps; ++m) {
      v = f(v, neg_unit);
      if (std::isnan(v)) break;
      samples.emplace_back(v, -static_cast<double>(m) * step);
      if (!in_range(v)) break;
    }
  }

  std::sort(samples.begin(), samples.end());
  std::vector<double> points;
  std::vector<double> values;
  // An associative f yields monotone samples; otherwise drop the ones that
  // disagree and let the residual report the failure.
  const bool up = anchor > e;
  for (const auto& [t, q] : samples) {
    if (!points.empty() && (t <= points.back() || (up ? q <= values.back() : q >= values.back()))) continue;
    points.push_back(t);
    values.push_back(q);
  }
  // Fix the scale so that phi(anchor) = 1 exactly.
  const double at_anchor = Regraduation(points, values).phi(anchor);
  for (double& q : values) q /= at_anchor;

  Regraduation r(std::move(points), std::move(values));
  const double residual = verify_regraduation(f, r);
  return {std::move(r), e, residual};
}

LinearFit fit_against(const Regraduation& r, const UnaryFn& basis) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < r.points().size(); ++i) {
    const double x = basis(r.points()[i]);
    if (!std::isfinite(x)) continue;
    xs.push_back(x);
    ys.push_back(r.values()[i]);
  }
  if (xs.size() < 2) throw Error(ErrorKind::domain, "fit needs at least two finite points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  LinearFit fit{};
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = ys[i] - fit.intercept - fit.slope * xs[i];
    ss_res += d * d;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

CauchyReport verify_cauchy_linearity(const BinaryOpTable& g) {
  const auto& grid = g.grid();
  const std::size_t n = g.size();
  CauchyReport report{true, 0.0, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!g.defined(i, j)) continue;
      for (std::size_t k = j; k < n; ++k) {
        if (!g.defined(i, k)) continue;
        const double sum = grid[j] + grid[k];
        if (sum < g.lo() || sum > g.hi()) continue;
        const double lhs = g(grid[i], sum);
        const double rhs = g.value(i, j) + g.value(i, k);
        if (std::isnan(lhs)) continue;
        const double residual = std::abs(lhs - rhs);
        report.additivity_residual = std::max(report.additivity_residual, residual);
        if (residual > kExactTolerance * std::max(scale_of(lhs), scale_of(rhs))) {
          report.is_additive = false;
        }
      }
    }
  }
  if (!report.is_additive) return report;

  for (std::size_t i = 0; i < n; ++i) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!g.defined(i, j)) continue;
      num += g.value(i, j) * grid[j];
      den += grid[j] * grid[j];
    }
    if (den > 0.0) report.fitted.emplace_back(grid[i], num / den);
  }
  return report;
}

PexiderSolution solve_pexider(const TupleFn& f, const TupleFn& g, const TupleFn& h,
                              std::span<const double> grid, std::size_t arity) {
  if (arity == 0) throw Error(ErrorKind::domain, "tuple arity must be positive");
  if (std::find(grid.begin(), grid.end(), 0.0) == grid.end()) {
    throw Error(ErrorKind::domain, "Pexider grid must contain 0");
  }
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < arity; ++k) {
    count *= grid.size();
    if (count > 4096) throw Error(ErrorKind::capacity, "too many grid tuples for the Pexider check");
  }

  std::vector<std::vector<double>> tuples;
  tuples.reserve(count);
  std::vector<std::size_t> digits(arity, 0);
  for (std::uint64_t t = 0; t < count; ++t) {
    std::vector<double> x(arity);
    for (std::size_t k = 0; k < arity; ++k) x[k] = grid[digits[k]];
    tuples.push_back(std::move(x));
    for (std::size_t k = arity; k-- > 0;) {
      if (++digits[k] < grid.size()) break;
      digits[k] = 0;
    }
  }

  const std::vector<double> zero(arity, 0.0);
  PexiderSolution out{};
  out.a = h(zero);
  out.b = g(zero);
  auto xi = [&](std::span<const double> x) { return f(x) - out.a - out.b; };

  std::vector<double> sum(arity);
  bool additive = true;
  for (const auto& x : tuples) {
    const double gx = g(x);
    for (const auto& y : tuples) {
      for (std::size_t k = 0; k < arity; ++k) sum[k] = x[k] + y[k];
      const double fs = f(sum);
      const double hy = h(y);
      const double residual = std::abs(fs - gx - hy);
      out.pexider_residual = std::max(out.pexider_residual, residual);
      if (residual > kExactTolerance * std::max(scale_of(fs), scale_of(gx) + scale_of(hy))) {
        throw Error(ErrorKind::not_pexider,
                    "f(x + y) = g(x) + h(y) fails with residual " + std::to_string(residual));
      }
      const double xs = xi(sum);
      const double split = xi(x) + xi(y);
      const double add_residual = std::abs(xs - split);
      out.additivity_residual = std::max(out.additivity_residual, add_residual);
      if (add_residual > kExactTolerance * std::max(scale_of(xs), scale_of(split))) additive = false;
    }
  }

  Eigen::MatrixXd design(static_cast<Eigen::Index>(tuples.size()), static_cast<Eigen::Index>(arity));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(tuples.size()));
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    for (std::size_t k = 0; k < arity; ++k) {
      design(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = tuples[r][k];
    }
    rhs(static_cast<Eigen::Index>(r)) = xi(tuples[r]);
  }
  const Eigen::VectorXd c = design.colPivHouseholderQr().solve(rhs);
  out.coefficients.assign(c.data(), c.data() + c.size());
  out.fit_residual = (design * c - rhs).cwiseAbs().maxCoeff();
  out.xi_is_linear = additive && out.fit_residual <= 1e-8;
  return out;
}

}  // namespace inferkit
