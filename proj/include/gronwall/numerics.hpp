#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gronwall {

using RealFunction = std::function<double(double)>;

/// Base for numerical failures that carry no better information.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_depth = 40;

  /// Throws std::invalid_argument unless both tolerances are > 0 and depth >= 1.
  void validate() const;
  QuadratureConfig tightened(double factor) const;
};

/// Subdivision depth ran out before the error target was met.
class QuadratureError : public NumericError {
 public:
  QuadratureError(double estimate, double error_bound);
  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive Simpson with Richardson extrapolation. The estimate satisfies
/// |error| <= max(abs_tol, rel_tol*|result|) for smooth integrands;
/// integrate(fn, a, a) is exactly 0. hi < lo integrates in reverse.
double integrate(const RealFunction& fn, double lo, double hi, const QuadratureConfig& cfg = {});
QuadratureResult integrate_detailed(const RealFunction& fn, double lo, double hi,
                                    const QuadratureConfig& cfg = {});

/// Bracket [lo, hi] does not contain the target value.
class BracketError : public NumericError {
 public:
  BracketError(double f_lo, double f_hi, double target);
  double f_lo, f_hi, target;
};

/// Bisection for x in [lo, hi] with fn(x) = y, fn nondecreasing. Returns the
/// midpoint of the final bracket (width <= tol), or an endpoint when it hits y
/// exactly.
double invert_monotone(const RealFunction& fn, double y, double lo, double hi, double tol);

/// Ordered abscissae with paired values.
class Grid {
 public:
  Grid() = default;
  /// Throws std::invalid_argument unless abscissae are strictly increasing and
  /// both vectors have the same length.
  Grid(std::vector<double> abscissae, std::vector<double> values);

  std::size_t size() const { return x_.size(); }
  std::span<const double> abscissae() const { return x_; }
  std::span<const double> values() const { return y_; }
  double x(std::size_t i) const { return x_[i]; }
  double y(std::size_t i) const { return y_[i]; }

  /// Piecewise-linear interpolation; clamps outside the abscissa range.
  double interpolate(double at) const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

/// n >= 2 uniformly spaced points including both endpoints.
std::vector<double> linspace(double lo, double hi, std::size_t n);
Grid sample_grid(const RealFunction& fn, double lo, double hi, std::size_t n);

/// Tabulated running integral C(x) = ∫_lo^x k(t) dt.
///
/// The adaptive partition of [lo, hi] is refined `refinement` times, each
/// sub-panel integrated with 5-point Gauss-Legendre, and C is interpolated
/// between nodes with cubic Hermite polynomials using k as the exact slope.
/// Used for the nested exp(∫_ξ^s k) factors, where every outer quadrature
/// node would otherwise need its own inner integration.
class CumulativeIntegral {
 public:
  CumulativeIntegral(const RealFunction& integrand, double lo, double hi,
                     const QuadratureConfig& cfg = {}, int refinement = 8);

  double lo() const { return nodes_.front(); }
  double hi() const { return nodes_.back(); }
  double total() const { return cumulative_.back(); }
  /// ∫_lo^x
  double from_lo(double x) const;
  /// ∫_x^hi
  double to_hi(double x) const { return total() - from_lo(x); }
  std::size_t node_count() const { return nodes_.size(); }

 private:
  std::vector<double> nodes_;
  std::vector<double> cumulative_;
  std::vector<double> slopes_;
};

}  // namespace gronwall
