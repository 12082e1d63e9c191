#include "gronwall/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gronwall {

namespace {

constexpr int kInitialPanels = 8;
// Each initial panel starts split this many times; a coarse panel can sit on a
// zero of the fourth derivative and report a vanishing Simpson difference.
constexpr int kMinDepth = 2;
constexpr double kRoundoff = 8.0 * std::numeric_limits<double>::epsilon();

// A Simpson panel [a, b] with both half-panel estimates evaluated.
struct Panel {
  double a, m, b;
  double fa, fm, fb;
  double lm, rm, flm, frm;
  double left, right;
  double value;
  double error;
  int depth;
  bool final;
};

// Globally adaptive Simpson: the panels with the largest Richardson error
// estimates are split until the summed estimate meets the tolerance.
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(const RealFunction& fn, int max_depth) : fn_(fn), max_depth_(max_depth) {}

  double eval(double x) {
    const double v = fn_(x);
    ++evaluations;
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrand is not finite at x = " << x;
      throw NumericError(os.str());
    }
    return v;
  }

  std::vector<Panel> run(double lo, double hi, const QuadratureConfig& cfg) {
    const int panels = kInitialPanels << kMinDepth;
    const double width = (hi - lo) / panels;
    std::vector<double> xs(2 * panels + 1);
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = i + 1 == xs.size() ? hi : lo + 0.5 * width * static_cast<double>(i);
      fs[i] = eval(xs[i]);
    }
    for (int k = 0; k < panels; ++k) {
      const std::size_t i = 2 * static_cast<std::size_t>(k);
      const double whole = (xs[i + 2] - xs[i]) / 6.0 * (fs[i] + 4.0 * fs[i + 1] + fs[i + 2]);
      add(make(xs[i], fs[i], xs[i + 1], fs[i + 1], xs[i + 2], fs[i + 2], whole, kMinDepth));
    }

    while (!heap_.empty()) {
      double value = 0.0;
      double error = 0.0;
      for (const auto* list : {&heap_, &done_}) {
        for (const Panel& p : *list) {
          value += p.value;
          error += p.error;
        }
      }
      const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(value));
      if (error <= tol) break;
      // Split the worst panels in one batch until the removed error covers the excess.
      double removed = 0.0;
      while (!heap_.empty() && removed < error - 0.5 * tol) {
        std::pop_heap(heap_.begin(), heap_.end(), by_error);
        Panel worst = heap_.back();
        heap_.pop_back();
        removed += worst.error;
        if (worst.depth >= max_depth_) {
          worst.final = true;
          done_.push_back(worst);
          exhausted = true;
        } else {
          add(make(worst.a, worst.fa, worst.lm, worst.flm, worst.m, worst.fm, worst.left,
                   worst.depth + 1));
          add(make(worst.m, worst.fm, worst.rm, worst.frm, worst.b, worst.fb, worst.right,
                   worst.depth + 1));
        }
      }
    }
    std::vector<Panel> all = std::move(done_);
    all.insert(all.end(), heap_.begin(), heap_.end());
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    return all;
  }

  std::size_t evaluations = 0;
  bool exhausted = false;

 private:
  static bool by_error(const Panel& x, const Panel& y) { return x.error < y.error; }

  Panel make(double a, double fa, double m, double fm, double b, double fb, double whole,
             int depth) {
    Panel p{};
    p.a = a;
    p.m = m;
    p.b = b;
    p.fa = fa;
    p.fm = fm;
    p.fb = fb;
    p.lm = 0.5 * (a + m);
    p.rm = 0.5 * (m + b);
    p.flm = eval(p.lm);
    p.frm = eval(p.rm);
    p.left = (m - a) / 6.0 * (fa + 4.0 * p.flm + fm);
    p.right = (b - m) / 6.0 * (fm + 4.0 * p.frm + fb);
    const double diff = p.left + p.right - whole;
    p.value = p.left + p.right + diff / 15.0;
    p.error = std::fabs(diff) / 15.0;
    p.depth = depth;
    const bool unsplittable = !(p.lm > a && p.lm < m && p.rm > m && p.rm < b);
    p.final = unsplittable ||
              std::fabs(diff) <= kRoundoff * (std::fabs(p.left) + std::fabs(p.right));
    return p;
  }

  void add(const Panel& p) {
    if (p.final) {
      done_.push_back(p);
      return;
    }
    heap_.push_back(p);
    std::push_heap(heap_.begin(), heap_.end(), by_error);
  }

  const RealFunction& fn_;
  int max_depth_;
  std::vector<Panel> heap_;
  std::vector<Panel> done_;
};

QuadratureResult integrate_forward(const RealFunction& fn, double lo, double hi,
                                   const QuadratureConfig& cfg, std::vector<double>* cuts) {
  cfg.validate();
  QuadratureResult result;
  if (lo == hi) return result;

  AdaptiveSimpson simpson(fn, cfg.max_depth);
  for (const Panel& p : simpson.run(lo, hi, cfg)) {
    result.value += p.value;
    result.error_bound += p.error;
    if (cuts) {
      cuts->push_back(p.m);
      cuts->push_back(p.b);
    }
  }
  result.evaluations = simpson.evaluations;
  const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(result.value));
  if (simpson.exhausted && result.error_bound > tol) {
    throw QuadratureError(result.value, result.error_bound);
  }
  return result;
}

// 5-point Gauss-Legendre on [a, b].
double gauss_legendre5(const RealFunction& fn, double a, double b) {
  static constexpr double node[3] = {0.0, 0.5384693101056831, 0.9061798459386640};
  static constexpr double weight[3] = {0.5688888888888889, 0.4786286704993665,
                                       0.2369268850561891};
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = weight[0] * fn(c);
  for (int i = 1; i < 3; ++i) {
    s += weight[i] * (fn(c - h * node[i]) + fn(c + h * node[i]));
  }
  return s * h;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
  if (max_depth < 1) throw std::invalid_argument("quadrature depth must be at least 1");
}

QuadratureConfig QuadratureConfig::tightened(double factor) const {
  QuadratureConfig c = *this;
  c.abs_tol /= factor;
  c.rel_tol /= factor;
  return c;
}

QuadratureError::QuadratureError(double estimate, double error_bound)
    : NumericError("quadrature depth exhausted (estimate " + std::to_string(estimate) +
                   ", error bound " + std::to_string(error_bound) + ")"),
      estimate_(estimate),
      error_bound_(error_bound) {}

QuadratureResult integrate_detailed(const RealFunction& fn, double lo, double hi,
                                    const QuadratureConfig& cfg) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("integration limits must be finite");
  }
  if (hi < lo) {
    QuadratureResult r = integrate_forward(fn, hi, lo, cfg, nullptr);
    r.value = -r.value;
    return r;
  }
  return integrate_forward(fn, lo, hi, cfg, nullptr);
}

double integrate(const RealFunction& fn, double lo, double hi, const QuadratureConfig& cfg) {
  return integrate_detailed(fn, lo, hi, cfg).value;
}

BracketError::BracketError(double lo_value, double hi_value, double y)
    : NumericError([&] {
        std::ostringstream os;
        os << "value " << y << " is not bracketed: fn(lo) = " << lo_value
           << ", fn(hi) = " << hi_value;
        return os.str();
      }()),
      f_lo(lo_value),
      f_hi(hi_value),
      target(y) {}

double invert_monotone(const RealFunction& fn, double y, double lo, double hi, double tol) {
  if (!(lo <= hi)) throw std::invalid_argument("invert_monotone: lo > hi");
  if (!(tol > 0.0)) throw std::invalid_argument("invert_monotone: tol must be positive");
  const double f_lo = fn(lo);
  const double f_hi = fn(hi);
  if (!(f_lo <= y && y <= f_hi)) throw BracketError(f_lo, f_hi, y);
  if (f_lo == y) return lo;
  if (f_hi == y) return hi;
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (fn(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

Grid::Grid(std::vector<double> abscissae, std::vector<double> values)
    : x_(std::move(abscissae)), y_(std::move(values)) {
  if (x_.size() != y_.size()) throw std::invalid_argument("grid: length mismatch");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw std::invalid_argument("grid: abscissae must be strictly increasing");
    }
  }
}

double Grid::interpolate(double at) const {
  if (x_.empty()) throw std::logic_error("grid: interpolate on empty grid");
  if (at <= x_.front()) return y_.front();
  if (at >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), at);
  const std::size_t j = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double t = (at - x_[j]) / (x_[j + 1] - x_[j]);
  return y_[j] + t * (y_[j + 1] - y_[j]);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least 2 points");
  std::vector<double> xs(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + step * static_cast<double>(i);
  xs.back() = hi;
  return xs;
}

Grid sample_grid(const RealFunction& fn, double lo, double hi, std::size_t n) {
  std::vector<double> xs = linspace(lo, hi, n);
  std::vector<double> ys(n);
  std::transform(xs.begin(), xs.end(), ys.begin(), fn);
  return Grid(std::move(xs), std::move(ys));
}

CumulativeIntegral::CumulativeIntegral(const RealFunction& integrand, double lo, double hi,
                                       const QuadratureConfig& cfg, int refinement) {
  if (!(lo <= hi)) throw std::invalid_argument("cumulative integral: lo > hi");
  if (refinement < 1) throw std::invalid_argument("cumulative integral: refinement < 1");
  nodes_.push_back(lo);
  cumulative_.push_back(0.0);
  slopes_.push_back(integrand(lo));
  if (lo == hi) return;

  std::vector<double> cuts;
  integrate_forward(integrand, lo, hi, cfg, &cuts);
  double left = lo;
  double running = 0.0;
  for (const double right : cuts) {
    if (!(right > left)) continue;
    const double step = (right - left) / refinement;
    for (int k = 1; k <= refinement; ++k) {
      const double a = left + step * (k - 1);
      const double b = k == refinement ? right : left + step * k;
      running += gauss_legendre5(integrand, a, b);
      nodes_.push_back(b);
      cumulative_.push_back(running);
      slopes_.push_back(integrand(b));
    }
    left = right;
  }
}

double CumulativeIntegral::from_lo(double x) const {
  if (x <= nodes_.front()) return 0.0;
  if (x >= nodes_.back()) return cumulative_.back();
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  const double h = nodes_[j + 1] - nodes_[j];
  const double t = (x - nodes_[j]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * cumulative_[j] + (t3 - 2 * t2 + t) * h * slopes_[j] +
         (-2 * t3 + 3 * t2) * cumulative_[j + 1] + (t3 - t2) * h * slopes_[j + 1];
}

}  // namespace gronwall
