#include "gronwall/verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace gronwall {

namespace {

std::vector<double> sample(const Expr& e, const std::vector<double>& xs) {
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = e(xs[i]);
  return ys;
}

// Trapezoid-rule running integral of nodal values on a uniform grid.
std::vector<double> cumulative(const std::vector<double>& g, double h) {
  std::vector<double> c(g.size(), 0.0);
  for (std::size_t j = 1; j < g.size(); ++j) c[j] = c[j - 1] + 0.5 * h * (g[j - 1] + g[j]);
  return c;
}

// ∫₀^{f(δ_i)} of the piecewise-linear interpolant, for each grid point i.
class RetardedReader {
 public:
  RetardedReader(const Expr& f, const std::vector<double>& xs, double h) : h_(h) {
    const double top = xs.back();
    cell_.resize(xs.size());
    frac_.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double fi = f(xs[i]);
      if (!(fi >= 0.0) || fi > top * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "retarded argument f(" << xs[i] << ") = " << fi << " leaves [0, " << top << "]";
        throw DomainError(os.str());
      }
      const double s = std::min(fi / h, static_cast<double>(xs.size() - 1));
      std::size_t j = static_cast<std::size_t>(s);
      if (j + 1 >= xs.size()) j = xs.size() - 2;
      cell_[i] = j;
      frac_[i] = s - static_cast<double>(j);
    }
  }

  double integral(std::size_t i, const std::vector<double>& g, const std::vector<double>& c) const {
    const std::size_t j = cell_[i];
    const double t = frac_[i];
    return c[j] + h_ * t * (g[j] + 0.5 * t * (g[j + 1] - g[j]));
  }

 private:
  double h_;
  std::vector<std::size_t> cell_;
  std::vector<double> frac_;
};

struct Discretization {
  Discretization(const InequalityProblem& p, std::size_t n) {
    if (n < 64) throw std::invalid_argument("saturated solvers need at least 64 grid points");
    if (!(p.horizon > 0.0)) throw DomainError("horizon must be positive");
    x = linspace(0.0, p.horizon, n);
    h = p.horizon / static_cast<double>(n - 1);
    a = sample(p.a, x);
    phi = sample(p.phi, x);
    for (int k = 1; k <= 6; ++k) psi[k - 1] = sample(p.kernel(k), x);
  }

  std::vector<double> x;
  double h = 0.0;
  std::vector<double> a;
  std::vector<double> phi;
  std::array<std::vector<double>, 6> psi;

  const std::vector<double>& kernel(int k) const { return psi[static_cast<std::size_t>(k - 1)]; }
};

// u and u′ (the latter only for integro-differential forms).
struct Iterate {
  std::vector<double> u;
  std::vector<double> du;
};

template <typename Sweep>
Trajectory picard(const Discretization& d, bool with_derivative, const SolverOptions& opts,
                  Sweep sweep) {
  const std::size_t n = d.x.size();
  Iterate cur{std::vector<double>(n, 0.0), with_derivative ? std::vector<double>(n, 0.0)
                                                           : std::vector<double>{}};
  std::vector<double> history;
  for (int k = 1; k <= opts.max_sweeps; ++k) {
    Iterate next = sweep(cur);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = next.u[i];
      if (std::isnan(v)) {
        std::ostringstream os;
        os << "saturated right-hand side is undefined at delta = " << d.x[i];
        throw NumericError(os.str());
      }
      if (!(v <= opts.blowup_threshold)) {
        const double last = d.x[i == 0 ? 0 : i - 1];
        std::ostringstream os;
        os << "blow-up detected: u exceeds " << opts.blowup_threshold << " at delta = " << d.x[i]
           << " (last finite delta " << last << ")";
        throw BlowUpError(os.str(), last);
      }
    }
    double change = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      change = std::max(change, std::fabs(next.u[i] - cur.u[i]));
      scale = std::max(scale, std::fabs(next.u[i]));
      if (with_derivative) change = std::max(change, std::fabs(next.du[i] - cur.du[i]));
    }
    history.push_back(change);
    cur = std::move(next);
    if (opts.observer) opts.observer(k, cur.u);
    if (change <= opts.tol * scale) {
      Trajectory t;
      t.grid = Grid(d.x, cur.u);
      t.derivative = std::move(cur.du);
      t.iterations = k;
      t.residual = change;
      t.residual_history = std::move(history);
      return t;
    }
  }
  std::ostringstream os;
  os << "Picard iteration did not converge in " << opts.max_sweeps
     << " sweeps; residuals:";
  for (double r : history) os << ' ' << r;
  throw ConvergenceError(os.str(), std::move(history));
}

double root(double base, double exponent) { return std::pow(base, exponent); }

}  // namespace

Trajectory solve_saturated_integral(const InequalityProblem& p, IntegralForm form, std::size_t n,
                                    const SolverOptions& opts) {
  const Discretization d(p, n);
  const RetardedReader reader(p.f, d.x, d.h);
  const GammaParams& g = p.gamma;
  std::vector<double> g1(n), g2(n), nested(n);

  auto sweep = [&](const Iterate& it) {
    const auto& u = it.u;
    switch (form) {
      case IntegralForm::outer_power:
        for (std::size_t j = 0; j < n; ++j) nested[j] = d.kernel(3)[j] * std::pow(u[j], g.g3);
        break;
      case IntegralForm::additive:
        for (std::size_t j = 0; j < n; ++j) {
          nested[j] = d.kernel(4)[j] * std::pow(u[j], g.g2) + d.kernel(5)[j];
        }
        break;
      case IntegralForm::factored:
        for (std::size_t j = 0; j < n; ++j) nested[j] = d.kernel(3)[j] * std::pow(u[j], g.g2);
        break;
    }
    const std::vector<double> inner = cumulative(nested, d.h);
    for (std::size_t j = 0; j < n; ++j) {
      switch (form) {
        case IntegralForm::outer_power:
          g1[j] = d.kernel(1)[j] * u[j];
          g2[j] = d.kernel(2)[j] * root(std::pow(u[j], g.g2) + inner[j], 1.0 / g.g2);
          break;
        case IntegralForm::additive:
          g1[j] = d.kernel(1)[j] * u[j] + d.kernel(2)[j];
          g2[j] = d.kernel(3)[j] * root(std::pow(u[j], g.g1) + inner[j], 1.0 / g.g1) +
                  d.kernel(6)[j];
          break;
        case IntegralForm::factored:
          g1[j] = d.kernel(1)[j] * u[j];
          g2[j] = d.kernel(2)[j] * root(std::pow(u[j], g.g1) + inner[j], 1.0 / g.g2);
          break;
      }
    }
    const std::vector<double> c1 = cumulative(g1, d.h);
    const std::vector<double> c2 = cumulative(g2, d.h);
    Iterate next{std::vector<double>(n), {}};
    for (std::size_t i = 0; i < n; ++i) {
      const double r = d.a[i] + reader.integral(i, g1, c1) + reader.integral(i, g2, c2);
      switch (form) {
        case IntegralForm::outer_power: next.u[i] = root(r, g.g4 / g.g1); break;
        case IntegralForm::additive: next.u[i] = root(r, 1.0 / g.g1); break;
        case IntegralForm::factored: next.u[i] = root(d.phi[i] * r, 1.0 / g.g1); break;
      }
    }
    return next;
  };
  return picard(d, false, opts, sweep);
}

Trajectory solve_saturated_integrodiff(const InequalityProblem& p, IntegrodiffForm form,
                                       std::size_t n, const SolverOptions& opts) {
  const Discretization d(p, n);
  const RetardedReader reader(p.f, d.x, d.h);
  const GammaParams& g = p.gamma;
  std::vector<double> g1(n), g2(n), nested(n);

  auto sweep = [&](const Iterate& it) {
    const auto& u = it.u;
    const auto& du = it.du;
    for (std::size_t j = 0; j < n; ++j) {
      nested[j] = d.kernel(3)[j] *
                  (form == IntegrodiffForm::u_power ? std::pow(u[j], g.g3) : u[j]);
    }
    const std::vector<double> inner = cumulative(nested, d.h);
    for (std::size_t j = 0; j < n; ++j) {
      g1[j] = d.kernel(1)[j] * u[j];
      g2[j] = form == IntegrodiffForm::u_power
                  ? d.kernel(2)[j] * root(std::pow(u[j], g.g2) + inner[j], 1.0 / g.g2)
                  : d.kernel(2)[j] * root(std::pow(du[j], g.g2) + inner[j], 1.0 / g.g3);
    }
    const std::vector<double> c1 = cumulative(g1, d.h);
    const std::vector<double> c2 = cumulative(g2, d.h);
    Iterate next;
    next.du.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = d.a[i] + reader.integral(i, g1, c1) + reader.integral(i, g2, c2);
      next.du[i] = root(r, 1.0 / g.g1);
    }
    next.u = cumulative(next.du, d.h);
    return next;
  };
  return picard(d, true, opts, sweep);
}

Trajectory solve_saturated(const InequalityProblem& p, Theorem theorem, std::size_t n,
                           const SolverOptions& opts) {
  switch (theorem) {
    case Theorem::integrodiff_power:
      return solve_saturated_integrodiff(p, IntegrodiffForm::u_power, n, opts);
    case Theorem::integrodiff_mixed:
      return solve_saturated_integrodiff(p, IntegrodiffForm::mixed, n, opts);
    case Theorem::outer_power:
      return solve_saturated_integral(p, IntegralForm::outer_power, n, opts);
    case Theorem::additive: return solve_saturated_integral(p, IntegralForm::additive, n, opts);
    case Theorem::factored: return solve_saturated_integral(p, IntegralForm::factored, n, opts);
  }
  throw std::invalid_argument("unknown theorem");
}

std::string_view dominance_mode_name(DominanceMode m) {
  return m == DominanceMode::strict ? "strict" : "report-only";
}

std::optional<DominanceMode> dominance_mode_from_name(std::string_view name) {
  if (name == "strict") return DominanceMode::strict;
  if (name == "report-only" || name == "report_only") return DominanceMode::report_only;
  return std::nullopt;
}

DominanceMode default_dominance_mode(Theorem t) {
  return is_integrodifferential(t) ? DominanceMode::report_only : DominanceMode::strict;
}

DominanceReport check_dominance(const Trajectory& t, const BoundCurve& b, DominanceMode mode) {
  const auto& tx = t.grid.abscissae();
  const auto& bx = b.grid.abscissae();
  if (tx.size() != bx.size()) throw std::invalid_argument("dominance: grid sizes differ");
  for (std::size_t i = 0; i < tx.size(); ++i) {
    if (std::fabs(tx[i] - bx[i]) > 1e-12 * std::max(1.0, std::fabs(tx[i]))) {
      throw std::invalid_argument("dominance: abscissae differ");
    }
  }
  if (tx.empty()) throw std::invalid_argument("dominance: empty grid");

  DominanceReport r;
  r.mode = mode;
  r.abscissae.assign(tx.begin(), tx.end());
  double scale = 1.0;
  for (double v : b.grid.values()) scale = std::max(scale, std::fabs(v));
  r.slack = 1e-8 * scale;
  r.margins.resize(tx.size());
  r.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tx.size(); ++i) {
    r.margins[i] = b.grid.values()[i] - t.grid.values()[i];
    if (r.margins[i] < r.min_margin) {
      r.min_margin = r.margins[i];
      r.min_at = tx[i];
    }
    if (!r.first_violation && r.margins[i] < -r.slack) r.first_violation = tx[i];
  }
  r.verdict = r.first_violation ? Verdict::violated : Verdict::holds;
  return r;
}

std::string_view reduction_name(Reduction r) {
  switch (r) {
    case Reduction::t1_to_bellman: return "t1_to_bellman";
    case Reduction::t4_to_pachpatte: return "t4_to_pachpatte";
    case Reduction::t5_to_bellman: return "t5_to_bellman";
    case Reduction::t1_to_bainov: return "t1_to_bainov";
    case Reduction::t4_to_bainov: return "t4_to_bainov";
    case Reduction::t5_to_pachpatte: return "t5_to_pachpatte";
  }
  return "?";
}

std::string_view reduction_label(Reduction r) {
  switch (r) {
    case Reduction::t1_to_bellman: return "outer_power vs Bellman(c, w)";
    case Reduction::t4_to_pachpatte: return "additive vs Pachpatte(c, w, w~)";
    case Reduction::t5_to_bellman: return "factored vs Bellman(c, w)";
    case Reduction::t1_to_bainov: return "outer_power vs Bellman(c, w + w~), merged kernel";
    case Reduction::t4_to_bainov: return "additive vs Bellman(c, w + w~), merged kernel";
    case Reduction::t5_to_pachpatte: return "factored vs Pachpatte(c, w, w~)";
  }
  return "?";
}

ReductionInstance default_instance(Reduction r) {
  const Expr one = Expr::constant(1.0);
  const Expr zero = Expr::constant(0.0);
  switch (r) {
    case Reduction::t1_to_bellman: return {2.0, parse_expr("1 + x"), zero};
    case Reduction::t4_to_pachpatte: return {1.0, one, one};
    case Reduction::t5_to_bellman: return {1.5, parse_expr("0.5 + 2*x"), zero};
    case Reduction::t1_to_bainov: return {1.5, parse_expr("1 + x"), zero};
    case Reduction::t4_to_bainov: return {1.5, one, parse_expr("x")};
    case Reduction::t5_to_pachpatte: return {1.0, one, one};
  }
  throw std::invalid_argument("unknown reduction");
}

ReductionSetup reduction_setup(Reduction r, const ReductionInstance& inst, double horizon) {
  ReductionSetup s;
  InequalityProblem& p = s.problem;
  p.a = Expr::constant(inst.c);
  p.f = Expr::variable();
  p.phi = Expr::constant(1.0);
  p.horizon = horizon;
  p.kappa = 1.0;
  p.gamma = GammaParams{1.0, 1.0, 1.0, 1.0};
  switch (r) {
    case Reduction::t1_to_bellman:
      s.theorem = Theorem::outer_power;
      p.gamma = GammaParams{1.0, 2.0, 1.0, 1.0};
      p.kernel(1) = inst.w;
      break;
    case Reduction::t1_to_bainov:
      s.theorem = Theorem::outer_power;
      p.gamma = GammaParams{1.0, 2.0, 1.0, 1.0};
      p.kernel(2) = inst.w;
      p.kernel(3) = inst.w_tilde;
      break;
    case Reduction::t4_to_pachpatte:
    case Reduction::t4_to_bainov:
      s.theorem = Theorem::additive;
      p.kernel(3) = inst.w;
      p.kernel(4) = inst.w_tilde;
      break;
    case Reduction::t5_to_bellman:
      s.theorem = Theorem::factored;
      p.kernel(1) = inst.w;
      break;
    case Reduction::t5_to_pachpatte:
      s.theorem = Theorem::factored;
      p.kernel(2) = inst.w;
      p.kernel(3) = inst.w_tilde;
      break;
  }
  return s;
}

ReductionReport check_reduction(Reduction r, const ReductionInstance& inst,
                                std::span<const double> abscissae, double tol,
                                const BoundOptions& opts) {
  if (abscissae.empty()) throw std::invalid_argument("reduction: empty grid");
  const double horizon = std::max(abscissae.back(), 1e-300);
  const ReductionSetup setup = reduction_setup(r, inst, horizon);
  const Expr merged = Expr::binary(Op::add, inst.w, inst.w_tilde);

  ReductionReport rep;
  rep.reduction = r;
  rep.label = std::string(reduction_label(r));
  rep.tol = tol;
  rep.abscissae.assign(abscissae.begin(), abscissae.end());
  for (double delta : abscissae) {
    const double general = evaluate_bound(setup.theorem, setup.problem, delta, opts);
    double oracle = 0.0;
    switch (r) {
      case Reduction::t1_to_bellman:
      case Reduction::t5_to_bellman:
        oracle = bound_bellman(inst.c, inst.w, delta, opts.quadrature);
        break;
      case Reduction::t1_to_bainov:
      case Reduction::t4_to_bainov:
        oracle = bound_bellman(inst.c, merged, delta, opts.quadrature);
        break;
      case Reduction::t4_to_pachpatte:
      case Reduction::t5_to_pachpatte:
        oracle = bound_pachpatte(inst.c, inst.w, inst.w_tilde, delta, opts.quadrature,
                                 opts.inner_refinement);
        break;
    }
    const double diff = std::fabs(general - oracle);
    const double dev = diff == 0.0 ? 0.0 : diff / std::max(std::fabs(oracle), 1e-300);
    if (dev > rep.max_rel_dev) {
      rep.max_rel_dev = dev;
      rep.worst_delta = delta;
    }
    rep.general.push_back(general);
    rep.oracle.push_back(oracle);
  }
  rep.passed = rep.max_rel_dev <= tol;
  return rep;
}

}  // namespace gronwall
