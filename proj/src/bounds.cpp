#include "gronwall/bounds.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

namespace gronwall {

namespace {

// f⁻¹ on [0, upper] by bisection, memoized per evaluation point.
class MonotoneInverse {
 public:
  MonotoneInverse(const Expr& fn, double upper, const char* label)
      : fn_(fn), upper_(upper), identity_(fn.is_variable()), label_(label) {}

  double operator()(double y) {
    if (identity_) return y;
    if (auto it = cache_.find(y); it != cache_.end()) return it->second;
    double x;
    try {
      x = invert_monotone(fn_, y, 0.0, upper_, 1e-14 * std::max(1.0, upper_));
    } catch (const BracketError& e) {
      throw DomainError(std::string(label_) + " is undefined: " + e.what());
    }
    cache_.emplace(y, x);
    return x;
  }

 private:
  const Expr& fn_;
  double upper_;
  bool identity_;
  const char* label_;
  std::unordered_map<double, double> cache_;
};

// hom·exp(∫_lo^s K) + ∫_lo^s F(ξ)·exp(∫_ξ^s K) dξ.
// With `forcing_from_origin` the forcing exponential spans all of [lo, s].
double linear_response(const RealFunction& K, const RealFunction& F, double hom, double lo,
                       double s, const BoundOptions& opts, bool forcing_from_origin) {
  if (!(s > lo)) return hom;
  const CumulativeIntegral inner(K, lo, s, opts.quadrature, opts.inner_refinement);
  const double total = inner.total();
  const double forcing = integrate(
      [&](double xi) {
        const double fx = F(xi);
        if (fx == 0.0) return 0.0;
        return fx * std::exp(forcing_from_origin ? total : inner.to_hi(xi));
      },
      lo, s, opts.quadrature);
  return hom * std::exp(total) + forcing;
}

double checked_root(double v, double exponent, const char* what) {
  if (v < 0.0 || (v == 0.0 && exponent < 0.0)) {
    throw DomainError(std::string(what) + " is not positive; its power is undefined");
  }
  const double r = std::pow(v, exponent);
  if (!std::isfinite(r)) throw NumericError(std::string(what) + " overflowed");
  return r;
}

void require_delta(double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw DomainError("bounds are evaluated at finite delta >= 0");
  }
}

struct Setup {
  Setup(Theorem t, const InequalityProblem& problem, double d, const BoundOptions& o)
      : p(problem),
        opts(o),
        delta(d),
        zeta((require_delta(d), check_gamma_constraints(t, problem.gamma),
              zeta_constants(problem.gamma, problem.kappa, o.zeta6))),
        s(problem.f(d)),
        a_prime(differentiate_expr(problem.a)),
        finv(problem.f, d, "f⁻¹") {}

  const InequalityProblem& p;
  const BoundOptions& opts;
  double delta;
  ZetaConstants zeta;
  double s;
  Expr a_prime;
  MonotoneInverse finv;

  double psi(int k, double x) const { return p.kernel(k)(x); }
};

}  // namespace

double bound_integrodiff_power(const InequalityProblem& p, double delta,
                               const BoundOptions& opts) {
  Setup st(Theorem::integrodiff_power, p, delta, opts);
  const auto& z = st.zeta;
  const double g2 = p.gamma.g2;
  const double g3 = p.gamma.g3;
  const double gap = g2 - g3;
  const double c2 = std::pow(2.0, (g2 - 1.0) / g2);
  const double z2_g2 = std::pow(z[2], g2);
  const double z2_g3 = std::pow(z[2], g3);

  auto growth = [&](double th) {
    const double fi = st.finv(th);
    const double psi1 = st.psi(1, th);
    const double g = c2 * fi * z[1] * st.a_prime(fi) +
                     std::pow(2.0, g2 - 1.0) * std::pow(fi, g2 - 1.0) * z2_g2 +
                     (1.0 / g2) * st.psi(3, th) * std::pow(2.0, g3 - 1.0) * std::pow(fi, g3) * z2_g3 +
                     fi * z[1] * psi1 + c2 * fi * fi * z[1] * z[2] * psi1 +
                     c2 * fi * z[1] * st.psi(2, th) + 1.0 / fi;
    return gap * g;
  };
  const double forcing_scale = gap / g2 * std::pow(2.0, (g3 - g2) / g2);
  auto forcing = [&](double xi) { return forcing_scale * st.psi(3, xi); };

  const double lo = opts.singular_cushion;
  const double braced = st.s > lo ? linear_response(growth, forcing, 0.0, lo, st.s, opts, false)
                                  : 0.0;
  return delta * z[2] +
         std::pow(2.0, (1.0 - g2) / g2) * checked_root(braced, 1.0 / gap, "braced term");
}

double bound_integrodiff_mixed(const InequalityProblem& p, double delta,
                               const BoundOptions& opts) {
  Setup st(Theorem::integrodiff_mixed, p, delta, opts);
  const auto& z = st.zeta;
  auto growth = [&](double th) {
    const double fi = st.finv(th);
    return fi * z[1] * st.psi(1, th) + z[3] * z[5] * st.psi(2, th) +
           z[1] / z[3] * fi * st.psi(3, th);
  };
  auto forcing = [&](double xi) {
    const double fi = st.finv(xi);
    return z[3] * st.a_prime(fi) + z[2] * z[3] * st.psi(1, xi) * fi + z[6] * st.psi(2, xi) +
           fi * z[2] * st.psi(3, xi);
  };
  const double hom = z[3] * p.a(0.0) + z[4];
  const double v = linear_response(growth, forcing, hom, 0.0, st.s, opts, false);
  return delta * z[2] + z[1] / z[3] * delta * v;
}

double bound_outer_power(const InequalityProblem& p, double delta, const BoundOptions& opts) {
  Setup st(Theorem::outer_power, p, delta, opts);
  const auto& z = st.zeta;
  const double gap = p.gamma.g2 - p.gamma.g3;
  auto growth = [&](double th) {
    return gap * z[8] * (st.a_prime(st.finv(th)) + st.psi(1, th) + st.psi(2, th));
  };
  auto forcing = [&](double xi) { return gap / p.gamma.g2 * st.psi(3, xi); };
  const double hom = checked_root(z[7] + z[8] * p.a(0.0), gap, "zeta7 + zeta8*a(0)");
  const double v = linear_response(growth, forcing, hom, 0.0, st.s, opts, opts.strict_limits);
  return checked_root(v, 1.0 / gap, "braced term");
}

double bound_additive(const InequalityProblem& p, double delta, const BoundOptions& opts) {
  Setup st(Theorem::additive, p, delta, opts);
  const auto& z = st.zeta;
  auto growth = [&](double th) {
    return z[1] * st.psi(1, th) + z[1] * st.psi(3, th) + z[3] * st.psi(4, th);
  };
  auto forcing = [&](double xi) {
    return st.a_prime(st.finv(xi)) + z[2] * st.psi(1, xi) + st.psi(2, xi) + z[2] * st.psi(3, xi) +
           st.psi(6, xi) + z[4] * st.psi(4, xi) + st.psi(5, xi);
  };
  const double v = linear_response(growth, forcing, p.a(0.0), 0.0, st.s, opts, false);
  return checked_root(v, 1.0 / p.gamma.g1, "braced term");
}

double bound_factored(const InequalityProblem& p, double delta, const BoundOptions& opts) {
  Setup st(Theorem::factored, p, delta, opts);
  const auto& z = st.zeta;
  const Expr phi_prime = differentiate_expr(p.phi);
  MonotoneInverse ainv(p.a, std::max(delta, p.horizon), "a⁻¹");

  auto growth = [&](double th) {
    const double fi = st.finv(th);
    const double phi = p.phi(fi);
    return phi_prime(fi) / phi + z[1] * phi * st.psi(1, th) + z[9] * phi * st.psi(2, th) +
           z[3] * st.psi(3, th);
  };
  auto forcing = [&](double xi) {
    const double g = opts.strict_limits ? ainv(xi) : st.finv(xi);
    const double phi = p.phi(g);
    return phi * st.a_prime(g) + z[2] * phi * st.psi(1, xi) + z[10] * phi * st.psi(2, xi) +
           z[4] * st.psi(3, xi);
  };
  const double hom = p.phi(0.0) * p.a(0.0);
  const double v = linear_response(growth, forcing, hom, 0.0, st.s, opts, opts.strict_limits);
  return checked_root(v, 1.0 / p.gamma.g1, "braced term");
}

double evaluate_bound(Theorem t, const InequalityProblem& p, double delta,
                      const BoundOptions& opts) {
  switch (t) {
    case Theorem::integrodiff_power: return bound_integrodiff_power(p, delta, opts);
    case Theorem::integrodiff_mixed: return bound_integrodiff_mixed(p, delta, opts);
    case Theorem::outer_power: return bound_outer_power(p, delta, opts);
    case Theorem::additive: return bound_additive(p, delta, opts);
    case Theorem::factored: return bound_factored(p, delta, opts);
  }
  throw std::invalid_argument("unknown theorem");
}

BoundCurve bound_curve(Theorem t, const InequalityProblem& p, std::span<const double> abscissae,
                       const BoundOptions& opts) {
  check_gamma_constraints(t, p.gamma);
  BoundCurve curve;
  curve.theorem = t;
  curve.quadrature = opts.quadrature;
  curve.zeta = zeta_constants(p.gamma, p.kappa, opts.zeta6);
  curve.strict_limits = opts.strict_limits;
  if (t == Theorem::integrodiff_power) curve.singular_cushion = opts.singular_cushion;

  std::vector<double> xs(abscissae.begin(), abscissae.end());
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] >= 0.0 && xs[i] <= p.horizon)) {
      throw DomainError("abscissa " + std::to_string(xs[i]) + " outside [0, horizon]");
    }
    ys[i] = evaluate_bound(t, p, xs[i], opts);
    if (!std::isfinite(ys[i])) throw NumericError("bound is not finite");
    if (ys[i] < 0.0) throw NumericError("bound is negative at delta = " + std::to_string(xs[i]));
  }
  curve.grid = Grid(std::move(xs), std::move(ys));
  return curve;
}

double bound_gronwall(double h1, double h2, double h) {
  if (!(h1 >= 0.0 && h2 >= 0.0 && h >= 0.0)) {
    throw DomainError("Gronwall bound needs nonnegative h1, h2, h");
  }
  return h2 * h * std::exp(h1 * h);
}

double bound_bellman(double c, const Expr& w, double delta, const QuadratureConfig& cfg) {
  if (!(c >= 0.0)) throw DomainError("Bellman bound needs c >= 0");
  require_delta(delta);
  return c * std::exp(integrate(w, 0.0, delta, cfg));
}

double bound_pachpatte(double c, const Expr& w, const Expr& w_tilde, double delta,
                       const QuadratureConfig& cfg, int refinement) {
  if (!(c >= 0.0)) throw DomainError("Pachpatte bound needs c >= 0");
  require_delta(delta);
  if (delta == 0.0) return c;
  const CumulativeIntegral growth([&](double s) { return w(s) + w_tilde(s); }, 0.0, delta, cfg,
                                  refinement);
  const double inner = integrate(
      [&](double s) {
        const double ws = w(s);
        return ws == 0.0 ? 0.0 : ws * std::exp(growth.from_lo(s));
      },
      0.0, delta, cfg);
  return c * (1.0 + inner);
}

}  // namespace gronwall
