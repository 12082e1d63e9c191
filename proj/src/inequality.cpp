#include "gronwall/inequality.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gronwall/numerics.hpp"

namespace gronwall {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// κ^e / γ with the γ = 0 case mapped to NaN.
double ratio_pow(double num, double den, double kappa, double exponent) {
  if (den == 0.0) return kNaN;
  return num / den * std::pow(kappa, exponent);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double scale_tol(double v) { return 1e-12 * std::max(1.0, std::fabs(v)); }

struct Samples {
  std::vector<double> x;
  std::vector<double> y;
  std::optional<std::string> error;
  std::optional<double> error_at;
};

Samples sample(const Expr& e, const std::vector<double>& xs) {
  Samples s;
  s.x = xs;
  s.y.reserve(xs.size());
  for (double x : xs) {
    try {
      s.y.push_back(e(x));
    } catch (const EvalError& err) {
      s.error = err.what();
      s.error_at = x;
      break;
    }
  }
  return s;
}

HypothesisCheck undefined_check(std::string name, const Samples& s) {
  return {std::move(name), HypothesisStatus::violated, s.error_at,
          "function not defined: " + *s.error};
}

HypothesisCheck check_nondecreasing(std::string name, const Samples& s) {
  if (s.error) return undefined_check(std::move(name), s);
  for (std::size_t i = 1; i < s.y.size(); ++i) {
    if (s.y[i] < s.y[i - 1] - scale_tol(s.y[i - 1])) {
      return {std::move(name), HypothesisStatus::violated, s.x[i],
              "decreases from " + fmt(s.y[i - 1]) + " to " + fmt(s.y[i])};
    }
  }
  return {std::move(name), HypothesisStatus::holds, std::nullopt, ""};
}

HypothesisCheck check_at_least_one(std::string name, const Samples& s) {
  if (s.error) return undefined_check(std::move(name), s);
  for (std::size_t i = 0; i < s.y.size(); ++i) {
    if (s.y[i] < 1.0 - scale_tol(1.0)) {
      return {std::move(name), HypothesisStatus::warning, s.x[i],
              "value " + fmt(s.y[i]) + " < 1"};
    }
  }
  return {std::move(name), HypothesisStatus::holds, std::nullopt, ""};
}

HypothesisCheck check_retarded(const Samples& s) {
  std::string name = "f(δ) ≤ δ";
  if (s.error) return undefined_check(std::move(name), s);
  std::optional<std::size_t> first;
  std::size_t last = 0;
  for (std::size_t i = 1; i < s.y.size(); ++i) {
    if (s.y[i] > s.x[i] + scale_tol(s.x[i])) {
      if (!first) first = i;
      last = i;
    }
  }
  if (!first) return {std::move(name), HypothesisStatus::holds, std::nullopt, ""};
  const double at = s.x[*first];
  const std::string what = "f(" + fmt(at) + ") = " + fmt(s.y[*first]);
  if (last + 1 < s.y.size()) {
    return {std::move(name), HypothesisStatus::warning, at,
            what + "; fails only for δ < " + fmt(s.x[last + 1])};
  }
  return {std::move(name), HypothesisStatus::violated, at, what + "; fails up to the horizon"};
}

}  // namespace

std::string_view theorem_name(Theorem t) {
  switch (t) {
    case Theorem::integrodiff_power: return "integrodiff_power";
    case Theorem::integrodiff_mixed: return "integrodiff_mixed";
    case Theorem::outer_power: return "outer_power";
    case Theorem::additive: return "additive";
    case Theorem::factored: return "factored";
  }
  return "?";
}

std::optional<Theorem> theorem_from_name(std::string_view name) {
  for (Theorem t : {Theorem::integrodiff_power, Theorem::integrodiff_mixed, Theorem::outer_power,
                    Theorem::additive, Theorem::factored}) {
    if (theorem_name(t) == name) return t;
  }
  return std::nullopt;
}

bool is_integrodifferential(Theorem t) {
  return t == Theorem::integrodiff_power || t == Theorem::integrodiff_mixed;
}

ZetaConstants zeta_constants(const GammaParams& g, double kappa, Zeta6Denominator zeta6) {
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  ZetaConstants z;
  z.kappa = kappa;
  auto& v = z.values;
  v[0] = ratio_pow(1.0, g.g1, kappa, (1.0 - g.g1) / g.g1);
  v[1] = ratio_pow(g.g1 - 1.0, g.g1, kappa, 1.0 / g.g1);
  v[2] = ratio_pow(g.g2, g.g1, kappa, (g.g2 - g.g1) / g.g1);
  v[3] = ratio_pow(g.g1 - g.g2, g.g1, kappa, g.g2 / g.g1);
  v[4] = g.g3 == 0.0 ? kNaN : ratio_pow(1.0, g.g3, kappa, (1.0 - g.g3) / g.g3);
  const double z6_den = zeta6 == Zeta6Denominator::gamma1 ? g.g1 : g.g3;
  v[5] = g.g3 == 0.0 ? kNaN : ratio_pow(g.g3 - 1.0, z6_den, kappa, 1.0 / g.g3);
  v[6] = ratio_pow(g.g1 - g.g4, g.g1, kappa, g.g4 / g.g1);
  v[7] = ratio_pow(g.g4, g.g1, kappa, (g.g4 - g.g1) / g.g1);
  v[8] = ratio_pow(1.0, g.g2, kappa, (1.0 - g.g2) / g.g2);
  v[9] = ratio_pow(g.g2 - 1.0, g.g2, kappa, 1.0 / g.g2);
  return z;
}

double power_sum_rhs(double w1, double w2, double gamma) {
  if (!(gamma >= 1.0)) throw DomainError("power-sum lemma needs gamma >= 1");
  if (!(w1 >= 0.0) || !(w2 >= 0.0)) throw DomainError("power-sum lemma needs w1, w2 >= 0");
  return std::pow(2.0, gamma - 1.0) * (std::pow(w1, gamma) + std::pow(w2, gamma));
}

double zhao_rhs(double w, double gamma1, double gamma2, double kappa) {
  if (!(w >= 0.0)) throw DomainError("tangent-line lemma needs w >= 0");
  if (gamma1 == 0.0 || !(gamma1 >= gamma2) || !(gamma2 >= 0.0)) {
    throw DomainError("tangent-line lemma needs gamma1 >= gamma2 >= 0, gamma1 != 0");
  }
  if (!(kappa > 0.0)) throw DomainError("tangent-line lemma needs kappa > 0");
  const double r = gamma2 / gamma1;
  return r * std::pow(kappa, (gamma2 - gamma1) / gamma1) * w +
         (gamma1 - gamma2) / gamma1 * std::pow(kappa, r);
}

double zhao_tangent_kappa(double w) {
  if (!(w >= 0.0)) throw DomainError("tangent-line lemma needs w >= 0");
  return w > 0.0 ? w : 1.0;
}

void check_gamma_constraints(Theorem t, const GammaParams& g) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("exponent constraint violated: ") + what);
  };
  switch (t) {
    case Theorem::integrodiff_power:
      require(g.g1 >= 1.0, "gamma1 >= 1");
      require(g.g2 >= 2.0, "gamma2 >= 2");
      require(g.g3 >= 1.0, "gamma3 >= 1");
      require(g.g2 != g.g3, "gamma2 != gamma3");
      break;
    case Theorem::integrodiff_mixed:
      require(g.g1 >= g.g2 && g.g2 >= 1.0, "gamma1 >= gamma2 >= 1");
      require(g.g3 >= 1.0, "gamma3 >= 1");
      break;
    case Theorem::outer_power:
      require(g.g1 >= g.g4 && g.g4 > 0.0, "gamma1 >= gamma4 > 0");
      require(g.g2 > g.g3 && g.g3 >= 0.0, "gamma2 > gamma3 >= 0");
      break;
    case Theorem::additive:
    case Theorem::factored:
      require(g.g1 >= g.g2 && g.g2 >= 1.0, "gamma1 >= gamma2 >= 1");
      break;
  }
}

bool HypothesisReport::hard_failure() const {
  for (const auto& c : checks) {
    if (c.status == HypothesisStatus::violated) return true;
  }
  return false;
}

bool HypothesisReport::has_warnings() const {
  for (const auto& c : checks) {
    if (c.status == HypothesisStatus::warning) return true;
  }
  return false;
}

const HypothesisCheck* HypothesisReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

HypothesisReport check_hypotheses(const InequalityProblem& p, Theorem theorem) {
  HypothesisReport report;
  report.theorem = theorem;
  if (!(p.horizon > 0.0)) throw DomainError("horizon must be positive");
  const std::vector<double> xs = linspace(0.0, p.horizon, kHypothesisSamples);

  try {
    check_gamma_constraints(theorem, p.gamma);
    report.checks.push_back({"exponent constraints", HypothesisStatus::holds, std::nullopt, ""});
  } catch (const DomainError& e) {
    report.checks.push_back({"exponent constraints", HypothesisStatus::violated, std::nullopt,
                             e.what()});
  }

  const Samples f = sample(p.f, xs);
  if (f.error) {
    report.checks.push_back(undefined_check("f(0) = 0", f));
  } else if (std::fabs(f.y.front()) > 1e-12) {
    report.checks.push_back({"f(0) = 0", HypothesisStatus::violated, 0.0,
                             "f(0) = " + fmt(f.y.front())});
  } else {
    report.checks.push_back({"f(0) = 0", HypothesisStatus::holds, std::nullopt, ""});
  }
  report.checks.push_back(check_nondecreasing("f nondecreasing", f));
  report.checks.push_back(check_retarded(f));

  const Samples a = sample(p.a, xs);
  report.checks.push_back(check_nondecreasing("a nondecreasing", a));
  report.checks.push_back(check_at_least_one("a(δ) ≥ 1", a));

  if (theorem == Theorem::factored) {
    const Samples phi = sample(p.phi, xs);
    report.checks.push_back(check_nondecreasing("Φ nondecreasing", phi));
    report.checks.push_back(check_at_least_one("Φ(δ) ≥ 1", phi));
  }
  return report;
}

}  // namespace gronwall
