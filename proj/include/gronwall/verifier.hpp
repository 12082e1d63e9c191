#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gronwall/bounds.hpp"
#include "gronwall/inequality.hpp"
#include "gronwall/numerics.hpp"

namespace gronwall {

/// Picard iteration stopped before the sweep-to-sweep change fell under tolerance.
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(std::string message, std::vector<double> residuals)
      : NumericError(std::move(message)), residuals_(std::move(residuals)) {}

  const std::vector<double>& residual_history() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

/// An iterate exceeded the blow-up threshold.
class BlowUpError : public NumericError {
 public:
  BlowUpError(std::string message, double last_finite)
      : NumericError(std::move(message)), last_finite_(last_finite) {}

  /// Largest grid abscissa before the first point over the threshold.
  double last_finite_delta() const { return last_finite_; }

 private:
  double last_finite_;
};

enum class IntegralForm { outer_power, additive, factored };
enum class IntegrodiffForm { u_power, mixed };

struct SolverOptions {
  /// Converged once the sup-norm change is at most tol·max(1, sup|u|).
  double tol = 1e-10;
  int max_sweeps = 200;
  double blowup_threshold = 1e12;
  /// Called after every sweep with the sweep number (from 1) and the iterate.
  std::function<void(int, std::span<const double>)> observer;
};

struct Trajectory {
  Grid grid;                       // (δ, u(δ))
  std::vector<double> derivative;  // u′ on the grid; empty for integral forms
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> residual_history;
};

/// Solves the hypothesis of an integral-form theorem with equality.
///
/// Jacobi-style Picard sweeps from u ≡ 0 on an n-point uniform grid over
/// [0, T]; inner integrals use the trapezoid rule, and retarded arguments
/// f(δ) are read by linear interpolation. Requires f([0, T]) ⊆ [0, T].
Trajectory solve_saturated_integral(const InequalityProblem& p, IntegralForm form, std::size_t n,
                                    const SolverOptions& opts = {});

/// Solves the hypothesis of an integro-differential theorem with equality,
/// u(0) = 0, integrating u′ by the trapezoid rule inside each sweep.
Trajectory solve_saturated_integrodiff(const InequalityProblem& p, IntegrodiffForm form,
                                       std::size_t n, const SolverOptions& opts = {});

/// Dispatches to the solver matching `theorem`.
Trajectory solve_saturated(const InequalityProblem& p, Theorem theorem, std::size_t n,
                           const SolverOptions& opts = {});

enum class DominanceMode { strict, report_only };
enum class Verdict { holds, violated };

std::string_view dominance_mode_name(DominanceMode m);
std::optional<DominanceMode> dominance_mode_from_name(std::string_view name);

/// report_only for the integro-differential theorems, strict otherwise.
DominanceMode default_dominance_mode(Theorem t);

struct DominanceReport {
  std::vector<double> abscissae;
  std::vector<double> margins;  // bound − u
  double min_margin = 0.0;
  double min_at = 0.0;
  std::optional<double> first_violation;
  Verdict verdict = Verdict::holds;
  DominanceMode mode = DominanceMode::strict;
  double slack = 0.0;
  std::vector<std::string> warnings;

  /// False only for a strict-mode violation.
  bool ok() const { return verdict == Verdict::holds || mode == DominanceMode::report_only; }
};

/// Margins bound − u on the shared grid. slack = 1e-8·max(1, max|bound|).
/// Throws std::invalid_argument when the abscissae differ.
DominanceReport check_dominance(const Trajectory& t, const BoundCurve& b, DominanceMode mode);

enum class Reduction {
  t1_to_bellman,
  t4_to_pachpatte,
  t5_to_bellman,
  t1_to_bainov,
  t4_to_bainov,
  t5_to_pachpatte,
};

inline constexpr Reduction kAllReductions[] = {
    Reduction::t1_to_bellman, Reduction::t4_to_pachpatte, Reduction::t5_to_bellman,
    Reduction::t1_to_bainov,  Reduction::t4_to_bainov,    Reduction::t5_to_pachpatte,
};

std::string_view reduction_name(Reduction r);
/// Describes the oracle the general bound is compared with.
std::string_view reduction_label(Reduction r);

/// The classical data: constant forcing c and up to two kernels. Bellman
/// rows ignore w_tilde except the merged-kernel rows, which use w + w_tilde.
struct ReductionInstance {
  double c = 1.0;
  Expr w = Expr::constant(0.0);
  Expr w_tilde = Expr::constant(0.0);
};

/// Built-in instance for `r`, used by the reductions command.
ReductionInstance default_instance(Reduction r);

struct ReductionSetup {
  Theorem theorem{};
  InequalityProblem problem;
};

/// The parameter substitution that turns a general theorem into the classical one.
ReductionSetup reduction_setup(Reduction r, const ReductionInstance& inst, double horizon);

struct ReductionReport {
  Reduction reduction{};
  std::string label;
  std::vector<double> abscissae;
  std::vector<double> general;
  std::vector<double> oracle;
  double max_rel_dev = 0.0;
  double worst_delta = 0.0;
  double tol = 0.0;
  bool passed = false;
};

ReductionReport check_reduction(Reduction r, const ReductionInstance& inst,
                                std::span<const double> abscissae, double tol,
                                const BoundOptions& opts = {});

}  // namespace gronwall
