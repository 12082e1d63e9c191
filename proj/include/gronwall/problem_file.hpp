#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gronwall/bounds.hpp"
#include "gronwall/expr.hpp"
#include "gronwall/inequality.hpp"
#include "gronwall/verifier.hpp"

namespace gronwall {

/// Malformed problem file. line() is 1-based, 0 when the error is not tied to a line.
class ProblemFileError : public std::runtime_error {
 public:
  ProblemFileError(std::size_t line, const std::string& message,
                   std::optional<ParseDiagnostic> diagnostic = std::nullopt);

  std::size_t line() const { return line_; }
  const std::optional<ParseDiagnostic>& diagnostic() const { return diagnostic_; }

 private:
  std::size_t line_;
  std::optional<ParseDiagnostic> diagnostic_;
};

struct NumericsSettings {
  QuadratureConfig quadrature;
  std::size_t grid = 129;
  Zeta6Denominator zeta6 = Zeta6Denominator::gamma1;
  bool strict_limits = false;
  std::optional<DominanceMode> dominance;
  double singular_cushion = 1e-8;
  int inner_refinement = 8;
};

struct ProblemFile {
  Theorem theorem{};
  InequalityProblem problem;
  NumericsSettings numerics;

  BoundOptions bound_options() const;
  /// The file's setting, else the theorem's default.
  DominanceMode dominance_mode() const;
};

/// Parses the sectioned key = value format:
///
///   [problem]    theorem, horizon, kappa, gamma1..gamma4
///   [functions]  a, f, phi, psi1..psi6
///   [numerics]   tol_abs, tol_rel, max_depth, grid, zeta6_denominator,
///                strict_limits, dominance, singular_cushion, inner_refinement
///
/// Values are bare tokens or double-quoted strings; `#` starts a comment
/// outside quotes. theorem and horizon are required. Unknown sections, unknown
/// keys and repeated keys are rejected.
ProblemFile parse_problem_file(std::string_view text);

ProblemFile load_problem_file(const std::filesystem::path& path);

}  // namespace gronwall
