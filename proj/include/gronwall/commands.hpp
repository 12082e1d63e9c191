#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

#include "gronwall/inequality.hpp"
#include "gronwall/problem_file.hpp"
#include "gronwall/verifier.hpp"

namespace gronwall {

/// Process exit statuses shared by every command.
namespace exit_status {
inline constexpr int ok = 0;
inline constexpr int failure = 1;     // parse, numeric, I/O or solver error
inline constexpr int hypothesis = 2;  // a hypothesis hard-failed
inline constexpr int check = 3;       // strict dominance violated or tolerance check failed
}  // namespace exit_status

/// Command-line overrides applied on top of a problem file's [numerics].
struct GlobalOptions {
  std::optional<double> tol_abs;
  std::optional<double> tol_rel;
  std::optional<std::size_t> grid;
  bool strict_limits = false;
  std::optional<Zeta6Denominator> zeta6;
  std::optional<DominanceMode> dominance;

  void apply(ProblemFile& pf) const;
  BoundOptions bound_options() const;
};

/// Writes "%.12g"-formatted rows under `header`.
void write_csv(std::ostream& os, const std::string& header,
               const std::vector<std::vector<double>>& columns);

// Each command writes data to `out_path` (or to `out` when it is "-") and
// diagnostics to `err`, and returns an exit_status value.

int cmd_eval(const std::string& problem_path, const std::string& out_path,
             const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& problem_path, const std::string& out_path,
               const GlobalOptions& g, std::ostream& out, std::ostream& err);
/// 65 points on [0, 4] unless --grid overrides; exit ok iff max rel_diff ≤ 1e-6.
int cmd_reproduce(int example, const std::string& out_path, const GlobalOptions& g,
                  std::ostream& out, std::ostream& err);
/// The six reductions on 33 points over [0, 1]; exit ok iff every row is within 1e-6.
int cmd_reductions(const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_hypotheses(const std::string& problem_path, const GlobalOptions& g, std::ostream& out,
                   std::ostream& err);

}  // namespace gronwall
