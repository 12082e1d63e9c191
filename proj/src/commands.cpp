#include "gronwall/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

#include "gronwall/bounds.hpp"
#include "gronwall/builtin_examples.hpp"

namespace gronwall {

namespace {

constexpr double kCheckTolerance = 1e-6;

std::string num(double v, const char* format = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

void emit(const std::string& path, std::ostream& out,
          const std::function<void(std::ostream&)>& write) {
  if (path == "-") {
    write(out);
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  write(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing " + path);
}

// Catches every error a command can raise and maps it to exit_status::failure.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ProblemFileError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const BlowUpError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "error: " << e.diagnostic().to_string() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return exit_status::failure;
}

// Prints warnings and violations; returns true on a hard failure.
bool report_hypotheses(const HypothesisReport& r, std::ostream& err) {
  for (const auto& c : r.checks) {
    if (c.status == HypothesisStatus::holds) continue;
    err << (c.status == HypothesisStatus::warning ? "warning: " : "error: hypothesis violated: ")
        << c.name;
    if (!c.detail.empty()) err << ": " << c.detail;
    if (c.first_failure) err << " (first at delta = " << num(*c.first_failure) << ")";
    err << '\n';
  }
  return r.hard_failure();
}

std::vector<std::string> warning_lines(const HypothesisReport& r) {
  std::vector<std::string> out;
  for (const auto& c : r.checks) {
    if (c.status == HypothesisStatus::warning) out.push_back(c.name + ": " + c.detail);
  }
  return out;
}

std::string_view status_name(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::holds: return "holds";
    case HypothesisStatus::warning: return "warning";
    case HypothesisStatus::violated: return "violated";
  }
  return "?";
}

BoundCurve evaluate_curve(const ProblemFile& pf) {
  const auto xs = linspace(0.0, pf.problem.horizon, pf.numerics.grid);
  return bound_curve(pf.theorem, pf.problem, xs, pf.bound_options());
}

}  // namespace

void GlobalOptions::apply(ProblemFile& pf) const {
  if (tol_abs) pf.numerics.quadrature.abs_tol = *tol_abs;
  if (tol_rel) pf.numerics.quadrature.rel_tol = *tol_rel;
  if (grid) pf.numerics.grid = *grid;
  if (strict_limits) pf.numerics.strict_limits = true;
  if (zeta6) pf.numerics.zeta6 = *zeta6;
  if (dominance) pf.numerics.dominance = *dominance;
}

BoundOptions GlobalOptions::bound_options() const {
  ProblemFile defaults;
  apply(defaults);
  return defaults.bound_options();
}

void write_csv(std::ostream& os, const std::string& header,
               const std::vector<std::vector<double>>& columns) {
  os << header << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) os << ',';
      os << num(columns[c][i], "%.12g");
    }
    os << '\n';
  }
}

int cmd_eval(const std::string& problem_path, const std::string& out_path,
             const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ProblemFile pf = load_problem_file(problem_path);
    g.apply(pf);
    if (report_hypotheses(check_hypotheses(pf.problem, pf.theorem), err)) {
      return exit_status::hypothesis;
    }
    const BoundCurve curve = evaluate_curve(pf);
    const auto xs = curve.grid.abscissae();
    const auto ys = curve.grid.values();
    emit(out_path, out, [&](std::ostream& os) {
      write_csv(os, "delta,value", {{xs.begin(), xs.end()}, {ys.begin(), ys.end()}});
    });
    const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
    err << theorem_name(pf.theorem) << ": bound min " << num(*lo) << ", max " << num(*hi)
        << " over " << ys.size() << " points\n";
    if (curve.singular_cushion) {
      err << "note: [0, " << num(*curve.singular_cushion) << ") excluded from the inner range\n";
    }
    return exit_status::ok;
  });
}

int cmd_verify(const std::string& problem_path, const std::string& out_path,
               const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ProblemFile pf = load_problem_file(problem_path);
    g.apply(pf);
    const HypothesisReport hyp = check_hypotheses(pf.problem, pf.theorem);
    if (report_hypotheses(hyp, err)) return exit_status::hypothesis;

    const BoundCurve curve = evaluate_curve(pf);
    const Trajectory traj = solve_saturated(pf.problem, pf.theorem, pf.numerics.grid);
    DominanceReport rep = check_dominance(traj, curve, pf.dominance_mode());
    rep.warnings = warning_lines(hyp);

    const auto xs = curve.grid.abscissae();
    const auto bs = curve.grid.values();
    const auto us = traj.grid.values();
    emit(out_path, out, [&](std::ostream& os) {
      write_csv(os, "delta,value,u_sat,margin",
                {{xs.begin(), xs.end()}, {bs.begin(), bs.end()}, {us.begin(), us.end()},
                 rep.margins});
    });
    err << theorem_name(pf.theorem) << ": saturated solution converged in " << traj.iterations
        << " sweeps (residual " << num(traj.residual, "%.3e") << ")\n";
    err << "verdict: " << (rep.verdict == Verdict::holds ? "holds" : "violated") << " ["
        << dominance_mode_name(rep.mode) << "], min margin " << num(rep.min_margin, "%.6e")
        << " at delta = " << num(rep.min_at) << ", slack " << num(rep.slack, "%.3e") << '\n';
    if (rep.first_violation) {
      err << "first violation at delta = " << num(*rep.first_violation) << '\n';
    }
    return rep.ok() ? exit_status::ok : exit_status::check;
  });
}

int cmd_reproduce(int example, const std::string& out_path, const GlobalOptions& g,
                  std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BuiltinExample ex = builtin_example(example);
    const BoundOptions opts = g.bound_options();
    const auto xs = linspace(0.0, ex.problem.horizon, g.grid.value_or(65));
    std::vector<double> pipeline, closed, rel;
    double worst = 0.0;
    double worst_at = 0.0;
    for (double d : xs) {
      pipeline.push_back(evaluate_bound(ex.theorem, ex.problem, d, opts));
      closed.push_back(ex.closed_form(d));
      rel.push_back(std::fabs(pipeline.back() - closed.back()) / std::fabs(closed.back()));
      if (rel.back() > worst) {
        worst = rel.back();
        worst_at = d;
      }
    }
    emit(out_path, out, [&](std::ostream& os) {
      write_csv(os, "delta,pipeline_bound,closedform_bound,rel_diff", {xs, pipeline, closed, rel});
    });
    const bool pass = worst <= kCheckTolerance;
    err << "example " << example << ": max rel_diff " << num(worst, "%.3e") << " at delta = "
        << num(worst_at) << (pass ? " (within 1e-6)" : " (exceeds 1e-6)") << '\n';
    return pass ? exit_status::ok : exit_status::check;
  });
}

int cmd_reductions(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BoundOptions opts = g.bound_options();
    const auto xs = linspace(0.0, 1.0, 33);
    bool all = true;
    char line[256];
    std::snprintf(line, sizeof line, "%-16s %-48s %12s %8s %9s %s\n", "reduction", "comparison",
                  "max_rel_dev", "worst_d", "dominates", "result");
    out << line;
    for (Reduction r : kAllReductions) {
      ReductionReport rep;
      try {
        rep = check_reduction(r, default_instance(r), xs, kCheckTolerance, opts);
      } catch (const std::exception& e) {
        err << reduction_name(r) << ": " << e.what() << '\n';
        std::snprintf(line, sizeof line, "%-16s %-48s %12s %8s %9s %s\n",
                      std::string(reduction_name(r)).c_str(),
                      std::string(reduction_label(r)).c_str(), "undefined", "-", "-", "FAIL");
        out << line;
        all = false;
        continue;
      }
      bool dominates = true;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (rep.general[i] < rep.oracle[i] * (1.0 - 1e-9)) dominates = false;
      }
      std::snprintf(line, sizeof line, "%-16s %-48s %12.3e %8.4g %9s %s\n",
                    std::string(reduction_name(r)).c_str(), rep.label.c_str(), rep.max_rel_dev,
                    rep.worst_delta, dominates ? "yes" : "no", rep.passed ? "PASS" : "FAIL");
      out << line;
      all = all && rep.passed;
    }
    out.flush();
    if (!all) err << "some reductions exceed the 1e-6 relative tolerance\n";
    return all ? exit_status::ok : exit_status::check;
  });
}

int cmd_hypotheses(const std::string& problem_path, const GlobalOptions& g, std::ostream& out,
                   std::ostream& err) {
  return guarded(err, [&] {
    ProblemFile pf = load_problem_file(problem_path);
    g.apply(pf);
    const HypothesisReport r = check_hypotheses(pf.problem, pf.theorem);
    out << "theorem: " << theorem_name(r.theorem) << '\n';
    for (const auto& c : r.checks) {
      out << status_name(c.status) << '\t' << c.name << '\t'
          << (c.first_failure ? num(*c.first_failure) : std::string("-"));
      if (!c.detail.empty()) out << '\t' << c.detail;
      out << '\n';
    }
    out.flush();
    return r.hard_failure() ? exit_status::hypothesis : exit_status::ok;
  });
}

}  // namespace gronwall
