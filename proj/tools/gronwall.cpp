#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "gronwall/commands.hpp"

int main(int argc, char** argv) {
  using namespace gronwall;

  CLI::App app{"Explicit bounds for retarded Gronwall-Bellman-Pachpatte inequalities"};
  app.require_subcommand(1);

  GlobalOptions g;
  double tol_abs = 0.0;
  double tol_rel = 0.0;
  std::size_t grid = 0;
  std::string zeta6;
  std::string dominance;
  auto* o_abs = app.add_option("--tol-abs", tol_abs, "Quadrature absolute tolerance")
                    ->check(CLI::PositiveNumber);
  auto* o_rel = app.add_option("--tol-rel", tol_rel, "Quadrature relative tolerance")
                    ->check(CLI::PositiveNumber);
  auto* o_grid = app.add_option("--grid", grid, "Number of grid points")->check(CLI::Range(2, 1 << 20));
  app.add_flag("--strict-limits", g.strict_limits,
               "Evaluate bound formulas with their printed integration limits");
  auto* o_z6 = app.add_option("--zeta6-denom", zeta6, "Denominator of zeta6")
                   ->check(CLI::IsMember({"gamma1", "gamma3"}));
  auto* o_dom = app.add_option("--dominance", dominance, "Dominance check mode")
                    ->check(CLI::IsMember({"strict", "report-only"}));

  std::string problem;
  std::string out_path = "-";
  int example = 0;

  auto* eval = app.add_subcommand("eval", "Evaluate the bound curve of a problem file");
  eval->add_option("file", problem, "Problem file")->required();
  eval->add_option("-o,--output", out_path, "CSV output path ('-' for stdout)");

  auto* verify = app.add_subcommand("verify", "Compare the bound with the saturated solution");
  verify->add_option("file", problem, "Problem file")->required();
  verify->add_option("-o,--output", out_path, "CSV output path ('-' for stdout)");

  auto* reproduce = app.add_subcommand("reproduce", "Reproduce a worked example's closed form");
  reproduce->add_option("example", example, "Example number")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  reproduce->add_option("-o,--output", out_path, "CSV output path ('-' for stdout)");

  auto* reductions = app.add_subcommand("reductions", "Check reductions to the classical bounds");

  auto* hypotheses = app.add_subcommand("hypotheses", "Check a problem's hypotheses");
  hypotheses->add_option("file", problem, "Problem file")->required();

  for (auto* sub : {eval, verify, reproduce, reductions, hypotheses}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_status::ok : exit_status::failure;
  }

  if (o_abs->count()) g.tol_abs = tol_abs;
  if (o_rel->count()) g.tol_rel = tol_rel;
  if (o_grid->count()) g.grid = grid;
  if (o_z6->count()) g.zeta6 = zeta6 == "gamma1" ? Zeta6Denominator::gamma1 : Zeta6Denominator::gamma3;
  if (o_dom->count()) g.dominance = dominance_mode_from_name(dominance);

  if (eval->parsed()) return cmd_eval(problem, out_path, g, std::cout, std::cerr);
  if (verify->parsed()) return cmd_verify(problem, out_path, g, std::cout, std::cerr);
  if (reproduce->parsed()) return cmd_reproduce(example, out_path, g, std::cout, std::cerr);
  if (reductions->parsed()) return cmd_reductions(g, std::cout, std::cerr);
  return cmd_hypotheses(problem, g, std::cout, std::cerr);
}
