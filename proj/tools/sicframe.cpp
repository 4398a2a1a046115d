// sicframe: evaluate, average and search SIC frame potentials.

#include <iostream>

#include <CLI11.hpp>

#include "sicframe/cli.hpp"

int main(int argc, char** argv) {
  using namespace sicframe::cli;

  CLI::App app{"Weyl-Heisenberg frame potentials: evaluation, averages and SIC search"};
  app.require_subcommand(1);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate f_H, F1, F2 and SIC deviation of a fiducial vector");
  eval_cmd->add_option("--vector", eval.vector_path, "Vector file (JSON)")->required();

  AverageOptions avg;
  auto* avg_cmd = app.add_subcommand("average", "Fubini-Study average of f_H (or f)");
  avg_cmd->add_option("--dim", avg.dim, "Hilbert space dimension N")->required();
  avg_cmd->add_option("--space", avg.space, "full|hplus|hminus|zauner1|zauner-alpha|zauner-alpha2");
  avg_cmd->add_option("--method", avg.method, "analytic|exact|mc");
  avg_cmd->add_option("--quantity", avg.quantity, "fH|f");
  avg_cmd->add_option("--samples", avg.samples, "Monte Carlo sample count");
  avg_cmd->add_option("--seed", avg.seed, "RNG seed (default: $SICFRAME_SEED or 1)");
  avg_cmd->add_option("--threads", avg.threads, "Worker threads (0 = all cores)");

  SearchOptions srch;
  auto* srch_cmd = app.add_subcommand("search", "Numerical minimization or maximization of f_H");
  srch_cmd->add_option("--dim", srch.dim, "Hilbert space dimension N")->required();
  srch_cmd->add_option("--space", srch.space, "full|hplus|hminus|zauner1|zauner-alpha|zauner-alpha2");
  srch_cmd->add_option("--mode", srch.mode, "min|max");
  srch_cmd->add_option("--restarts", srch.restarts, "Random restarts");
  srch_cmd->add_option("--max-iters", srch.max_iters, "Iterations per restart");
  srch_cmd->add_option("--seed", srch.seed, "RNG seed (default: $SICFRAME_SEED or 1)");
  srch_cmd->add_option("--out", srch.out_path, "Write the best vector to this file");
  srch_cmd->add_option("--threads", srch.threads, "Worker threads (0 = all cores)");

  TableOptions tbl;
  auto* tbl_cmd = app.add_subcommand("table", "Min/Average/Max table of f and f_H over the special subspaces");
  tbl_cmd->add_option("--dim", tbl.dim, "Hilbert space dimension N (only N = 7 has Min/Max rows)");
  tbl_cmd->add_option("--samples", tbl.samples, "Monte Carlo cross-check samples (0 disables)");
  tbl_cmd->add_option("--seed", tbl.seed, "RNG seed (default: $SICFRAME_SEED or 1)");
  tbl_cmd->add_option("--restarts", tbl.restarts, "Restarts per extremum search");
  tbl_cmd->add_option("--format", tbl.format, "json|csv");
  tbl_cmd->add_option("--threads", tbl.threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  if (*eval_cmd) return cmd_eval(eval, std::cout, std::cerr);
  if (*avg_cmd) return cmd_average(avg, std::cout, std::cerr);
  if (*srch_cmd) return cmd_search(srch, std::cout, std::cerr);
  return cmd_table(tbl, std::cout, std::cerr);
}
