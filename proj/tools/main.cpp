#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace abnorm::cli;

int main(int argc, char** argv) {
  CLI::App app{"abnorm: strictness of abnormal extremals on four-dimensional Lie groups"};
  app.require_subcommand(1);
  Context ctx{std::cout, std::cerr, std::nullopt};
  int code = kExitOk;

  auto* catalog = app.add_subcommand("catalog", "Query the algebra catalog");
  catalog->require_subcommand(1);
  catalog->add_subcommand("list", "List families")->callback([&] { code = guarded(ctx, [&] { return cmd_catalog_list(ctx); }); });
  auto* show = catalog->add_subcommand("show", "Show one family");
  std::string show_id;
  std::optional<double> show_alpha, show_beta;
  show->add_option("id", show_id, "Family id or alias")->required();
  show->add_option("--alpha", show_alpha, "First parameter");
  show->add_option("--beta", show_beta, "Second parameter");
  show->callback([&] { code = guarded(ctx, [&] { return cmd_catalog_show(ctx, show_id, show_alpha, show_beta); }); });

  auto* verify = app.add_subcommand("verify", "Check Jacobi, automorphism, frame-identity and generation suites");
  std::string scope;
  VerifyOptions vopts;
  verify->add_option("scope", scope, "\"all\" or a family id")->required();
  verify->add_option("--alpha", vopts.alpha, "First parameter");
  verify->add_option("--beta", vopts.beta, "Second parameter");
  verify->add_option("--draws", vopts.automorphism_draws, "Random automorphisms per instance")->check(CLI::PositiveNumber);
  verify->add_option("--planes", vopts.random_planes, "Random planes per excluded instance")->check(CLI::PositiveNumber);
  verify->add_option("--seed", vopts.seed, "Random seed");
  verify->callback([&] { code = guarded(ctx, [&] { return cmd_verify(ctx, scope, vopts); }); });

  auto* classify = app.add_subcommand("classify", "Classify the abnormal extremals of one job");
  ClassifyOptions copts;
  classify->add_option("--config", copts.config, "Job config (JSON)")->required();
  classify->add_option("--expect", copts.expect, "Assert the verdict")->check(CLI::IsMember({"strict", "nonstrict"}));
  classify->add_option("--out", copts.out, "Write the report here instead of stdout");
  classify->add_option("--tol", copts.tol, "Oracle support-identity tolerance");
  classify->callback([&] { code = guarded(ctx, [&] { return cmd_classify(ctx, copts); }); });

  auto* ode = app.add_subcommand("ode", "Integrate the adjoint system and dump a CSV trajectory");
  OdeOptions oopts;
  ode->add_option("--config", oopts.config, "Job config (JSON)")->required();
  ode->add_option("--psi0", oopts.psi0, "Initial covector a,b,c,d");
  ode->add_option("-T", oopts.T, "Horizon");
  ode->add_option("--dt", oopts.dt, "Step bound");
  ode->add_option("--out", oopts.out, "Write the CSV here instead of stdout");
  ode->callback([&] { code = guarded(ctx, [&] { return cmd_ode(ctx, oopts); }); });

  auto* sweep = app.add_subcommand("sweep", "Classify many jobs concurrently");
  SweepOptions sopts;
  sweep->add_option("--config", sopts.configs, "Job or {\"jobs\": [...]} file; repeatable")->required();
  sweep->add_option("--jobs", sopts.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out", sopts.out, "Write the results here instead of stdout");
  sweep->callback([&] { code = guarded(ctx, [&] { return cmd_sweep(ctx, sopts); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  return code;
}
