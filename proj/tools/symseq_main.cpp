// symseq: norms, dual norms, operator and multiplier norms, factorization
// certificates and triangle-growth experiments for symmetric sequence
// spaces at finite dimension.

#include "symseq/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"symmetric sequence space laboratory"};
  app.require_subcommand(1);

  symseq::RunConfig cfg;
  std::string format;
  std::string pair;
  std::string manifest_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    sub->add_option("--starts", cfg.budget_starts, "multistart budget");
    sub->add_option("--iters", cfg.budget_iters, "iteration budget");
    sub->add_option("--trials", cfg.trials, "sampling trials");
    sub->add_option("--format", format, "output format: json|csv");
    sub->add_option("--out", cfg.output_path, "output file (default stdout)");
  };

  auto* norm = app.add_subcommand("norm", "norm of a vector in a space");
  norm->add_option("--space", cfg.space, "space spec, e.g. lp:2")->required();
  norm->add_option("--vec", cfg.vec_text, "comma-separated entries")->required();
  add_common(norm);

  auto* dualnorm = app.add_subcommand("dualnorm", "Koethe dual norm bounds");
  dualnorm->add_option("--space", cfg.space)->required();
  dualnorm->add_option("--vec", cfg.vec_text)->required();
  add_common(dualnorm);

  auto* gendual = app.add_subcommand("gendualnorm", "generalized dual norm ||x||_{E^F}");
  gendual->add_option("--E", cfg.space)->required();
  gendual->add_option("--F", cfg.space2)->required();
  gendual->add_option("--vec", cfg.vec_text)->required();
  add_common(gendual);

  auto* opnorm = app.add_subcommand("opnorm", "operator norm bounds ||A||_{E,F}");
  opnorm->add_option("--matrix", cfg.matrix_path, "CSV/JSON matrix file");
  opnorm->add_option("--inline", cfg.matrix_text, "inline matrix '1,2;3,4'");
  opnorm->add_option("--E", cfg.space)->required();
  opnorm->add_option("--F", cfg.space2)->required();
  add_common(opnorm);

  auto* multnorm = app.add_subcommand("multnorm", "Schur multiplier norm bounds");
  multnorm->add_option("--matrix", cfg.matrix_path);
  multnorm->add_option("--inline", cfg.matrix_text);
  multnorm->add_option("--pair", pair, "space pair E,F")->required();
  add_common(multnorm);

  auto* gamma2 = app.add_subcommand("gamma2", "gamma_2 factorization norm");
  gamma2->add_option("--matrix", cfg.matrix_path);
  gamma2->add_option("--inline", cfg.matrix_text);
  add_common(gamma2);

  auto* factorize = app.add_subcommand("factorize", "product factorization certificates");
  factorize->add_option("--space", cfg.space)->required();
  factorize->add_option("--vec", cfg.vec_text)->required();
  factorize->add_option("--mode", cfg.mode, "lozanovskii (default) | lp");
  factorize->add_option("--p", cfg.p, "exponent for --mode lp");
  factorize->add_option("--eps", cfg.eps, "tolerance (default 0.05)");
  add_common(factorize);

  auto* growth = app.add_subcommand("triangle-growth", "triangle projection growth curve");
  growth->add_option("--sizes", cfg.sizes_text, "comma-separated sizes")->required();
  growth->add_option("--mode", cfg.mode, "gamma2 (default) | ratio");
  growth->add_option("--p", cfg.p, "ratio mode domain exponent");
  growth->add_option("--q", cfg.q, "ratio mode codomain exponent");
  add_common(growth);

  auto* tensor = app.add_subcommand("tensor-norm", "injective/projective/gamma2* tensor norms");
  tensor->add_option("--matrix", cfg.matrix_path);
  tensor->add_option("--inline", cfg.matrix_text);
  tensor->add_option("--E", cfg.space)->required();
  tensor->add_option("--F", cfg.space2)->required();
  tensor->add_option("--which", cfg.mode, "eps (default) | pi | gamma2star");
  add_common(tensor);

  auto* audit = app.add_subcommand("audit", "axiom / embedding audits");
  audit->add_option("--what", cfg.mode, "axioms (default) | projective | embedding")->required();
  audit->add_option("--E", cfg.space)->required();
  audit->add_option("--F", cfg.space2)->required();
  audit->add_option("--matrix", cfg.matrix_path, "multiplier for --what embedding");
  audit->add_option("--inline", cfg.matrix_text);
  audit->add_option("--p", cfg.p);
  audit->add_option("--q", cfg.q);
  add_common(audit);

  auto* manifest = app.add_subcommand("manifest", "run a JSON manifest of jobs");
  manifest->add_option("path", manifest_path, "manifest file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (manifest->parsed()) {
      symseq::RunResult r = symseq::experiment_manifest(manifest_path);
      std::cout << r.output;
      return r.exit_code;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.command == "tensor-norm" && cfg.mode.empty()) cfg.mode = "eps";
    if (cfg.command == "multnorm") cfg.space = pair;
    if (cfg.command == "audit" && cfg.mode == "axioms") cfg.mode = "injective";
    if (format == "json") {
      cfg.format = symseq::OutputFormat::Json;
      cfg.format_explicit = true;
    } else if (format == "csv") {
      cfg.format = symseq::OutputFormat::Csv;
      cfg.format_explicit = true;
    } else if (!format.empty()) {
      std::cerr << "unknown format '" << format << "' (json|csv)\n";
      return 1;
    }
    symseq::RunResult r = symseq::run(cfg);
    if (cfg.output_path.empty() || r.exit_code == 1) std::cout << r.output;
    return r.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
