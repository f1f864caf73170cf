#include <iostream>

#include <CLI11.hpp>

#include "qsub/cli.hpp"
#include "qsub/errors.hpp"

namespace {

void common_flags(CLI::App* app, qsub::cli::Config& c) {
  app->add_option("--seed", c.seed, "seed for randomized checks");
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app->add_option("--cache-dir", c.cache_dir, "directory for cached enumerations");
}

}  // namespace

int main(int argc, char** argv) {
  qsub::cli::Config c;
  CLI::App app{"Quantum subgroup combinatorics: word sets, projective modules, fusion rings, quantum trees"};
  app.require_subcommand(1);
  common_flags(&app, c);

  auto* cw = app.add_subcommand("classify-words", "identify the admissible set generated by some words");
  cw->add_option("--gens", c.gens, "comma separated words over o/x, e for the empty word")->required();
  cw->add_option("--bound", c.bound, "comparison length L")->capture_default_str();
  common_flags(cw, c);

  auto* tb = app.add_subcommand("table", "recompute the module table of the orthogonal categories");
  tb->add_option("--bound", c.bound, "point bound")->capture_default_str();
  common_flags(tb, c);

  auto* en = app.add_subcommand("enumerate", "list the partitions of a category on one frame");
  en->add_option("--category", c.category)->required();
  en->add_option("--upper", c.upper, "upper colors (e for none)")->required();
  en->add_option("--lower", c.lower, "lower colors (e for none)")->required();
  common_flags(en, c);

  auto* md = app.add_subcommand("module", "closure of projective generators in a category");
  md->add_option("--category", c.category)->required();
  md->add_option("--gens", c.gens, "partitions like oo;oo;1,1,2,2 separated by spaces or |")->required();
  md->add_option("--bound", c.bound, "point bound")->capture_default_str();
  common_flags(md, c);

  auto* vf = app.add_subcommand("verify", "run a property suite");
  vf->add_option("suite", c.suite, "laws, fusion-rank, psi, trees or reduce")
      ->required()
      ->check(CLI::IsMember({"laws", "fusion-rank", "psi", "trees", "reduce"}));
  vf->add_option("--N", c.n, "dimension N")->capture_default_str();
  vf->add_option("--points", c.points, "point bound for laws")->capture_default_str();
  vf->add_option("--len", c.len, "word or letter length")->capture_default_str();
  vf->add_option("--k", c.k, "parameter k");
  vf->add_option("--base", c.base, "tree base: cN or mN")->capture_default_str();
  vf->add_option("--depth", c.depth, "tree depth")->capture_default_str();
  vf->add_option("--tol", c.tol, "numerical tolerance")->capture_default_str();
  vf->add_option("--samples", c.samples, "samples for reduce")->capture_default_str();
  common_flags(vf, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    auto report = qsub::cli::run(c);
    std::cout << report.render(c.format);
    return report.exit_code();
  } catch (const qsub::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qsub::PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qsub::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
