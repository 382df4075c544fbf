// flagres: batch residue computations for flags of holomorphic foliations.

#include "flagres/cli.hpp"
#include "flagres/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace flagres;

struct Common {
  std::string file;
  std::string out;
  unsigned nodes = 0;
  double rel_tol = 0.0;
  std::vector<std::string> radii;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("file", c.file, "problem file, or the name of a corpus entry")->required();
  sub->add_option("--out", c.out, "write the machine-readable report here");
  sub->add_option("--nodes", c.nodes, "maximum nodes per circle (power of two)");
  sub->add_option("--rel-tol", c.rel_tol, "convergence tolerance between node doublings");
  sub->add_option("--radii", c.radii, "torus radii: one value for all variables, or one per variable")
      ->delimiter(',');
}

int execute(const Common& c, std::set<std::string> only, bool multiplicities) {
  const cli::ProblemFile problem = cli::load_problem(cli::resolve_problem_path(c.file));
  cli::RunOptions opts;
  opts.only = std::move(only);
  opts.multiplicities = multiplicities;
  if (c.nodes) {
    if (c.nodes < 4 || (c.nodes & (c.nodes - 1))) throw SchemaError("--nodes must be a power of two >= 4");
    opts.max_nodes = c.nodes;
  }
  if (c.rel_tol > 0) opts.rel_tol = c.rel_tol;
  if (!c.radii.empty()) {
    std::vector<double> r;
    for (const auto& s : c.radii) {
      double v = 0;
      try {
        v = to_double(parse_rational(s));
      } catch (const SchemaError&) {
        try {
          v = std::stod(s);
        } catch (const std::exception&) {
          throw SchemaError("--radii: cannot parse '" + s + "'");
        }
      }
      if (!(v > 0)) throw SchemaError("--radii: radii must be positive");
      r.push_back(v);
    }
    opts.radii = r;
  }
  const cli::RunResult res = cli::run(problem, opts);
  std::cout << res.summary;
  if (!c.out.empty()) {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw SchemaError("cannot write " + c.out);
    f << res.report.dump(2) << "\n";
  }
  return res.all_passed && !res.any_error ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Baum-Bott residues of flags of holomorphic foliations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cli::kToolVersion);

  Common check, milnor, residue, chern, verify;
  add_common(app.add_subcommand("check-flag", "verify the flag condition sum X_i omega_i = 0"), check);
  add_common(app.add_subcommand("milnor", "local multiplicities, algebraic and numeric"), milnor);
  add_common(app.add_subcommand("residue", "Baum-Bott residues at the file's points"), residue);
  add_common(app.add_subcommand("chern-pn", "residue totals for split flags on projective space"), chern);
  add_common(app.add_subcommand("verify", "run every task declared in the file"), verify);
  std::string corpus_dir;
  auto* list = app.add_subcommand("corpus-list", "list the bundled problem files");
  list->add_option("dir", corpus_dir, "corpus directory (default: $FLAGRES_CORPUS or the built-in one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("check-flag")) return execute(check, {"check-flag"}, false);
    if (app.got_subcommand("milnor")) return execute(milnor, {"milnor"}, true);
    if (app.got_subcommand("residue")) return execute(residue, {"res-cn-vf", "res-cn-form", "res-c1n"}, false);
    if (app.got_subcommand("chern-pn")) return execute(chern, {"chern-pn", "positivity"}, false);
    if (app.got_subcommand("verify")) return execute(verify, {}, false);
    if (app.got_subcommand("corpus-list")) {
      const auto dir = corpus_dir.empty() ? cli::corpus_directory() : std::filesystem::path(corpus_dir);
      for (const auto& p : cli::list_corpus(dir)) {
        std::string desc;
        try {
          desc = cli::load_problem(p).description;
        } catch (const Error& e) {
          desc = std::string("(invalid: ") + e.what() + ")";
        }
        std::cout << p.stem().string() << "\t" << desc << "\n";
      }
      return 0;
    }
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
