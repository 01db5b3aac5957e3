#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace crofton::cli;

  CLI::App app{"Crofton formulas and total curvature of closed spacelike curves in Lorentz 3-space"};
  app.require_subcommand(1);

  const unsigned hw = std::thread::hardware_concurrency();
  const int default_threads = hw == 0 ? 1 : static_cast<int>(hw);

  VerifyOptions v;
  v.threads = default_threads;
  if (const char* env = std::getenv("CROFTON_SEED")) {
    try {
      v.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "CROFTON_SEED is not an unsigned integer: " << env << '\n';
      return kInputError;
    }
  }
  for (int i = 0; i < argc; ++i) v.invocation += (i ? " " : "") + std::string(argv[i]);

  auto* verify = app.add_subcommand("verify", "Run identity and inequality checks on a curve");
  verify->add_option("--curve", v.curve, "builtin:NAME?k=v,... or a JSON curve spec file")->required();
  verify->add_option("--check", v.check, "Check to run")
      ->check(CLI::IsMember({"crofton-local", "crofton-global", "fenchel", "fary-milnor", "lemma-2i", "all"}));
  verify->add_option("--method", v.method, "Localized Crofton method")
      ->check(CLI::IsMember({"quadrature", "mc", "both"}));
  verify->add_option("--samples", v.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  verify->add_option("--radius", v.radius, "Disk radius: auto or a value");
  verify->add_option("--safety", v.safety, "Radius safety factor (>= 1)")->check(CLI::Range(1.0, 1e6));
  verify->add_option("--seed", v.seed, "Random seed (default: $CROFTON_SEED or 0)");
  verify->add_option("--tol", v.tol, "Tolerance on total curvature inequalities")->check(CLI::NonNegativeNumber);
  verify->add_option("--out", v.out, "Report file (default: stdout)");
  verify->add_option("--threads", v.threads, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--knotted", v.knotted, "Assert the curve is a nontrivial knot (fary-milnor)");

  GalleryOptions g;
  auto* gallery = app.add_subcommand("gallery", "Emit plot data for a builtin family");
  gallery->add_option("--family", g.family, "Family name")->required();
  gallery->add_option("--params", g.params, "Parameters k=v,k=v");
  gallery->add_option("--emit", g.emit, "Table to write")
      ->check(CLI::IsMember({"curve-csv", "indicatrix-csv", "hprime-csv", "sweep-csv"}));
  gallery->add_option("--out", g.out, "Output directory");
  gallery->add_option("--samples", g.samples, "Rows per table")->check(CLI::Range(8, 10000000));

  bool quick = false;
  int selftest_threads = default_threads;
  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");
  selftest->add_flag("--quick", quick, "Reduced sample counts");
  selftest->add_option("--threads", selftest_threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (verify->parsed()) return run_verify(v);
  if (gallery->parsed()) return run_gallery(g);
  return run_selftest(quick, selftest_threads);
}
