#include "tubes/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

namespace {

constexpr int kUsage = 64;
constexpr int kInternal = 70;

}  // namespace

int main(int argc, char** argv) {
  using namespace tubes;
  CLI::App app{"Exact verification of homogeneous tube domains in C^4"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false;
  std::string fixtures, alpha;
  cli::Options o;
  app.add_flag("--json", as_json, "Emit the structured report");
  app.add_option("--seed", o.seed, "Seed for random probes and controls");
  app.add_option("--fixtures", fixtures, "Fixture directory (overrides TUBES_FIXTURES)");

  auto surface = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--surface", o.surface, "Surface fixture id or fixture file");
    if (required) opt->required();
    s->add_option("--alpha", alpha, "Parameter value for a parametrized surface");
  };
  auto case_opt = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--case", o.case_name, "D or C")->check(CLI::IsMember({"D", "C"}));
    if (required) opt->required();
  };

  auto* sym = app.add_subcommand("symmetry", "Symmetry algebra: dimension, basis, transitivity at the basepoint");
  surface(sym, true);
  auto* orb = app.add_subcommand("orbits", "Determinant and minor report, probes");
  surface(orb, false);
  orb->add_option("--probes", o.probes, "Extra probes \"a,b,c,d;...\"");
  orb->add_option("--random", o.random_probes, "Number of seeded random probes");
  auto* tab = app.add_subcommand("table", "Recompute and diff a commutation table");
  case_opt(tab, true);
  auto* nf = app.add_subcommand("normal-form", "Normal-form conditions on the defining series");
  case_opt(nf, false);
  nf->add_option("--id", o.id, "Normal-form fixture id");
  nf->add_option("--cutoff", o.cutoff, "Series cutoff (at least 6)");
  auto* vm = app.add_subcommand("verify-map", "Coordinate change between surfaces");
  vm->add_option("--id", o.id, "Map fixture id (all maps when omitted)");
  auto* iso = app.add_subcommand("isotropy", "Isotropy families: invariance, fixed point, dimension");
  case_opt(iso, true);
  auto* grp = app.add_subcommand("group", "Full automorphism family: invariance, group law, generators");
  case_opt(grp, true);
  auto* nil = app.add_subcommand("nilpotency", "Obstruction certificate against nilpotent transitive actions");
  case_opt(nil, true);
  auto* wit = app.add_subcommand("witness", "Transitivity witnesses");
  wit->add_option("--id", o.id, "Witness fixture id (all witnesses when omitted)");
  app.add_subcommand("lines", "Complex lines inside the domains");
  auto* scan = app.add_subcommand("scan", "Enumerate subalgebras of a given dimension");
  surface(scan, true);
  scan->add_option("--dim", o.dim, "Subalgebra dimension")->required();
  app.add_subcommand("classify", "Run the pipeline over the catalog");
  auto* exp = app.add_subcommand("export-fixtures", "Write the built-in catalog as a fixture tree");
  exp->add_option("--out", o.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (!alpha.empty()) o.alpha = parse_rational(alpha);
  } catch (const std::exception&) {
    std::cerr << "error: bad --alpha value '" << alpha << "'\n";
    return kUsage;
  }
  if (!fixtures.empty()) {
    if (!std::filesystem::exists(std::filesystem::path(fixtures) / "index.json")) {
      std::cerr << "error: no index.json in " << fixtures << "\n";
      return kUsage;
    }
    setenv("TUBES_FIXTURES", fixtures.c_str(), 1);
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    auto start = std::chrono::steady_clock::now();
    Catalog catalog = default_catalog();
    Report r = cli::run_command(name, std::move(catalog), o);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (as_json) std::cout << r.to_json().dump(2) << "\n";
    else std::cout << r.to_text();
    return r.exit_code();
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
