// Command-line front end: demo, sweep and check-tame.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tamelab/errors.hpp"
#include "tamelab/scenario.hpp"

namespace {

struct Flags {
  std::string variant;
  std::string phi;
  int n = 1;
  std::string x;
  int k = 3;
  int l = 8;
  std::string m_list;
  double grid_factor = 0.0;
  std::string rho1;
  std::string rho2;
  std::string config;
  std::string format;
  std::string output;
  std::string probes;
};

struct Options {
  CLI::Option* variant;
  CLI::Option* phi;
  CLI::Option* n;
  CLI::Option* x;
  CLI::Option* k;
  CLI::Option* l;
  CLI::Option* m_list;
  CLI::Option* grid_factor;
  CLI::Option* rho1;
  CLI::Option* rho2;
  CLI::Option* format;
  CLI::Option* output;
};

Options add_scenario_options(CLI::App* cmd, Flags& f) {
  Options o;
  o.variant = cmd->add_option("variant", f.variant, "Map: ex2 (pullback) or ex4 (composition)");
  o.phi = cmd->add_option("--phi", f.phi,
                          "Outer function: sin, cos, constant:c, affine:a,b, poly:c0,...,cd, t_plus_exp");
  o.n = cmd->add_option("--n", f.n, "Winding number n (ex2)");
  o.x = cmd->add_option("--x", f.x, "Base point x, e.g. 0, constant:c, sin:amp,freq,shift");
  o.k = cmd->add_option("--k", f.k, "Odd derivative order k");
  o.l = cmd->add_option("--l", f.l, "Seminorm level l, eps0 = 1/l");
  o.m_list = cmd->add_option("--m-list", f.m_list, "Comma-separated ascending frequencies");
  o.grid_factor = cmd->add_option("--grid-factor", f.grid_factor, "Grid points per cycle");
  o.rho1 = cmd->add_option("--rho1", f.rho1, "P-norm for z and u (JSON)");
  o.rho2 = cmd->add_option("--rho2", f.rho2, "P-norm for v (JSON)");
  cmd->add_option("--config", f.config, "Scenario JSON file; flags override it");
  o.format = cmd->add_option("--format", f.format, "csv or json");
  o.output = cmd->add_option("--output", f.output, "Output path (default stdout)");
  return o;
}

tamelab::ScenarioConfig build_config(const Flags& f, const Options& o) {
  tamelab::ScenarioConfig c;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw tamelab::UsageError("cannot read config '" + f.config + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    tamelab::apply_config_json(c, ss.str());
  }
  if (o.variant->count()) c.variant = tamelab::parse_variant(f.variant);
  if (o.phi->count()) c.phi = f.phi;
  if (o.n->count()) c.n = f.n;
  if (o.x->count()) c.x = f.x;
  if (o.k->count()) c.k = f.k;
  if (o.l->count()) c.l = f.l;
  if (o.m_list->count()) c.m_list = tamelab::parse_m_list(f.m_list);
  if (o.grid_factor->count()) c.grid_factor = f.grid_factor;
  if (o.rho1->count()) c.rho1 = tamelab::parse_pnorm(f.rho1);
  if (o.rho2->count()) c.rho2 = tamelab::parse_pnorm(f.rho2);
  if (o.format->count()) c.format = tamelab::parse_format(f.format);
  if (o.output->count()) c.output = f.output;
  if (!o.variant->count() && f.config.empty()) {
    throw tamelab::UsageError("variant (ex2 or ex4) is required");
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tameness counterexample explorer for maps on smooth function spaces"};
  app.require_subcommand(1);

  Flags demo_flags, sweep_flags, check_flags;
  auto* demo = app.add_subcommand("demo", "Run the m-sweep and report the blow-up and fix_m certificate");
  const Options demo_opts = add_scenario_options(demo, demo_flags);
  auto* sweep = app.add_subcommand("sweep", "Write the m-sweep table as CSV or JSON");
  const Options sweep_opts = add_scenario_options(sweep, sweep_flags);
  auto* check = app.add_subcommand("check-tame", "Check the tame estimate on a probe file");
  const Options check_opts = add_scenario_options(check, check_flags);
  check->add_option("--probes", check_flags.probes, "Probe file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tamelab::exit_code::kConfig;
  }

  try {
    if (*demo) return tamelab::run_demo(build_config(demo_flags, demo_opts), std::cout, std::cerr);
    if (*sweep) return tamelab::run_sweep(build_config(sweep_flags, sweep_opts), std::cout, std::cerr);
    return tamelab::run_check_tame(build_config(check_flags, check_opts), check_flags.probes, std::cout,
                                   std::cerr);
  } catch (const tamelab::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tamelab::exit_code::kConfig;
  }
}
