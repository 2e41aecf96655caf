#include <fstream>
#include <iostream>
#include <list>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "glide/errors.hpp"

using namespace glide::cli;

namespace {

// Flags that land in the config under `key` when given.
struct Flags {
  std::list<std::string> storage;
  std::vector<std::tuple<CLI::Option*, std::string, std::string*>> bound;

  void add(CLI::App* app, const std::string& name, const std::string& key, const std::string& help) {
    std::string* s = &storage.emplace_back();
    bound.emplace_back(app->add_option(name, *s, help), key, s);
  }
  void apply(Config& c) const {
    for (const auto& [opt, key, value] : bound)
      if (opt->count() > 0) c.set(key, *value);
  }
};

void add_packet_flags(Flags& f, CLI::App* sub) {
  f.add(sub, "--h", "h", "semiclassical parameter");
  f.add(sub, "--lambda", "lambda", "packet frequency (instead of --h, needs both rules)");
  f.add(sub, "--a", "a", "initial distance (sets a_rule=given)");
  f.add(sub, "--M", "M", "Gaussian width parameter (sets M_rule=given)");
  f.add(sub, "--a-rule", "a_rule", "h^(1/3) | h^(1/2-eps) | given");
  f.add(sub, "--m-rule", "M_rule", "lambda^(1/3) | M_a | given");
  f.add(sub, "--eps", "eps", "exponent for h^(1/2-eps)");
  f.add(sub, "--grid", "grid", "lattice TxXxY");
  f.add(sub, "--t-range", "t_range", "lo:hi, default 0:M_a");
  f.add(sub, "--x-range", "x_range", "lo:hi, default 0:1.2");
  f.add(sub, "--y-range", "y_range", "lo:hi");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gliding-ray wave packets: Airy tables, propagators, norms and exponents"};
  app.set_help_flag("--help", "print this help and exit");  // -h would clash with --h
  app.set_version_flag("--version", GLIDE_VERSION);
  app.require_subcommand(1, 1);

  std::string config_file;
  std::vector<std::string> overrides;
  Flags flags;
  app.add_option("--config", config_file, "key=value settings file");
  app.add_option("--set", overrides, "key=value override, repeatable");
  flags.add(&app, "--seed", "seed", "probe-selection seed (default 0)");
  flags.add(&app, "--threads", "threads", "worker threads (default: all cores)");

  struct Mode {
    CLI::App* sub;
    Output (*run)(const Config&);
  };
  std::vector<Mode> modes;
  auto mode = [&](const char* name, const char* help, Output (*run)(const Config&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    flags.add(sub, "--out", "out", "output file (default: stdout)");
    modes.push_back({sub, run});
    return sub;
  };

  auto* table = mode("airy-table", "zeros of Ai(-w) with L' and Ai'^2", airy_table);
  flags.add(table, "--k-max", "k_max", "number of zeros (default 50)");

  auto* poisson = mode("verify-poisson", "both sides of the Airy-Poisson identity for one bump", verify_poisson);
  flags.add(poisson, "--center", "center", "bump centre");
  flags.add(poisson, "--width", "width", "bump half width");
  flags.add(poisson, "--plateau", "plateau", "plateau fraction (default 0.5)");
  flags.add(poisson, "--n-max", "n_max", "reflection cutoff (default 400)");

  auto* prop = mode("propagate", "exact solution on a lattice from the mode expansion", propagate);
  add_packet_flags(flags, prop);
  flags.add(prop, "--prune-tol", "prune_tol", "relative cutoff on mode coefficients");
  auto* para = mode("parametrix", "reflection-sum solution on a lattice", parametrix);
  add_packet_flags(flags, para);

  auto* cross = mode("crosscheck", "mode sum against reflection sum at random probes", crosscheck);
  flags.add(cross, "--lambda", "lambda", "packet frequency (default 50)");
  flags.add(cross, "--points", "points", "probes per reflection (default 10)");
  flags.add(cross, "--reflections", "reflections", "comma list of J (default 0,1,2)");
  flags.add(cross, "--a-rule", "a_rule", "h^(1/3) | h^(1/2-eps)");
  flags.add(cross, "--m-rule", "M_rule", "lambda^(1/3) | M_a");

  auto* scan = mode("strichartz-scan", "Strichartz quotients across lambda with a log-log fit", strichartz_scan);
  flags.add(scan, "--q", "q", "time exponent, or a comma list");
  flags.add(scan, "--r", "r", "space exponent (inf only)");
  flags.add(scan, "--lambdas", "lambdas", "comma list of lambda values");
  flags.add(scan, "--a-rule", "a_rule", "h^(1/3) | h^(1/2-eps)");
  flags.add(scan, "--m-rule", "M_rule", "lambda^(1/3) | M_a");

  auto* expo = mode("exponents", "exact slack of every admissibility region", exponents);
  flags.add(expo, "--pairs", "pairs", "file with one 'q r [d]' per line");
  flags.add(expo, "--d", "d", "default dimension (2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Config cfg;
    if (!config_file.empty()) cfg.load_file(config_file);
    for (const auto& o : overrides) cfg.apply(o);
    flags.apply(cfg);
    for (const Mode& m : modes) {
      if (!m.sub->parsed()) continue;
      const Output result = m.run(cfg);
      std::ofstream file;
      if (cfg.has("out")) {
        file.open(cfg.str("out"), std::ios::binary);
        if (!file) throw glide::ValidationError("cannot write " + cfg.str("out"));
      }
      std::ostream& out = cfg.has("out") ? file : std::cout;
      cfg.write_header(out, m.sub->get_name());
      out << result.body;
      if (cfg.has("out")) std::cout << result.summary << "\n";
      if (!out) throw glide::ValidationError("write failed");
    }
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
