#include "oufreq/runner.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

// Registers the shared numeric flags on a subcommand and remembers the
// option handles so file-supplied values can be overridden per flag.
struct Flags {
  CLI::App *cmd;
  std::string config_path;

  int n = 0, k = 0, nodes = 0;
  std::vector<int> levels;
  double eps = 0, delta = 0, lambda = 0, r_min = 0, r_max = 0, r_step = 0;
  std::string suite, out, format;

  explicit Flags(CLI::App *c) : cmd(c) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("-n,--dim", n, "ambient dimension (1-3)");
    cmd->add_option("-k,--level", k, "ladder index");
    cmd->add_option("--levels", levels, "per-dimension ladder indices");
    cmd->add_option("--eps", eps, "epsilon");
    cmd->add_option("--delta", delta, "delta");
    cmd->add_option("--lambda", lambda, "eigenvalue");
    cmd->add_option("--r-min", r_min, "grid start");
    cmd->add_option("--r-max", r_max, "grid end");
    cmd->add_option("--r-step", r_step, "grid step");
    cmd->add_option("--nodes", nodes, "sphere node override (0 = auto)");
    cmd->add_option("--suite", suite, "verify suite: all|growth|sharpness|uprime|monotonicity");
    cmd->add_option("-o,--out", out, "artifact path (default stdout)");
    cmd->add_option("--format", format, "csv or json");
  }

  oufreq::RunConfig resolve(const std::string &command) const {
    oufreq::RunConfig cfg;
    if (!config_path.empty())
      cfg = oufreq::config_from_json_file(config_path);
    cfg.command = command;
    const auto set = [&](const char *name) { return cmd->count(name) > 0; };
    if (set("--dim")) cfg.n = n;
    if (set("--level")) cfg.k = k;
    if (set("--levels")) cfg.levels = levels;
    if (set("--eps")) cfg.eps = eps;
    if (set("--delta")) cfg.delta = delta;
    if (set("--lambda")) cfg.lambda = lambda;
    if (set("--r-min")) cfg.r_min = r_min;
    if (set("--r-max")) cfg.r_max = r_max;
    if (set("--r-step")) cfg.r_step = r_step;
    if (set("--nodes")) cfg.nodes = nodes;
    if (set("--suite")) cfg.suite = suite;
    if (set("--out")) cfg.out = out;
    if (set("--format")) cfg.format = format;
    return cfg;
  }
};

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"exact drift eigenfunctions and frequency-function verification"};
  app.require_subcommand(1);

  struct Entry {
    const char *name;
    const char *help;
  };
  const Entry entries[] = {
      {"ladder", "build a ladder solution and print it as JSON"},
      {"freq", "tabulate I, D, U along a radial grid"},
      {"verify", "run growth/sharpness/derivative/monotonicity checks"},
      {"compare", "first-order comparison operator and trajectory checks"},
      {"cylinder", "modified frequency and integral bounds on S^1 x R"},
  };

  // CLI11 keeps references to the flag fields, so each Flags object must
  // stay at a fixed address.
  std::vector<std::unique_ptr<Flags>> subs;
  subs.reserve(std::size(entries));
  for (const auto &e : entries)
    subs.push_back(std::make_unique<Flags>(app.add_subcommand(e.name, e.help)));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &ex) {
    const int code = app.exit(ex);
    return code == 0 ? 0 : 2;
  }

  for (const auto &flags : subs) {
    if (flags->cmd->parsed()) {
      try {
        return oufreq::run(flags->resolve(flags->cmd->get_name()));
      } catch (const std::invalid_argument &ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
      }
    }
  }
  return 2;
}
