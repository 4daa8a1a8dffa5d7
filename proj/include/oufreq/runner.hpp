#ifndef OUFREQ_RUNNER_HPP
#define OUFREQ_RUNNER_HPP

#include <string>
#include <vector>

namespace oufreq {

struct RunConfig {
  std::string command;            // ladder | freq | verify | compare | cylinder
  int n = 1;
  std::vector<int> levels = {0};  // freq / verify family
  int k = 0;                      // ladder command
  double eps = 0.1;
  double delta = 0.5;
  double lambda = 0.0;
  double r_min = 0.5;
  double r_max = 12.0;
  double r_step = 0.1;
  int nodes = 0;                  // 0 = automatic
  std::string suite = "all";      // verify: growth|sharpness|uprime|monotonicity|all
  std::string out;                // artifact path; empty = stdout
  std::string format = "csv";     // csv | json
};

/// Parse a JSON config file into a RunConfig (missing keys keep defaults).
RunConfig config_from_json_file(const std::string &path);

/// Validate and execute.  Returns the process exit status: 0 all checks
/// pass, 1 a check failed, 2 the config is invalid.  Artifact files are
/// written atomically (temp file + rename).
int run(const RunConfig &config);

/// Atomic text-file write used for every artifact.
void write_file_atomic(const std::string &path, const std::string &content);

} // namespace oufreq

#endif
