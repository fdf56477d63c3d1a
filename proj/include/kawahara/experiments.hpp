#pragma once

#include <cstdint>
#include <string>

namespace kawahara {

// Options shared by every experiment runner; the per-experiment knobs live in
// the JSON config file.  An empty config_path means "all built-in defaults".
struct RunOptions {
  std::string config_path;
  std::string out_dir = "out";
  bool seed_overridden = false;
  std::uint64_t seed = 0;
  int threads_requested = 1;  // accepted for interface stability; runs are
                              // single-threaded and deterministic either way
};

// Runs one named experiment end to end: materializes the config (built-in
// defaults overlaid with the config file, unknown keys rejected), executes the
// study, writes artifacts plus an atomically-renamed manifest.json into
// out_dir, and returns the process exit status: 0 when every criterion passed,
// 2 when at least one failed.  Configuration and runtime errors throw; the
// command-line wrapper maps those to exit 1 so "criterion failed" and
// "crashed" stay distinguishable.
int run_experiment(const std::string& experiment, const RunOptions& opts);

// The built-in configuration for one experiment with every default
// materialized, as indented JSON.  This is exactly what an absent config file
// means, and exactly what the manifest echoes back.
std::string default_config_json(const std::string& experiment);

bool is_known_experiment(const std::string& experiment);

// The names accepted by run_experiment, comma-separated (for usage text).
std::string known_experiments();

}  // namespace kawahara
