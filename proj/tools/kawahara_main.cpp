#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

#include "kawahara/experiments.hpp"
#include "kawahara/version.hpp"

namespace {

struct SubcommandSpec {
  const char* name;
  const char* description;
};

constexpr SubcommandSpec kSubcommands[] = {
    {"conservation", "evolve configured data and track the three conserved quantities"},
    {"scaling", "torus rescaling: norm identity table and cross-scale dynamic equivalence"},
    {"smoothing", "nonlinear smoothing functional on an ensemble of rough random data"},
    {"illposed", "two-mode separation study at the critical-window times"},
    {"strichartz", "space-time L4 / dispersive-norm ratio ensemble across torus sizes"},
    {"multiplier_scan", "trilinear multiplier bound check over the five frequency regions"},
    {"resonance_audit", "exact-arithmetic cubic and quintic resonance identities"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kawahara: pseudo-spectral simulation and frequency-space analysis for a "
               "fifth-order dispersive wave equation on rescaled tori"};
  app.set_version_flag("--version", std::string(kawahara::kToolkitVersion));
  app.require_subcommand(1);

  kawahara::RunOptions opts;
  for (const SubcommandSpec& spec : kSubcommands) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    sub->add_option("--config", opts.config_path,
                    "JSON config file; built-in defaults are used when omitted")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir,
                    "output directory for manifest.json and artifacts (default: out)");
    sub->add_option("--seed", opts.seed, "override the experiment's RNG seed");
    sub->add_option("--threads", opts.threads_requested,
                    "worker threads (recorded in the manifest; execution is sequential "
                    "and deterministic)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help/version exit clean, usage errors are crashes
  }

  CLI::App* sub = app.get_subcommands().front();
  opts.seed_overridden = sub->count("--seed") > 0;

  try {
    return kawahara::run_experiment(sub->get_name(), opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
