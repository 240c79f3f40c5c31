// Copyright 2026 The fdrasim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Verbs:
//   run              one (algorithm, UE count) point
//   sweep            full algorithms x UE counts grid
//   validate-config  load, validate, print the config hash
//   list-algorithms  registered scheduler names
//
// Exit codes: 0 success, 1 aborted or partially failed runs, 2 usage or
// configuration errors.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdrasim/config.hpp"
#include "fdrasim/experiment.hpp"

namespace {

struct CliOptions {
  std::string configPath;
  std::string algorithms;  // comma-separated
  std::string ueCounts;
  std::string seeds;
  std::int64_t slots = -1;
  std::string outDir;
  int parallel = 0;
  bool dryRun = false;
};

std::vector<std::string> splitCsv(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
std::vector<T> splitNumbers(const std::string& text, const char* flag) {
  std::vector<T> out;
  for (const std::string& item : splitCsv(text)) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      throw fdra::ConfigError(std::string(flag) + ": not a number: '" +
                              item + "'");
    }
  }
  return out;
}

// Flags override file values which override defaults.
fdra::RunConfig resolveConfig(const CliOptions& opt) {
  fdra::RunConfig cfg;
  if (!opt.configPath.empty()) cfg = fdra::loadConfig(opt.configPath);
  if (!opt.algorithms.empty()) cfg.algorithms = splitCsv(opt.algorithms);
  if (!opt.ueCounts.empty()) {
    cfg.ueCounts = splitNumbers<int>(opt.ueCounts, "--ues");
  }
  if (!opt.seeds.empty()) {
    cfg.seeds = splitNumbers<std::uint64_t>(opt.seeds, "--seeds");
  }
  if (opt.slots >= 0) cfg.slotsPerSeed = opt.slots;
  if (!opt.outDir.empty()) cfg.outDir = opt.outDir;
  if (opt.parallel >= 1) cfg.parallelism = opt.parallel;
  cfg.validate();
  return cfg;
}

void addCommonFlags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--config", opt.configPath, "JSON config file")
      ->envname("FDRA_CONFIG");
  cmd->add_option("--algo", opt.algorithms,
                  "comma-separated algorithm names (overrides config)")
      ->envname("FDRA_ALGO");
  cmd->add_option("--ues", opt.ueCounts,
                  "comma-separated UE counts (overrides config)")
      ->envname("FDRA_UES");
  cmd->add_option("--seeds", opt.seeds,
                  "comma-separated seeds (overrides config)")
      ->envname("FDRA_SEEDS");
  cmd->add_option("--slots", opt.slots, "slots per seed (overrides config)")
      ->envname("FDRA_SLOTS");
  cmd->add_option("--out", opt.outDir, "output directory (overrides config)")
      ->envname("FDRA_OUT");
  cmd->add_option("--parallel", opt.parallel,
                  "concurrent sweep points (overrides config)")
      ->envname("FDRA_PARALLEL");
  cmd->add_flag("--dry-run", opt.dryRun,
                "print the resolved sweep plan and run nothing")
      ->envname("FDRA_DRY_RUN");
}

int executeSweep(const CliOptions& opt, bool singlePoint) {
  const fdra::RunConfig cfg = resolveConfig(opt);
  if (singlePoint &&
      (cfg.algorithms.size() != 1 || cfg.ueCounts.size() != 1)) {
    std::ostringstream os;
    os << "run expects exactly one algorithm and one UE count, got "
       << cfg.algorithms.size() << " and " << cfg.ueCounts.size()
       << "; narrow with --algo/--ues or use 'sweep'";
    throw fdra::ConfigError(os.str());
  }
  if (opt.dryRun) {
    std::cout << fdra::sweepPlanText(cfg);
    return 0;
  }
  const fdra::ExperimentResult result = fdra::runExperiment(cfg);
  std::cout << "wrote " << result.resultsCsvPath << " (" << result.rows.size()
            << " rows)\n";
  std::cout << "wrote " << result.summaryJsonPath << "\n";
  if (result.exitStatus != 0) {
    int failed = 0;
    for (const fdra::ResultRow& row : result.rows) {
      if (row.status != "ok") {
        ++failed;
        std::cerr << "fdrasim: " << row.algorithm << " K=" << row.numUes
                  << " failed: " << row.status << "\n";
      }
    }
    std::cerr << "fdrasim: " << failed << " sweep point(s) failed\n";
  }
  return result.exitStatus;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic downlink slot scheduler simulator"};
  app.require_subcommand(1);

  CliOptions opt;
  CLI::App* runCmd =
      app.add_subcommand("run", "run one (algorithm, UE count) point");
  addCommonFlags(runCmd, opt);
  CLI::App* sweepCmd =
      app.add_subcommand("sweep", "run the algorithms x UE counts grid");
  addCommonFlags(sweepCmd, opt);
  CLI::App* validateCmd = app.add_subcommand(
      "validate-config", "check a config and print its hash");
  addCommonFlags(validateCmd, opt);
  CLI::App* listCmd =
      app.add_subcommand("list-algorithms", "print registered algorithms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*listCmd) {
      for (fdra::Algorithm algo : fdra::kAllAlgorithms) {
        std::cout << fdra::algorithmName(algo) << "\n";
      }
      return 0;
    }
    if (*validateCmd) {
      const fdra::RunConfig cfg = resolveConfig(opt);
      std::cout << "config ok\n";
      std::cout << "config hash: " << fdra::configHash(cfg) << "\n";
      return 0;
    }
    if (*runCmd) return executeSweep(opt, /*singlePoint=*/true);
    if (*sweepCmd) return executeSweep(opt, /*singlePoint=*/false);
  } catch (const fdra::ConfigError& e) {
    std::cerr << "fdrasim: error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "fdrasim: error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fdrasim: run aborted: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
