// Copyright 2026 The fdrasim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment driver: runs the (algorithm x UE count) sweep, optionally in
// parallel, and writes a fixed-schema CSV results table plus a JSON summary.
// Output bytes depend only on the config, never on scheduling of threads.

#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fdrasim/config.hpp"
#include "fdrasim/simengine.hpp"

namespace fdra {

struct ResultRow {
  std::string algorithm;
  int numUes = 0;
  std::string traffic;  // traffic type name, or "aggregate"
  KpiSummary kpi;
  double tbsCalcsMean = 0.0;
  double metricCalcsMean = 0.0;
  double rbAmountCalcsMean = 0.0;
  int numSeeds = 0;
  std::int64_t slotsPerSeed = 0;
  std::string configHash;
  std::string status = "ok";
};

struct ExperimentResult {
  int exitStatus = 0;
  std::vector<ResultRow> rows;
  std::string resultsCsvPath;
  std::string summaryJsonPath;
};

inline constexpr const char* kResultsCsvHeader =
    "algorithm,num_ues,traffic,throughput_bps_mean,throughput_bps_std,"
    "loss_rate_mean,loss_rate_std,mean_hol_delay_s_mean,"
    "mean_hol_delay_s_std,tbs_calcs_mean,metric_calcs_mean,"
    "rb_amount_calcs_mean,num_seeds,slots_per_seed,config_hash,status";

namespace detail {

// Shortest-round-trip formatting, stable across runs of the same build.
inline std::string formatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline void appendRowsForPoint(std::vector<ResultRow>& rows,
                               const std::string& algorithm, int numUes,
                               const KpiReport& report,
                               const std::string& hash) {
  const auto makeRow = [&](const std::string& traffic,
                           const KpiSummary& kpi) {
    ResultRow row;
    row.algorithm = algorithm;
    row.numUes = numUes;
    row.traffic = traffic;
    row.kpi = kpi;
    row.tbsCalcsMean = report.tbsCalcs.mean;
    row.metricCalcsMean = report.metricCalcs.mean;
    row.rbAmountCalcsMean = report.rbAmountCalcs.mean;
    row.numSeeds = static_cast<int>(report.seeds.size());
    row.slotsPerSeed = report.slotsPerSeed;
    row.configHash = hash;
    return row;
  };
  for (const auto& [type, kpi] : report.perType) {
    rows.push_back(makeRow(trafficTypeName(type), kpi));
  }
  rows.push_back(makeRow("aggregate", report.aggregate));
}

inline std::string csvLine(const ResultRow& r) {
  std::ostringstream os;
  os << r.algorithm << ',' << r.numUes << ',' << r.traffic << ','
     << formatDouble(r.kpi.throughputBps.mean) << ','
     << formatDouble(r.kpi.throughputBps.stddev) << ','
     << formatDouble(r.kpi.lossRate.mean) << ','
     << formatDouble(r.kpi.lossRate.stddev) << ','
     << formatDouble(r.kpi.meanHolDelaySec.mean) << ','
     << formatDouble(r.kpi.meanHolDelaySec.stddev) << ','
     << formatDouble(r.tbsCalcsMean) << ','
     << formatDouble(r.metricCalcsMean) << ','
     << formatDouble(r.rbAmountCalcsMean) << ',' << r.numSeeds << ','
     << r.slotsPerSeed << ',' << r.configHash << ',' << r.status;
  return os.str();
}

inline nlohmann::ordered_json rowJson(const ResultRow& r) {
  nlohmann::ordered_json j;
  j["algorithm"] = r.algorithm;
  j["num_ues"] = r.numUes;
  j["traffic"] = r.traffic;
  j["throughput_bps"] = {{"mean", r.kpi.throughputBps.mean},
                         {"std", r.kpi.throughputBps.stddev}};
  j["loss_rate"] = {{"mean", r.kpi.lossRate.mean},
                    {"std", r.kpi.lossRate.stddev}};
  j["mean_hol_delay_s"] = {{"mean", r.kpi.meanHolDelaySec.mean},
                           {"std", r.kpi.meanHolDelaySec.stddev}};
  j["counters"] = {{"tbs_calcs_mean", r.tbsCalcsMean},
                   {"metric_calcs_mean", r.metricCalcsMean},
                   {"rb_amount_calcs_mean", r.rbAmountCalcsMean}};
  j["num_seeds"] = r.numSeeds;
  j["slots_per_seed"] = r.slotsPerSeed;
  j["config_hash"] = r.configHash;
  j["status"] = r.status;
  return j;
}

}  // namespace detail

// Human-readable sweep plan, printed by --dry-run.
inline std::string sweepPlanText(const RunConfig& cfg) {
  std::ostringstream os;
  const std::size_t points = cfg.algorithms.size() * cfg.ueCounts.size();
  os << "sweep plan: " << cfg.algorithms.size() << " algorithm(s) x "
     << cfg.ueCounts.size() << " UE count(s) x " << cfg.seeds.size()
     << " seed(s) = " << points * cfg.seeds.size() << " runs\n";
  for (const std::string& algo : cfg.algorithms) {
    for (int k : cfg.ueCounts) {
      os << "  " << algo << " K=" << k << " slots=" << cfg.slotsPerSeed
         << " seeds=" << cfg.seeds.size() << "\n";
    }
  }
  os << "results: " << cfg.outDir << "/results.csv, " << cfg.outDir
     << "/summary.json\n";
  os << "config hash: " << configHash(cfg) << "\n";
  return os.str();
}

// Runs the full sweep and writes results.csv and summary.json under
// cfg.outDir. Points run concurrently up to cfg.parallelism; rows are
// emitted in config order regardless. A failed point produces one
// status-flagged row and a nonzero exit status, other points still run.
inline ExperimentResult runExperiment(const RunConfig& cfg) {
  cfg.validate();
  const std::string hash = configHash(cfg);

  struct Task {
    std::string algorithm;
    int numUes = 0;
    KpiReport report;
    std::string error;
  };
  std::vector<Task> tasks;
  for (const std::string& algo : cfg.algorithms) {
    for (int k : cfg.ueCounts) {
      tasks.push_back(Task{algo, k, {}, {}});
    }
  }

  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      Task& task = tasks[i];
      try {
        const SimConfig sim = makeSimConfig(cfg, task.algorithm, task.numUes);
        task.report = runSimulation(sim);
      } catch (const std::exception& e) {
        task.error = e.what();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(
      static_cast<std::size_t>(cfg.parallelism), tasks.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  ExperimentResult result;
  for (const Task& task : tasks) {
    if (task.error.empty()) {
      detail::appendRowsForPoint(result.rows, task.algorithm, task.numUes,
                                 task.report, hash);
    } else {
      ResultRow row;
      row.algorithm = task.algorithm;
      row.numUes = task.numUes;
      row.traffic = "aggregate";
      row.numSeeds = static_cast<int>(cfg.seeds.size());
      row.slotsPerSeed = cfg.slotsPerSeed;
      row.configHash = hash;
      row.status = "error: " + task.error;
      result.rows.push_back(row);
      result.exitStatus = 1;
    }
  }

  std::filesystem::create_directories(cfg.outDir);
  result.resultsCsvPath = cfg.outDir + "/results.csv";
  result.summaryJsonPath = cfg.outDir + "/summary.json";
  {
    std::ofstream csv(result.resultsCsvPath, std::ios::trunc);
    if (!csv) {
      throw ConfigError("cannot write '" + result.resultsCsvPath + "'");
    }
    csv << kResultsCsvHeader << '\n';
    for (const ResultRow& row : result.rows) {
      csv << detail::csvLine(row) << '\n';
    }
  }
  {
    nlohmann::ordered_json summary;
    summary["config"] = toJson(cfg);
    summary["config_hash"] = hash;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ResultRow& row : result.rows) {
      rows.push_back(detail::rowJson(row));
    }
    summary["results"] = rows;
    summary["exit_status"] = result.exitStatus;
    std::ofstream js(result.summaryJsonPath, std::ios::trunc);
    if (!js) {
      throw ConfigError("cannot write '" + result.summaryJsonPath + "'");
    }
    js << summary.dump(2) << '\n';
  }
  return result;
}

}  // namespace fdra
