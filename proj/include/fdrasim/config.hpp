// Copyright 2026 The fdrasim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: JSON file loading with field-level diagnostics,
// defaults for every knob, a stable content hash, and resolution into the
// engine-level SimConfig.

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fdrasim/simengine.hpp"

namespace fdra {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// File-level run description. String fields hold the externally visible
// names; validate() checks that every name resolves.
struct RunConfig {
  int numRbs = 270;
  int rbgSize = 4;
  double slotDurationSec = 0.0005;

  std::vector<std::string> algorithms = {"jade", "dase", "date", "leap",
                                         "type0"};
  std::string metric = "mlwdf";
  std::vector<int> ueCounts = {10, 20, 30, 40, 50};
  std::vector<std::string> trafficMix = {"embb", "arvr2", "its",
                                         "powerdist2"};
  ChannelParams channel;
  std::int64_t slotsPerSeed = 1200;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::string outDir = "results";
  std::string effectiveMcs = "median";
  std::string payloadSemantics = "whole-queue";
  std::string arrivalProcess = "poisson";
  int avgRateTimeConstantSlots = kDefaultAvgRateTimeConstantSlots;
  int feedbackDelaySlots = 1;
  int parallelism = 1;
  std::string cqiTableFile;  // empty: built-in table

  void validate() const;
};

inline EffMcsReducer parseEffMcsReducer(const std::string& name) {
  if (name == "median") return EffMcsReducer::kMedian;
  if (name == "mean-floor") return EffMcsReducer::kMeanFloor;
  if (name == "max") return EffMcsReducer::kMax;
  if (name == "min") return EffMcsReducer::kMin;
  throw std::invalid_argument("unknown effective-MCS reducer '" + name + "'");
}

inline ArrivalProcess parseArrivalProcess(const std::string& name) {
  if (name == "poisson") return ArrivalProcess::kPoisson;
  if (name == "deterministic") return ArrivalProcess::kDeterministic;
  throw std::invalid_argument("unknown arrival process '" + name + "'");
}

inline bool parsePayloadSemantics(const std::string& name) {
  if (name == "whole-queue") return true;
  if (name == "hol-packet") return false;
  throw std::invalid_argument("unknown payload semantics '" + name + "'");
}

inline RankPolicy::Kind parseRankPolicy(const std::string& name) {
  if (name == "fixed") return RankPolicy::Kind::kFixed;
  if (name == "random-walk") return RankPolicy::Kind::kRandomWalk;
  throw std::invalid_argument("unknown rank policy '" + name + "'");
}

inline std::string rankPolicyName(RankPolicy::Kind kind) {
  return kind == RankPolicy::Kind::kFixed ? "fixed" : "random-walk";
}

inline void RunConfig::validate() const {
  const auto fail = [](const std::string& field, const std::string& why) {
    throw ConfigError(field + ": " + why);
  };
  BwpConfig bwp{numRbs, rbgSize, slotDurationSec};
  if (numRbs < 1) fail("bwp.num_rbs", "must be >= 1");
  if (rbgSize < 1) fail("bwp.rbg_size", "must be >= 1");
  if (!(slotDurationSec > 0.0)) fail("bwp.slot_duration_sec", "must be > 0");
  if (!bwp.valid()) fail("bwp", "invalid bandwidth part");

  if (algorithms.empty()) fail("algorithms", "must name at least one");
  int maxUes = 0;
  for (int k : ueCounts) maxUes = std::max(maxUes, k);
  for (const std::string& name : algorithms) {
    Algorithm algo;
    try {
      algo = parseAlgorithm(name);
    } catch (const std::invalid_argument& e) {
      fail("algorithms", e.what());
      return;  // unreachable, keeps algo initialized for static analysis
    }
    if (algo == Algorithm::kOracle &&
        (maxUes > kOracleMaxUes || numRbs > kOracleMaxRbs)) {
      std::ostringstream os;
      os << "'oracle' is limited to " << kOracleMaxUes << " UEs and "
         << kOracleMaxRbs << " RBs";
      fail("algorithms", os.str());
    }
  }
  try {
    parseMetricKind(metric);
  } catch (const std::invalid_argument& e) {
    fail("metric", e.what());
  }
  if (ueCounts.empty()) fail("ue_counts", "must name at least one UE count");
  for (int k : ueCounts) {
    if (k < 1) fail("ue_counts", "every entry must be >= 1");
  }
  if (trafficMix.empty()) fail("traffic_mix", "must name at least one type");
  for (const std::string& name : trafficMix) {
    try {
      parseTrafficType(name);
    } catch (const std::invalid_argument& e) {
      fail("traffic_mix", e.what());
    }
  }
  if (!channel.valid()) fail("channel", "invalid channel parameters");
  if (slotsPerSeed < 0) fail("slots_per_seed", "must be >= 0");
  if (seeds.empty()) fail("seeds", "must name at least one seed");
  if (outDir.empty()) fail("out_dir", "must not be empty");
  try {
    parseEffMcsReducer(effectiveMcs);
  } catch (const std::invalid_argument& e) {
    fail("effective_mcs", e.what());
  }
  try {
    parsePayloadSemantics(payloadSemantics);
  } catch (const std::invalid_argument& e) {
    fail("payload_semantics", e.what());
  }
  try {
    parseArrivalProcess(arrivalProcess);
  } catch (const std::invalid_argument& e) {
    fail("arrival_process", e.what());
  }
  if (avgRateTimeConstantSlots < 1) {
    fail("avg_rate_time_constant_slots", "must be >= 1");
  }
  if (feedbackDelaySlots < 0) fail("feedback_delay_slots", "must be >= 0");
  if (parallelism < 1) fail("parallelism", "must be >= 1");
}

// Canonical JSON image of a config; field order is fixed so the dump (and
// therefore the config hash) is stable.
inline nlohmann::ordered_json toJson(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["bwp"] = {{"num_rbs", cfg.numRbs},
              {"rbg_size", cfg.rbgSize},
              {"slot_duration_sec", cfg.slotDurationSec}};
  j["algorithms"] = cfg.algorithms;
  j["metric"] = cfg.metric;
  j["ue_counts"] = cfg.ueCounts;
  j["traffic_mix"] = cfg.trafficMix;
  j["channel"] = {{"rho_time", cfg.channel.rhoTime},
                  {"rho_freq", cfg.channel.rhoFreq},
                  {"cqi_scale", cfg.channel.cqiScale},
                  {"mean_cqi_min", cfg.channel.meanCqiMin},
                  {"mean_cqi_max", cfg.channel.meanCqiMax},
                  {"rank_policy", rankPolicyName(cfg.channel.rank.kind)},
                  {"fixed_rank", cfg.channel.rank.fixedRank},
                  {"rank_change_prob", cfg.channel.rank.changeProb},
                  {"max_rank", cfg.channel.rank.maxRank}};
  j["slots_per_seed"] = cfg.slotsPerSeed;
  j["seeds"] = cfg.seeds;
  j["out_dir"] = cfg.outDir;
  j["effective_mcs"] = cfg.effectiveMcs;
  j["payload_semantics"] = cfg.payloadSemantics;
  j["arrival_process"] = cfg.arrivalProcess;
  j["avg_rate_time_constant_slots"] = cfg.avgRateTimeConstantSlots;
  j["feedback_delay_slots"] = cfg.feedbackDelaySlots;
  j["parallelism"] = cfg.parallelism;
  j["cqi_table_file"] = cfg.cqiTableFile;
  return j;
}

namespace detail {

template <typename T>
T fetchAs(const nlohmann::json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(field + ": " + e.what());
  }
}

inline void rejectUnknownKeys(const nlohmann::json& j,
                              const std::vector<std::string>& known,
                              const std::string& scope) {
  for (const auto& item : j.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw ConfigError("unknown config key '" + scope + item.key() + "'");
    }
  }
}

}  // namespace detail

// Merges a parsed JSON document onto the defaults. Unknown keys are
// rejected by name; type mismatches are reported per field.
inline RunConfig fromJson(const nlohmann::json& j) {
  using detail::fetchAs;
  RunConfig cfg;
  if (j.is_null()) return cfg;
  if (!j.is_object()) {
    throw ConfigError("config root must be a JSON object");
  }
  detail::rejectUnknownKeys(
      j,
      {"bwp", "algorithms", "metric", "ue_counts", "traffic_mix", "channel",
       "slots_per_seed", "seeds", "out_dir", "effective_mcs",
       "payload_semantics", "arrival_process",
       "avg_rate_time_constant_slots", "feedback_delay_slots", "parallelism",
       "cqi_table_file"},
      "");
  if (j.contains("bwp")) {
    const nlohmann::json& b = j.at("bwp");
    detail::rejectUnknownKeys(b, {"num_rbs", "rbg_size", "slot_duration_sec"},
                              "bwp.");
    if (b.contains("num_rbs")) {
      cfg.numRbs = fetchAs<int>(b.at("num_rbs"), "bwp.num_rbs");
    }
    if (b.contains("rbg_size")) {
      cfg.rbgSize = fetchAs<int>(b.at("rbg_size"), "bwp.rbg_size");
    }
    if (b.contains("slot_duration_sec")) {
      cfg.slotDurationSec =
          fetchAs<double>(b.at("slot_duration_sec"), "bwp.slot_duration_sec");
    }
  }
  if (j.contains("algorithms")) {
    cfg.algorithms = fetchAs<std::vector<std::string>>(j.at("algorithms"),
                                                       "algorithms");
  }
  if (j.contains("metric")) {
    cfg.metric = fetchAs<std::string>(j.at("metric"), "metric");
  }
  if (j.contains("ue_counts")) {
    cfg.ueCounts = fetchAs<std::vector<int>>(j.at("ue_counts"), "ue_counts");
  }
  if (j.contains("traffic_mix")) {
    cfg.trafficMix = fetchAs<std::vector<std::string>>(j.at("traffic_mix"),
                                                       "traffic_mix");
  }
  if (j.contains("channel")) {
    const nlohmann::json& c = j.at("channel");
    detail::rejectUnknownKeys(
        c,
        {"rho_time", "rho_freq", "cqi_scale", "mean_cqi_min", "mean_cqi_max",
         "rank_policy", "fixed_rank", "rank_change_prob", "max_rank"},
        "channel.");
    if (c.contains("rho_time")) {
      cfg.channel.rhoTime = fetchAs<double>(c.at("rho_time"),
                                            "channel.rho_time");
    }
    if (c.contains("rho_freq")) {
      cfg.channel.rhoFreq = fetchAs<double>(c.at("rho_freq"),
                                            "channel.rho_freq");
    }
    if (c.contains("cqi_scale")) {
      cfg.channel.cqiScale = fetchAs<double>(c.at("cqi_scale"),
                                             "channel.cqi_scale");
    }
    if (c.contains("mean_cqi_min")) {
      cfg.channel.meanCqiMin = fetchAs<double>(c.at("mean_cqi_min"),
                                               "channel.mean_cqi_min");
    }
    if (c.contains("mean_cqi_max")) {
      cfg.channel.meanCqiMax = fetchAs<double>(c.at("mean_cqi_max"),
                                               "channel.mean_cqi_max");
    }
    if (c.contains("rank_policy")) {
      const std::string name =
          fetchAs<std::string>(c.at("rank_policy"), "channel.rank_policy");
      try {
        cfg.channel.rank.kind = parseRankPolicy(name);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("channel.rank_policy: ") + e.what());
      }
    }
    if (c.contains("fixed_rank")) {
      cfg.channel.rank.fixedRank = fetchAs<int>(c.at("fixed_rank"),
                                                "channel.fixed_rank");
    }
    if (c.contains("rank_change_prob")) {
      cfg.channel.rank.changeProb = fetchAs<double>(
          c.at("rank_change_prob"), "channel.rank_change_prob");
    }
    if (c.contains("max_rank")) {
      cfg.channel.rank.maxRank = fetchAs<int>(c.at("max_rank"),
                                              "channel.max_rank");
    }
  }
  if (j.contains("slots_per_seed")) {
    cfg.slotsPerSeed = fetchAs<std::int64_t>(j.at("slots_per_seed"),
                                             "slots_per_seed");
  }
  if (j.contains("seeds")) {
    cfg.seeds = fetchAs<std::vector<std::uint64_t>>(j.at("seeds"), "seeds");
  }
  if (j.contains("out_dir")) {
    cfg.outDir = fetchAs<std::string>(j.at("out_dir"), "out_dir");
  }
  if (j.contains("effective_mcs")) {
    cfg.effectiveMcs = fetchAs<std::string>(j.at("effective_mcs"),
                                            "effective_mcs");
  }
  if (j.contains("payload_semantics")) {
    cfg.payloadSemantics = fetchAs<std::string>(j.at("payload_semantics"),
                                                "payload_semantics");
  }
  if (j.contains("arrival_process")) {
    cfg.arrivalProcess = fetchAs<std::string>(j.at("arrival_process"),
                                              "arrival_process");
  }
  if (j.contains("avg_rate_time_constant_slots")) {
    cfg.avgRateTimeConstantSlots = fetchAs<int>(
        j.at("avg_rate_time_constant_slots"), "avg_rate_time_constant_slots");
  }
  if (j.contains("feedback_delay_slots")) {
    cfg.feedbackDelaySlots = fetchAs<int>(j.at("feedback_delay_slots"),
                                          "feedback_delay_slots");
  }
  if (j.contains("parallelism")) {
    cfg.parallelism = fetchAs<int>(j.at("parallelism"), "parallelism");
  }
  if (j.contains("cqi_table_file")) {
    cfg.cqiTableFile = fetchAs<std::string>(j.at("cqi_table_file"),
                                            "cqi_table_file");
  }
  return cfg;
}

// Loads and validates a config file. An empty (or whitespace-only) file
// yields the all-defaults config.
inline RunConfig loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    RunConfig cfg;
    cfg.validate();
    return cfg;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("parse error in '") + path + "': " +
                      e.what());
  }
  RunConfig cfg = fromJson(j);
  cfg.validate();
  return cfg;
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// 16-hex-digit content hash over the canonical JSON image. Two configs
// hash equal iff every resolved field matches.
inline std::string configHash(const RunConfig& cfg) {
  const std::uint64_t h = fnv1a64(toJson(cfg).dump());
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// SE table file: a JSON array of 15 strictly increasing positive
// efficiencies for CQI 1..15 (CQI 0 is always out-of-range).
inline CqiTable loadCqiTableFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open CQI table file '" + path + "'");
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("parse error in '") + path + "': " +
                      e.what());
  }
  std::vector<double> se;
  try {
    se = j.get<std::vector<double>>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("cqi_table_file: expected a JSON array of numbers");
  }
  try {
    return CqiTable::fromEfficiencies(se);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("cqi_table_file: ") + e.what());
  }
}

// Resolves one (algorithm, numUes) point of the sweep into an engine
// config. The seed list and every switch carry over verbatim.
inline SimConfig makeSimConfig(const RunConfig& cfg, const std::string& algo,
                               int numUes) {
  cfg.validate();
  SimConfig sim;
  sim.bwp = BwpConfig{cfg.numRbs, cfg.rbgSize, cfg.slotDurationSec};
  if (!cfg.cqiTableFile.empty()) {
    sim.cqiTable = loadCqiTableFile(cfg.cqiTableFile);
  }
  sim.channel = cfg.channel;
  sim.algorithm = parseAlgorithm(algo);
  sim.metric = parseMetricKind(cfg.metric);
  sim.effMcs = parseEffMcsReducer(cfg.effectiveMcs);
  sim.payloadWholeQueue = parsePayloadSemantics(cfg.payloadSemantics);
  sim.arrivalProcess = parseArrivalProcess(cfg.arrivalProcess);
  std::vector<TrafficType> mix;
  mix.reserve(cfg.trafficMix.size());
  for (const std::string& name : cfg.trafficMix) {
    mix.push_back(parseTrafficType(name));
  }
  assignTrafficMix(sim, numUes, mix);
  sim.slotsPerSeed = cfg.slotsPerSeed;
  sim.feedbackDelaySlots = cfg.feedbackDelaySlots;
  sim.avgRateTimeConstantSlots = cfg.avgRateTimeConstantSlots;
  sim.seeds = cfg.seeds;
  return sim;
}

}  // namespace fdra
