#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dnascan/distributed.hpp"
#include "dnascan/generator.hpp"
#include "dnascan/oracle.hpp"
#include "dnascan/parallel.hpp"

namespace {

using namespace dnascan;

constexpr int kExitOk = 0;
constexpr int kExitVerifyMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitProtocol = 3;

struct RunConfig {
  ScenarioParams params;
  std::string engine = "seq";
  Strategy strategy;
  std::uint32_t ranks = 1;
  DistMode mode = DistMode::Distributed;
  bool verify = false;
  std::uint64_t reps = 1;
  std::string format = "text";
  std::string dump_path;
  bool trace_messages = false;
  bool verbose = false;
  bool corrupt_report = false;  // test double for the verification failure path
};

struct EngineOutcome {
  SearchReport report;
  WorkCounter counter;
  double time_s = 0.0;
};

EngineOutcome run_engine(const RunConfig& cfg, const Scenario& sc, TraceLog* trace) {
  using clock = std::chrono::steady_clock;
  EngineOutcome out;
  out.time_s = std::numeric_limits<double>::infinity();
  for (std::uint64_t rep = 0; rep < cfg.reps; ++rep) {
    WorkCounter counter;
    SearchReport report;
    const auto t0 = clock::now();
    if (cfg.engine == "seq") {
      report = search_all_sequential(sc.sequence, sc.patterns, &counter);
    } else if (cfg.engine == "par") {
      report = search_all_parallel(sc.sequence, sc.patterns, cfg.strategy, &counter);
    } else {
      report = run_distributed(sc.sequence, sc.patterns, cfg.ranks, cfg.mode,
                               rep == 0 ? trace : nullptr, &counter);
    }
    const auto t1 = clock::now();
    const double dt = std::chrono::duration<double>(t1 - t0).count();
    if (dt < out.time_s) out.time_s = dt;
    if (rep == 0) {
      out.report = std::move(report);
      out.counter = counter;
    }
  }
  return out;
}

unsigned workers_of(const RunConfig& cfg) {
  if (cfg.engine == "par") return cfg.strategy.workers;
  if (cfg.engine == "dist") return cfg.ranks;
  return 1;
}

void emit_report(const RunConfig& cfg, const EngineOutcome& out) {
  if (cfg.format == "json") {
    nlohmann::json j;
    j["matches"] = out.report.pat_matches;
    j["checksum"] = out.report.checksum_found;
    j["multi"] = out.report.multi_match_positions;
    auto found = nlohmann::json::array();
    for (std::uint64_t pos : out.report.pat_found)
      found.push_back(pos == kNotFound ? -1 : static_cast<std::int64_t>(pos));
    j["pat_found"] = std::move(found);
    j["time_s"] = out.time_s;
    j["engine"] = cfg.engine;
    j["workers"] = workers_of(cfg);
    j["comparisons"] = out.counter.comparisons;
    j["positions_tested"] = out.counter.positions_tested;
    std::cout << j.dump() << "\n";
    return;
  }
  std::cout << report_text(out.report, cfg.verbose);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", out.time_s);
  std::cout << "Time: " << buf << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Exact multi-pattern search over generated nucleotide sequences"};

  app.add_option("L", cfg.params.seq_length, "sequence length")->required();
  app.add_option("prob_a", cfg.params.prob_a, "probability of A")->required();
  app.add_option("prob_c", cfg.params.prob_c, "probability of C")->required();
  app.add_option("prob_g", cfg.params.prob_g, "probability of G (T takes the remainder)")
      ->required();
  app.add_option("n_rand", cfg.params.n_random_patterns, "number of random patterns")->required();
  app.add_option("rand_len_mean", cfg.params.rand_len_mean, "random pattern length mean")
      ->required();
  app.add_option("rand_len_dev", cfg.params.rand_len_dev, "random pattern length deviation")
      ->required();
  app.add_option("n_samp", cfg.params.n_sample_patterns, "number of sample patterns")->required();
  app.add_option("samp_len_mean", cfg.params.samp_len_mean, "sample pattern length mean")
      ->required();
  app.add_option("samp_len_dev", cfg.params.samp_len_dev, "sample pattern length deviation")
      ->required();
  app.add_option("samp_loc_mean", cfg.params.samp_loc_mean, "sample location mean")->required();
  app.add_option("samp_loc_dev", cfg.params.samp_loc_dev, "sample location deviation")
      ->required();
  app.add_option("seed", cfg.params.seed, "generator seed")->required();

  app.add_option("--engine", cfg.engine, "search engine")
      ->check(CLI::IsMember({"seq", "par", "dist"}))
      ->capture_default_str();
  app.add_option("--workers", cfg.strategy.workers, "parallel engine worker threads")
      ->capture_default_str();
  std::string strategy_name = "patterns";
  app.add_option("--strategy", strategy_name, "parallel decomposition")
      ->check(CLI::IsMember({"patterns", "positions", "nested"}))
      ->capture_default_str();
  app.add_option("--chunk", cfg.strategy.chunk, "start positions per claimed chunk")
      ->capture_default_str();
  std::string accum_name = "serialized";
  app.add_option("--accum", accum_name, "parallel accumulation mode")
      ->check(CLI::IsMember({"serialized", "merge"}))
      ->capture_default_str();
  app.add_flag("--cancel", cfg.strategy.cancellation,
               "enable speculative cancellation (makes work counters scheduling-dependent)");
  app.add_option("--ranks", cfg.ranks, "simulated rank count for the distributed engine")
      ->capture_default_str();
  std::string mode_name = "distributed";
  app.add_option("--mode", mode_name, "distributed engine mode")
      ->check(CLI::IsMember({"distributed", "replicated"}))
      ->capture_default_str();
  app.add_flag("--verify", cfg.verify, "compare the engine report against the sequential oracle");
  app.add_option("--reps", cfg.reps, "timed repetitions; reported time is the minimum")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--dump-scenario", cfg.dump_path, "write the generated scenario to this file");
  app.add_flag("--trace-messages", cfg.trace_messages,
               "print continuation messages to stderr (distributed engine)");
  app.add_flag("--verbose", cfg.verbose, "include per-pattern lines in text output");
  app.add_flag("--corrupt-report", cfg.corrupt_report)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << app.get_name() << ": run with --help for usage\n";
    return kExitUsage;
  }

  cfg.strategy.decomposition = strategy_name == "positions"  ? Decomposition::OverPositions
                               : strategy_name == "nested"   ? Decomposition::Nested
                                                             : Decomposition::OverPatterns;
  cfg.strategy.accumulation = accum_name == "merge" ? Accumulation::PerWorkerMerge
                                                    : Accumulation::SerializedUpdates;
  cfg.mode = mode_name == "replicated" ? DistMode::Replicated : DistMode::Distributed;

  try {
    cfg.params.validate();
    if (cfg.engine == "par") cfg.strategy.validate();
    if (cfg.engine == "dist" && cfg.ranks == 0)
      throw std::invalid_argument("--ranks must be >= 1");
    if (cfg.reps == 0) throw std::invalid_argument("--reps must be >= 1");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const Scenario sc = build_scenario(cfg.params);
    if (!cfg.dump_path.empty()) {
      std::ofstream dump(cfg.dump_path);
      if (!dump) {
        std::cerr << "error: cannot open " << cfg.dump_path << " for writing\n";
        return kExitUsage;
      }
      dump_scenario(sc, dump);
    }

    TraceLog trace;
    TraceLog* trace_ptr = (cfg.engine == "dist" && cfg.trace_messages) ? &trace : nullptr;
    EngineOutcome out = run_engine(cfg, sc, trace_ptr);
    if (cfg.corrupt_report) out.report.checksum_found += 1;

    if (trace_ptr) trace.write(std::cerr);

    if (cfg.verify) {
      const SearchReport oracle = search_all_sequential(sc.sequence, sc.patterns);
      if (const auto diff = report_diff(oracle, out.report)) {
        std::cerr << "verification failed: " << *diff << "\n";
        return kExitVerifyMismatch;
      }
    }

    emit_report(cfg, out);
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "protocol violation: " << e.what() << "\n";
    return kExitProtocol;
  }
}
