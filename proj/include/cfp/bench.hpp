#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfp/dinkelbach.hpp"
#include "cfp/solution.hpp"

namespace cfp {

/// One manifest line: `<instance path> <regime> <expected efficacy>`, the
/// path relative to the manifest's directory.
struct BenchEntry {
  std::string path;
  Regime regime = Regime::NoResidual;
  std::int64_t expected = 0;  // efficacy x 10^4
};

std::vector<BenchEntry> parse_manifest(std::string_view text, const std::string& base_dir = {});

struct BenchOptions {
  std::optional<double> time_limit_s;
  SearchConfig heuristic;
  SubproblemOptions subproblem;
};

struct BenchRow {
  std::string name;
  int m = 0;
  int p = 0;
  Regime regime = Regime::NoResidual;
  std::int64_t expected = 0;
  std::optional<Rational> achieved;
  bool match = false;
  std::string status;  // Optimal, TimeLimit, Missing, Error
  int iters = 0;
  std::uint64_t nodes = 0;
  std::int64_t time_ms = 0;
  std::string error;
};

BenchRow bench_one(const BenchEntry& entry, const BenchOptions& options);

std::vector<BenchRow> run_bench(const std::vector<BenchEntry>& entries, const BenchOptions& options);

/// `name,m,p,regime,expected,achieved,match,status,iters,nodes,time_ms`.
std::string bench_csv(const std::vector<BenchRow>& rows);

std::string bench_table(const std::vector<BenchRow>& rows);

/// 1 when an Optimal row misses its expectation or a file could not be
/// read, 0 otherwise.
int bench_exit_code(const std::vector<BenchRow>& rows);

}  // namespace cfp
