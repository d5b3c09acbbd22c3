#include "cfp/bench.hpp"

#include <cstdio>
#include <filesystem>

#include "cfp/error.hpp"
#include "text.hpp"

namespace cfp {

std::vector<BenchEntry> parse_manifest(std::string_view text, const std::string& base_dir) {
  std::vector<BenchEntry> out;
  for (const auto& line : detail::content_lines(text)) {
    if (line.tokens.size() != 3) throw ParseError("expected '<path> <regime> <expected>'", line.number);
    BenchEntry e;
    std::filesystem::path path(line.tokens[0]);
    if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
    e.path = path.string();
    try {
      e.regime = parse_regime(line.tokens[1]);
      e.expected = parse_fixed4(line.tokens[2]);
    } catch (const Error& err) {
      throw ParseError(err.what(), line.number);
    }
    out.push_back(std::move(e));
  }
  return out;
}

BenchRow bench_one(const BenchEntry& entry, const BenchOptions& options) {
  BenchRow row;
  row.name = std::filesystem::path(entry.path).stem().string();
  row.regime = entry.regime;
  row.expected = entry.expected;
  if (!std::filesystem::exists(entry.path)) {
    row.status = "Missing";
    row.error = "file not found: " + entry.path;
    return row;
  }
  try {
    const Instance inst = load_instance(entry.path);
    row.m = inst.m;
    row.p = inst.p;
    const auto start = std::chrono::steady_clock::now();
    const Seed seed = seed_from(inst, entry.regime, {SeedKind::Heuristic, Rational(0), options.heuristic});
    const Budget budget = options.time_limit_s ? Budget::seconds(*options.time_limit_s) : Budget::unlimited();
    PartitionBnbSubsolver sub(options.subproblem);
    const SolveOutcome out = dinkelbach_solve(inst, entry.regime, seed, sub, budget);
    row.time_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    row.status = std::string(to_string(out.status));
    row.iters = out.iterations();
    row.nodes = out.total_nodes();
    if (out.solution) {
      row.achieved = out.solution->efficacy;
      row.match = row.achieved->round4() == row.expected;
    }
  } catch (const Error& e) {
    row.status = "Error";
    row.error = e.what();
  }
  return row;
}

std::vector<BenchRow> run_bench(const std::vector<BenchEntry>& entries, const BenchOptions& options) {
  std::vector<BenchRow> rows;
  rows.reserve(entries.size());
  for (const auto& e : entries) rows.push_back(bench_one(e, options));
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "name,m,p,regime,expected,achieved,match,status,iters,nodes,time_ms\n";
  for (const auto& r : rows) {
    out += r.name + "," + std::to_string(r.m) + "," + std::to_string(r.p) + "," + std::string(to_string(r.regime)) +
           "," + format_fixed4(r.expected) + "," + (r.achieved ? format_fixed4(*r.achieved) : "") + "," +
           (r.match ? "true" : "false") + "," + r.status + "," + std::to_string(r.iters) + "," +
           std::to_string(r.nodes) + "," + std::to_string(r.time_ms) + "\n";
  }
  return out;
}

std::string bench_table(const std::vector<BenchRow>& rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %5s %5s %-15s %8s %8s %-17s %-5s %-9s %5s %10s %9s\n", "name", "m", "p",
                "regime", "expected", "achieved", "exact", "match", "status", "iters", "nodes", "time_ms");
  out += buf;
  int matches = 0;
  for (const auto& r : rows) {
    matches += r.match ? 1 : 0;
    const std::string achieved = r.achieved ? format_fixed4(*r.achieved) : "-";
    const std::string exact = r.achieved ? r.achieved->str() : "-";
    std::snprintf(buf, sizeof buf, "%-16s %5d %5d %-15s %8s %8s %-17s %-5s %-9s %5d %10llu %9lld\n", r.name.c_str(),
                  r.m, r.p, std::string(to_string(r.regime)).c_str(), format_fixed4(r.expected).c_str(),
                  achieved.c_str(), exact.c_str(), r.match ? "yes" : "no", r.status.c_str(), r.iters,
                  static_cast<unsigned long long>(r.nodes), static_cast<long long>(r.time_ms));
    out += buf;
    if (!r.error.empty()) out += "  ! " + r.error + "\n";
  }
  out += "matched " + std::to_string(matches) + " of " + std::to_string(rows.size()) + " instances\n";
  return out;
}

int bench_exit_code(const std::vector<BenchRow>& rows) {
  for (const auto& r : rows) {
    if (r.status == "Optimal" && !r.match) return 1;
    if (r.status == "Missing" || r.status == "Error") return 1;
  }
  return 0;
}

}  // namespace cfp
