#include "cfp/solution.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "cfp/error.hpp"
#include "text.hpp"

namespace cfp {

std::string_view to_string(Regime r) { return r == Regime::NoResidual ? "no-residual" : "allow-residual"; }

Regime parse_regime(std::string_view text) {
  if (text == "no-residual") return Regime::NoResidual;
  if (text == "allow-residual") return Regime::AllowResidual;
  throw Error("unknown regime '" + std::string(text) + "' (expected no-residual or allow-residual)");
}

CellCounts count_cells(const Instance& inst, const std::vector<int>& machine_cell, const std::vector<int>& part_cell) {
  CellCounts counts;
  for (int i = 0; i < inst.m; ++i) {
    const int cell = machine_cell[i];
    if (cell == 0) continue;
    for (int j = 0; j < inst.p; ++j) {
      if (part_cell[j] != cell) continue;
      if (inst.at(i, j))
        ++counts.n1_in;
      else
        ++counts.n0_in;
    }
  }
  return counts;
}

Rational efficacy_from_counts(int n1, int n1_in, int n0_in) {
  const int den = n1 + n0_in;
  return den == 0 ? Rational(0) : Rational(n1_in, den);
}

Solution make_solution(const Instance& inst, std::vector<int> machine_cell, std::vector<int> part_cell, int c) {
  if (static_cast<int>(machine_cell.size()) != inst.m)
    throw Error("solution has " + std::to_string(machine_cell.size()) + " machine labels, instance has " +
                std::to_string(inst.m) + " machines");
  if (static_cast<int>(part_cell.size()) != inst.p)
    throw Error("solution has " + std::to_string(part_cell.size()) + " part labels, instance has " +
                std::to_string(inst.p) + " parts");
  const int used = std::max(*std::max_element(machine_cell.begin(), machine_cell.end()),
                            *std::max_element(part_cell.begin(), part_cell.end()));
  if (c < 0) c = used;
  for (int v : machine_cell)
    if (v < 0 || v > c) throw Error("label out of range: " + std::to_string(v));
  for (int v : part_cell)
    if (v < 0 || v > c) throw Error("label out of range: " + std::to_string(v));

  Solution sol{std::move(machine_cell), std::move(part_cell), c, 0, 0, Rational(0)};
  refresh(inst, sol);
  return sol;
}

Rational efficacy(const Instance& inst, const Solution& sol) {
  const auto counts = count_cells(inst, sol.machine_cell, sol.part_cell);
  return efficacy_from_counts(inst.n1, counts.n1_in, counts.n0_in);
}

Rational refresh(const Instance& inst, Solution& sol) {
  const auto counts = count_cells(inst, sol.machine_cell, sol.part_cell);
  sol.n1_in = counts.n1_in;
  sol.n0_in = counts.n0_in;
  sol.efficacy = efficacy_from_counts(inst.n1, counts.n1_in, counts.n0_in);
  return sol.efficacy;
}

Solution single_cell_solution(const Instance& inst) {
  return make_solution(inst, std::vector<int>(inst.m, 1), std::vector<int>(inst.p, 1), 1);
}

Feasibility check_feasible(const Instance& inst, const Solution& sol, Regime regime) {
  Feasibility out;
  auto violate = [&](std::string msg) {
    out.feasible = false;
    out.violations.push_back(std::move(msg));
  };
  if (static_cast<int>(sol.machine_cell.size()) != inst.m || static_cast<int>(sol.part_cell.size()) != inst.p) {
    violate("label count does not match instance dimensions");
    return out;
  }

  std::vector<int> machines(sol.c + 1, 0);
  std::vector<int> parts(sol.c + 1, 0);
  for (int i = 0; i < inst.m; ++i) {
    const int v = sol.machine_cell[i];
    if (v < 0 || v > sol.c) {
      violate("machine " + std::to_string(i + 1) + " label " + std::to_string(v) + " out of range");
      continue;
    }
    ++machines[v];
    if (v == 0 && regime == Regime::NoResidual) violate("residual machine " + std::to_string(i + 1));
  }
  for (int j = 0; j < inst.p; ++j) {
    const int v = sol.part_cell[j];
    if (v < 0 || v > sol.c) {
      violate("part " + std::to_string(j + 1) + " label " + std::to_string(v) + " out of range");
      continue;
    }
    ++parts[v];
    if (v == 0 && regime == Regime::NoResidual) violate("residual part " + std::to_string(j + 1));
  }
  if (regime == Regime::NoResidual) {
    for (int k = 1; k <= sol.c; ++k) {
      if (machines[k] == 0 && parts[k] == 0) continue;  // unused label; canonicalize drops it
      if (parts[k] == 0) violate("cell " + std::to_string(k) + " has no parts");
      if (machines[k] == 0) violate("cell " + std::to_string(k) + " has no machines");
    }
  }
  return out;
}

std::int64_t void_upper_bound(std::int64_t n1, const Rational& tau) {
  if (tau.num() <= 0) throw Error("bound undefined for zero efficacy");
  return (tau.den() - tau.num()) * n1 / tau.num();
}

Solution canonicalize(const Solution& sol) {
  std::unordered_map<int, int> relabel;
  std::vector<int> machines(sol.machine_cell.size());
  int next = 0;
  for (std::size_t i = 0; i < sol.machine_cell.size(); ++i) {
    const int v = sol.machine_cell[i];
    if (v == 0) {
      machines[i] = ++next;
      continue;
    }
    auto [it, inserted] = relabel.try_emplace(v, next + 1);
    if (inserted) ++next;
    machines[i] = it->second;
  }
  std::vector<int> parts(sol.part_cell.size());
  for (std::size_t j = 0; j < sol.part_cell.size(); ++j) {
    const auto it = relabel.find(sol.part_cell[j]);
    parts[j] = (sol.part_cell[j] == 0 || it == relabel.end()) ? 0 : it->second;
  }
  return Solution{std::move(machines), std::move(parts), next, sol.n1_in, sol.n0_in, sol.efficacy};
}

Solution parse_solution(std::string_view text, const Instance& inst) {
  const auto lines = detail::content_lines(text);
  if (lines.size() != 3)
    throw ParseError("solution needs 3 lines (c, machine labels, part labels), got " + std::to_string(lines.size()),
                     lines.empty() ? 1 : lines.back().number);
  int c = 0;
  if (lines[0].tokens.size() != 1 || !detail::parse_small_int(lines[0].tokens[0], c))
    throw ParseError("malformed cell count", lines[0].number);

  auto read_labels = [&](const detail::Line& line, int expected, const char* what) {
    if (static_cast<int>(line.tokens.size()) != expected)
      throw ParseError(std::string(what) + " line length mismatch: expected " + std::to_string(expected) +
                           " labels, got " + std::to_string(line.tokens.size()),
                       line.number);
    std::vector<int> labels;
    labels.reserve(expected);
    for (auto tok : line.tokens) {
      int v = 0;
      if (!detail::parse_small_int(tok, v)) throw ParseError("invalid label '" + std::string(tok) + "'", line.number);
      if (v > c)
        throw ParseError("label out of range: " + std::to_string(v) + " exceeds " + std::to_string(c) + " cells",
                         line.number);
      labels.push_back(v);
    }
    return labels;
  };
  auto machines = read_labels(lines[1], inst.m, "machine");
  auto parts = read_labels(lines[2], inst.p, "part");
  return make_solution(inst, std::move(machines), std::move(parts), c);
}

std::string write_solution(const Solution& sol) {
  std::string out = std::to_string(sol.c) + "\n";
  auto emit = [&out](const std::vector<int>& labels) {
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (k > 0) out += ' ';
      out += std::to_string(labels[k]);
    }
    out += '\n';
  };
  emit(sol.machine_cell);
  emit(sol.part_cell);
  return out;
}

Solution load_solution(const std::string& path, const Instance& inst) {
  const std::string text = detail::read_file(path);
  try {
    return parse_solution(text, inst);
  } catch (const ParseError& e) {
    throw e.prefixed(path);
  }
}

std::string raw_efficacy(const Instance& inst, const Solution& sol) {
  const int den = inst.n1 + sol.n0_in;
  return std::to_string(sol.n1_in) + "/" + std::to_string(den == 0 ? 1 : den);
}

std::string efficacy_report(const Instance& inst, const Solution& sol) {
  return "n1=" + std::to_string(inst.n1) + " n1_in=" + std::to_string(sol.n1_in) + " n0_in=" +
         std::to_string(sol.n0_in) + " efficacy=" + raw_efficacy(inst, sol) + " (" + format_fixed4(sol.efficacy) +
         ")";
}

}  // namespace cfp
