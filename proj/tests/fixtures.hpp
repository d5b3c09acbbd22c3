#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cfp/instance.hpp"
#include "cfp/rational.hpp"
#include "cfp/solution.hpp"

namespace fixtures {

// 5x7 example matrix with 20 operations.
inline const char* const kExampleText =
    "5 7\n"
    "1 0 0 0 1 1 1\n"
    "0 1 1 1 1 0 0\n"
    "0 0 1 1 1 1 0\n"
    "1 1 1 1 0 0 0\n"
    "0 1 0 1 1 1 0\n";

// Two cells for the example: machines {1,4} with parts {1,7}, the rest together.
inline const char* const kExampleTwoCellText =
    "2\n"
    "1 2 2 1 2\n"
    "1 2 2 2 2 2 1\n";

inline cfp::Instance example() { return cfp::parse_instance(kExampleText, "example"); }

inline cfp::Instance random_instance(std::mt19937_64& rng, int m, int p, double density) {
  std::bernoulli_distribution bit(density);
  std::vector<std::uint8_t> a(static_cast<std::size_t>(m) * p);
  for (auto& v : a) v = bit(rng) ? 1 : 0;
  return cfp::Instance("rand", m, p, std::move(a));
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Test-side reference: every set partition of the machines (by recursive
// restricted-growth labels), and for each one the best part labeling found by
// trying every labeling. Independent of the library search code.
struct BruteResult {
  cfp::Rational best{0};
  std::uint64_t partitions = 0;
};

inline void for_each_partition(int m, int max_cells, const std::function<void(const std::vector<int>&, int)>& f) {
  std::vector<int> lab(m, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == m) {
      f(lab, used);
      return;
    }
    for (int l = 1; l <= std::min(used + 1, max_cells); ++l) {
      lab[i] = l;
      rec(i + 1, std::max(used, l));
    }
  };
  rec(0, 0);
}

inline cfp::Rational ratio(int n1, int in1, int in0) {
  return (n1 + in0) == 0 ? cfp::Rational(0) : cfp::Rational(in1, n1 + in0);
}

inline BruteResult brute_force(const cfp::Instance& inst, cfp::Regime regime) {
  BruteResult r;
  const bool residual = regime == cfp::Regime::AllowResidual;
  for_each_partition(inst.m, inst.m, [&](const std::vector<int>& mc, int c) {
    ++r.partitions;
    if (!residual && c > inst.p) return;
    std::vector<int> pc(inst.p, residual ? 0 : 1);
    const int lo = residual ? 0 : 1;
    for (;;) {
      bool ok = true;
      if (!residual) {
        std::vector<int> seen(c + 1, 0);
        for (int v : pc) seen[v] = 1;
        for (int k = 1; k <= c; ++k) ok = ok && seen[k];
      }
      if (ok) {
        int in1 = 0, in0 = 0;
        for (int i = 0; i < inst.m; ++i)
          for (int j = 0; j < inst.p; ++j)
            if (pc[j] != 0 && pc[j] == mc[i]) (inst.at(i, j) ? in1 : in0)++;
        const cfp::Rational t = ratio(inst.n1, in1, in0);
        if (t > r.best) r.best = t;
      }
      int j = 0;
      while (j < inst.p && pc[j] == c) pc[j++] = lo;
      if (j == inst.p) break;
      ++pc[j];
    }
  });
  return r;
}

// Random solution feasible under the regime.
inline cfp::Solution random_feasible(const cfp::Instance& inst, cfp::Regime regime, std::mt19937_64& rng) {
  const bool residual = regime == cfp::Regime::AllowResidual;
  const int c = uniform_int(rng, 1, residual ? inst.m : std::min(inst.m, inst.p));
  std::vector<int> mc(inst.m), pc(inst.p);
  std::vector<int> mperm(inst.m), pperm(inst.p);
  for (int i = 0; i < inst.m; ++i) mperm[i] = i;
  for (int j = 0; j < inst.p; ++j) pperm[j] = j;
  std::shuffle(mperm.begin(), mperm.end(), rng);
  std::shuffle(pperm.begin(), pperm.end(), rng);
  for (int k = 0; k < inst.m; ++k) mc[mperm[k]] = k < c ? k + 1 : uniform_int(rng, residual ? 0 : 1, c);
  for (int k = 0; k < inst.p; ++k)
    pc[pperm[k]] = (!residual && k < c) ? k + 1 : uniform_int(rng, residual ? 0 : 1, c);
  return cfp::make_solution(inst, std::move(mc), std::move(pc), c);
}

}  // namespace fixtures
