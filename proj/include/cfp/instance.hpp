#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cfp/rational.hpp"

namespace cfp {

/// Binary machine-part incidence matrix. Machines are rows, parts columns;
/// indices are 0-based in memory and 1-based in every text format.
struct Instance {
  std::string name;
  int m = 0;
  int p = 0;
  std::vector<std::uint8_t> a;  // row-major, m * p
  int n1 = 0;

  Instance() = default;
  Instance(std::string name, int machines, int parts, std::vector<std::uint8_t> cells);

  std::uint8_t at(int machine, int part) const { return a[static_cast<std::size_t>(machine) * p + part]; }
  int row_sum(int machine) const;
  int col_sum(int part) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Builds an instance from nested rows; throws cfp::Error on ragged or
/// non-binary input.
Instance make_instance(const std::vector<std::vector<int>>& rows, std::string name = {});

struct ValidationReport {
  std::vector<int> zero_rows;  // 1-based machine indices
  std::vector<int> zero_cols;  // 1-based part indices
  int n1 = 0;
  Rational density;
  std::vector<std::string> warnings;
};

/// Header "m p", then m rows of p tokens in {0,1}. Lines starting with '#'
/// are skipped anywhere, as are blank lines.
Instance parse_instance(std::string_view text, std::string name = {});

ValidationReport validate_instance(const Instance& inst);

std::string write_instance(const Instance& inst);

/// Reads the file and names the instance after the file stem.
Instance load_instance(const std::string& path);

}  // namespace cfp
