#include "cfp/instance.hpp"

#include <filesystem>
#include <numeric>

#include "cfp/error.hpp"
#include "text.hpp"

namespace cfp {

Instance::Instance(std::string name_, int machines, int parts, std::vector<std::uint8_t> cells)
    : name(std::move(name_)), m(machines), p(parts), a(std::move(cells)) {
  if (m < 1 || p < 1) throw Error("instance needs at least one machine and one part");
  if (a.size() != static_cast<std::size_t>(m) * p) throw Error("matrix size does not match m x p");
  for (auto v : a)
    if (v > 1) throw Error("matrix entries must be 0 or 1");
  n1 = std::accumulate(a.begin(), a.end(), 0);
}

int Instance::row_sum(int machine) const {
  int s = 0;
  for (int j = 0; j < p; ++j) s += at(machine, j);
  return s;
}

int Instance::col_sum(int part) const {
  int s = 0;
  for (int i = 0; i < m; ++i) s += at(i, part);
  return s;
}

Instance make_instance(const std::vector<std::vector<int>>& rows, std::string name) {
  if (rows.empty() || rows.front().empty()) throw Error("instance needs at least one machine and one part");
  const int m = static_cast<int>(rows.size());
  const int p = static_cast<int>(rows.front().size());
  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(m) * p);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != p) throw Error("ragged matrix");
    for (int v : row) {
      if (v != 0 && v != 1) throw Error("matrix entries must be 0 or 1");
      cells.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return Instance(std::move(name), m, p, std::move(cells));
}

Instance parse_instance(std::string_view text, std::string name) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError("malformed header: empty input", 1);

  const auto& header = lines.front();
  int m = 0;
  int p = 0;
  if (header.tokens.size() != 2 || !detail::parse_small_int(header.tokens[0], m) ||
      !detail::parse_small_int(header.tokens[1], p) || m < 1 || p < 1)
    throw ParseError("malformed header (expected 'm p' with m, p >= 1)", header.number);

  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(m) * p);
  const int rows = static_cast<int>(lines.size()) - 1;
  for (int r = 0; r < rows; ++r) {
    const auto& line = lines[r + 1];
    if (r >= m)
      throw ParseError("row count mismatch: expected " + std::to_string(m) + " rows, found extra row",
                       line.number);
    if (static_cast<int>(line.tokens.size()) != p)
      throw ParseError("row length mismatch: expected " + std::to_string(p) + " values, got " +
                           std::to_string(line.tokens.size()),
                       line.number);
    for (auto tok : line.tokens) {
      if (tok != "0" && tok != "1")
        throw ParseError("non-binary value '" + std::string(tok) + "'", line.number);
      cells.push_back(tok == "1" ? 1 : 0);
    }
  }
  if (rows < m) {
    const int last = lines.back().number;
    throw ParseError("row count mismatch: expected " + std::to_string(m) + " rows, got " + std::to_string(rows),
                     last + 1);
  }
  return Instance(std::move(name), m, p, std::move(cells));
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport rep;
  for (int i = 0; i < inst.m; ++i)
    if (inst.row_sum(i) == 0) rep.zero_rows.push_back(i + 1);
  for (int j = 0; j < inst.p; ++j)
    if (inst.col_sum(j) == 0) rep.zero_cols.push_back(j + 1);
  rep.n1 = std::accumulate(inst.a.begin(), inst.a.end(), 0);
  rep.density = Rational(rep.n1, static_cast<std::int64_t>(inst.m) * inst.p);

  for (int i : rep.zero_rows) rep.warnings.push_back("machine " + std::to_string(i) + " has no operations");
  for (int j : rep.zero_cols) rep.warnings.push_back("part " + std::to_string(j) + " has no operations");
  if (rep.n1 != inst.n1)
    rep.warnings.push_back("stored n1=" + std::to_string(inst.n1) + " differs from recount " + std::to_string(rep.n1));
  return rep;
}

std::string write_instance(const Instance& inst) {
  std::string out = std::to_string(inst.m) + " " + std::to_string(inst.p) + "\n";
  out.reserve(out.size() + static_cast<std::size_t>(inst.m) * (2 * inst.p));
  for (int i = 0; i < inst.m; ++i) {
    for (int j = 0; j < inst.p; ++j) {
      if (j > 0) out += ' ';
      out += inst.at(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

Instance load_instance(const std::string& path) {
  const std::string text = detail::read_file(path);
  try {
    return parse_instance(text, std::filesystem::path(path).stem().string());
  } catch (const ParseError& e) {
    throw e.prefixed(path);
  }
}

}  // namespace cfp
