#include "cfp/two_index_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "cfp/error.hpp"
#include "text.hpp"

namespace cfp {

namespace {

std::string x_name(int i, int k) { return "x_" + std::to_string(i + 1) + "_" + std::to_string(k + 1); }
std::string y_name(int i, int j) { return "y_" + std::to_string(i + 1) + "_" + std::to_string(j + 1); }

std::int64_t value_of(const LinearModel& model, const RelationAssignment& assign, int var) {
  const int pairs = model.m * (model.m - 1) / 2;
  if (var >= pairs) {
    const int off = var - pairs;
    return assign.with_part(off / model.p, off % model.p);
  }
  // Invert the pair index; models are small so a scan is fine.
  int idx = var;
  for (int i = 0; i < model.m; ++i) {
    const int span = model.m - i - 1;
    if (idx < span) return assign.same_cell(i, i + 1 + idx);
    idx -= span;
  }
  return 0;
}

// Appends "[+|-] [coef] name" terms, wrapping long expressions.
void render_terms(std::string& out, const LinearModel& model, const std::vector<std::pair<int, std::int64_t>>& terms) {
  int on_line = 0;
  bool first = true;
  for (const auto& [var, coef] : terms) {
    if (coef == 0) continue;
    if (on_line == 10) {
      out += "\n   ";
      on_line = 0;
    }
    const std::int64_t mag = coef < 0 ? -coef : coef;
    if (first)
      out += coef < 0 ? " - " : " ";
    else
      out += coef < 0 ? " - " : " + ";
    if (mag != 1) out += std::to_string(mag) + " ";
    out += model.var_names[var];
    first = false;
    ++on_line;
  }
  if (first) out += " 0 " + model.var_names.front();
}

bool is_number(std::string_view tok) {
  if (tok.empty()) return false;
  std::size_t k = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (k == tok.size()) return false;
  for (; k < tok.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(tok[k]))) return false;
  return true;
}

std::int64_t to_int(std::string_view tok) {
  std::int64_t v = 0;
  if (tok.front() == '+') tok.remove_prefix(1);
  std::from_chars(tok.data(), tok.data() + tok.size(), v);
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

int LinearModel::x_index(int i, int k) const { return i * (2 * m - i - 1) / 2 + (k - i - 1); }

RelationAssignment::RelationAssignment(int machines, int parts)
    : m(machines), p(parts), x(static_cast<std::size_t>(machines) * machines, 0),
      y(static_cast<std::size_t>(machines) * parts, 0) {
  for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(i) * m + i] = 1;
}

void RelationAssignment::set_same_cell(int i, int k, bool v) {
  if (i == k) return;
  x[static_cast<std::size_t>(i) * m + k] = v ? 1 : 0;
  x[static_cast<std::size_t>(k) * m + i] = v ? 1 : 0;
}

LinearModel build_model(const Instance& inst, const Rational& lambda, Regime regime) {
  if (lambda < Rational(0) || lambda > Rational(1)) throw Error("lambda must lie in [0, 1]");
  LinearModel model;
  model.m = inst.m;
  model.p = inst.p;
  const int m = inst.m;
  const int p = inst.p;
  const int pairs = m * (m - 1) / 2;
  model.var_names.reserve(pairs + m * p);
  for (int i = 0; i < m; ++i)
    for (int k = i + 1; k < m; ++k) model.var_names.push_back(x_name(i, k));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < p; ++j) model.var_names.push_back(y_name(i, j));

  const std::int64_t num = lambda.num();
  const std::int64_t den = lambda.den();
  model.objective.assign(model.var_names.size(), 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < p; ++j) model.objective[model.y_index(i, j)] = inst.at(i, j) ? den : -num;
  model.objective_constant = -num * inst.n1;

  auto sorted = [](std::vector<std::pair<int, std::int64_t>> c) {
    std::sort(c.begin(), c.end());
    return c;
  };
  model.rows.reserve(static_cast<std::size_t>(3) * pairs * p + (regime == Regime::NoResidual ? m + p : 0));
  for (int i = 0; i < m; ++i) {
    for (int k = i + 1; k < m; ++k) {
      const int x = model.x_index(i, k);
      const std::string tag = std::to_string(i + 1) + "_" + std::to_string(k + 1) + "_";
      for (int j = 0; j < p; ++j) {
        const int yi = model.y_index(i, j);
        const int yk = model.y_index(k, j);
        const std::string suffix = tag + std::to_string(j + 1);
        model.rows.push_back({"a_" + suffix, sorted({{x, 2}, {yi, -1}, {yk, -1}}), -1});
        model.rows.push_back({"b_" + suffix, sorted({{x, -1}, {yi, 1}, {yk, -1}}), -1});
        model.rows.push_back({"c_" + suffix, sorted({{x, -1}, {yi, -1}, {yk, 1}}), -1});
      }
    }
  }
  if (regime == Regime::NoResidual) {
    for (int i = 0; i < m; ++i) {
      LinearRow row{"machine_" + std::to_string(i + 1), {}, 1};
      for (int j = 0; j < p; ++j) row.coeffs.emplace_back(model.y_index(i, j), 1);
      model.rows.push_back(std::move(row));
    }
    for (int j = 0; j < p; ++j) {
      LinearRow row{"part_" + std::to_string(j + 1), {}, 1};
      for (int i = 0; i < m; ++i) row.coeffs.emplace_back(model.y_index(i, j), 1);
      model.rows.push_back(std::move(row));
    }
  }
  return model;
}

std::string export_lp(const LinearModel& model) {
  std::string out;
  out += "\\ two-index cell formation model: " + std::to_string(model.m) + " machines, " + std::to_string(model.p) +
         " parts\n";
  if (model.objective_constant != 0)
    out += "\\ objective_offset = " + std::to_string(model.objective_constant) + "\n";
  out += "Maximize\n obj:";
  std::vector<std::pair<int, std::int64_t>> terms;
  for (std::size_t v = 0; v < model.objective.size(); ++v)
    if (model.objective[v] != 0) terms.emplace_back(static_cast<int>(v), model.objective[v]);
  render_terms(out, model, terms);
  out += "\nSubject To\n";
  for (const auto& row : model.rows) {
    out += " " + row.name + ":";
    render_terms(out, model, row.coeffs);
    out += " >= " + std::to_string(row.rhs) + "\n";
  }
  out += "Binary\n";
  for (const auto& name : model.var_names) out += " " + name + "\n";
  out += "End\n";
  return out;
}

LinearModel parse_lp(std::string_view text) {
  enum class Section { None, Objective, Constraints, Binary, Done };
  Section section = Section::None;
  LinearModel model;

  struct RawTerm {
    std::string var;
    std::int64_t coef;
  };
  struct RawRow {
    std::string name;
    std::vector<RawTerm> terms;
    std::int64_t rhs = 0;
    bool closed = false;
  };
  std::vector<RawTerm> objective;
  std::vector<RawRow> rows;

  std::int64_t sign = 1;
  std::int64_t pending = 1;
  bool have_pending = false;
  bool expect_rhs = false;

  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size() && section != Section::Done) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++number;
    const std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    const auto tokens = detail::tokenize(raw);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tokens.front().front() == '\\') {
      if (tokens.size() == 4 && tokens[1] == "objective_offset" && tokens[2] == "=" && is_number(tokens[3])) {
        model.objective_constant = to_int(tokens[3]);
      }
      continue;
    }
    const std::string head = lower(tokens.front());
    if (head == "maximize" || head == "maximise" || head == "max") {
      section = Section::Objective;
      continue;
    }
    if (head == "subject" || head == "st" || head == "s.t.") {
      section = Section::Constraints;
      continue;
    }
    if (head == "binary" || head == "binaries" || head == "bin") {
      section = Section::Binary;
      continue;
    }
    if (head == "end") {
      section = Section::Done;
      continue;
    }
    if (section == Section::None) throw ParseError("unexpected text before objective section", number);

    for (auto tok : tokens) {
      if (section == Section::Binary) {
        model.var_names.emplace_back(tok);
        continue;
      }
      if (tok.back() == ':') {
        if (section == Section::Constraints) {
          if (!rows.empty() && !rows.back().closed) throw ParseError("row without right-hand side", number);
          rows.push_back({std::string(tok.substr(0, tok.size() - 1)), {}, 0, false});
        }
        sign = 1;
        have_pending = false;
        continue;
      }
      if (expect_rhs) {
        if (!is_number(tok)) throw ParseError("invalid right-hand side '" + std::string(tok) + "'", number);
        rows.back().rhs = to_int(tok);
        rows.back().closed = true;
        expect_rhs = false;
        continue;
      }
      if (tok == "+" || tok == "-") {
        sign = tok == "-" ? -1 : 1;
        continue;
      }
      if (tok == ">=") {
        if (section != Section::Constraints || rows.empty()) throw ParseError("misplaced '>='", number);
        expect_rhs = true;
        continue;
      }
      if (is_number(tok)) {
        pending = to_int(tok);
        have_pending = true;
        continue;
      }
      const std::int64_t coef = sign * (have_pending ? pending : 1);
      RawTerm term{std::string(tok), coef};
      if (section == Section::Objective)
        objective.push_back(std::move(term));
      else if (!rows.empty() && !rows.back().closed)
        rows.back().terms.push_back(std::move(term));
      else
        throw ParseError("term outside a row", number);
      sign = 1;
      have_pending = false;
    }
    if (end == text.size()) break;
  }
  if (!rows.empty() && !rows.back().closed) throw ParseError("row without right-hand side", number);
  if (model.var_names.empty()) throw ParseError("no Binary section", number);

  std::unordered_map<std::string, int> index;
  for (std::size_t v = 0; v < model.var_names.size(); ++v) {
    const auto& name = model.var_names[v];
    if (!index.emplace(name, static_cast<int>(v)).second) throw ParseError("duplicate variable " + name, 0);
    int a = 0, b = 0;
    if (name.size() > 2 && (name[0] == 'x' || name[0] == 'y') && name[1] == '_') {
      const auto sep = name.find('_', 2);
      if (sep != std::string::npos && detail::parse_small_int(std::string_view(name).substr(2, sep - 2), a) &&
          detail::parse_small_int(std::string_view(name).substr(sep + 1), b)) {
        if (name[0] == 'y') {
          model.m = std::max(model.m, a);
          model.p = std::max(model.p, b);
        } else {
          model.m = std::max(model.m, b);
        }
        continue;
      }
    }
    throw ParseError("unexpected variable name " + name, 0);
  }

  auto lookup = [&](const std::string& name) {
    const auto it = index.find(name);
    if (it == index.end()) throw ParseError("variable " + name + " not declared binary", 0);
    return it->second;
  };
  model.objective.assign(model.var_names.size(), 0);
  for (const auto& t : objective) model.objective[lookup(t.var)] += t.coef;
  for (auto& raw : rows) {
    LinearRow row{raw.name, {}, raw.rhs};
    for (const auto& t : raw.terms) row.coeffs.emplace_back(lookup(t.var), t.coef);
    std::sort(row.coeffs.begin(), row.coeffs.end());
    std::erase_if(row.coeffs, [](const auto& c) { return c.second == 0; });
    model.rows.push_back(std::move(row));
  }
  return model;
}

std::int64_t objective_value(const LinearModel& model, const RelationAssignment& assign) {
  std::int64_t total = model.objective_constant;
  const int pairs = model.m * (model.m - 1) / 2;
  for (int i = 0; i < model.m; ++i)
    for (int j = 0; j < model.p; ++j)
      total += model.objective[pairs + i * model.p + j] * assign.with_part(i, j);
  for (int v = 0; v < pairs; ++v) total += model.objective[v] * value_of(model, assign, v);
  return total;
}

bool satisfies(const LinearModel& model, const RelationAssignment& assign) {
  for (const auto& row : model.rows) {
    std::int64_t lhs = 0;
    for (const auto& [var, coef] : row.coeffs) lhs += coef * value_of(model, assign, var);
    if (lhs < row.rhs) return false;
  }
  return true;
}

RelationAssignment encode(const Instance& inst, const Solution& sol) {
  RelationAssignment r(inst.m, inst.p);
  for (int i = 0; i < inst.m; ++i) {
    const int ci = sol.machine_cell[i];
    if (ci == 0) continue;
    for (int k = i + 1; k < inst.m; ++k)
      if (sol.machine_cell[k] == ci) r.set_same_cell(i, k, true);
    for (int j = 0; j < inst.p; ++j)
      if (sol.part_cell[j] == ci) r.set_with_part(i, j, true);
  }
  return r;
}

Solution decode(const Instance& inst, const RelationAssignment& assign, Regime regime) {
  const int m = inst.m;
  const int p = inst.p;
  if (assign.m != m || assign.p != p) throw Error("relation dimensions do not match the instance");

  for (int i = 0; i < m; ++i) {
    for (int k = i + 1; k < m; ++k) {
      const bool x = assign.same_cell(i, k);
      for (int j = 0; j < p; ++j) {
        const bool yi = assign.with_part(i, j);
        const bool yk = assign.with_part(k, j);
        if ((x && yi != yk) || (!x && yi && yk))
          throw Error("inconsistent assignment: machines (" + std::to_string(i + 1) + "," + std::to_string(k + 1) +
                      ") and part " + std::to_string(j + 1) + " violate the block-diagonal triple");
      }
    }
  }

  // Union-find over machines linked by x.
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int i = 0; i < m; ++i)
    for (int k = i + 1; k < m; ++k)
      if (assign.same_cell(i, k)) parent[find(k)] = find(i);

  std::vector<int> label_of_root(m, 0);
  std::vector<int> machine_cell(m);
  int c = 0;
  for (int i = 0; i < m; ++i) {
    int& label = label_of_root[find(i)];
    if (label == 0) label = ++c;
    machine_cell[i] = label;
  }

  std::vector<int> part_cell(p, 0);
  std::vector<int> parts_in(c + 1, 0);
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < m; ++i) {
      if (assign.with_part(i, j)) {
        part_cell[j] = machine_cell[i];
        break;
      }
    }
    if (part_cell[j] == 0 && regime == Regime::NoResidual)
      throw Error("infeasible under no-residual: part " + std::to_string(j + 1) + " is not assigned");
    ++parts_in[part_cell[j]];
  }
  if (regime == Regime::NoResidual)
    for (int k = 1; k <= c; ++k)
      if (parts_in[k] == 0) throw Error("infeasible under no-residual: cell " + std::to_string(k) + " has no parts");
  return make_solution(inst, std::move(machine_cell), std::move(part_cell), c);
}

std::map<std::string, std::int64_t> read_variable_values(std::string_view text) {
  std::map<std::string, std::int64_t> values;
  for (const auto& line : detail::content_lines(text)) {
    if (line.tokens.size() != 2) throw ParseError("expected 'name value'", line.number);
    double v = 0;
    const auto tok = line.tokens[1];
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      throw ParseError("invalid value '" + std::string(tok) + "'", line.number);
    values[std::string(line.tokens[0])] = std::llround(v);
  }
  return values;
}

RelationAssignment assignment_from_values(const Instance& inst, const std::map<std::string, std::int64_t>& values) {
  RelationAssignment r(inst.m, inst.p);
  for (const auto& [name, value] : values) {
    int a = 0, b = 0;
    const auto sep = name.find('_', 2);
    const bool shaped = name.size() > 2 && (name[0] == 'x' || name[0] == 'y') && name[1] == '_' &&
                        sep != std::string::npos &&
                        detail::parse_small_int(std::string_view(name).substr(2, sep - 2), a) &&
                        detail::parse_small_int(std::string_view(name).substr(sep + 1), b);
    if (!shaped) throw Error("unknown variable '" + name + "'");
    if (value != 0 && value != 1) throw Error("variable '" + name + "' is not binary: " + std::to_string(value));
    if (name[0] == 'x') {
      if (a < 1 || b <= a || b > inst.m) throw Error("unknown variable '" + name + "'");
      r.set_same_cell(a - 1, b - 1, value == 1);
    } else {
      if (a < 1 || a > inst.m || b < 1 || b > inst.p) throw Error("unknown variable '" + name + "'");
      r.set_with_part(a - 1, b - 1, value == 1);
    }
  }
  return r;
}

std::string write_variable_values(const LinearModel& model, const RelationAssignment& assign) {
  std::string out;
  for (std::size_t v = 0; v < model.var_names.size(); ++v)
    out += model.var_names[v] + " " + std::to_string(value_of(model, assign, static_cast<int>(v))) + "\n";
  return out;
}

}  // namespace cfp
