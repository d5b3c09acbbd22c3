#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfp/instance.hpp"
#include "cfp/rational.hpp"
#include "cfp/solution.hpp"

namespace cfp {

/// One `>=` row of a 0-1 linear program.
struct LinearRow {
  std::string name;
  std::vector<std::pair<int, std::int64_t>> coeffs;  // (variable index, coefficient), ascending index
  std::int64_t rhs = 0;

  friend bool operator==(const LinearRow&, const LinearRow&) = default;
};

/// Maximization 0-1 program with integer data.
///
/// Variables are ordered x_{ik} for machine pairs i < k (lexicographic), then
/// y_{ij} for every machine-part pair (row-major). Objective coefficients of
/// x are zero; `objective_constant` is the term that does not depend on any
/// variable.
struct LinearModel {
  int m = 0;
  int p = 0;
  std::vector<std::string> var_names;
  std::vector<std::int64_t> objective;
  std::int64_t objective_constant = 0;
  std::vector<LinearRow> rows;

  int x_index(int i, int k) const;  // i < k, 0-based
  int y_index(int i, int j) const { return m * (m - 1) / 2 + i * p + j; }

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

/// Machine-machine and machine-part co-membership relation.
struct RelationAssignment {
  int m = 0;
  int p = 0;
  std::vector<std::uint8_t> x;  // m * m, symmetric, diagonal 1
  std::vector<std::uint8_t> y;  // m * p

  RelationAssignment() = default;
  RelationAssignment(int machines, int parts);

  std::uint8_t same_cell(int i, int k) const { return x[static_cast<std::size_t>(i) * m + k]; }
  void set_same_cell(int i, int k, bool v);
  std::uint8_t with_part(int i, int j) const { return y[static_cast<std::size_t>(i) * p + j]; }
  void set_with_part(int i, int j, bool v) { y[static_cast<std::size_t>(i) * p + j] = v ? 1 : 0; }

  friend bool operator==(const RelationAssignment&, const RelationAssignment&) = default;
};

/// Linearized efficacy for lambda = num/den scaled by den:
///   sum_{ij} (den * a_ij - num * (1 - a_ij)) y_ij - num * n1
/// subject to, for every machine pair i < k and part j,
///   2 x_ik - y_ij - y_kj >= -1,  y_ij - y_kj - x_ik >= -1,  y_kj - y_ij - x_ik >= -1
/// and, under NoResidual, sum_j y_ij >= 1 per machine and sum_i y_ij >= 1 per part.
LinearModel build_model(const Instance& inst, const Rational& lambda, Regime regime);

/// CPLEX LP text. The constant objective term is reported in a
/// `\ objective_offset = <int>` comment line when non-zero.
std::string export_lp(const LinearModel& model);

/// Reads back the subset of LP syntax produced by export_lp. Variable names
/// come from the Binary section in order; m and p are recovered from them.
LinearModel parse_lp(std::string_view text);

/// Value of the model objective (constant included) at a point.
std::int64_t objective_value(const LinearModel& model, const RelationAssignment& assign);

/// True when the point satisfies every row of the model.
bool satisfies(const LinearModel& model, const RelationAssignment& assign);

RelationAssignment encode(const Instance& inst, const Solution& sol);

/// Machine cells are connected components of the x relation, numbered by
/// first machine. Throws cfp::Error for an inconsistent relation, or under
/// NoResidual for an unassigned part or a cell without parts.
Solution decode(const Instance& inst, const RelationAssignment& assign, Regime regime);

/// `name value` per line, as written by most solvers' plain solution dumps.
/// Values are rounded to the nearest integer.
std::map<std::string, std::int64_t> read_variable_values(std::string_view text);

/// Builds a relation from named values; missing variables are 0. Throws on
/// names that are not x_i_k / y_i_j within the instance.
RelationAssignment assignment_from_values(const Instance& inst, const std::map<std::string, std::int64_t>& values);

/// `name value` lines for every variable of the point, the inverse of
/// assignment_from_values.
std::string write_variable_values(const LinearModel& model, const RelationAssignment& assign);

}  // namespace cfp
