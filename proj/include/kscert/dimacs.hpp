#pragma once

#include "kscert/coloring.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace kscert {

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  /// var_ids[k - 1] is the ray id of variable k; empty when unknown.
  std::vector<int> var_ids;
};

/// Variable k is the k-th element id in ascending order. Per context: one
/// at-least-one clause, then ¬x_i ∨ ¬x_j for every pair i < j.
Cnf export_cnf(const CoverStructure& cover);

/// "c var <k> ray <id>" per variable, "p cnf <V> <C>", then one clause per
/// line terminated by 0. LF line endings.
std::string to_dimacs(const Cnf& cnf);

/// Accepts clauses spanning lines and "c var <k> ray <id>" comments. Throws
/// ParseError for a malformed header, a literal out of range or an
/// unterminated clause.
Cnf parse_dimacs(std::string_view text);

/// Literals from a solver model: "v ..." lines or bare integers; "s"/"c"
/// lines and 0 terminators are skipped.
std::vector<int> parse_model(std::string_view text);

/// Maps positive literals back to ray ids (export variable order) and checks
/// exactly-one per context.
bool verify_model(const CoverStructure& cover, const std::vector<int>& model);

/// Small DPLL (unit propagation, lowest variable first, true first). The
/// witness maps variable numbers to values.
SearchResult solve_cnf(const Cnf& cnf);

}  // namespace kscert
