#pragma once

#include "kscert/structures.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kscert {

/// 0/1 value per element id.
struct Assignment {
  std::map<int, int> values;

  /// Ids valued 1, ascending.
  std::vector<int> ones() const;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Elements (ascending ids) and contexts over them, each requiring exactly
/// one element valued 1. Elements in no context are free and reported as 0.
struct ExactlyOneProblem {
  std::vector<int> elements;
  std::vector<std::vector<int>> contexts;
};

ExactlyOneProblem to_problem(const CoverStructure& cover);

bool satisfies(const ExactlyOneProblem& problem, const Assignment& assignment);
bool satisfies(const CoverStructure& cover, const Assignment& assignment);

enum class SearchStatus { sat, unsat };
const char* to_string(SearchStatus status);

struct SearchResult {
  SearchStatus status = SearchStatus::unsat;
  std::optional<Assignment> witness;  // present iff sat
  std::uint64_t nodes_visited = 0;
  std::chrono::nanoseconds elapsed{0};
  std::optional<std::uint64_t> witness_count;  // exhaustive oracle only
};

struct SearchOptions {
  /// 1 = serial. Larger values split on the first decision variable; the
  /// status and witness do not depend on it.
  unsigned jobs = 1;
};

/// Complete backtracking search with propagation. Elements are branched in
/// order of decreasing incidence (ties by ascending id), value 1 first.
/// Setting an element to 1 forces its co-context elements to 0; a context
/// left with one open element and no 1 forces that element to 1. SAT
/// witnesses are re-verified before returning.
SearchResult search_assignment(const ExactlyOneProblem& problem, const SearchOptions& options = {});
SearchResult search_assignment(const CoverStructure& cover, const SearchOptions& options = {});

inline constexpr std::size_t kOracleMaxElements = 25;

/// Scans all 2^E assignments in increasing bitmask order (element k is bit
/// k). Reports the first witness and the number of witnesses. Throws
/// std::invalid_argument above kOracleMaxElements elements.
SearchResult exhaustive_oracle(const ExactlyOneProblem& problem);
SearchResult exhaustive_oracle(const CoverStructure& cover);

enum class DeletionSemantics {
  drop_context,    // contexts containing the element impose nothing
  shrink_context,  // contexts lose the element but keep exactly-one
};

struct DeletionOutcome {
  bool collapses = false;  // reduced instance is SAT
  std::optional<Assignment> witness;
  std::uint64_t nodes_visited = 0;
};

struct CriticalityReport {
  DeletionSemantics semantics = DeletionSemantics::drop_context;
  std::map<int, DeletionOutcome> per_element;
  bool critical = false;  // every deletion collapses
};

/// The instance with element `id` removed under the given semantics.
ExactlyOneProblem delete_element(const ExactlyOneProblem& problem, int id, DeletionSemantics semantics);

CriticalityReport criticality_report(const CoverStructure& cover,
                                     DeletionSemantics semantics = DeletionSemantics::drop_context,
                                     const SearchOptions& options = {});

/// One line per element: "<id> <SAT|UNSAT> [ids valued 1]".
std::string format_criticality(const CriticalityReport& report);

}  // namespace kscert
