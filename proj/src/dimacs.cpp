#include "kscert/dimacs.hpp"

#include "kscert/errors.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace kscert {

Cnf export_cnf(const CoverStructure& cover) {
  Cnf cnf;
  cnf.var_ids = cover.element_ids();
  cnf.num_vars = static_cast<int>(cnf.var_ids.size());
  auto var_of = [&](int id) {
    const auto it = std::lower_bound(cnf.var_ids.begin(), cnf.var_ids.end(), id);
    return static_cast<int>(it - cnf.var_ids.begin()) + 1;
  };
  for (const auto& ctx : cover.contexts()) {
    std::vector<int> vars;
    for (int id : ctx.element_ids) vars.push_back(var_of(id));
    std::sort(vars.begin(), vars.end());
    cnf.clauses.push_back(vars);
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (std::size_t j = i + 1; j < vars.size(); ++j) cnf.clauses.push_back({-vars[i], -vars[j]});
  }
  return cnf;
}

std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream os;
  for (std::size_t k = 0; k < cnf.var_ids.size(); ++k) os << "c var " << k + 1 << " ray " << cnf.var_ids[k] << '\n';
  os << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) os << lit << ' ';
    os << "0\n";
  }
  return os.str();
}

Cnf parse_dimacs(std::string_view text) {
  Cnf cnf;
  std::optional<std::size_t> header_line;
  long declared_clauses = 0;
  std::vector<int> pending;
  std::size_t pending_line = 0;
  std::map<int, int> mapping;

  const auto lines = detail::lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    std::istringstream is(lines[i]);
    std::vector<std::string> tokens;
    for (std::string tok; is >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens[0] == "c") {
      if (tokens.size() == 5 && tokens[1] == "var" && tokens[3] == "ray") {
        mapping[detail::parse_int(tokens[2], line_no, "variable")] = detail::parse_int(tokens[4], line_no, "ray id");
      }
      continue;
    }
    if (tokens[0] == "p") {
      if (header_line) throw ParseError(line_no, "malformed header: duplicate 'p' line");
      if (tokens.size() != 4 || tokens[1] != "cnf") throw ParseError(line_no, "malformed header: expected 'p cnf <vars> <clauses>'");
      char* end = nullptr;
      const long vars = std::strtol(tokens[2].c_str(), &end, 10);
      if (*end != '\0' || vars < 0) throw ParseError(line_no, "malformed header: bad variable count");
      declared_clauses = std::strtol(tokens[3].c_str(), &end, 10);
      if (*end != '\0' || declared_clauses < 0) throw ParseError(line_no, "malformed header: bad clause count");
      cnf.num_vars = static_cast<int>(vars);
      header_line = line_no;
      continue;
    }
    if (!header_line) throw ParseError(line_no, "malformed header: clause before 'p cnf' line");
    for (const auto& tok : tokens) {
      const int lit = detail::parse_int(tok, line_no, "literal");
      if (lit == 0) {
        cnf.clauses.push_back(std::move(pending));
        pending.clear();
        continue;
      }
      if (std::abs(lit) > cnf.num_vars) {
        throw ParseError(line_no, "literal " + tok + " out of range (" + std::to_string(cnf.num_vars) + " variables)");
      }
      if (pending.empty()) pending_line = line_no;
      pending.push_back(lit);
    }
  }
  if (!header_line) throw ParseError(lines.size() + 1, "malformed header: missing 'p cnf' line");
  if (!pending.empty()) throw ParseError(pending_line, "unterminated clause");
  if (static_cast<long>(cnf.clauses.size()) != declared_clauses) {
    throw ParseError(*header_line, "malformed header: declares " + std::to_string(declared_clauses) +
                                       " clauses, found " + std::to_string(cnf.clauses.size()));
  }
  if (static_cast<int>(mapping.size()) == cnf.num_vars) {
    for (int k = 1; k <= cnf.num_vars; ++k) {
      const auto it = mapping.find(k);
      if (it == mapping.end()) {
        cnf.var_ids.clear();
        break;
      }
      cnf.var_ids.push_back(it->second);
    }
  }
  return cnf;
}

std::vector<int> parse_model(std::string_view text) {
  std::vector<int> lits;
  const auto lines = detail::lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::istringstream is(lines[i]);
    std::vector<std::string> tokens;
    for (std::string tok; is >> tok;) tokens.push_back(tok);
    if (tokens.empty() || tokens[0] == "s" || tokens[0] == "c") continue;
    std::size_t k = tokens[0] == "v" ? 1 : 0;
    for (; k < tokens.size(); ++k) {
      const int lit = detail::parse_int(tokens[k], i + 1, "model literal");
      if (lit != 0) lits.push_back(lit);
    }
  }
  return lits;
}

bool verify_model(const CoverStructure& cover, const std::vector<int>& model) {
  const std::vector<int> ids = cover.element_ids();
  Assignment a;
  for (int id : ids) a.values[id] = 0;
  for (int lit : model) {
    const int var = std::abs(lit);
    if (var < 1 || var > static_cast<int>(ids.size())) return false;
    if (lit > 0) a.values[ids[static_cast<std::size_t>(var - 1)]] = 1;
  }
  return satisfies(cover, a);
}

namespace {

class Dpll {
 public:
  explicit Dpll(const Cnf& cnf) : cnf_(cnf), values_(static_cast<std::size_t>(cnf.num_vars) + 1, 0) {}

  bool solve() {
    std::vector<int> trail;
    if (!propagate(trail)) {
      undo(trail);
      return false;
    }
    int var = 0;
    for (int v = 1; v <= cnf_.num_vars; ++v)
      if (values_[static_cast<std::size_t>(v)] == 0) {
        var = v;
        break;
      }
    if (var == 0) return true;
    for (int lit : {var, -var}) {
      ++nodes_;
      set(lit, trail);
      if (solve()) return true;
      unset(lit, trail);
    }
    undo(trail);
    return false;
  }

  Assignment model() const {
    Assignment a;
    for (int v = 1; v <= cnf_.num_vars; ++v) a.values[v] = values_[static_cast<std::size_t>(v)] > 0 ? 1 : 0;
    return a;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // values_: +1 true, -1 false, 0 open.
  int value(int lit) const {
    const int v = values_[static_cast<std::size_t>(std::abs(lit))];
    return lit > 0 ? v : -v;
  }

  void set(int lit, std::vector<int>& trail) {
    values_[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : -1;
    trail.push_back(lit);
  }

  void unset(int lit, std::vector<int>& trail) {
    values_[static_cast<std::size_t>(std::abs(lit))] = 0;
    trail.pop_back();
  }

  void undo(std::vector<int>& trail) {
    for (int lit : trail) values_[static_cast<std::size_t>(std::abs(lit))] = 0;
    trail.clear();
  }

  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : cnf_.clauses) {
        int open = 0;
        int unit = 0;
        bool satisfied = false;
        for (int lit : clause) {
          const int v = value(lit);
          if (v > 0) {
            satisfied = true;
            break;
          }
          if (v == 0) {
            ++open;
            unit = lit;
          }
        }
        if (satisfied) continue;
        if (open == 0) return false;
        if (open == 1) {
          set(unit, trail);
          changed = true;
        }
      }
    }
    return true;
  }

  const Cnf& cnf_;
  std::vector<int> values_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SearchResult solve_cnf(const Cnf& cnf) {
  const auto start = std::chrono::steady_clock::now();
  Dpll dpll(cnf);
  SearchResult result;
  if (dpll.solve()) {
    result.status = SearchStatus::sat;
    result.witness = dpll.model();
    for (const auto& clause : cnf.clauses) {
      const bool ok = std::any_of(clause.begin(), clause.end(), [&](int lit) {
        return result.witness->values.at(std::abs(lit)) == (lit > 0 ? 1 : 0);
      });
      if (!ok) throw std::logic_error("DPLL produced an invalid model");
    }
  }
  result.nodes_visited = dpll.nodes();
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace kscert
