#include "kscert/coloring.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kscert {

std::vector<int> Assignment::ones() const {
  std::vector<int> out;
  for (const auto& [id, v] : values)
    if (v == 1) out.push_back(id);
  return out;
}

const char* to_string(SearchStatus status) { return status == SearchStatus::sat ? "SAT" : "UNSAT"; }

ExactlyOneProblem to_problem(const CoverStructure& cover) {
  ExactlyOneProblem p;
  p.elements = cover.element_ids();
  for (const auto& ctx : cover.contexts()) p.contexts.push_back(ctx.element_ids);
  return p;
}

bool satisfies(const ExactlyOneProblem& problem, const Assignment& assignment) {
  for (int id : problem.elements) {
    const auto it = assignment.values.find(id);
    if (it == assignment.values.end() || (it->second != 0 && it->second != 1)) return false;
  }
  for (const auto& ctx : problem.contexts) {
    int ones = 0;
    for (int id : ctx) {
      const auto it = assignment.values.find(id);
      if (it == assignment.values.end()) return false;
      ones += it->second;
    }
    if (ones != 1) return false;
  }
  return true;
}

bool satisfies(const CoverStructure& cover, const Assignment& assignment) {
  return satisfies(to_problem(cover), assignment);
}

namespace {

using Clock = std::chrono::steady_clock;

// Backtracking state over element indices; contexts hold indices.
class ExactlyOneSearch {
 public:
  explicit ExactlyOneSearch(const ExactlyOneProblem& problem) : elements_(problem.elements) {
    const std::size_t n = elements_.size();
    element_contexts_.resize(n);
    for (const auto& ctx : problem.contexts) {
      std::vector<std::size_t> members;
      for (int id : ctx) {
        const auto it = std::lower_bound(elements_.begin(), elements_.end(), id);
        if (it == elements_.end() || *it != id) {
          throw std::invalid_argument("context references unknown element " + std::to_string(id));
        }
        members.push_back(static_cast<std::size_t>(it - elements_.begin()));
      }
      for (std::size_t m : members) element_contexts_[m].push_back(contexts_.size());
      contexts_.push_back(std::move(members));
    }
    for (std::size_t e = 0; e < n; ++e)
      if (!element_contexts_[e].empty()) order_.push_back(e);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return element_contexts_[a].size() > element_contexts_[b].size();
    });
    values_.assign(n, kOpen);
  }

  /// Root propagation (empty and unit contexts). False on a root conflict.
  bool initialize() {
    for (std::size_t c = 0; c < contexts_.size(); ++c)
      if (!check_context(c)) return false;
    return true;
  }

  std::optional<std::size_t> next_decision() const {
    for (std::size_t e : order_)
      if (values_[e] == kOpen) return e;
    return std::nullopt;
  }

  /// Assigns and propagates; on conflict the trail is rewound to `mark`.
  bool try_assign(std::size_t e, int value) {
    const std::size_t mark = trail_.size();
    if (assign(e, value)) return true;
    undo(mark);
    return false;
  }

  bool solve() {
    const auto e = next_decision();
    if (!e) return true;
    for (int value : {1, 0}) {
      ++nodes_;
      const std::size_t mark = trail_.size();
      if (assign(*e, value) && solve()) return true;
      undo(mark);
    }
    return false;
  }

  Assignment assignment() const {
    Assignment a;
    for (std::size_t e = 0; e < elements_.size(); ++e) a.values[elements_[e]] = values_[e] == 1 ? 1 : 0;
    return a;
  }

  std::uint64_t nodes() const { return nodes_; }
  void add_nodes(std::uint64_t n) { nodes_ += n; }

 private:
  static constexpr int kOpen = -1;

  bool assign(std::size_t e, int value) {
    std::vector<std::size_t> queue{e};
    if (!set(e, value)) return false;
    while (!queue.empty()) {
      const std::size_t cur = queue.back();
      queue.pop_back();
      for (std::size_t c : element_contexts_[cur]) {
        if (values_[cur] == 1) {
          for (std::size_t f : contexts_[c]) {
            if (f == cur) continue;
            if (values_[f] == 1) return false;
            if (values_[f] == kOpen) {
              set(f, 0);
              queue.push_back(f);
            }
          }
        } else {
          std::size_t open = 0;
          std::size_t last_open = 0;
          bool has_one = false;
          for (std::size_t f : contexts_[c]) {
            if (values_[f] == 1) has_one = true;
            if (values_[f] == kOpen) {
              ++open;
              last_open = f;
            }
          }
          if (has_one) continue;
          if (open == 0) return false;
          if (open == 1) {
            set(last_open, 1);
            queue.push_back(last_open);
          }
        }
      }
    }
    return true;
  }

  bool check_context(std::size_t c) {
    if (contexts_[c].empty()) return false;
    if (contexts_[c].size() == 1 && values_[contexts_[c][0]] == kOpen) return assign(contexts_[c][0], 1);
    return true;
  }

  bool set(std::size_t e, int value) {
    if (values_[e] != kOpen) return values_[e] == value;
    values_[e] = value;
    trail_.push_back(e);
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      values_[trail_.back()] = kOpen;
      trail_.pop_back();
    }
  }

  std::vector<int> elements_;
  std::vector<std::vector<std::size_t>> contexts_;
  std::vector<std::vector<std::size_t>> element_contexts_;
  std::vector<std::size_t> order_;
  std::vector<int> values_;
  std::vector<std::size_t> trail_;
  std::uint64_t nodes_ = 0;
};

struct BranchOutcome {
  bool sat = false;
  Assignment witness;
  std::uint64_t nodes = 0;
};

SearchResult finish(const ExactlyOneProblem& problem, bool sat, Assignment witness, std::uint64_t nodes,
                    Clock::time_point start) {
  SearchResult result;
  result.nodes_visited = nodes;
  if (sat) {
    if (!satisfies(problem, witness)) throw std::logic_error("search produced an invalid witness");
    result.status = SearchStatus::sat;
    result.witness = std::move(witness);
  }
  result.elapsed = Clock::now() - start;
  return result;
}

}  // namespace

SearchResult search_assignment(const ExactlyOneProblem& problem, const SearchOptions& options) {
  const auto start = Clock::now();
  ExactlyOneSearch root(problem);
  if (!root.initialize()) return finish(problem, false, {}, 0, start);

  const auto first = root.next_decision();
  if (options.jobs <= 1 || !first) {
    const bool sat = root.solve();
    return finish(problem, sat, sat ? root.assignment() : Assignment{}, root.nodes(), start);
  }

  // One worker per value of the first decision variable, each on its own copy.
  auto branch = [&root, e = *first](int value) {
    ExactlyOneSearch worker = root;
    BranchOutcome out;
    out.nodes = 1;
    if (worker.try_assign(e, value) && worker.solve()) {
      out.sat = true;
      out.witness = worker.assignment();
    }
    out.nodes += worker.nodes();
    return out;
  };
  auto one = std::async(std::launch::async, branch, 1);
  auto zero = std::async(std::launch::async, branch, 0);
  BranchOutcome a = one.get();
  BranchOutcome b = zero.get();
  // The value-1 branch wins ties so the witness matches serial mode.
  if (a.sat) return finish(problem, true, std::move(a.witness), a.nodes + b.nodes, start);
  if (b.sat) return finish(problem, true, std::move(b.witness), a.nodes + b.nodes, start);
  return finish(problem, false, {}, a.nodes + b.nodes, start);
}

SearchResult search_assignment(const CoverStructure& cover, const SearchOptions& options) {
  return search_assignment(to_problem(cover), options);
}

SearchResult exhaustive_oracle(const ExactlyOneProblem& problem) {
  const std::size_t n = problem.elements.size();
  if (n > kOracleMaxElements) {
    throw std::invalid_argument("exhaustive oracle limited to " + std::to_string(kOracleMaxElements) +
                                " elements, got " + std::to_string(n));
  }
  const auto start = Clock::now();
  std::vector<std::uint32_t> masks;
  for (const auto& ctx : problem.contexts) {
    std::uint32_t m = 0;
    for (int id : ctx) {
      const auto it = std::lower_bound(problem.elements.begin(), problem.elements.end(), id);
      if (it == problem.elements.end() || *it != id) {
        throw std::invalid_argument("context references unknown element " + std::to_string(id));
      }
      m |= std::uint32_t{1} << (it - problem.elements.begin());
    }
    masks.push_back(m);
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t count = 0;
  std::optional<std::uint32_t> first;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    const auto x = static_cast<std::uint32_t>(bits);
    bool ok = true;
    for (std::uint32_t m : masks) {
      if (std::popcount(x & m) != 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      if (!first) first = x;
      ++count;
    }
  }
  SearchResult result;
  result.nodes_visited = total;
  result.witness_count = count;
  if (first) {
    Assignment a;
    for (std::size_t k = 0; k < n; ++k) a.values[problem.elements[k]] = (*first >> k) & 1u;
    result.status = SearchStatus::sat;
    result.witness = std::move(a);
  }
  result.elapsed = Clock::now() - start;
  return result;
}

SearchResult exhaustive_oracle(const CoverStructure& cover) { return exhaustive_oracle(to_problem(cover)); }

ExactlyOneProblem delete_element(const ExactlyOneProblem& problem, int id, DeletionSemantics semantics) {
  ExactlyOneProblem out;
  for (int e : problem.elements)
    if (e != id) out.elements.push_back(e);
  for (const auto& ctx : problem.contexts) {
    const bool contains = std::find(ctx.begin(), ctx.end(), id) != ctx.end();
    if (!contains) {
      out.contexts.push_back(ctx);
    } else if (semantics == DeletionSemantics::shrink_context) {
      std::vector<int> shrunk;
      for (int e : ctx)
        if (e != id) shrunk.push_back(e);
      out.contexts.push_back(std::move(shrunk));
    }
  }
  return out;
}

CriticalityReport criticality_report(const CoverStructure& cover, DeletionSemantics semantics,
                                     const SearchOptions& options) {
  const ExactlyOneProblem problem = to_problem(cover);
  CriticalityReport report;
  report.semantics = semantics;
  report.critical = true;
  for (int id : problem.elements) {
    const SearchResult r = search_assignment(delete_element(problem, id, semantics), options);
    DeletionOutcome outcome{r.status == SearchStatus::sat, r.witness, r.nodes_visited};
    report.critical = report.critical && outcome.collapses;
    report.per_element.emplace(id, std::move(outcome));
  }
  return report;
}

std::string format_criticality(const CriticalityReport& report) {
  std::ostringstream os;
  for (const auto& [id, outcome] : report.per_element) {
    os << id << ' ' << (outcome.collapses ? "SAT" : "UNSAT");
    if (outcome.witness) {
      os << " [";
      const auto ones = outcome.witness->ones();
      for (std::size_t k = 0; k < ones.size(); ++k) os << (k ? " " : "") << ones[k];
      os << ']';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace kscert
