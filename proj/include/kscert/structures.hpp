#pragma once

#include "kscert/rays.hpp"

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace kscert {

/// A complete measurement: an orthogonal basis (weight 1) or a POVM whose
/// elements are `weight` times the projectors onto its rays.
struct Context {
  std::string name;
  std::vector<int> element_ids;  // ascending, distinct
  Rational weight{1};

  friend bool operator==(const Context&, const Context&) = default;
};

enum class CoverKind { basis, povm };

const char* to_string(CoverKind kind);

/// Contexts over the rays of a ray set. Every element carries the
/// exactly-one-value-1 constraint in every context containing it.
class CoverStructure {
 public:
  /// Checks that element ids exist and are distinct within each context and
  /// computes incidences. Does not check orthogonality or completeness; see
  /// verify_cover.
  CoverStructure(std::shared_ptr<const RaySet> rays, CoverKind kind, std::vector<Context> contexts);

  const RaySet& rays() const { return *rays_; }
  std::shared_ptr<const RaySet> rays_ptr() const { return rays_; }
  CoverKind kind() const { return kind_; }
  const std::vector<Context>& contexts() const { return contexts_; }

  /// Every ray id of the ray set, including ids in no context (count 0).
  const std::map<int, int>& incidence() const { return incidence_; }

  /// Ascending ids of the ray set. This is the variable set of searches and
  /// CNF exports.
  std::vector<int> element_ids() const;

 private:
  std::shared_ptr<const RaySet> rays_;
  CoverKind kind_;
  std::vector<Context> contexts_;
  std::map<int, int> incidence_;
};

struct OrthogonalityGraph {
  std::vector<int> ids;                         // in ray set order
  std::map<int, std::vector<int>> neighbors;    // ascending

  std::size_t degree(int id) const { return neighbors.at(id).size(); }
  std::size_t edge_count() const;
};

/// Edge (i, j) iff the rays are orthogonal: exact dot = 0, or |⟨i|j⟩| < tol
/// for floating sets.
OrthogonalityGraph orthogonality_graph(const RaySet& rays, double tol = kTolHermitian);

/// All sets of dim pairwise-orthogonal rays, found as maximum cliques of the
/// orthogonality graph (Bron-Kerbosch with pivoting). Output is sorted
/// lexicographically by ascending id lists; contexts are named T1, T2, ...
/// in that order. Requires dim >= 2.
std::vector<Context> enumerate_bases(const RaySet& rays, double tol = kTolHermitian);

/// Basis cover from enumerate_bases, weight 1.
CoverStructure build_ks_cover(const RaySet& rays, double tol = kTolHermitian);

/// A POVM group given either as basis names ("T1", resolved against
/// enumerate_bases) or as raw ray ids.
using Group = std::variant<std::vector<std::string>, std::vector<int>>;

/// One POVM context per group holding the union of its ray ids. Each
/// context must satisfy weight · Σ projectors = I (exactly, or within tol for
/// floating sets); otherwise throws VerificationError naming the group and
/// showing the residual.
CoverStructure build_gks_cover(const RaySet& rays, const std::vector<Group>& groups,
                               const Rational& weight, double tol = kTolIdentity);

struct ContextCheck {
  std::string name;
  bool ok = false;
  std::string detail;  // failure reason, or residual text for POVMs
  double residual = 0.0;  // max entrywise |Σ - I| (0 for exact successes)
};

struct CoverVerification {
  bool ok = true;
  bool exact = true;
  std::vector<ContextCheck> contexts;
};

/// Re-verifies a cover: basis contexts must hold dim pairwise-orthogonal
/// rays, POVM contexts must resolve the identity.
CoverVerification verify_cover(const CoverStructure& cover, double tol = kTolIdentity);

/// (odd context count, all-even incidence) witness of noncolorability.
struct ParityCertificate {
  std::size_t context_count = 0;
  std::map<int, int> incidence_counts;
  bool valid = false;
};

/// valid iff the context count is odd and every element occurs in a
/// positive even number of contexts. A valid certificate rules out any
/// exactly-one 0/1 assignment: summing the value-1 count over contexts gives
/// an odd total that also counts every value-1 element an even number of
/// times.
ParityCertificate parity_certificate(const CoverStructure& cover);

// Cover text format:
//
//   kind basis|povm
//   weight p/q
//   ctx <name> <id> <id> ...
//
// '#' starts a comment.

struct CoverFile {
  CoverKind kind = CoverKind::basis;
  Rational weight{1};
  std::vector<Context> contexts;
};

/// Throws ParseError with the line number.
CoverFile parse_cover(std::string_view text);

/// Requires a uniform weight across contexts.
std::string write_cover(const CoverStructure& cover);
std::string write_cover(const CoverFile& file);

/// Attaches a parsed cover to its ray set (unverified).
CoverStructure attach(const CoverFile& file, std::shared_ptr<const RaySet> rays);

}  // namespace kscert
