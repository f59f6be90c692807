#pragma once

#include "kscert/linalg.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kscert {

enum class Backend { exact, floating };

/// Integer components with gcd 1 and first nonzero component positive, so
/// that v and c·v (including c = -1) share one representative.
RationalVector canonical(const RationalVector& v);

/// Unit norm, first non-negligible component real and positive.
ComplexVector canonical(const ComplexVector& v);

struct Ray {
  int id = 0;
  std::variant<RationalVector, ComplexVector> coords;
  std::string label;

  bool is_exact() const { return std::holds_alternative<RationalVector>(coords); }
  const RationalVector& exact() const { return std::get<RationalVector>(coords); }
  const ComplexVector& complex() const { return std::get<ComplexVector>(coords); }
  std::size_t dim() const;
};

/// Ordered collection of rays sharing a dimension and backend. Rays are
/// stored canonicalized; ids and rays are both unique.
class RaySet {
 public:
  RaySet(std::size_t dim, Backend backend) : dim_(dim), backend_(backend) {}

  /// Canonicalizes and appends. Throws std::invalid_argument on a duplicate
  /// id, a ray equal to an existing one, a zero vector, or a dim/backend
  /// mismatch.
  void add(int id, RationalVector coords, std::string label = {});
  void add(int id, ComplexVector coords, std::string label = {});

  std::size_t dim() const { return dim_; }
  Backend backend() const { return backend_; }
  std::size_t size() const { return rays_.size(); }
  bool empty() const { return rays_.empty(); }
  const std::vector<Ray>& rays() const { return rays_; }
  auto begin() const { return rays_.begin(); }
  auto end() const { return rays_.end(); }

  bool contains(int id) const;
  const Ray& at(int id) const;
  std::vector<int> ids() const;

  /// Rays whose id is in `ids`, in this set's order.
  RaySet subset(const std::vector<int>& ids) const;

 private:
  void push(Ray ray);

  std::size_t dim_;
  Backend backend_;
  std::vector<Ray> rays_;
};

/// Exact dot product of two rays (rational backend) or |⟨u,v⟩| below the
/// tolerance (floating backend).
bool orthogonal(const Ray& a, const Ray& b, double tol = kTolHermitian);

/// Exact projector for rational rays.
RationalMatrix exact_projector(const Ray& ray);

/// Floating projector; rational rays are converted.
ComplexMatrix complex_projector(const Ray& ray);

/// The 12 antipodal classes of 24-cell vertices, ids 1-12:
/// (2,0,0,0) (0,2,0,0) (0,0,2,0) (0,0,0,2) (1,1,1,1) (1,-1,1,-1)
/// (1,1,-1,-1) (1,-1,-1,1) (1,1,1,-1) (-1,1,1,1) (1,-1,1,1) (1,1,-1,1).
RaySet build_24cell_rays();

/// The 12 antipodal classes of the dual 24-cell, ids 13-24:
/// (1,0,1,0) (0,1,0,1) (1,0,-1,0) (0,1,0,-1) (1,1,0,0) (1,-1,0,0)
/// (0,0,1,1) (0,0,1,-1) (1,0,0,1) (0,1,1,0) (1,0,0,-1) (0,1,-1,0).
RaySet build_dual_24cell_rays();

/// Union of the two sets above, ids 1-24.
RaySet build_peres24();

/// Peres-24 without rays 1, 5, 10, 16, 20 and 24. Ids keep their gaps.
RaySet build_18ray();

/// Six qubit states (cos(θ/2), sin(θ/2)) with θ = k·60°, ids 1-6 for
/// k = 0..5. States k and k+3 are orthogonal.
RaySet build_hexagon_rays();

/// Ray ids of the three cross polytopes {1..4}, {5..8}, {9..12}.
std::array<std::vector<int>, 3> cross_polytopes();

/// Unions of pairs of cross polytopes: C1∪C2, C1∪C3, C2∪C3. Every ray
/// lies in exactly two of them.
std::array<std::vector<int>, 3> inscribed_tesseracts();

/// Built-in sets by name: 24cell, dual24cell, peres24, rays18, hexagon.
std::optional<RaySet> builtin_rayset(const std::string& name);
const std::vector<std::string>& builtin_rayset_names();

}  // namespace kscert
