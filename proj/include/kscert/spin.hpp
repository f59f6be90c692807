#pragma once

#include "kscert/structures.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kscert {

/// Spin quantum number j, stored as 2j so half-integers stay exact.
class Spin {
 public:
  /// Throws std::invalid_argument unless twice_j >= 1.
  explicit Spin(int twice_j);

  /// Accepts "1/2", "1", "3/2", ... (also "0.5", "1.5").
  static Spin parse(std::string_view text);

  int twice_j() const { return twice_j_; }
  double value() const { return twice_j_ / 2.0; }
  int dim() const { return twice_j_ + 1; }
  std::string to_string() const;

  friend bool operator==(Spin, Spin) = default;

 private:
  int twice_j_;
};

/// Polar angle theta in [0, π], azimuth phi in [0, 2π), radians.
struct Direction {
  double theta = 0.0;
  double phi = 0.0;

  /// Throws std::invalid_argument for non-finite or out-of-range angles.
  static Direction make(double theta, double phi);
};

/// d^j_{m'm}(θ) by the factorial sum
///   Σ_s (-1)^{m'-m+s} √((j+m')!(j-m')!(j+m)!(j-m)!) /
///       ((j+m-s)! s! (m'-m+s)! (j-m'-s)!) · cos(θ/2)^{2j+m-m'-2s} sin(θ/2)^{m'-m+2s}
/// with rows m' and columns m both ordered j, j-1, ..., -j. Factorial ratios
/// are formed exactly and converted to double once. In this convention
/// d^{1/2}(θ) = [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]], so θ = π gives
/// [[0, -1], [1, 0]].
Eigen::MatrixXd wigner_small_d(Spin j, double theta);

/// The 2j+1 eigenstates |j,m;n̂⟩ = D(φ, θ, 0)|j,m⟩ (z-y-z Euler angles,
/// D_{m'm} = e^{-i m' φ} d_{m'm}(θ)), ordered m = j, ..., -j. Only the
/// projectors onto these states are convention independent.
std::vector<ComplexVector> spin_states(Spin j, Direction dir);

struct SpinConstructionParams {
  Spin j{1};
  int d = 2;
  int n = 2;
  int r = 1;
  BigInt N;  // C(n, r): number of POVMs
  BigInt M;  // C(n, r) - C(n-1, r): POVMs containing each element
  bool parity_ok = false;  // N odd and M even

  /// Throws std::invalid_argument unless n >= 2 and 1 <= r <= n.
  static SpinConstructionParams make(Spin j, int n, int r);
};

/// (1/r)|j,m;n̂⟩⟨j,m;n̂| for one direction and one m.
struct SpinElement {
  int id = 0;
  int direction_index = 0;  // 0-based
  int twice_m = 0;
  ComplexMatrix element;
};

struct GksConstruction {
  SpinConstructionParams params;
  std::vector<SpinElement> elements;
  CoverStructure cover;
};

/// All n·d spin states as POVM elements with weight 1/r; one POVM per
/// r-subset of directions in lexicographic order. Element id for direction i
/// (0-based) and the k-th m value (k = 0 for m = j) is i·d + k + 1.
/// Directions whose axes coincide (equal or antipodal) are rejected with
/// std::invalid_argument. Throws VerificationError if a POVM misses the
/// identity by tol or more.
GksConstruction generate_gks(Spin j, const std::vector<Direction>& directions, int r,
                             double tol = kTolIdentity);

struct ParityParams {
  unsigned n = 0;
  unsigned r = 0;
  BigInt N;
  BigInt M;
};

/// Every 1 <= r <= n <= n_max with C(n,r) odd and C(n,r) - C(n-1,r) even,
/// ascending in (n, r). Requires n_max >= 2.
std::vector<ParityParams> find_parity_params(unsigned n_max);

/// Uniform on the sphere; deterministic for a given seed.
std::vector<Direction> random_directions(std::size_t n, std::uint64_t seed);

/// n directions in the x-z plane at polar angles k·π/n (φ = 0); for n = 3
/// these are the diameters of a hexagon.
std::vector<Direction> planar_directions(std::size_t n);

/// One "dir <theta> <phi>" line per direction, radians; '#' comments.
std::vector<Direction> parse_directions(std::string_view text);
std::string write_directions(const std::vector<Direction>& directions);

}  // namespace kscert
