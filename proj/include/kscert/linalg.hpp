#pragma once

#include "kscert/rational.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace kscert {

// Floating comparisons for the complex backend. Well above double rounding
// noise for d <= 9, well below any structural deviation.
inline constexpr double kTolHermitian = 1e-10;
inline constexpr double kTolIdentity = 1e-10;

class RationalVector {
 public:
  RationalVector() = default;
  explicit RationalVector(std::vector<Rational> components);
  RationalVector(std::initializer_list<long long> ints);

  std::size_t dim() const { return components_.size(); }
  const Rational& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<Rational>& components() const { return components_; }
  bool is_zero() const;

  friend bool operator==(const RationalVector&, const RationalVector&) = default;
  friend RationalVector operator*(const Rational& scale, const RationalVector& v);

 private:
  std::vector<Rational> components_;
};

/// Square matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t dim);  // zero matrix

  static RationalMatrix identity(std::size_t dim);
  static RationalMatrix diagonal(std::initializer_list<long long> diag);

  std::size_t dim() const { return dim_; }
  Rational& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Rational& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  Rational trace() const;
  bool is_symmetric() const;

  RationalMatrix& operator+=(const RationalMatrix& other);
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& s, const RationalMatrix& m);
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> entries_;
};

using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Exact inner product. Throws std::invalid_argument on a dimension mismatch.
Rational dot(const RationalVector& u, const RationalVector& v);

/// v vᵀ / (vᵀ v). Entries stay rational because v is never normalized.
/// Throws std::invalid_argument for the zero vector.
RationalMatrix projector(const RationalVector& v);

/// w · Σ mats. `dim` fixes the size of the result (and of the zero matrix
/// returned for an empty list); every matrix must match it.
RationalMatrix weighted_sum(std::span<const RationalMatrix> mats, const Rational& w,
                            std::size_t dim);

bool is_identity(const RationalMatrix& m);

/// Hermitian inner product ⟨u, v⟩ (conjugate-linear in u).
std::complex<double> dot(const ComplexVector& u, const ComplexVector& v);

/// |v⟩⟨v| / ⟨v|v⟩.
ComplexMatrix projector(const ComplexVector& v);

ComplexMatrix weighted_sum(std::span<const ComplexMatrix> mats, double w, std::size_t dim);

/// Largest entrywise deviation from the identity.
double identity_residual(const ComplexMatrix& m);

bool is_identity(const ComplexMatrix& m, double tol = kTolIdentity);
bool is_hermitian(const ComplexMatrix& m, double tol = kTolHermitian);

}  // namespace kscert
