#include "kscert/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kscert {

RationalVector::RationalVector(std::vector<Rational> components)
    : components_(std::move(components)) {}

RationalVector::RationalVector(std::initializer_list<long long> ints) {
  components_.reserve(ints.size());
  for (long long x : ints) components_.emplace_back(x);
}

bool RationalVector::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Rational& c) { return c == 0; });
}

RationalVector operator*(const Rational& scale, const RationalVector& v) {
  std::vector<Rational> out;
  out.reserve(v.dim());
  for (const auto& c : v.components()) out.push_back(scale * c);
  return RationalVector(std::move(out));
}

RationalMatrix::RationalMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

RationalMatrix RationalMatrix::identity(std::size_t dim) {
  RationalMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::diagonal(std::initializer_list<long long> diag) {
  RationalMatrix m(diag.size());
  std::size_t i = 0;
  for (long long x : diag) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

Rational RationalMatrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

bool RationalMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
  RationalMatrix out(a.dim_);
  for (std::size_t k = 0; k < a.entries_.size(); ++k) out.entries_[k] = a.entries_[k] - b.entries_[k];
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
  const std::size_t n = a.dim_;
  RationalMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& m) {
  RationalMatrix out = m;
  for (auto& e : out.entries_) e *= s;
  return out;
}

std::string RationalMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < dim_; ++i) {
    os << '[';
    for (std::size_t j = 0; j < dim_; ++j) os << (j ? " " : "") << kscert::to_string((*this)(i, j));
    os << "]\n";
  }
  return os.str();
}

Rational dot(const RationalVector& u, const RationalVector& v) {
  if (u.dim() != v.dim()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < u.dim(); ++i) s += u[i] * v[i];
  return s;
}

RationalMatrix projector(const RationalVector& v) {
  if (v.dim() == 0 || v.is_zero()) throw std::invalid_argument("projector of the zero vector");
  const Rational norm2 = dot(v, v);
  RationalMatrix p(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) p(i, j) = v[i] * v[j] / norm2;
  return p;
}

RationalMatrix weighted_sum(std::span<const RationalMatrix> mats, const Rational& w,
                            std::size_t dim) {
  RationalMatrix sum(dim);
  for (const auto& m : mats) {
    if (m.dim() != dim) throw std::invalid_argument("weighted_sum: dimension mismatch");
    sum += m;
  }
  return w * sum;
}

bool is_identity(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (m(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

std::complex<double> dot(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) throw std::invalid_argument("dot: dimension mismatch");
  return u.dot(v);  // Eigen conjugates the left operand
}

ComplexMatrix projector(const ComplexVector& v) {
  const double norm2 = v.squaredNorm();
  if (v.size() == 0 || norm2 == 0.0) throw std::invalid_argument("projector of the zero vector");
  return v * v.adjoint() / norm2;
}

ComplexMatrix weighted_sum(std::span<const ComplexMatrix> mats, double w, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("weighted_sum: dimension mismatch");
    sum += m;
  }
  return w * sum;
}

double identity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("identity_residual: matrix not square");
  return (m - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

bool is_identity(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && (m.rows() == 0 || identity_residual(m) < tol);
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && (m.rows() == 0 || (m - m.adjoint()).cwiseAbs().maxCoeff() < tol);
}

}  // namespace kscert
