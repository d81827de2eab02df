// Exact integer and rational matrix algebra.
//
// Everything here works over arbitrary-precision integers: Smith normal form
// entries grow during reduction, and knot determinants are unbounded in
// principle. Matrices in this problem are small (rarely beyond 20x20), so the
// algorithms favour clarity over asymptotics.
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dihedral/errors.hpp"

namespace dihedral {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;

/// Least nonnegative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline Integer numerator(const Rational& q) {
  return boost::multiprecision::numerator(q);
}
inline Integer denominator(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

/// num / den for any nonzero den. The backing rational type rejects negative
/// denominators, so the sign is moved to the numerator first.
inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  return den < 0 ? Rational(Integer(-num), Integer(-den)) : Rational(num, den);
}

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw DimensionError("matrix entry count does not match its shape");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const T> entries() const noexcept { return entries_; }

  T& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::vector<T> row(std::size_t i) const {
    return {entries_.begin() + i * cols_, entries_.begin() + (i + 1) * cols_};
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  // col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] += b.entries_[k];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] -= b.entries_[k];
    return c;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend std::vector<T> operator*(const Matrix& a, std::span<const T> v) {
    if (a.cols_ != v.size()) throw DimensionError("matrix-vector shape mismatch");
    std::vector<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }
  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    return a * std::span<const T>(v);
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw DimensionError("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <typename T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  os << '{';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",{" : "{");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << '}';
  }
  return os << '}';
}

/// Block-diagonal sum a ⊕ b.
template <typename T>
Matrix<T> direct_sum(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> s(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) s(a.rows() + i, a.cols() + j) = b(i, j);
  return s;
}

inline RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
  return r;
}

/// u^T M v for a square matrix M.
template <typename T>
T bilinear(std::span<const T> u, const Matrix<T>& m, std::span<const T> v) {
  if (u.size() != m.rows() || v.size() != m.cols())
    throw DimensionError("bilinear form shape mismatch");
  T acc(0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (u[i] == 0) continue;
    T row(0);
    for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j) * v[j];
    acc += u[i] * row;
  }
  return acc;
}

inline Integer quadratic_form(const IntMatrix& a, const IntVector& v) {
  return bilinear<Integer>(v, a, v);
}

// ---------------------------------------------------------------------------
// Residues in Q/Z
// ---------------------------------------------------------------------------

/// An element of Q/Z, stored as the unique representative in [0, 1).
class ResidueQZ {
 public:
  ResidueQZ() = default;
  explicit ResidueQZ(const Rational& q) {
    const Integer num = dihedral::numerator(q), den = dihedral::denominator(q);
    value_ = Rational(mod_floor(num, den), den);
  }
  ResidueQZ(const Integer& num, const Integer& den) : ResidueQZ(make_rational(num, den)) {}

  const Rational& value() const noexcept { return value_; }
  Integer numerator() const { return dihedral::numerator(value_); }
  Integer denominator() const { return dihedral::denominator(value_); }
  bool is_zero() const { return value_ == 0; }
  /// Additive order in Q/Z.
  Integer order() const { return denominator(); }

  friend ResidueQZ operator+(const ResidueQZ& a, const ResidueQZ& b) {
    return ResidueQZ(a.value_ + b.value_);
  }
  friend ResidueQZ operator-(const ResidueQZ& a, const ResidueQZ& b) {
    return ResidueQZ(a.value_ - b.value_);
  }
  friend ResidueQZ operator*(const Integer& k, const ResidueQZ& a) {
    return ResidueQZ(Rational(k) * a.value_);
  }
  friend bool operator==(const ResidueQZ&, const ResidueQZ&) = default;
  friend bool operator<(const ResidueQZ& a, const ResidueQZ& b) {
    return a.value_ < b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const ResidueQZ& r) {
    return os << r.numerator() << '/' << r.denominator();
  }

 private:
  Rational value_{0};
};

// ---------------------------------------------------------------------------
// Determinant and rational inverse
// ---------------------------------------------------------------------------

/// Exact determinant by fraction-free (Bareiss) elimination. The empty matrix
/// has determinant 1.
inline Integer det(const IntMatrix& a) {
  if (!a.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Exact inverse over Q by Gauss-Jordan elimination.
inline RatMatrix rational_inverse(const IntMatrix& a) {
  if (!a.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix m = to_rational(a);
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) throw SingularMatrixError("matrix is singular");
    m.swap_rows(k, p);
    inv.swap_rows(k, p);
    const Rational pivot = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      const Rational f = -m(i, k);
      m.add_row_multiple(i, k, f);
      inv.add_row_multiple(i, k, f);
    }
  }
  return inv;
}

/// True when A x = w has an integral solution, for nonsingular A. Solved
/// through the rational inverse, independently of any normal form.
inline bool in_integer_image(const RatMatrix& a_inverse, const IntVector& w) {
  std::vector<Rational> wq(w.begin(), w.end());
  for (const Rational& x : a_inverse * wq)
    if (denominator(x) != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// P * A * Q = D with P, Q unimodular and D the Smith normal form of A.
/// The transforms are one valid choice, not canonical.
class SNFResult {
 public:
  SNFResult(const IntMatrix& source, IntMatrix p, IntMatrix q, IntMatrix d)
      : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {
    if (p_ * source * q_ != d_)
      throw std::logic_error("SNF transforms do not reproduce D");
    if (abs(det(p_)) != 1 || abs(det(q_)) != 1)
      throw std::logic_error("SNF transform is not unimodular");
    const std::size_t k = std::min(d_.rows(), d_.cols());
    for (std::size_t i = 0; i < d_.rows(); ++i)
      for (std::size_t j = 0; j < d_.cols(); ++j)
        if (i != j && d_(i, j) != 0) throw std::logic_error("SNF D is not diagonal");
    for (std::size_t i = 0; i < k; ++i) {
      if (d_(i, i) < 0) throw std::logic_error("SNF diagonal entry is negative");
      if (i + 1 < k && d_(i + 1, i + 1) != 0 &&
          (d_(i, i) == 0 || d_(i + 1, i + 1) % d_(i, i) != 0))
        throw std::logic_error("SNF divisibility chain broken");
      if (d_(i, i) > 1) factors_.push_back(d_(i, i));
    }
  }

  const IntMatrix& P() const noexcept { return p_; }
  const IntMatrix& Q() const noexcept { return q_; }
  const IntMatrix& D() const noexcept { return d_; }
  /// Diagonal entries greater than one, in divisibility order.
  const IntVector& invariant_factors() const noexcept { return factors_; }

  IntVector diagonal() const {
    IntVector diag;
    for (std::size_t i = 0; i < std::min(d_.rows(), d_.cols()); ++i)
      diag.push_back(d_(i, i));
    return diag;
  }

 private:
  IntMatrix p_, q_, d_;
  IntVector factors_;
};

/// Smith normal form by row/column reduction, always pivoting on the entry of
/// least nonzero absolute value in the trailing block.
inline SNFResult snf(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix d = a;
  IntMatrix p = IntMatrix::identity(m);
  IntMatrix q = IntMatrix::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      std::size_t pi = m, pj = n;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          Integer v = abs(d(i, j));
          if (pi == m || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi == m) return SNFResult(a, p, q, d);  // trailing block is zero

      d.swap_rows(t, pi);
      p.swap_rows(t, pi);
      d.swap_cols(t, pj);
      q.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        const Integer k = -(d(i, t) / d(t, t));
        d.add_row_multiple(i, t, k);
        p.add_row_multiple(i, t, k);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        const Integer k = -(d(t, j) / d(t, t));
        d.add_col_multiple(j, t, k);
        q.add_col_multiple(j, t, k);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // The pivot must divide the whole trailing block; if not, fold the
      // offending row into row t so the next pass finds a smaller pivot.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      d.add_row_multiple(t, bad, Integer(1));
      p.add_row_multiple(t, bad, Integer(1));
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      p.negate_row(t);
    }
  }
  return SNFResult(a, p, q, d);
}

/// Inverse of a unimodular integer matrix, exact and integral.
inline IntMatrix unimodular_inverse(const IntMatrix& u) {
  RatMatrix inv = rational_inverse(u);
  IntMatrix out(u.rows(), u.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) {
      if (denominator(inv(i, j)) != 1)
        throw PreconditionError("matrix is not unimodular");
      out(i, j) = numerator(inv(i, j));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Small number theory
// ---------------------------------------------------------------------------

/// gcd of the entries is 1.
inline bool is_primitive(std::span<const Integer> v) {
  if (v.empty()) throw std::invalid_argument("is_primitive: empty vector");
  Integer g = 0;
  for (const Integer& x : v) {
    g = gcd(g, x);
    if (g == 1) return true;
  }
  return false;
}
inline bool is_primitive(const IntVector& v) { return is_primitive(std::span<const Integer>(v)); }

inline Integer isqrt(const Integer& k) { return boost::multiprecision::sqrt(k); }

/// Lagrange four-square decomposition k = a1^2 + a2^2 + a3^2 + a4^2, returning
/// the lexicographically smallest solution with a1 <= a2 <= a3 <= a4.
inline std::array<Integer, 4> four_squares(const Integer& k) {
  if (k < 0) throw std::invalid_argument("four_squares: negative argument");
  for (Integer a1 = 0; 4 * a1 * a1 <= k; ++a1) {
    const Integer r1 = k - a1 * a1;
    for (Integer a2 = a1; 3 * a2 * a2 <= r1; ++a2) {
      const Integer r2 = r1 - a2 * a2;
      for (Integer a3 = a2; 2 * a3 * a3 <= r2; ++a3) {
        const Integer r3 = r2 - a3 * a3;
        const Integer a4 = isqrt(r3);
        if (a4 * a4 == r3) return {a1, a2, a3, a4};
      }
    }
  }
  throw std::logic_error("four_squares: no decomposition found");  // unreachable
}

}  // namespace dihedral
