// Seifert matrices and the constructions built directly on them.
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dihedral/errors.hpp"
#include "dihedral/linalg.hpp"

namespace dihedral {

inline void require_odd(std::int64_t n) {
  if (n % 2 == 0) throw EvenModulusError(n);
}

/// Odd n > 1, the moduli for which D_n quotients are defined.
inline void require_dihedral_modulus(std::int64_t n) {
  require_odd(n);
  if (n <= 1) throw PreconditionError("modulus n must be > 1, got " + std::to_string(n));
}

/// A Seifert matrix V of a knot: square, of even size 2g, with det(V - V^T) = 1.
/// The unknot is the 0x0 matrix.
class SeifertMatrix {
 public:
  SeifertMatrix() = default;
  explicit SeifertMatrix(IntMatrix v) : v_(std::move(v)) {
    if (!v_.is_square())
      throw MatrixInputError(MatrixErrorKind::NotSquare,
                             std::to_string(v_.rows()) + "x" + std::to_string(v_.cols()) +
                                 " Seifert matrix is not square");
    if (v_.rows() % 2 != 0)
      throw MatrixInputError(MatrixErrorKind::OddDimension,
                             "Seifert matrix has odd size " + std::to_string(v_.rows()));
    const Integer skew = det(v_ - v_.transpose());
    if (skew != 1)
      throw MatrixInputError(MatrixErrorKind::NotUnimodular,
                             "det(V - V^T) = " + to_string(skew) + ", expected 1");
  }

  static SeifertMatrix unknot() { return SeifertMatrix{}; }

  const IntMatrix& matrix() const noexcept { return v_; }
  std::size_t size() const noexcept { return v_.rows(); }
  std::size_t genus() const noexcept { return v_.rows() / 2; }

  friend bool operator==(const SeifertMatrix&, const SeifertMatrix&) = default;

 private:
  IntMatrix v_;
};

/// A first-homology class of the Seifert surface, in the basis of its matrix.
class SurfaceClass {
 public:
  SurfaceClass(const SeifertMatrix& v, IntVector coords) : coords_(std::move(coords)) {
    if (coords_.size() != v.size())
      throw DimensionError("surface class has length " + std::to_string(coords_.size()) +
                           ", Seifert matrix has size " + std::to_string(v.size()));
  }
  const IntVector& coords() const noexcept { return coords_; }
  friend bool operator==(const SurfaceClass&, const SurfaceClass&) = default;

 private:
  IntVector coords_;
};

/// A = V + V^T, presenting H_1 of the double branched cover.
inline IntMatrix symmetrize(const SeifertMatrix& v) {
  return v.matrix() + v.matrix().transpose();
}

/// |det(V + V^T)|, the order of H_1 of the double branched cover.
inline Integer knot_determinant(const SeifertMatrix& v) {
  Integer d = abs(det(symmetrize(v)));
  if (d % 2 == 0)
    throw std::logic_error("even knot determinant " + to_string(d) +
                           " contradicts det(V - V^T) = 1");
  return d;
}

/// Genus-one Seifert matrix of the twist knot K_m, |det| = |4m + 1|.
/// m = -1 is the trefoil, m = 0 the unknot, m = 2 the knot 6_1.
inline SeifertMatrix twist_knot(const Integer& m) {
  return SeifertMatrix(IntMatrix{{-1, 1}, {0, m}});
}

inline SeifertMatrix connected_sum(const SeifertMatrix& a, const SeifertMatrix& b) {
  return SeifertMatrix(direct_sum(a.matrix(), b.matrix()));
}

/// The k-fold connected sum of a knot with itself.
inline SeifertMatrix self_sum(const SeifertMatrix& a, std::size_t k) {
  SeifertMatrix s;
  for (std::size_t i = 0; i < k; ++i) s = connected_sum(s, a);
  return s;
}

/// Result of stabilizing a Seifert surface so that a characteristic class
/// becomes 0-framed.
struct Stabilization {
  SeifertMatrix matrix;
  SurfaceClass beta;
  /// Form value beta^T (V + V^T) beta before stabilizing.
  Integer form_value;
  /// a/2 = sum of squares, where |form_value| = a n^2.
  std::array<Integer, 4> squares{};
  /// The four tori were added with reversed orientation (blocks [[0,1],[0,0]])
  /// because the form value was negative.
  bool reversed_orientation = false;
  /// False when the class was already 0-framed and nothing was added.
  bool stabilized = false;
};

/// Stabilize with four trivial tori so that beta' has symmetrized self-pairing
/// exactly 0, with beta' ≡ (beta, 0, ..., 0) mod n.
inline Stabilization stabilize_zero_framed(const SeifertMatrix& v, const SurfaceClass& beta,
                                           std::int64_t n) {
  require_odd(n);
  if (n <= 0) throw PreconditionError("modulus must be positive");
  const IntMatrix a = symmetrize(v);
  const IntVector& b = beta.coords();
  if (b.empty() || std::all_of(b.begin(), b.end(), [](const Integer& x) { return x == 0; }))
    throw PreconditionError("characteristic class must be nonzero");
  for (const Integer& x : a * b)
    if (x % n != 0)
      throw PreconditionError("class is not characteristic: (V+V^T) beta is not 0 mod n");

  Stabilization out{v, beta, quadratic_form(a, b)};
  const Integer nn = Integer(n) * n;
  if (out.form_value % nn != 0)
    throw PreconditionError("form value " + to_string(out.form_value) +
                            " is not 0 mod n^2; no 0-framed characteristic knot exists");
  if (out.form_value == 0) return out;

  out.reversed_orientation = out.form_value < 0;
  const Integer a_coeff = abs(out.form_value) / nn;
  // a n^2 = 2 beta^T V beta with n odd, so a is even.
  if (a_coeff % 2 != 0) throw std::logic_error("odd stabilization coefficient");
  out.squares = four_squares(a_coeff / 2);

  const Integer off = out.reversed_orientation ? 1 : -1;
  IntMatrix block{{0, off}, {0, 0}};
  IntMatrix stabilized = v.matrix();
  IntVector coords = b;
  // Largest square first; the tori are interchangeable.
  for (auto it = out.squares.rbegin(); it != out.squares.rend(); ++it) {
    stabilized = direct_sum(stabilized, block);
    coords.push_back(*it * n);
    coords.push_back(*it * n);
  }
  out.matrix = SeifertMatrix(std::move(stabilized));
  out.beta = SurfaceClass(out.matrix, std::move(coords));
  out.stabilized = true;
  if (quadratic_form(symmetrize(out.matrix), out.beta.coords()) != 0)
    throw std::logic_error("stabilized class is not 0-framed");
  return out;
}

}  // namespace dihedral
