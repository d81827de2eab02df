// Homology of the double branched cover and its Q/Z linking form.
//
// H_1(Σ_2 K) = Z^m / A Z^m with A = V + V^T. If P A Q = D is a Smith normal
// form with D = diag(1, ..., 1, d_1, ..., d_r), then w -> P w induces
// Z^m / A Z^m ≅ ⊕ Z_{d_i}; the torsion generators are the columns k+1..m of
// P^{-1} and the coordinates of w are (P w)_{k+i} mod d_i. The linking form is
// lk(u, v) = u^T A^{-1} v mod Z.
#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dihedral/errors.hpp"
#include "dihedral/linalg.hpp"
#include "dihedral/seifert.hpp"

namespace dihedral {

/// Element of ⊕ Z_{d_i}, each coordinate reduced into [0, d_i).
struct GroupElement {
  IntVector coords;

  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Integer& x) { return x == 0; });
  }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return a.coords < b.coords;
  }
  friend std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
    os << '(';
    for (std::size_t i = 0; i < g.coords.size(); ++i) os << (i ? "," : "") << g.coords[i];
    return os << ')';
  }
};

class TorsionGroup {
 public:
  /// Builds the group presented by a nonsingular symmetric integer matrix.
  explicit TorsionGroup(IntMatrix ambient) : ambient_(std::move(ambient)) {
    if (!ambient_.is_square()) throw DimensionError("presentation matrix must be square");
    SNFResult s = snf(ambient_);
    const std::size_t m = ambient_.rows();
    for (std::size_t i = 0; i < m; ++i)
      if (s.D()(i, i) == 0) throw SingularMatrixError("presentation matrix is singular");
    factors_ = s.invariant_factors();
    const std::size_t k = m - factors_.size();
    const IntMatrix p_inverse = unimodular_inverse(s.P());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      generators_.push_back(p_inverse.col(k + i));
      coordinate_rows_.push_back(s.P().row(k + i));
    }
    ambient_inverse_ = rational_inverse(ambient_);
    check_generator_orders();
  }

  std::size_t rank() const noexcept { return factors_.size(); }
  const IntVector& invariant_factors() const noexcept { return factors_; }
  const std::vector<IntVector>& generators() const noexcept { return generators_; }
  const IntMatrix& ambient() const noexcept { return ambient_; }
  const RatMatrix& ambient_inverse() const noexcept { return ambient_inverse_; }

  Integer order() const {
    Integer o = 1;
    for (const Integer& d : factors_) o *= d;
    return o;
  }
  /// Largest invariant factor (1 for the trivial group).
  Integer exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }
  bool is_cyclic() const noexcept { return factors_.size() <= 1; }

  /// Size of the n-torsion subgroup, prod gcd(d_i, n).
  Integer torsion_order(const Integer& n) const {
    Integer o = 1;
    for (const Integer& d : factors_) o *= gcd(d, n);
    return o;
  }

  /// Class of an integer vector, in generator coordinates.
  GroupElement coordinates(std::span<const Integer> w) const {
    if (w.size() != ambient_.rows()) throw DimensionError("vector length mismatch");
    GroupElement g;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      Integer acc = 0;
      for (std::size_t j = 0; j < w.size(); ++j) acc += coordinate_rows_[i][j] * w[j];
      g.coords.push_back(mod_floor(acc, factors_[i]));
    }
    return g;
  }
  GroupElement coordinates(const IntVector& w) const {
    return coordinates(std::span<const Integer>(w));
  }

  /// An integer vector representing the element: sum x_i l_i.
  IntVector lift(const GroupElement& g) const {
    check(g);
    IntVector w(ambient_.rows());
    for (std::size_t i = 0; i < factors_.size(); ++i)
      for (std::size_t j = 0; j < w.size(); ++j) w[j] += g.coords[i] * generators_[i][j];
    return w;
  }

  GroupElement reduce(IntVector coords) const {
    if (coords.size() != factors_.size()) throw DimensionError("element has wrong rank");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = mod_floor(coords[i], factors_[i]);
    return GroupElement{std::move(coords)};
  }

  GroupElement scale(const GroupElement& g, const Integer& u) const {
    IntVector c = g.coords;
    for (Integer& x : c) x *= u;
    return reduce(std::move(c));
  }

  /// Additive order of an element.
  Integer element_order(const GroupElement& g) const {
    check(g);
    Integer o = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const Integer oi = factors_[i] / gcd(factors_[i], g.coords[i]);
      o = o / gcd(o, oi) * oi;
    }
    return o;
  }

  void check(const GroupElement& g) const {
    if (g.coords.size() != factors_.size()) throw DimensionError("element has wrong rank");
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (g.coords[i] < 0 || g.coords[i] >= factors_[i])
        throw PreconditionError("element coordinate out of range");
  }

 private:
  // The order of l in Z^m / A Z^m is the lcm of the denominators of A^{-1} l,
  // so each generator's order is re-derived without trusting the normal form.
  void check_generator_orders() const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const Integer& d = factors_[i];
      if (d % 2 == 0) throw std::logic_error("even invariant factor " + to_string(d));
      if (i + 1 < factors_.size() && factors_[i + 1] % d != 0)
        throw std::logic_error("invariant factors do not form a divisibility chain");
      const std::vector<Rational> l(generators_[i].begin(), generators_[i].end());
      Integer order = 1;
      for (const Rational& x : ambient_inverse_ * l) {
        const Integer q = denominator(x);
        order = order / gcd(order, q) * q;
      }
      if (order != d)
        throw std::logic_error("generator has order " + to_string(order) + ", expected " +
                               to_string(d));
    }
    if (order() != abs(det(ambient_)))
      throw std::logic_error("group order differs from |det A|");
  }

  IntMatrix ambient_;
  RatMatrix ambient_inverse_;
  IntVector factors_;
  std::vector<IntVector> generators_;
  std::vector<IntVector> coordinate_rows_;
};

/// Steps 1-3: A = V + V^T, its Smith normal form, and torsion generators.
inline TorsionGroup double_cover_homology(const SeifertMatrix& v) {
  return TorsionGroup(symmetrize(v));
}

/// lk([u], [v]) = u^T A^{-1} v mod Z.
inline ResidueQZ evaluate_linking(const RatMatrix& a_inverse, std::span<const Integer> u,
                                  std::span<const Integer> v) {
  if (u.size() != a_inverse.rows() || v.size() != a_inverse.rows())
    throw DimensionError("linking: vector length does not match the matrix");
  std::vector<Rational> uq(u.begin(), u.end()), vq(v.begin(), v.end());
  return ResidueQZ(bilinear<Rational>(uq, a_inverse, vq));
}

inline ResidueQZ evaluate_linking(const IntMatrix& a, const IntVector& u, const IntVector& v) {
  if (!a.is_square() || u.size() != a.rows() || v.size() != a.rows())
    throw DimensionError("linking: vector length does not match the matrix");
  return evaluate_linking(rational_inverse(a), u, v);
}

/// The torsion linking form in generator coordinates, Λ_ij = lk(l_i, l_j).
class LinkingForm {
 public:
  explicit LinkingForm(TorsionGroup group) : group_(std::move(group)) {
    const std::size_t r = group_.rank();
    const auto& gens = group_.generators();
    lambda_.resize(r * r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        lambda_[i * r + j] = evaluate_linking(group_.ambient_inverse(), gens[i], gens[j]);

    const Integer e = group_.exponent();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        const ResidueQZ& x = (*this)(i, j);
        if (x != (*this)(j, i)) throw std::logic_error("linking form is not symmetric");
        if (!(group_.invariant_factors()[i] * x).is_zero())
          throw std::logic_error("invariant factor does not annihilate the linking form");
        if (x.denominator() % 2 == 0)
          throw std::logic_error("linking form has an even denominator");
        scaled_.push_back(x.numerator() * (e / x.denominator()));
      }
  }

  const TorsionGroup& group() const noexcept { return group_; }
  std::size_t rank() const noexcept { return group_.rank(); }
  const ResidueQZ& operator()(std::size_t i, std::size_t j) const {
    return lambda_[i * rank() + j];
  }

  /// Λ_ij * exponent, an integer in [0, exponent).
  const Integer& scaled(std::size_t i, std::size_t j) const { return scaled_[i * rank() + j]; }

  /// sum x_i y_j Λ_ij.
  ResidueQZ pairing(const GroupElement& x, const GroupElement& y) const {
    group_.check(x);
    group_.check(y);
    const std::size_t r = rank();
    Integer acc = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (x.coords[i] == 0) continue;
      for (std::size_t j = 0; j < r; ++j) acc += x.coords[i] * y.coords[j] * scaled(i, j);
    }
    return ResidueQZ(acc, group_.exponent());
  }

  /// lk(c, c) = sum x_i x_j Λ_ij.
  ResidueQZ self_linking(const GroupElement& c) const { return pairing(c, c); }

  /// The character lk(c, ·) evaluated on each generator.
  std::vector<ResidueQZ> character_values(const GroupElement& c) const {
    std::vector<ResidueQZ> out;
    for (std::size_t j = 0; j < rank(); ++j) {
      GroupElement e{IntVector(rank())};
      e.coords[j] = 1 % group_.invariant_factors()[j];
      out.push_back(pairing(c, e));
    }
    return out;
  }

 private:
  TorsionGroup group_;
  std::vector<ResidueQZ> lambda_;
  IntVector scaled_;
};

/// The linking form on the Smith generators of g.
inline LinkingForm linking_form(const TorsionGroup& g) { return LinkingForm(g); }

inline ResidueQZ self_linking(const LinkingForm& form, const GroupElement& c) {
  return form.self_linking(c);
}

}  // namespace dihedral
