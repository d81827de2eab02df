// Dihedral quotients and the surface-extension obstruction.
//
// A D_n quotient of a knot group (n odd) is the same thing as a surjective
// character H_1(Σ_2 K) -> Z_n, taken up to the action of (Z_n)^x. Because the
// linking form is nonsingular, every such character is lk(c, ·) for a unique
// c of order n. The quotient extends over an orientable surface in B^4 exactly
// when lk(c, c) = 0, equivalently when a mod-n characteristic class β on a
// Seifert surface has β^T (V + V^T) β ≡ 0 mod n^2.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dihedral/cover.hpp"
#include "dihedral/errors.hpp"
#include "dihedral/linalg.hpp"
#include "dihedral/seifert.hpp"

namespace dihedral {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

namespace detail {

inline void check_cap(const std::string& what, const Integer& size, std::size_t cap) {
  if (size > Integer(cap)) throw EnumerationCapError(what, to_string(size), cap);
}

// Enumerates the n-torsion subgroup G[n] as k-vectors, x_i = k_i * d_i / g_i
// with g_i = gcd(d_i, n) and 0 <= k_i < g_i. Self-linking and character values
// are carried as integers over n: with s_i = d_i / g_i, the residue
// s_i s_j Λ_ij has order dividing n.
class TorsionEnumerator {
 public:
  TorsionEnumerator(const LinkingForm& form, std::int64_t n, std::size_t cap) : n_(n) {
    require_odd(n);
    if (n <= 0) throw PreconditionError("modulus must be positive");
    if (n > (std::int64_t{1} << 31)) throw PreconditionError("modulus too large to enumerate");
    const TorsionGroup& g = form.group();
    check_cap("the " + std::to_string(n) + "-torsion subgroup", g.torsion_order(n), cap);
    const std::size_t r = g.rank();
    for (std::size_t i = 0; i < r; ++i) {
      const Integer& d = g.invariant_factors()[i];
      const Integer gi = gcd(d, Integer(n));
      counts_.push_back(gi.convert_to<std::int64_t>());
      steps_.push_back(d / gi);
    }
    // m_ij = n * s_i * s_j * Λ_ij and t_ij = n * s_i * Λ_ij, both mod n.
    m_.assign(r * r, 0);
    t_.assign(r * r, 0);
    const Integer nn(n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        const ResidueQZ& lam = form(i, j);
        const ResidueQZ ti = steps_[i] * lam;
        const ResidueQZ mij = steps_[j] * ti;
        t_[i * r + j] = as_n_numerator(ti, nn);
        m_[i * r + j] = as_n_numerator(mij, nn);
      }
  }

  std::int64_t modulus() const noexcept { return n_; }
  std::size_t rank() const noexcept { return counts_.size(); }
  const std::vector<std::int64_t>& counts() const noexcept { return counts_; }

  /// Calls f(k) for every k-vector, in lexicographic order.
  template <typename F>
  void for_each(F&& f) const {
    std::vector<std::int64_t> k(rank(), 0);
    for (;;) {
      f(static_cast<const std::vector<std::int64_t>&>(k));
      std::size_t i = rank();
      while (i > 0) {
        --i;
        if (++k[i] < counts_[i]) break;
        k[i] = 0;
        if (i == 0) return;
      }
      if (rank() == 0) return;
    }
  }

  /// n * lk(c, c) mod n.
  std::int64_t self_linking_numerator(const std::vector<std::int64_t>& k) const {
    const std::size_t r = rank();
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (k[i] == 0) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (k[j] == 0) continue;
        acc = (acc + mulmod(mulmod(k[i], k[j]), m_[i * r + j])) % n_;
      }
    }
    return acc;
  }

  /// gcd(n, n * lk(c, l_1), ..., n * lk(c, l_r)); the character is onto Z_n
  /// exactly when this is 1.
  std::int64_t character_content(const std::vector<std::int64_t>& k) const {
    const std::size_t r = rank();
    std::int64_t content = n_;
    for (std::size_t j = 0; j < r; ++j) {
      std::int64_t v = 0;
      for (std::size_t i = 0; i < r; ++i)
        if (k[i] != 0) v = (v + mulmod(k[i], t_[i * r + j])) % n_;
      content = std::gcd(content, v);
    }
    return content;
  }

  GroupElement element(const std::vector<std::int64_t>& k) const {
    GroupElement e;
    for (std::size_t i = 0; i < rank(); ++i) e.coords.push_back(steps_[i] * k[i]);
    return e;
  }

  /// k-vector of u * c.
  std::vector<std::int64_t> scale(const std::vector<std::int64_t>& k, std::int64_t u) const {
    std::vector<std::int64_t> out(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) out[i] = mulmod(k[i], u) % counts_[i];
    return out;
  }

 private:
  std::int64_t mulmod(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % n_);
  }

  static std::int64_t as_n_numerator(const ResidueQZ& x, const Integer& n) {
    const Integer scaled = x.numerator() * n;
    if (scaled % x.denominator() != 0)
      throw std::logic_error("n-torsion pairing has a denominator not dividing n");
    return (scaled / x.denominator()).convert_to<std::int64_t>();
  }

  std::int64_t n_;
  std::vector<std::int64_t> counts_;
  IntVector steps_;
  std::vector<std::int64_t> m_;
  std::vector<std::int64_t> t_;
};

inline std::vector<std::int64_t> units_mod(std::int64_t n) {
  std::vector<std::int64_t> u;
  for (std::int64_t k = 1; k < n; ++k)
    if (std::gcd(k, n) == 1) u.push_back(k);
  return u;
}

}  // namespace detail

/// A Z_n-valued character x -> lk(c, x) of H_1(Σ_2 K).
class Character {
 public:
  Character(const LinkingForm& form, GroupElement c, std::int64_t n)
      : c_(std::move(c)), n_(n) {
    require_dihedral_modulus(n);
    form.group().check(c_);
    values_ = form.character_values(c_);
    Integer order = 1;
    for (const ResidueQZ& v : values_) {
      if (Integer(n) % v.order() != 0)
        throw PreconditionError("element does not define a Z_" + std::to_string(n) +
                                "-valued character");
      order = order / gcd(order, v.order()) * v.order();
    }
    surjective_ = order == n;
  }

  const GroupElement& element() const noexcept { return c_; }
  std::int64_t modulus() const noexcept { return n_; }
  /// Image is all of <1/n>. False only for degenerate characters.
  bool surjective() const noexcept { return surjective_; }
  /// lk(c, l_j) for each torsion generator l_j.
  const std::vector<ResidueQZ>& values() const noexcept { return values_; }

  friend bool operator==(const Character& a, const Character& b) {
    return a.n_ == b.n_ && a.c_ == b.c_;
  }
  friend bool operator<(const Character& a, const Character& b) {
    return a.n_ != b.n_ ? a.n_ < b.n_ : a.c_ < b.c_;
  }

 private:
  GroupElement c_;
  std::int64_t n_;
  std::vector<ResidueQZ> values_;
  bool surjective_ = false;
};

/// A D_n quotient: an orbit of characters under c -> u c, u in (Z_n)^x.
struct QuotientClass {
  std::int64_t n = 0;
  /// Sorted; the first member is the representative.
  std::vector<Character> members;

  const Character& representative() const { return members.front(); }
  bool contains(const GroupElement& c) const {
    return std::any_of(members.begin(), members.end(),
                       [&](const Character& m) { return m.element() == c; });
  }
};

enum class ScopeNote {
  OrientableB4,
  AlsoNonorientable,
  AlsoAnyAmbient4Manifold,
  ObstructsAllIf3DividesN,
};

inline const char* to_string(ScopeNote s) {
  switch (s) {
    case ScopeNote::OrientableB4: return "orientable-B4";
    case ScopeNote::AlsoNonorientable: return "also-nonorientable";
    case ScopeNote::AlsoAnyAmbient4Manifold: return "also-any-ambient-4-manifold";
    case ScopeNote::ObstructsAllIf3DividesN: return "obstructs-all-if-3-divides-n";
  }
  return "unknown";
}

struct ExtensionVerdict {
  bool extends = false;
  ResidueQZ self_linking;
  std::vector<ScopeNote> scope;
  /// The character was trivial (c = 0), not an actual D_n quotient.
  bool degenerate = false;

  bool covers(ScopeNote s) const {
    return std::find(scope.begin(), scope.end(), s) != scope.end();
  }
};

/// Isotropic elements defining characters into Z_n: every c with n c = 0 and
/// lk(c, c) = 0, including c = 0, in lexicographic order.
inline std::vector<GroupElement> enumerate_isotropic(const LinkingForm& form, std::int64_t n,
                                                     std::size_t cap = kDefaultEnumerationCap) {
  detail::TorsionEnumerator en(form, n, cap);
  std::vector<GroupElement> out;
  en.for_each([&](const std::vector<std::int64_t>& k) {
    if (en.self_linking_numerator(k) == 0) out.push_back(en.element(k));
  });
  return out;
}

/// Every c in the whole torsion group with lk(c, c) = 0.
inline std::vector<GroupElement> isotropic_elements(const LinkingForm& form,
                                                    std::size_t cap = kDefaultEnumerationCap) {
  const TorsionGroup& g = form.group();
  detail::check_cap("the torsion group", g.order(), cap);
  std::vector<GroupElement> out;
  const std::size_t r = g.rank();
  GroupElement c{IntVector(r, 0)};
  for (;;) {
    if (form.self_linking(c).is_zero()) out.push_back(c);
    std::size_t i = r;
    bool done = true;
    while (i > 0) {
      --i;
      if (++c.coords[i] < g.invariant_factors()[i]) {
        done = false;
        break;
      }
      c.coords[i] = 0;
    }
    if (done) break;
  }
  return out;
}

/// All characters lk(c, ·) with image exactly Z_n = <1/n>.
inline std::vector<Character> surjective_characters(const LinkingForm& form, std::int64_t n,
                                                    std::size_t cap = kDefaultEnumerationCap) {
  require_dihedral_modulus(n);
  detail::TorsionEnumerator en(form, n, cap);
  std::vector<Character> out;
  en.for_each([&](const std::vector<std::int64_t>& k) {
    if (en.character_content(k) == 1) out.emplace_back(form, en.element(k), n);
  });
  return out;
}

/// Partitions characters into (Z_n)^x orbits. Trivial characters are
/// dropped. Classes are ordered by representative.
inline std::vector<QuotientClass> quotient_classes(const LinkingForm& form,
                                                   const std::vector<Character>& chars,
                                                   std::int64_t n) {
  require_dihedral_modulus(n);
  const TorsionGroup& g = form.group();
  const std::vector<std::int64_t> units = detail::units_mod(n);
  std::map<GroupElement, QuotientClass> by_rep;
  for (const Character& ch : chars) {
    if (ch.modulus() != n) throw PreconditionError("characters have mixed moduli");
    if (ch.element().is_zero()) continue;
    GroupElement rep = ch.element();
    for (std::int64_t u : units) rep = std::min(rep, g.scale(ch.element(), Integer(u)));
    QuotientClass& cls = by_rep[rep];
    cls.n = n;
    cls.members.push_back(ch);
  }
  std::vector<QuotientClass> out;
  for (auto& [rep, cls] : by_rep) {
    std::sort(cls.members.begin(), cls.members.end());
    cls.members.erase(std::unique(cls.members.begin(), cls.members.end()), cls.members.end());
    out.push_back(std::move(cls));
  }
  return out;
}

/// extends <=> lk(c, c) = 0.
inline ExtensionVerdict verdict(const LinkingForm& form, const Character& c) {
  ExtensionVerdict v;
  v.self_linking = form.self_linking(c.element());
  v.extends = v.self_linking.is_zero();
  v.degenerate = !c.surjective();
  v.scope = {ScopeNote::OrientableB4, ScopeNote::AlsoNonorientable,
             ScopeNote::AlsoAnyAmbient4Manifold};
  if (!v.extends && c.modulus() % 3 == 0) v.scope.push_back(ScopeNote::ObstructsAllIf3DividesN);
  return v;
}

/// A mod-n characteristic class on a Seifert surface: (V + V^T) β ≡ 0 mod n
/// with gcd(β, n) = 1, so that a primitive integral lift exists.
class CharKnotClass {
 public:
  CharKnotClass(std::shared_ptr<const SeifertMatrix> v, std::vector<std::int64_t> beta_mod_n,
                std::int64_t n)
      : v_(std::move(v)), beta_(std::move(beta_mod_n)), n_(n) {
    require_dihedral_modulus(n);
    if (beta_.size() != v_->size()) throw DimensionError("class length does not match V");
    std::int64_t content = n;
    for (std::int64_t& b : beta_) {
      b = ((b % n) + n) % n;
      content = std::gcd(content, b);
    }
    if (content != 1)
      throw PreconditionError("class has gcd(entries, n) = " + std::to_string(content) +
                              ", no primitive lift");
    for (const Integer& x : symmetrize(*v_) * lift())
      if (x % n != 0) throw PreconditionError("(V + V^T) beta is not 0 mod n");
  }
  CharKnotClass(const SeifertMatrix& v, std::vector<std::int64_t> beta_mod_n, std::int64_t n)
      : CharKnotClass(std::make_shared<const SeifertMatrix>(v), std::move(beta_mod_n), n) {}

  const SeifertMatrix& seifert() const noexcept { return *v_; }
  const std::vector<std::int64_t>& beta_mod_n() const noexcept { return beta_; }
  std::int64_t modulus() const noexcept { return n_; }

  /// Entry-wise representative in [0, n).
  IntVector lift() const { return IntVector(beta_.begin(), beta_.end()); }

  /// β^T (V + V^T) β on the lift.
  Integer form_value() const { return quadratic_form(symmetrize(*v_), lift()); }

  friend bool operator==(const CharKnotClass& a, const CharKnotClass& b) {
    return a.n_ == b.n_ && a.beta_ == b.beta_;
  }
  friend bool operator<(const CharKnotClass& a, const CharKnotClass& b) {
    return a.beta_ < b.beta_;
  }

 private:
  std::shared_ptr<const SeifertMatrix> v_;
  std::vector<std::int64_t> beta_;
  std::int64_t n_;
};

/// All characteristic classes mod n, from the kernel of V + V^T over Z_n read
/// off its Smith normal form: β = Q y with y_i ∈ (n / gcd(d_i, n)) Z.
inline std::vector<CharKnotClass> characteristic_knot_classes(
    const SeifertMatrix& v, std::int64_t n, std::size_t cap = kDefaultEnumerationCap) {
  require_dihedral_modulus(n);
  const IntMatrix a = symmetrize(v);
  const std::size_t m = a.rows();
  const SNFResult s = snf(a);
  std::vector<std::size_t> free;
  std::vector<std::int64_t> counts, steps;
  Integer size = 1;
  for (std::size_t i = 0; i < m; ++i) {
    const Integer g = gcd(s.D()(i, i), Integer(n));
    if (g == 1) continue;
    free.push_back(i);
    counts.push_back(g.convert_to<std::int64_t>());
    steps.push_back(n / counts.back());
    size *= g;
  }
  detail::check_cap("the kernel of V + V^T mod " + std::to_string(n), size, cap);

  auto shared = std::make_shared<const SeifertMatrix>(v);
  std::vector<std::vector<std::int64_t>> q_mod(m, std::vector<std::int64_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      q_mod[i][j] = mod_floor(s.Q()(i, j), Integer(n)).convert_to<std::int64_t>();

  std::vector<CharKnotClass> out;
  std::vector<std::int64_t> k(free.size(), 0);
  for (;;) {
    std::vector<std::int64_t> beta(m, 0);
    std::int64_t content = n;
    for (std::size_t row = 0; row < m; ++row) {
      __int128 acc = 0;
      for (std::size_t f = 0; f < free.size(); ++f)
        acc += static_cast<__int128>(q_mod[row][free[f]]) * (k[f] * steps[f] % n);
      beta[row] = static_cast<std::int64_t>(acc % n);
      content = std::gcd(content, beta[row]);
    }
    if (content == 1) out.emplace_back(shared, std::move(beta), n);
    std::size_t i = free.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++k[i] < counts[i]) {
        done = false;
        break;
      }
      k[i] = 0;
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// One characteristic class per SNF kernel direction, without enumerating the
/// kernel. Used when full enumeration is over the cap.
inline std::vector<CharKnotClass> kernel_basis_classes(const SeifertMatrix& v, std::int64_t n) {
  require_dihedral_modulus(n);
  const IntMatrix a = symmetrize(v);
  const SNFResult s = snf(a);
  auto shared = std::make_shared<const SeifertMatrix>(v);
  std::vector<CharKnotClass> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Integer g = gcd(s.D()(i, i), Integer(n));
    if (g == 1) continue;
    const Integer step = Integer(n) / g;
    std::vector<std::int64_t> beta;
    std::int64_t content = n;
    for (std::size_t row = 0; row < a.rows(); ++row) {
      beta.push_back(mod_floor(s.Q()(row, i) * step, Integer(n)).convert_to<std::int64_t>());
      content = std::gcd(content, beta.back());
    }
    if (content == 1) out.emplace_back(shared, std::move(beta), n);
  }
  return out;
}

/// The character of c = [(1/n)(V + V^T) β].
inline Character char_knot_to_character(const LinkingForm& form, const CharKnotClass& beta) {
  const IntMatrix a = symmetrize(beta.seifert());
  if (a != form.group().ambient())
    throw PreconditionError("linking form was built from a different Seifert matrix");
  const std::int64_t n = beta.modulus();
  auto class_of = [&](const IntVector& lift) {
    IntVector w = a * lift;
    for (Integer& x : w) {
      if (x % n != 0) throw std::logic_error("A beta not divisible by n");
      x /= n;
    }
    return form.group().coordinates(w);
  };
  IntVector lift = beta.lift();
  GroupElement c = class_of(lift);
#ifndef NDEBUG
  if (!lift.empty()) {
    lift[0] += n;
    if (class_of(lift) != c) throw std::logic_error("character depends on the lift of beta");
  }
#endif
  return Character(form, std::move(c), n);
}

/// β^T (V + V^T) β ≡ 0 mod n^2.
inline bool seifert_criterion(const CharKnotClass& beta) {
  const Integer nn = Integer(beta.modulus()) * beta.modulus();
  return beta.form_value() % nn == 0;
}

/// Same truth value as seifert_criterion: a 0-framed characteristic knot
/// inducing the same quotient exists exactly when the form vanishes mod n^2.
inline bool zero_framed_exists(const CharKnotClass& beta) { return seifert_criterion(beta); }

/// For cyclic H_1(Σ_2 K): a D_n quotient extends iff n^2 divides |H_1|.
inline bool cyclic_criterion(const TorsionGroup& g, std::int64_t n) {
  require_dihedral_modulus(n);
  if (!g.is_cyclic())
    throw InapplicableCriterion("cyclic criterion needs cyclic H_1, group has rank " +
                                std::to_string(g.rank()));
  const Integer order = g.order();
  if (order % n != 0)
    throw PreconditionError(std::to_string(n) + " does not divide |H_1| = " + to_string(order));
  return order % (Integer(n) * n) == 0;
}

}  // namespace dihedral
