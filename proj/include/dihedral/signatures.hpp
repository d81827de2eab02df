// Tristram-Levine signatures, the Ξ_n signature defect of dihedral covers,
// and the ribbon inequality |Ξ_n| <= rk H_1(M_n) + (n - 1) / 2.
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dihedral/errors.hpp"
#include "dihedral/linalg.hpp"
#include "dihedral/seifert.hpp"

namespace dihedral {

/// ω = exp(2 π i k / n).
struct RootOfUnity {
  std::int64_t k = 1;
  std::int64_t n = 2;
};

enum class Precision {
  Quad,  // 128-bit binary float, 113-bit significand
  Oct,   // 256-bit binary float, 237-bit significand
};

inline constexpr double kSignatureZeroTolerance = 1e-9;

namespace detail {

// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
template <typename Real>
std::vector<Real> symmetric_eigenvalues(std::vector<Real> a, std::size_t n) {
  using std::abs;
  using std::sqrt;
  auto at = [&](std::size_t i, std::size_t j) -> Real& { return a[i * n + j]; };
  Real norm = 0;
  for (const Real& x : a) norm += x * x;
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int sweep = 0; sweep < 100; ++sweep) {
    Real off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off <= eps * eps * norm) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (at(p, q) == 0) continue;
        const Real theta = (at(q, q) - at(p, p)) / (2 * at(p, q));
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) /
                       (abs(theta) + sqrt(theta * theta + 1));
        const Real c = 1 / sqrt(t * t + 1);
        const Real s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const Real akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Real apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<Real> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  return eig;
}

}  // namespace detail

/// Signature of (1 - ω) V + (1 - ω̄) V^T, counted from the eigenvalues of its
/// real 2m x 2m embedding [[Re, -Im], [Im, Re]] (each eigenvalue doubled).
template <typename Real>
int tristram_levine(const SeifertMatrix& v, RootOfUnity omega,
                    double zero_tolerance = kSignatureZeroTolerance) {
  if (omega.n <= 0 || omega.k <= 0 || omega.k >= omega.n)
    throw PreconditionError("root of unity must satisfy 0 < k < n");
  const std::size_t m = v.size();
  if (m == 0) return 0;
  using std::cos;
  using std::sin;
  const Real angle = 2 * boost::math::constants::pi<Real>() * Real(omega.k) / Real(omega.n);
  const Real c = cos(angle), s = sin(angle);
  const std::size_t dim = 2 * m;
  std::vector<Real> h(dim * dim);
  const IntMatrix& vm = v.matrix();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Real vij(vm(i, j)), vji(vm(j, i));
      const Real re = (1 - c) * (vij + vji);
      const Real im = s * (vji - vij);
      h[i * dim + j] = re;
      h[(i + m) * dim + (j + m)] = re;
      h[i * dim + (j + m)] = -im;
      h[(i + m) * dim + j] = im;
    }
  int pos = 0, neg = 0;
  for (const Real& e : detail::symmetric_eigenvalues(std::move(h), dim)) {
    using std::abs;
    if (abs(e) < Real(zero_tolerance))
      throw IndeterminateSignature("Hermitian form is degenerate at exp(2 pi i " +
                                   std::to_string(omega.k) + "/" + std::to_string(omega.n) + ")");
    (e > 0 ? pos : neg)++;
  }
  return (pos - neg) / 2;
}

inline int tristram_levine(const SeifertMatrix& v, RootOfUnity omega,
                           Precision precision = Precision::Quad,
                           double zero_tolerance = kSignatureZeroTolerance) {
  namespace mp = boost::multiprecision;
  if (precision == Precision::Oct)
    return tristram_levine<mp::cpp_bin_float_oct>(v, omega, zero_tolerance);
  return tristram_levine<mp::cpp_bin_float_quad>(v, omega, zero_tolerance);
}

/// σ(W(K, β)) of the Cappell-Shaneson cobordism, supplied by the caller:
/// either a known value or a magnitude with unknown sign.
class SigmaW {
 public:
  static SigmaW exact(std::int64_t value) { return SigmaW(value, value); }
  static SigmaW up_to_sign(std::int64_t magnitude) {
    const std::int64_t m = magnitude < 0 ? -magnitude : magnitude;
    return SigmaW(-m, m);
  }
  std::int64_t low() const noexcept { return low_; }
  std::int64_t high() const noexcept { return high_; }
  bool is_exact() const noexcept { return low_ == high_; }

 private:
  SigmaW(std::int64_t lo, std::int64_t hi) : low_(lo), high_(hi) {}
  std::int64_t low_, high_;
};

struct XiComponents {
  /// (n^2 - 1) / (6n) * β^T (V + V^T) β
  Rational form_term;
  std::int64_t sigma_w_low = 0;
  std::int64_t sigma_w_high = 0;
  /// sum over i = 1..n-1 of σ_{ζ^i}(β)
  std::int64_t tristram_levine_sum = 0;
};

/// Ξ_n as two candidates; they differ only through the sign of σ(W).
struct XiValue {
  Rational value_low;
  Rational value_high;
  XiComponents components;

  std::vector<Rational> candidates() const {
    if (value_low == value_high) return {value_low};
    return {value_low, value_high};
  }
  bool all_integral() const {
    return denominator(value_low) == 1 && denominator(value_high) == 1;
  }
};

inline XiValue xi_n(const SeifertMatrix& v, const SurfaceClass& beta_lift,
                    const SeifertMatrix& beta_knot, std::int64_t n, SigmaW sigma_w,
                    Precision precision = Precision::Quad) {
  require_dihedral_modulus(n);
  const IntMatrix a = symmetrize(v);
  for (const Integer& x : a * beta_lift.coords())
    if (x % n != 0) throw PreconditionError("beta is not a mod-n characteristic class");
  XiValue xi;
  const Integer form = quadratic_form(a, beta_lift.coords());
  xi.components.form_term = Rational(Integer(n) * n - 1, Integer(6) * n) * Rational(form);
  xi.components.sigma_w_low = sigma_w.low();
  xi.components.sigma_w_high = sigma_w.high();
  for (std::int64_t i = 1; i < n; ++i)
    xi.components.tristram_levine_sum += tristram_levine(beta_knot, RootOfUnity{i, n}, precision);
  const Rational base = xi.components.form_term + Rational(xi.components.tristram_levine_sum);
  xi.value_low = base + Rational(sigma_w.low());
  xi.value_high = base + Rational(sigma_w.high());
  return xi;
}

/// Ξ_3 of the twist knot K_m with its unknotted characteristic curve (-1, 1),
/// where rk H_2(W) = 1 gives σ(W) = ±1. Needs m ≡ 2 mod 3.
inline XiValue xi_twist(const Integer& m) {
  const SeifertMatrix v = twist_knot(m);
  return xi_n(v, SurfaceClass(v, {-1, 1}), SeifertMatrix::unknot(), 3, SigmaW::up_to_sign(1));
}

enum class RibbonVerdict { ConsistentWithRibbon, NotRibbon };

inline const char* to_string(RibbonVerdict r) {
  return r == RibbonVerdict::NotRibbon ? "not-ribbon" : "consistent-with-ribbon";
}

inline bool is_square_free(std::int64_t n) {
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

/// Not ribbon when every Ξ candidate violates |Ξ| <= rank + (n - 1) / 2.
inline RibbonVerdict ribbon_test(const XiValue& xi, std::int64_t rank_h1_mn, std::int64_t n) {
  require_dihedral_modulus(n);
  if (!is_square_free(n))
    throw PreconditionError("ribbon obstruction needs square-free n, got " + std::to_string(n));
  if (rank_h1_mn < 0) throw PreconditionError("rank must be nonnegative");
  const Rational bound = Rational(rank_h1_mn) + Rational(Integer(n - 1), Integer(2));
  auto violates = [&](const Rational& x) { return (x < 0 ? Rational(-x) : x) > bound; };
  return violates(xi.value_low) && violates(xi.value_high) ? RibbonVerdict::NotRibbon
                                                           : RibbonVerdict::ConsistentWithRibbon;
}

/// σ(Y) = n σ(X) - (n - 1)/4 e(B) - sum Ξ_n(K_i) for an irregular dihedral
/// cover Y -> X branched over B with cone singularities K_i.
inline Rational cover_signature(std::int64_t sigma_x, std::int64_t euler_b,
                                const std::vector<Rational>& xi_contributions, std::int64_t n) {
  require_odd(n);
  if (euler_b % 2 != 0)
    throw PreconditionError("normal Euler number of the branch surface must be even");
  Rational s = Rational(Integer(n) * sigma_x) - Rational(Integer(n - 1), Integer(4)) * Rational(euler_b);
  for (const Rational& xi : xi_contributions) s -= xi;
  return s;
}

}  // namespace dihedral
