// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Brute-force sides come from oracles.hpp.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "dihedral.hpp"
#include "oracles.hpp"

using namespace dihedral;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

SeifertMatrix v_9_37() {
  return SeifertMatrix(IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 0, -2, 1}, {-1, -1, 0, -1}});
}

IntVector mul(const IntMatrix& a, const IntVector& x) {
  IntVector y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

Integer dot(const IntVector& x, const IntVector& y) {
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

// Valid Seifert matrices of genus 1 or 2, entries in [-2, 2], 1 < |det| <= 2000.
const std::vector<SeifertMatrix>& corpus() {
  static const std::vector<SeifertMatrix> knots = [] {
    std::vector<SeifertMatrix> out;
    oracle::SeifertGenerator gen(20240917);
    while (out.size() < 240) {
      const SeifertMatrix v = gen.seifert(1 + out.size() % 2);
      const Integer d = abs(oracle::det(v.matrix() + v.matrix().transpose()));
      if (d > 1 && d <= 2000) out.push_back(v);
    }
    return out;
  }();
  return knots;
}

// Every characteristic class mod n by exhaustion over (Z_n)^m.
std::set<std::vector<std::int64_t>> brute_char_classes(const IntMatrix& a, std::int64_t n) {
  std::set<std::vector<std::int64_t>> out;
  const std::size_t m = a.rows();
  std::vector<std::int64_t> b(m, 0);
  for (;;) {
    std::int64_t content = n;
    for (std::int64_t x : b) content = std::gcd(content, x);
    bool kernel = content == 1;
    for (std::size_t i = 0; i < m && kernel; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < m; ++j) s += a(i, j) * b[j];
      kernel = s % n == 0;
    }
    if (kernel) out.insert(b);
    std::size_t i = m;
    while (i > 0 && ++b[i - 1] == n) b[--i] = 0;
    if (i == 0) return out;
  }
}

Outcome criterion1() {
  Outcome o;
  const SeifertMatrix v = v_9_37();
  const IntMatrix a = symmetrize(v);
  o.expect(snf(a).diagonal() == IntVector{1, 1, 3, 15}, "SNF diagonal");
  const TorsionGroup g(a);
  o.expect(g.invariant_factors() == IntVector{3, 15}, "torsion factors");

  const IntVector l1{-1, -1, 0, 0}, l2{-1, 0, 0, 0};
  const std::vector<IntVector> gens{l1, l2};
  const Rational want[2][2] = {{Rational(2, 3), Rational(1, 3)}, {Rational(1, 3), Rational(2, 5)}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      o.expect(evaluate_linking(a, gens[i], gens[j]).value() == want[i][j], "Lambda entry");

  // Isotropic elements x l1 + y l2 of the 3-torsion, in the basis l1, l2.
  const LinkingForm form(g);
  std::map<GroupElement, std::pair<int, int>> standard;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 15; ++y) {
      IntVector w(4);
      for (std::size_t k = 0; k < 4; ++k) w[k] = x * l1[k] + y * l2[k];
      standard[g.coordinates(w)] = {x, y};
    }
  o.expect(standard.size() == 45, "l1, l2 do not generate H_1");
  std::set<std::pair<int, int>> iso;
  for (const GroupElement& c : enumerate_isotropic(form, 3)) iso.insert(standard.at(c));
  o.expect(iso == std::set<std::pair<int, int>>{{0, 0}, {0, 5}, {0, 10}, {1, 5}, {2, 10}},
           "isotropic set");

  // Nontrivial isotropic characters form exactly two unit orbits, both extendable.
  std::set<GroupElement> reps;
  for (const QuotientClass& cls : quotient_classes(form, surjective_characters(form, 3), 3)) {
    const ExtensionVerdict ver = verdict(form, cls.representative());
    if (ver.self_linking.is_zero()) {
      reps.insert(cls.representative().element());
      o.expect(ver.extends, "isotropic class not extendable");
    }
  }
  o.expect(reps.size() == 2, "isotropic quotient class count");
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (int m = -50; m <= 50; ++m) {
    const SeifertMatrix v = twist_knot(m);
    const LinkingForm form(double_cover_homology(v));
    const bool quotient = (m % 3 + 3) % 3 == 2;
    const auto chars = surjective_characters(form, 3);
    o.expect(chars.empty() != quotient, "quotient existence at m = " + std::to_string(m));
    if (!quotient) continue;
    const bool want = (m % 9 + 9) % 9 == 2;
    bool by_characters = false;
    for (const QuotientClass& cls : quotient_classes(form, chars, 3))
      by_characters = by_characters || verdict(form, cls.representative()).extends;
    const bool by_form = seifert_criterion(CharKnotClass(v, {-1, 1}, 3));
    o.expect(by_characters == want, "character pipeline at m = " + std::to_string(m));
    o.expect(by_form == want, "seifert_criterion at m = " + std::to_string(m));
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  AnalyzeOptions opt;
  opt.moduli = {3};
  const Json j = to_json(analyze(twist_knot(-1), "3_1", opt));
  const Json& classes = j["moduli"][0]["classes"];
  o.expect(classes.size() == 1, "trefoil class count");
  for (const Json& c : classes) {
    o.expect(c["extends"] == false, "trefoil verdict");
    std::set<std::string> scope;
    for (const Json& s : c["scope"]) scope.insert(s.get<std::string>());
    o.expect(scope.count("also-nonorientable") == 1, "non-orientable scope");
    o.expect(scope.count("also-any-ambient-4-manifold") == 1, "ambient 4-manifold scope");
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::optional<SeifertMatrix> z81;
  for (int a = -30; a <= 30 && !z81; ++a)
    for (int b = -30; b <= 30 && !z81; ++b) {
      const SeifertMatrix v(IntMatrix{{a, 1}, {0, b}});
      if (knot_determinant(v) == 81) z81 = v;
    }
  o.expect(z81.has_value(), "no [[a,1],[0,b]] with determinant 81");
  if (!z81) return o;
  const TorsionGroup g = double_cover_homology(*z81);
  o.expect(g.invariant_factors() == IntVector{81}, "group is not Z_81");
  const LinkingForm form(g);
  for (std::int64_t n : {3, 9, 27, 81}) {
    const bool want = n <= 9;
    o.expect(cyclic_criterion(g, n) == want, "cyclic criterion n = " + std::to_string(n));
    const auto classes = quotient_classes(form, surjective_characters(form, n), n);
    o.expect(!classes.empty(), "no classes for n = " + std::to_string(n));
    for (const QuotientClass& cls : classes)
      o.expect(verdict(form, cls.representative()).extends == want,
               "character pipeline n = " + std::to_string(n));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::size_t classes = 0;
  for (const SeifertMatrix& v : corpus()) {
    const IntMatrix a = symmetrize(v);
    const Integer det = oracle::det(a);
    const IntMatrix adj = oracle::adjugate(a);
    const LinkingForm form(double_cover_homology(v));
    for (std::int64_t n : oracle::odd_divisors(det)) {
      const auto betas = characteristic_knot_classes(v, n);
      if (std::pow(double(n), double(a.rows())) <= 2e5) {
        std::set<std::vector<std::int64_t>> lib;
        for (const CharKnotClass& b : betas) lib.insert(b.beta_mod_n());
        o.expect(lib == brute_char_classes(a, n), "characteristic classes differ from exhaustion");
      }
      for (const CharKnotClass& beta : betas) {
        ++classes;
        const IntVector b = beta.lift();
        const Integer q = dot(b, mul(a, b));
        const bool form_side = q % (Integer(n) * n) == 0;
        IntVector c = mul(a, b);
        for (Integer& x : c) x /= n;
        // lk(c, c) = c^T adj(A) c / det
        const bool linking_side = is_integer(make_rational(dot(c, mul(adj, c)), det));
        o.expect(form_side == linking_side, "brute-force sides disagree");
        o.expect(seifert_criterion(beta) == form_side, "seifert_criterion");
        const Character ch = char_knot_to_character(form, beta);
        o.expect(form.self_linking(ch.element()).is_zero() == linking_side, "library self-linking");
      }
    }
  }
  o.expect(corpus().size() >= 200, "corpus too small");
  o.detail = o.ok ? std::to_string(corpus().size()) + " knots, " + std::to_string(classes) +
                        " classes"
                  : o.detail;
  return o;
}

Outcome criterion6() {
  Outcome o;
  int sampled = 0;
  for (const SeifertMatrix& v : corpus()) {
    if (sampled == 20) break;
    const std::int64_t n = oracle::odd_divisors(knot_determinant(v)).front();
    if (n > 15) continue;
    const auto betas = characteristic_knot_classes(v, n);
    if (betas.empty()) continue;
    ++sampled;
    const SeifertMatrix sum = self_sum(v, static_cast<std::size_t>(n));
    for (const CharKnotClass& beta : betas) {
      std::vector<std::int64_t> diag;
      for (std::int64_t i = 0; i < n; ++i)
        diag.insert(diag.end(), beta.beta_mod_n().begin(), beta.beta_mod_n().end());
      o.expect(seifert_criterion(CharKnotClass(sum, diag, n)), "diagonal class obstructed");
    }
  }
  o.expect(sampled == 20, "fewer than 20 dihedral knots sampled");
  return o;
}

Outcome criterion7() {
  Outcome o;
  int checked = 0;
  std::vector<SeifertMatrix> knots = corpus();
  for (int m = -50; m <= 50; ++m) knots.push_back(twist_knot(m));
  for (const SeifertMatrix& v : knots) {
    for (std::int64_t n : oracle::odd_divisors(knot_determinant(v))) {
      if (n > 45) break;
      for (const CharKnotClass& beta : characteristic_knot_classes(v, n)) {
        if (!seifert_criterion(beta) || beta.form_value() == 0) continue;
        ++checked;
        const Stabilization s = stabilize_zero_framed(v, SurfaceClass(v, beta.lift()), n);
        const IntMatrix& w = s.matrix.matrix();
        const IntVector& b = s.beta.coords();
        o.expect(dot(b, mul(w + w.transpose(), b)) == 0, "stabilized form value");
        o.expect(oracle::det(w - w.transpose()) == 1, "stabilized skew part");
        for (std::size_t i = 0; i < b.size(); ++i) {
          const Integer want = i < v.size() ? Integer(beta.beta_mod_n()[i]) : Integer(0);
          o.expect(mod_floor(b[i] - want, Integer(n)) == 0, "class not (beta, 0, ..., 0) mod n");
        }
      }
    }
  }
  o.expect(checked >= 20, "too few nonzero 0-framed candidates");
  if (o.ok) o.detail = std::to_string(checked) + " stabilizations";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const XiValue x2 = xi_twist(2);
  o.expect(x2.candidates() == std::vector<Rational>{Rational(-1), Rational(1)}, "m = 2 candidates");
  o.expect(ribbon_test(x2, 0, 3) == RibbonVerdict::ConsistentWithRibbon, "m = 2 ribbon");
  for (int m = -50; m <= 50; ++m) {
    if ((m % 3 + 3) % 3 != 2 || m == 2) continue;
    const XiValue xi = xi_twist(m);
    o.expect(xi.components.tristram_levine_sum == 0, "nonzero signature term");
    o.expect(ribbon_test(xi, 0, 3) == RibbonVerdict::NotRibbon,
             "m = " + std::to_string(m) + " not flagged");
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  const SeifertMatrix t = twist_knot(-1);
  const RootOfUnity minus_one{1, 2};
  for (Precision p : {Precision::Quad, Precision::Oct}) {
    o.expect(tristram_levine(t, minus_one, p) == -2, "trefoil");
    o.expect(tristram_levine(connected_sum(t, t), minus_one, p) == -4, "trefoil # trefoil");
    o.expect(tristram_levine(SeifertMatrix::unknot(), minus_one, p) == 0, "unknot");
  }
  for (const SeifertMatrix& v : corpus())
    for (std::int64_t k = 1; k < 7; ++k) {
      int quad = 0, oct = 0;
      try {
        quad = tristram_levine(v, RootOfUnity{k, 7}, Precision::Quad);
        oct = tristram_levine(v, RootOfUnity{k, 7}, Precision::Oct);
      } catch (const IndeterminateSignature&) {
        continue;
      }
      o.expect(quad == oct, "precisions disagree");
    }
  return o;
}

Outcome criterion10() {
  Outcome o;
  int knots = 0;
  std::vector<SeifertMatrix> all = corpus();
  all.push_back(v_9_37());
  for (const SeifertMatrix& v : all) {
    const IntMatrix a = symmetrize(v);
    const TorsionGroup g(a);
    if (g.order() > 10000) continue;
    ++knots;
    const LinkingForm form(g);
    const auto& gens = g.generators();
    for (std::size_t i = 0; i < g.rank(); ++i)
      for (std::size_t j = 0; j < g.rank(); ++j) {
        IntVector z(a.rows());
        for (std::size_t k = 0; k < z.size(); ++k) z[k] = Integer(k % 2 ? -1 : 1) * (k + i + j + 1);
        IntVector shifted = gens[i];
        const IntVector az = mul(a, z);
        for (std::size_t k = 0; k < shifted.size(); ++k) shifted[k] += az[k];
        const ResidueQZ lam = form(i, j);
        o.expect(evaluate_linking(a, shifted, gens[j]) == lam, "lift dependence");
        o.expect(lam == form(j, i), "asymmetry");
        o.expect((g.invariant_factors()[i] * lam).is_zero(), "order does not annihilate");
        o.expect(lam.denominator() % 2 == 1, "even denominator");
        o.expect(lam.value() == oracle::linking(a, gens[i], gens[j]), "adjugate oracle");
      }
    std::set<std::vector<ResidueQZ>> images;
    std::size_t count = 0;
    GroupElement c{IntVector(g.rank(), 0)};
    for (;;) {
      images.insert(form.character_values(c));
      ++count;
      std::size_t i = g.rank();
      while (i > 0 && ++c.coords[i - 1] == g.invariant_factors()[i - 1]) c.coords[--i] = 0;
      if (i == 0) break;
    }
    o.expect(Integer(count) == g.order() && images.size() == count, "c -> lk(c, .) not injective");
  }
  o.expect(knots >= 200, "too few knots with |H_1| <= 10^4");
  if (o.ok) o.detail = std::to_string(knots) + " knots";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    Outcome (*run)();
    double budget_ms;
  };
  const Criterion criteria[] = {
      {1, "9_37 end to end", criterion1, 100},
      {2, "twist family verdicts", criterion2, 1000},
      {3, "trefoil strong negative", criterion3, 0},
      {4, "cyclic criterion on Z_81", criterion4, 0},
      {5, "criterion equivalence oracle", criterion5, 10000},
      {6, "connected-sum law", criterion6, 0},
      {7, "stabilization to 0-framed", criterion7, 0},
      {8, "Xi_3 and ribbon test", criterion8, 0},
      {9, "Tristram-Levine sanity", criterion9, 0},
      {10, "linking form well-definedness", criterion10, 0},
  };
  corpus();
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = Clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (o.ok && c.budget_ms > 0 && ms > c.budget_ms) {
      o.ok = false;
      std::ostringstream os;
      os << "over the " << c.budget_ms << " ms budget";
      o.detail = os.str();
    }
    if (!o.ok) ++failures;
    std::printf("%s criterion %d: %s (%.1f ms)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, ms,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
