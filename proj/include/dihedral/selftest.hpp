// Built-in regression checks against known values, run by `dihedral selftest`.
#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dihedral/cover.hpp"
#include "dihedral/io.hpp"
#include "dihedral/linalg.hpp"
#include "dihedral/obstruction.hpp"
#include "dihedral/report.hpp"
#include "dihedral/seifert.hpp"
#include "dihedral/signatures.hpp"

namespace dihedral {

struct SelftestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Seifert matrix of 9_37 used throughout the checks.
inline SeifertMatrix knot_9_37() {
  return SeifertMatrix(IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 0, -2, 1}, {-1, -1, 0, -1}});
}

namespace detail {

inline std::vector<std::pair<std::string, std::function<std::pair<bool, std::string>()>>>
selftest_cases() {
  using Check = std::pair<bool, std::string>;
  const IntVector l1{-1, -1, 0, 0}, l2{-1, 0, 0, 0};
  return {
      {"9_37 Smith form diag(1,1,3,15)",
       [] {
         const SNFResult s = snf(symmetrize(knot_9_37()));
         const IntVector want{1, 1, 3, 15};
         return Check{s.diagonal() == want, ""};
       }},
      {"9_37 determinant 45",
       [] { return Check{knot_determinant(knot_9_37()) == 45, ""}; }},
      {"9_37 inverse first row (2/5,-1/15,1/15,-2/15)",
       [] {
         const RatMatrix inv = rational_inverse(symmetrize(knot_9_37()));
         const std::vector<Rational> want{Rational(2, 5), Rational(-1, 15), Rational(1, 15),
                                          Rational(-2, 15)};
         return Check{inv.row(0) == want, ""};
       }},
      {"9_37 linking matrix [[2/3,1/3],[1/3,2/5]]",
       [l1, l2] {
         const IntMatrix a = symmetrize(knot_9_37());
         const bool ok = evaluate_linking(a, l1, l1) == ResidueQZ(Rational(2, 3)) &&
                         evaluate_linking(a, l1, l2) == ResidueQZ(Rational(1, 3)) &&
                         evaluate_linking(a, l2, l2) == ResidueQZ(Rational(2, 5));
         return Check{ok, ""};
       }},
      {"9_37 isotropic set {(0,0),(0,5),(0,10),(1,5),(2,10)}",
       [l1, l2] {
         const IntMatrix a = symmetrize(knot_9_37());
         const RatMatrix inv = rational_inverse(a);
         std::set<std::pair<int, int>> got;
         for (int x = 0; x < 3; ++x)
           for (int y = 0; y < 15; ++y) {
             IntVector w(4);
             for (std::size_t i = 0; i < 4; ++i) w[i] = x * l1[i] + y * l2[i];
             if (evaluate_linking(inv, w, w).is_zero()) got.insert({x, y});
           }
         const std::set<std::pair<int, int>> want{{0, 0}, {0, 5}, {0, 10}, {1, 5}, {2, 10}};
         return Check{got == want, std::to_string(got.size()) + " solutions"};
       }},
      {"9_37 two isotropic D_3 classes, both extend",
       [] {
         const LinkingForm form(double_cover_homology(knot_9_37()));
         std::vector<Character> iso;
         for (const GroupElement& c : enumerate_isotropic(form, 3))
           if (!c.is_zero()) iso.emplace_back(form, c, 3);
         const auto classes = quotient_classes(form, iso, 3);
         bool all = true;
         for (const QuotientClass& q : classes) all = all && verdict(form, q.representative()).extends;
         return Check{classes.size() == 2 && all, std::to_string(classes.size()) + " classes"};
       }},
      {"trefoil has no extending D_3 quotient",
       [] {
         const Report r = analyze(twist_knot(-1), "3_1");
         const bool ok = r.blocks.size() == 1 && r.blocks[0].quotient_class_count == 1u &&
                         r.blocks[0].extendable_class_count == 0u;
         return Check{ok, ""};
       }},
      {"twist knots: det |4m+1|, extends iff m = 2 mod 9",
       [] {
         for (std::int64_t m = -30; m <= 30; ++m) {
           const SeifertMatrix v = twist_knot(m);
           if (knot_determinant(v) != Integer(m < 0 ? -(4 * m + 1) : 4 * m + 1))
             return Check{false, "determinant at m = " + std::to_string(m)};
           if (((m % 3) + 3) % 3 != 2) continue;
           const bool want = ((m % 9) + 9) % 9 == 2;
           if (seifert_criterion(CharKnotClass(v, {-1, 1}, 3)) != want)
             return Check{false, "criterion at m = " + std::to_string(m)};
         }
         return Check{true, ""};
       }},
      {"cyclic order 81: n = 3, 9 extend; 27, 81 do not",
       [] {
         const TorsionGroup g = double_cover_homology(twist_knot(20));
         const bool ok = g.order() == 81 && cyclic_criterion(g, 3) && cyclic_criterion(g, 9) &&
                         !cyclic_criterion(g, 27) && !cyclic_criterion(g, 81);
         return Check{ok, ""};
       }},
      {"Xi_3 of twist knots: m = 2 gives +-1, m = 11 gives 7, 9",
       [] {
         const XiValue a = xi_twist(2), b = xi_twist(11);
         const bool ok = a.value_low == -1 && a.value_high == 1 && b.value_low == 7 &&
                         b.value_high == 9 &&
                         ribbon_test(a, 0, 3) == RibbonVerdict::ConsistentWithRibbon &&
                         ribbon_test(b, 0, 3) == RibbonVerdict::NotRibbon;
         return Check{ok, ""};
       }},
      {"trefoil signature -2 at omega = -1",
       [] {
         const SeifertMatrix t = twist_knot(-1);
         return Check{tristram_levine(t, {1, 2}) == -2 &&
                          tristram_levine(t, {1, 2}, Precision::Oct) == -2,
                      ""};
       }},
      {"stabilizing m = 11 gives beta' = (-1,1,3,3,0,0,0,0,0,0)",
       [] {
         const SeifertMatrix v = twist_knot(11);
         const Stabilization s = stabilize_zero_framed(v, SurfaceClass(v, {-1, 1}), 3);
         const IntVector want{-1, 1, 3, 3, 0, 0, 0, 0, 0, 0};
         return Check{s.beta.coords() == want, ""};
       }},
      {"matrix text round trip",
       [] {
         const SeifertMatrix v = parse_matrix("{{1,0,0,0},{0,1,0,0},{1,0,-2,1},{-1,-1,0,-1}}");
         return Check{v == knot_9_37() && parse_matrix(render_matrix(v)) == v, ""};
       }},
  };
}

}  // namespace detail

inline std::vector<SelftestResult> run_selftest() {
  std::vector<SelftestResult> out;
  for (auto& [name, check] : detail::selftest_cases()) {
    SelftestResult r{name, false, ""};
    try {
      auto [ok, detail] = check();
      r.passed = ok;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.detail = std::string("threw: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace dihedral
