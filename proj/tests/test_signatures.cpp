#include "catch_amalgamated.hpp"
#include "dihedral/signatures.hpp"
#include "oracles.hpp"

using namespace dihedral;

namespace {

std::vector<Rational> ints(std::initializer_list<int> xs) {
  std::vector<Rational> out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("trefoil Tristram-Levine signatures") {
  const SeifertMatrix t = twist_knot(-1);
  CHECK(tristram_levine(t, RootOfUnity{1, 2}) == -2);
  CHECK(tristram_levine(t, RootOfUnity{1, 2}, Precision::Oct) == -2);
  CHECK(tristram_levine(t, RootOfUnity{1, 3}) == -2);
  CHECK(tristram_levine(t, RootOfUnity{1, 12}) == 0);
  CHECK(tristram_levine(SeifertMatrix::unknot(), RootOfUnity{1, 3}) == 0);
}

TEST_CASE("degenerate forms throw instead of guessing") {
  // Roots of the trefoil's Alexander polynomial are exp(±2 pi i / 6).
  CHECK_THROWS_AS(tristram_levine(twist_knot(-1), RootOfUnity{1, 6}), IndeterminateSignature);
  CHECK_THROWS_AS(tristram_levine(twist_knot(-1), RootOfUnity{5, 6}), IndeterminateSignature);
  CHECK_THROWS_AS(tristram_levine(twist_knot(-1), RootOfUnity{0, 6}), PreconditionError);
  CHECK_THROWS_AS(tristram_levine(twist_knot(-1), RootOfUnity{6, 6}), PreconditionError);
}

TEST_CASE("Xi_3 of twist knots") {
  const XiValue xi = xi_twist(11);
  CHECK(xi.candidates() == ints({7, 9}));
  CHECK(xi.components.form_term == Rational(8));
  CHECK(xi.components.tristram_levine_sum == 0);
  CHECK(xi.all_integral());
  CHECK(ribbon_test(xi, 0, 3) == RibbonVerdict::NotRibbon);
  CHECK(ribbon_test(xi, 6, 3) == RibbonVerdict::ConsistentWithRibbon);

  const XiValue x2 = xi_twist(2);
  CHECK(x2.candidates() == ints({-1, 1}));
  CHECK(ribbon_test(x2, 0, 3) == RibbonVerdict::ConsistentWithRibbon);

  const XiValue x5 = xi_twist(5);
  CHECK(x5.components.form_term == Rational(8, 3));
  CHECK_FALSE(x5.all_integral());

  CHECK_THROWS_AS(xi_twist(0), PreconditionError);
}

TEST_CASE("ribbon test needs square-free odd n") {
  const XiValue xi = xi_twist(11);
  CHECK_THROWS_AS(ribbon_test(xi, 0, 9), PreconditionError);
  CHECK_THROWS_AS(ribbon_test(xi, -1, 3), PreconditionError);
  CHECK_THROWS_AS(ribbon_test(xi, 0, 4), EvenModulusError);
  CHECK(is_square_free(15));
  CHECK_FALSE(is_square_free(45));
}

TEST_CASE("exact sigma(W) gives a single candidate") {
  const SeifertMatrix v = twist_knot(11);
  const XiValue xi = xi_n(v, SurfaceClass(v, {-1, 1}), SeifertMatrix::unknot(), 3, SigmaW::exact(-1));
  CHECK(xi.candidates() == ints({7}));
  CHECK_THROWS_AS(xi_n(v, SurfaceClass(v, {1, 0}), SeifertMatrix::unknot(), 3, SigmaW::exact(1)),
                  PreconditionError);
}

TEST_CASE("signature of a dihedral cover") {
  CHECK(cover_signature(1, 4, {}, 3) == Rational(1));
  CHECK(cover_signature(0, 0, {Rational(-2)}, 5) == Rational(2));
  CHECK(cover_signature(2, -2, ints({7, 9}), 3) == Rational(-9));
  CHECK_THROWS_AS(cover_signature(0, 1, {}, 3), PreconditionError);
  CHECK_THROWS_AS(cover_signature(0, 0, {}, 4), EvenModulusError);
}

TEST_CASE("property: genus-one signatures match the closed form") {
  oracle::SeifertGenerator gen(1234);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const SeifertMatrix v = gen.seifert(1);
    for (std::int64_t n : {2, 3, 5, 7})
      for (std::int64_t k = 1; k < n; ++k) {
        const int want = oracle::genus_one_signature(v.matrix(), k, n);
        if (want == 99) continue;
        REQUIRE(tristram_levine(v, RootOfUnity{k, n}) == want);
        ++checked;
      }
  }
  CHECK(checked >= 1000);
}

TEST_CASE("property: signatures are even, additive and precision independent") {
  oracle::SeifertGenerator gen(555);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const SeifertMatrix a = gen.seifert(1 + trial % 2), b = gen.seifert(1);
    for (std::int64_t k = 1; k < 5; ++k) {
      const RootOfUnity w{k, 5};
      int sa = 0, sb = 0, sab = 0, sa_oct = 0;
      try {
        sa = tristram_levine(a, w);
        sb = tristram_levine(b, w);
        sab = tristram_levine(connected_sum(a, b), w);
        sa_oct = tristram_levine(a, w, Precision::Oct);
      } catch (const IndeterminateSignature&) {
        continue;
      }
      REQUIRE(sa % 2 == 0);
      REQUIRE(sab == sa + sb);
      REQUIRE(sa == sa_oct);
      REQUIRE(tristram_levine(a, RootOfUnity{5 - k, 5}) == sa);
      ++checked;
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("property: Xi_3 of twist knots is integral exactly when m = 2 mod 9") {
  for (int m = -40; m <= 40; ++m) {
    if (((m % 3) + 3) % 3 != 2) continue;
    const XiValue xi = xi_twist(m);
    REQUIRE(xi.all_integral() == (((m % 9) + 9) % 9 == 2));
    REQUIRE(xi.value_high - xi.value_low == Rational(2));
  }
}
