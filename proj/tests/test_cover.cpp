#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "dihedral/cover.hpp"
#include "oracles.hpp"

using namespace dihedral;

namespace {

SeifertMatrix v_9_37() {
  return SeifertMatrix(IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 0, -2, 1}, {-1, -1, 0, -1}});
}

const IntVector kL1{-1, -1, 0, 0};
const IntVector kL2{-1, 0, 0, 0};

ResidueQZ q(int num, int den) { return ResidueQZ(Rational(num, den)); }

// Every element of the group, in lexicographic coordinate order.
std::vector<GroupElement> all_elements(const TorsionGroup& g) {
  std::vector<GroupElement> out;
  GroupElement c{IntVector(g.rank(), 0)};
  for (;;) {
    out.push_back(c);
    std::size_t i = g.rank();
    while (i > 0) {
      --i;
      if (++c.coords[i] < g.invariant_factors()[i]) break;
      c.coords[i] = 0;
      if (i == 0) return out;
    }
    if (g.rank() == 0) return out;
  }
}

}  // namespace

TEST_CASE("homology of the 9_37 double cover") {
  const TorsionGroup g = double_cover_homology(v_9_37());
  CHECK(g.invariant_factors() == IntVector{3, 15});
  CHECK(g.order() == 45);
  CHECK_FALSE(g.is_cyclic());
  for (std::size_t i = 0; i < g.rank(); ++i)
    CHECK(g.element_order(g.coordinates(g.generators()[i])) == g.invariant_factors()[i]);
  // The standard generators have orders 3 and 15 as well.
  CHECK(g.element_order(g.coordinates(kL1)) == 3);
  CHECK(g.element_order(g.coordinates(kL2)) == 15);
}

TEST_CASE("trivial and cyclic groups") {
  const TorsionGroup u = double_cover_homology(SeifertMatrix(IntMatrix{{0, -1}, {0, 0}}));
  CHECK(u.rank() == 0);
  CHECK(u.order() == 1);
  CHECK(linking_form(u).rank() == 0);
  const TorsionGroup t = double_cover_homology(twist_knot(-1));
  CHECK(t.invariant_factors() == IntVector{3});
  CHECK(t.is_cyclic());
  CHECK(double_cover_homology(SeifertMatrix::unknot()).rank() == 0);
}

TEST_CASE("singular presentation matrices are rejected") {
  CHECK_THROWS_AS(TorsionGroup(IntMatrix{{1, 1}, {1, 1}}), SingularMatrixError);
  CHECK_THROWS_AS(TorsionGroup(IntMatrix(2, 3)), DimensionError);
}

TEST_CASE("linking form of 9_37 on the standard generators") {
  const IntMatrix a = symmetrize(v_9_37());
  CHECK(evaluate_linking(a, kL1, kL1) == q(2, 3));
  CHECK(evaluate_linking(a, kL1, kL2) == q(1, 3));
  CHECK(evaluate_linking(a, kL2, kL1) == q(1, 3));
  CHECK(evaluate_linking(a, kL2, kL2) == q(2, 5));
}

TEST_CASE("trefoil linking form is 1/3 on the generator (1,0)") {
  const IntMatrix a = symmetrize(twist_knot(-1));
  CHECK(evaluate_linking(a, {1, 0}, {1, 0}) == q(1, 3));
  const LinkingForm form = linking_form(double_cover_homology(twist_knot(-1)));
  const ResidueQZ lam = form(0, 0);
  CHECK((lam == q(1, 3) || lam == q(2, 3)));
}

TEST_CASE("boundaries link trivially") {
  const IntMatrix a = symmetrize(v_9_37());
  const IntVector z{2, -1, 0, 5};
  CHECK(evaluate_linking(a, a * z, kL2).is_zero());
  CHECK(evaluate_linking(a, a * z, IntVector{3, 1, 4, 1}).is_zero());
}

TEST_CASE("evaluate_linking errors") {
  const IntMatrix a = symmetrize(v_9_37());
  CHECK_THROWS_AS(evaluate_linking(a, {1, 0}, kL1), DimensionError);
  CHECK_THROWS_AS(evaluate_linking(IntMatrix{{1, 1}, {1, 1}}, {1, 0}, {1, 0}), SingularMatrixError);
}

TEST_CASE("self-linking in the standard basis") {
  const IntMatrix a = symmetrize(v_9_37());
  const TorsionGroup g(a);
  const LinkingForm form(g);
  auto in_standard_basis = [&](int x, int y) {
    IntVector w(4);
    for (std::size_t i = 0; i < 4; ++i) w[i] = x * kL1[i] + y * kL2[i];
    return g.coordinates(w);
  };
  CHECK(form.self_linking(in_standard_basis(1, 5)).is_zero());
  CHECK(form.self_linking(in_standard_basis(0, 0)).is_zero());
  CHECK(form.self_linking(in_standard_basis(0, 3)) == q(3, 5));
  CHECK(self_linking(form, GroupElement{{0, 0}}).is_zero());
}

TEST_CASE("lift and coordinates are inverse") {
  const TorsionGroup g = double_cover_homology(v_9_37());
  for (const GroupElement& c : all_elements(g)) CHECK(g.coordinates(g.lift(c)) == c);
  CHECK_THROWS(g.check(GroupElement{{3, 0}}));
  CHECK_THROWS(g.check(GroupElement{{0}}));
}

TEST_CASE("property: linking form well-definedness on random knots") {
  oracle::SeifertGenerator gen(8080);
  std::mt19937& rng = gen.rng();
  std::uniform_int_distribution<int> zd(-5, 5);
  int tested = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const SeifertMatrix v = gen.seifert(1 + trial % 2);
    const IntMatrix a = symmetrize(v);
    const TorsionGroup g(a);
    if (g.order() > 10000) continue;
    ++tested;
    const LinkingForm form(g);
    REQUIRE(g.invariant_factors() == oracle::invariant_factors(a));
    REQUIRE(g.order() == abs(oracle::det(a)));
    REQUIRE(g.order() % 2 == 1);
    const auto& gens = g.generators();
    for (std::size_t i = 0; i < g.rank(); ++i) {
      for (std::size_t j = 0; j < g.rank(); ++j) {
        IntVector z(a.rows());
        for (Integer& x : z) x = zd(rng);
        IntVector shifted = gens[i];
        const IntVector az = a * z;
        for (std::size_t k = 0; k < shifted.size(); ++k) shifted[k] += az[k];
        REQUIRE(evaluate_linking(a, shifted, gens[j]) == form(i, j));
        REQUIRE(form(i, j) == form(j, i));
        REQUIRE((g.invariant_factors()[i] * form(i, j)).is_zero());
        REQUIRE(form(i, j).denominator() % 2 == 1);
        REQUIRE(form(i, j).value() == oracle::linking(a, gens[i], gens[j]));
      }
    }
    std::set<std::vector<ResidueQZ>> images;
    for (const GroupElement& c : all_elements(g)) images.insert(form.character_values(c));
    REQUIRE(Integer(images.size()) == g.order());
  }
  CHECK(tested >= 50);
}
