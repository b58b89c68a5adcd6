#include "galtor/gmod.hpp"

#include <doctest.h>

#include "test_util.hpp"

using namespace galtor;

TEST_CASE("group constructors") {
  SUBCASE("cyclic(1) is trivial") {
    FiniteGroup g = FiniteGroup::cyclic(1);
    CHECK(g.order() == 1);
    CHECK(g.identity() == 0);
  }
  SUBCASE("cyclic(2)") {
    FiniteGroup g = FiniteGroup::cyclic(2);
    CHECK(g.order() == 2);
    CHECK(g.mul(1, 1) == 0);
    CHECK(g.inverse(1) == 1);
  }
  SUBCASE("permutations (01),(12) on 3 points generate order 6") {
    auto pg = group_from_permutations(3, {{1, 0, 2}, {0, 2, 1}});
    CHECK(pg.group.order() == 6);
    CHECK(!pg.group.is_cyclic());
  }
  SUBCASE("non-associative table rejected") {
    // 2x2 table with a bad entry
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), std::invalid_argument);
  }
  SUBCASE("direct products") {
    FiniteGroup v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    CHECK(v4.order() == 4);
    CHECK(!v4.is_cyclic());
    for (int a = 0; a < 4; ++a) CHECK(v4.mul(a, a) == v4.identity());
  }
}

TEST_CASE("gset orbits, stabilizers, cosets") {
  SUBCASE("trivial action: singleton orbits, full stabilizers") {
    FiniteGroup g = FiniteGroup::cyclic(4);
    GSet s = GSet::trivial(g, 3);
    CHECK(s.orbits().size() == 3);
    for (int t = 0; t < 3; ++t) CHECK(s.stabilizer(t).order() == 4);
  }
  SUBCASE("cyclic(2) swapping two points") {
    FiniteGroup g = FiniteGroup::cyclic(2);
    GSet s = GSet::from_generator_images(g, {{1, 0}});
    auto orbits = s.orbits();
    REQUIRE(orbits.size() == 1);
    CHECK(orbits[0].size() == 2);
    CHECK(s.stabilizer(0).order() == 1);
  }
  SUBCASE("symmetric group of order 6 on 3 points") {
    auto pg = group_from_permutations(3, {{1, 0, 2}, {0, 2, 1}});
    GSet s(pg.group, pg.element_perms);
    Subgroup stab = s.stabilizer(0);
    CHECK(stab.order() == 2);
    CosetSystem cosets = right_cosets(stab);
    CHECK(cosets.reps.size() == 3);
    CHECK(cosets.reps[0] == pg.group.identity());
    // each element belongs to exactly one coset
    for (int e = 0; e < 6; ++e) CHECK(cosets.rep_index_of[e] >= 0);
  }
  SUBCASE("orbit-stabilizer count on random coset spaces") {
    FiniteGroup g = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
    for (int t0 = 0; t0 < g.order(); ++t0) {
      // cyclic subgroups give a spread of coset spaces
      std::vector<int> elems{g.identity()};
      int cur = t0;
      while (cur != g.identity()) {
        elems.push_back(cur);
        cur = g.mul(cur, t0);
      }
      Subgroup h(g, elems);
      GSet s = GSet::coset_space(h);
      for (int t = 0; t < s.size(); ++t) {
        auto orbit = s.orbits()[0];
        CHECK(static_cast<int>(orbit.size()) * s.stabilizer(t).order() == g.order());
      }
    }
  }
  SUBCASE("subgroup validation") {
    FiniteGroup g = FiniteGroup::cyclic(4);
    CHECK_THROWS_AS(Subgroup(g, {0, 1}), std::invalid_argument);  // not closed
    CHECK(Subgroup(g, {0, 2}).order() == 2);
  }
}

TEST_CASE("module constructors and validation") {
  FgAbGroup z = FgAbGroup::free_group(1);
  SUBCASE("trivial action always valid") {
    FiniteGroup g = FiniteGroup::cyclic(5);
    GModule m = GModule::trivial(g, FgAbGroup(2, make_matrix({{3, 0}, {0, 9}})));
    CHECK(m.base().order() == 27);
  }
  SUBCASE("cyclic(2) acting on Z by negation") {
    FiniteGroup g = FiniteGroup::cyclic(2);
    GModule m = GModule::from_generator_actions(g, z, {make_matrix({{-1}})});
    GroupElem one = z.element(make_vector({1}));
    CHECK(m.act(1, one) == -one);
  }
  SUBCASE("cyclic(3) acting on Z by negation rejected") {
    FiniteGroup g = FiniteGroup::cyclic(3);
    CHECK_THROWS_AS(GModule::from_generator_actions(g, z, {make_matrix({{-1}})}),
                    std::invalid_argument);
  }
  SUBCASE("non-automorphism (multiplication by 2) rejected") {
    FiniteGroup g = FiniteGroup::cyclic(2);
    CHECK_THROWS_AS(GModule::from_generator_actions(g, z, {make_matrix({{2}})}),
                    std::invalid_argument);
  }
}

TEST_CASE("module restriction and equivariant homs") {
  FiniteGroup g = FiniteGroup::cyclic(4);
  FgAbGroup z = FgAbGroup::free_group(1);
  GModule m = GModule::from_generator_actions(g, z, {make_matrix({{-1}})});
  SUBCASE("restriction to the order-2 subgroup") {
    Subgroup h(g, {0, 2});
    GModule r = m.restrict_to(h);
    CHECK(r.group().order() == 2);
    // sigma^2 acts trivially
    CHECK(mat_eq(r.action_matrix(1), IntMatrix::Identity(1, 1)));
    // cached: same underlying data on repeat
    GModule r2 = m.restrict_to(h);
    CHECK(r.same_module(r2));
  }
  SUBCASE("equivariance enforced") {
    GModule triv = GModule::trivial(g, z);
    CHECK_THROWS_AS(EquivariantHom(m, triv, AbHom::identity(z)), std::invalid_argument);
    // negation commutes with itself
    EquivariantHom ok(m, m, AbHom(z, z, make_matrix({{5}})));
    GroupElem x = z.element(make_vector({3}));
    for (int s = 0; s < 4; ++s) CHECK(ok(m.act(s, x)) == m.act(s, ok(x)));
  }
}

TEST_CASE("random equivariant pointmaps") {
  Rng rng(2024);
  SUBCASE("trivial module forces zero") {
    FiniteGroup g = FiniteGroup::cyclic(2);
    GSet s = GSet::from_generator_images(g, {{1, 0}});
    GModule m = GModule::trivial(g, FgAbGroup::trivial());
    auto pm = random_equivariant_pointmap(s, m, rng);
    for (const auto& v : pm) CHECK(v.is_zero());
  }
  SUBCASE("swap with negation: g(t') = -g(t)") {
    FiniteGroup g = FiniteGroup::cyclic(2);
    GSet s = GSet::from_generator_images(g, {{1, 0}});
    GModule m = GModule::from_generator_actions(g, FgAbGroup::free_group(1), {make_matrix({{-1}})});
    for (int it = 0; it < 10; ++it) {
      auto pm = random_equivariant_pointmap(s, m, rng);
      CHECK(pm[1] == -pm[0]);
    }
  }
  SUBCASE("full stabilizer with negation forces zero") {
    FiniteGroup g = FiniteGroup::cyclic(2);
    GSet s = GSet::trivial(g, 1);
    GModule m = GModule::from_generator_actions(g, FgAbGroup::free_group(1), {make_matrix({{-1}})});
    for (int it = 0; it < 10; ++it) {
      auto pm = random_equivariant_pointmap(s, m, rng);
      CHECK(pm[0].is_zero());
    }
  }
  SUBCASE("equivariance on a larger mixed gset") {
    auto pg = group_from_permutations(3, {{1, 0, 2}, {0, 2, 1}});
    GSet nat(pg.group, pg.element_perms);
    GSet s = GSet::product(nat, GSet::trivial(pg.group, 2));
    FgAbGroup base(2, make_matrix({{4, 0}, {0, 4}}));
    GModule m = GModule::trivial(pg.group, base);
    auto pm = random_equivariant_pointmap(s, m, rng);
    for (int sig = 0; sig < pg.group.order(); ++sig)
      for (int t = 0; t < s.size(); ++t) CHECK(pm[s.apply(sig, t)] == m.act(sig, pm[t]));
  }
}

TEST_CASE("tabulated modules") {
  SUBCASE("Z/4 from a table") {
    FiniteGroup g = FiniteGroup::cyclic(2);
    std::vector<std::vector<long>> add(4, std::vector<long>(4));
    for (long a = 0; a < 4; ++a)
      for (long b = 0; b < 4; ++b) add[a][b] = (a + b) % 4;
    // negation is an automorphism of order 2
    std::vector<std::vector<long>> act = {{0, 1, 2, 3}, {0, 3, 2, 1}};
    TabModule m = TabModule::from_table(g, add, 0, act);
    CHECK(m.add(3, 3) == 2);
    CHECK(m.neg(1) == 3);
    CHECK(m.act(1, 1) == 3);
  }
  SUBCASE("invariant factors by order statistics") {
    auto mod_add = [](long n) {
      return [n](long a, long b) { return (a + b) % n; };
    };
    CHECK(abelian_invariant_factors(6, 0, mod_add(6)) == std::vector<Int>{Int(6)});
    CHECK(abelian_invariant_factors(1, 0, mod_add(1)) == std::vector<Int>{});
    // Z/2 x Z/4 encoded as pairs a*4+b
    auto add24 = [](long x, long y) {
      long a = (x / 4 + y / 4) % 2, b = (x % 4 + y % 4) % 4;
      return a * 4 + b;
    };
    CHECK(abelian_invariant_factors(8, 0, add24) == std::vector<Int>({Int(2), Int(4)}));
    // (Z/2)^3 encoded as bits
    auto add222 = [](long x, long y) { return x ^ y; };
    CHECK(abelian_invariant_factors(8, 0, add222) == std::vector<Int>({Int(2), Int(2), Int(2)}));
  }
}

TEST_CASE("fixed sublattices") {
  FiniteGroup g = FiniteGroup::cyclic(2);
  // swap action on Z^2: fixed lattice is the diagonal
  GModule m = GModule::from_generator_actions(g, FgAbGroup::free_group(2),
                                              {make_matrix({{0, 1}, {1, 0}})});
  IntMatrix fix = fixed_sublattice(m, Subgroup::full(g));
  REQUIRE(fix.cols() == 1);
  CHECK(fix(0, 0) == fix(1, 0));
  CHECK(fix(0, 0) != 0);
}
