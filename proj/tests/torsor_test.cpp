#include "galtor/torsor.hpp"

#include <doctest.h>

#include "test_util.hpp"

using namespace galtor;

namespace {

GModule z2_trivial_c2() {
  return GModule::trivial(FiniteGroup::cyclic(2), FgAbGroup(1, make_matrix({{2}})));
}

// All cocycles of a module with small finite base, by exhausting cochains.
std::vector<Cocycle1> all_cocycles(const GModule& m) {
  auto elems = m.base().elements();
  const int n = m.group().order();
  const int id = m.group().identity();
  std::vector<int> choice(n, 0);
  std::vector<Cocycle1> out;
  while (true) {
    std::vector<GroupElem> vals;
    for (int s = 0; s < n; ++s) vals.push_back(s == id ? m.base().zero() : elems[choice[s]]);
    if (is_cocycle(m, vals).ok) out.push_back(Cocycle1{m, vals});
    int i = 0;
    for (; i < n; ++i) {
      if (i == id) continue;
      if (++choice[i] < static_cast<int>(elems.size())) break;
      choice[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

}  // namespace

TEST_CASE("twisted action: spec examples") {
  SUBCASE("zero twist is the ordinary action") {
    GModule m = GModule::from_generator_actions(FiniteGroup::cyclic(2), FgAbGroup::free_group(1),
                                                {make_matrix({{-1}})});
    TwistedModule t(zero_cocycle(m));
    GroupElem x = m.base().element(make_vector({5}));
    for (int s = 0; s < 2; ++s) CHECK(t.act(s, x) == m.act(s, x));
  }
  SUBCASE("beta_sigma = 1 moves 0 to 1") {
    GModule m = z2_trivial_c2();
    TwistedModule t(Cocycle1{m, {m.base().zero(), m.base().element(make_vector({1}))}});
    CHECK(t.act(1, m.base().zero()) == m.base().element(make_vector({1})));
  }
  SUBCASE("invalid twist rejected") {
    GModule m = GModule::trivial(FiniteGroup::cyclic(2), FgAbGroup::free_group(1));
    std::vector<GroupElem> bad{m.base().zero(), m.base().element(make_vector({1}))};
    CHECK_THROWS_AS(TwistedModule(Cocycle1{m, bad}), std::invalid_argument);
  }
  SUBCASE("composition law holds exhaustively on small models") {
    std::vector<GModule> models;
    models.push_back(z2_trivial_c2());
    models.push_back(GModule::from_generator_actions(FiniteGroup::cyclic(4),
                                                     FgAbGroup(1, make_matrix({{8}})),
                                                     {make_matrix({{-1}})}));
    models.push_back(GModule::from_generator_actions(
        FiniteGroup::cyclic(2), FgAbGroup(2, make_matrix({{4, 0}, {0, 4}})),
        {make_matrix({{0, 1}, {1, 0}})}));
    for (const GModule& m : models) {
      for (const Cocycle1& beta : all_cocycles(m)) {
        TwistedModule t(beta);
        for (const GroupElem& b : m.base().elements())
          for (int s = 0; s < m.group().order(); ++s)
            for (int u = 0; u < m.group().order(); ++u)
              CHECK(t.act(u, t.act(s, b)) == t.act(m.group().mul(s, u), b));
      }
    }
  }
}

TEST_CASE("weil-chatelet addition") {
  GModule m = z2_trivial_c2();
  CohClass zero = wc_zero(m);
  CohClass c(make_cocycle(m, {m.base().zero(), m.base().element(make_vector({1}))}));
  CHECK(wc_add(c, zero) == c);
  CHECK(wc_add(c, wc_neg(c)).is_zero());
  CHECK(wc_add(c, c) == zero);
  // associativity and commutativity through H^1 coordinates
  CHECK(wc_add(wc_add(c, c), c).coords() == wc_add(c, wc_add(c, c)).coords());
  CHECK(wc_add(c, zero).coords() == wc_add(zero, c).coords());
}

TEST_CASE("triviality and fixed points: spec examples") {
  GModule m = z2_trivial_c2();
  SUBCASE("zero twist has a fixed point") {
    TwistedModule t(zero_cocycle(m));
    auto fp = fixed_point(t);
    REQUIRE(fp.has_value());
    for (int s = 0; s < 2; ++s) CHECK(t.act(s, *fp) == *fp);
  }
  SUBCASE("nontrivial twist has none (both elements tested)") {
    TwistedModule t(Cocycle1{m, {m.base().zero(), m.base().element(make_vector({1}))}});
    CHECK(!fixed_point(t).has_value());
    for (const GroupElem& b : m.base().elements()) {
      bool fixed = true;
      for (int s = 0; s < 2; ++s)
        if (t.act(s, b) != b) fixed = false;
      CHECK(!fixed);
    }
  }
  SUBCASE("coboundary twist fixes -witness") {
    GModule neg = GModule::from_generator_actions(FiniteGroup::cyclic(2),
                                                  FgAbGroup(1, make_matrix({{9}})),
                                                  {make_matrix({{-1}})});
    GroupElem w = neg.base().element(make_vector({4}));
    TwistedModule t(coboundary_of(neg, w));
    auto fp = fixed_point(t);
    REQUIRE(fp.has_value());
    for (int s = 0; s < 2; ++s) {
      CHECK(t.act(s, *fp) == *fp);
      CHECK(t.act(s, -w) == -w);
    }
  }
}

TEST_CASE("triviality agrees with exhaustive search") {
  std::vector<GModule> models;
  models.push_back(z2_trivial_c2());
  models.push_back(GModule::from_generator_actions(FiniteGroup::cyclic(4),
                                                   FgAbGroup(1, make_matrix({{4}})),
                                                   {make_matrix({{-1}})}));
  models.push_back(GModule::trivial(FiniteGroup::cyclic(3), FgAbGroup(1, make_matrix({{6}}))));
  models.push_back(GModule::from_generator_actions(FiniteGroup::cyclic(2),
                                                   FgAbGroup(1, make_matrix({{16}})),
                                                   {make_matrix({{-1}})}));
  int checked = 0;
  for (const GModule& m : models) {
    for (const Cocycle1& base : all_cocycles(m)) {
      // shift each enumerated cocycle by every coboundary: same classes,
      // many distinct twists
      for (const GroupElem& shift : m.base().elements()) {
        TwistedModule t(cocycle_add(base, coboundary_of(m, shift)));
        bool found = false;
        for (const GroupElem& b : m.base().elements()) {
          bool fixed = true;
          for (int s = 0; s < m.group().order() && fixed; ++s)
            if (t.act(s, b) != b) fixed = false;
          if (fixed) found = true;
        }
        CHECK(fixed_point(t).has_value() == found);
        ++checked;
      }
    }
  }
  CHECK(checked > 200);  // decent sample of twists
}

TEST_CASE("torsor isomorphism: spec examples") {
  GModule m = z2_trivial_c2();
  Cocycle1 nz = make_cocycle(m, {m.base().zero(), m.base().element(make_vector({1}))});
  SUBCASE("a torsor is isomorphic to itself") {
    TwistedModule t(nz);
    auto iso = torsors_isomorphic(t, t);
    CHECK(iso.isomorphic);
  }
  SUBCASE("coboundary difference gives an explicit translation") {
    GModule neg = GModule::from_generator_actions(FiniteGroup::cyclic(2),
                                                  FgAbGroup(1, make_matrix({{12}})),
                                                  {make_matrix({{-1}})});
    Cocycle1 base = coboundary_of(neg, neg.base().element(make_vector({2})));
    Cocycle1 shifted = cocycle_add(base, coboundary_of(neg, neg.base().element(make_vector({5}))));
    TwistedModule ta(base), tb(shifted);
    auto iso = torsors_isomorphic(ta, tb);
    REQUIRE(iso.isomorphic);
    REQUIRE(iso.translation.has_value());
    const GroupElem& c = *iso.translation;
    for (const GroupElem& x : neg.base().elements())
      for (int s = 0; s < 2; ++s) CHECK(ta.act(s, x + c) == tb.act(s, x) + c);
  }
  SUBCASE("trivial and nontrivial classes are not isomorphic") {
    TwistedModule t0(zero_cocycle(m)), t1(nz);
    CHECK(!torsors_isomorphic(t0, t1).isomorphic);
  }
  SUBCASE("mismatched modules rejected") {
    GModule other = GModule::trivial(FiniteGroup::cyclic(2), FgAbGroup(1, make_matrix({{3}})));
    CHECK_THROWS_AS(torsors_isomorphic(TwistedModule(zero_cocycle(m)),
                                       TwistedModule(zero_cocycle(other))),
                    std::invalid_argument);
  }
}

TEST_CASE("conjugation intertwines twisted actions") {
  // The checkable form of "B[beta^tau] is the tau-pullback of B[beta]":
  // (b^~sigma)^tau = (b^tau)^~sigma' with sigma' = tau^-1 sigma tau and the
  // right-hand twist conjugated.
  auto d4 = group_from_permutations(4, {{1, 2, 3, 0}, {3, 2, 1, 0}});
  FiniteGroup g = d4.group;
  GModule m = GModule::trivial(g, FgAbGroup(1, make_matrix({{4}})));
  int r = g.generators()[0];
  std::vector<int> h_elems{g.identity()};
  int cur = r;
  while (cur != g.identity()) {
    h_elems.push_back(cur);
    cur = g.mul(cur, r);
  }
  Subgroup h(g, h_elems);
  GModule mh = m.restrict_to(h);
  std::vector<GroupElem> vals;
  for (int k = 0; k < h.order(); ++k) {
    int pow = 0, walk = g.identity();
    while (walk != h.elements()[k]) {
      walk = g.mul(walk, r);
      ++pow;
    }
    vals.push_back(m.base().element(make_vector({pow})));
  }
  Cocycle1 beta = make_cocycle(mh, vals);
  TwistedModule tw(beta);
  for (int tau = 0; tau < g.order(); ++tau) {
    auto conj = conjugate_cocycle(m, h, beta, tau);
    TwistedModule twc(conj.cocycle);
    for (const GroupElem& b : m.base().elements())
      for (int k = 0; k < h.order(); ++k) {
        int sigma = h.elements()[k];
        int sigma_p = g.mul(g.mul(g.inverse(tau), sigma), tau);
        int kp = conj.subgroup.index_of(sigma_p);
        REQUIRE(kp >= 0);
        GroupElem lhs = m.act(tau, tw.act(k, b));
        GroupElem rhs = twc.act(kp, m.act(tau, b));
        CHECK(lhs == rhs);
      }
  }
}
