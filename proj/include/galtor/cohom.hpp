#pragma once

#include "galtor/gmod.hpp"

#include <optional>

namespace galtor {

// ---------------------------------------------------------------------------
// Degree-1 cocycles.  A cocycle assigns one module element to each group
// element, with a_{s t} = (a_s)^t + a_t under the right-action convention;
// the identity slot is forced to 0.
// ---------------------------------------------------------------------------

struct Cocycle1 {
  GModule module;
  std::vector<GroupElem> values;  // indexed by group element

  const GroupElem& at(int sigma) const { return values[sigma]; }
};

struct CocycleCheck {
  bool ok = true;
  int sigma = -1, tau = -1;  // first violated pair when !ok
};

/// Exhaustive check of the cocycle condition over all |G|^2 pairs.
CocycleCheck is_cocycle(const GModule& m, const std::vector<GroupElem>& values);

/// Validating constructor; throws if the condition fails.
Cocycle1 make_cocycle(GModule m, std::vector<GroupElem> values);

Cocycle1 zero_cocycle(const GModule& m);
/// sigma -> m^sigma - m
Cocycle1 coboundary_of(const GModule& mod, const GroupElem& m);

Cocycle1 cocycle_add(const Cocycle1& a, const Cocycle1& b);
Cocycle1 cocycle_neg(const Cocycle1& a);
Cocycle1 cocycle_sub(const Cocycle1& a, const Cocycle1& b);

/// Witness m with a_sigma = m^sigma - m for all sigma, if one exists
/// (decided exactly through an integer linear system cached per module).
std::optional<GroupElem> is_coboundary(const Cocycle1& a);

// ---------------------------------------------------------------------------
// H^1 as a finitely generated abelian group.
// ---------------------------------------------------------------------------

/// H^1(G, M) with the projection data needed to locate a cocycle's class:
/// cocycles flatten to integer vectors (identity slot omitted), z1_basis is a
/// lattice basis of the flattened cocycle lattice, and `group` presents Z1
/// modulo coboundaries and slotwise relations.
struct H1Data {
  FgAbGroup group;
  IntMatrix z1_basis;
  SmithForm z1_solver;
};

/// Cochain-complex route; cached per module.
const H1Data& h1(const GModule& m);

/// Coordinates of a cocycle's class in h1(m).group.
GroupElem h1_class(const GModule& m, const Cocycle1& a);

/// Tate-style oracle for cyclic groups: ker(Norm) / image(sigma - 1).
/// Independent of the cochain-complex route; throws if G is not cyclic.
FgAbGroup h1_cyclic_oracle(const GModule& m);
FgAbGroup h1_cyclic_oracle(const TabModule& m);

// ---------------------------------------------------------------------------
// Restriction and conjugation.
// ---------------------------------------------------------------------------

/// View a cocycle over a subgroup (module restricted accordingly).
Cocycle1 restrict_cocycle(const Cocycle1& a, const Subgroup& h);

struct ConjugatedCocycle {
  Subgroup subgroup;  // tau^{-1} H tau
  Cocycle1 cocycle;   // over parent.restrict_to(subgroup)
};

/// beta lives over parent.restrict_to(h); the conjugate lives over
/// tau^{-1} h tau and satisfies (beta^tau)_{tau^{-1} s tau} = (beta_s)^tau.
ConjugatedCocycle conjugate_cocycle(const GModule& parent, const Subgroup& h, const Cocycle1& beta,
                                    int tau);

// ---------------------------------------------------------------------------
// Cohomology classes.
// ---------------------------------------------------------------------------

/// A class in H^1, carried by a representative cocycle.  Equality is decided
/// by is_coboundary on the difference, so it does not depend on the choice of
/// representative; coordinates in the computed H^1 group are available on
/// demand.
class CohClass {
 public:
  explicit CohClass(Cocycle1 representative) : rep_(std::move(representative)) {}

  const GModule& module() const { return rep_.module; }
  const Cocycle1& representative() const { return rep_; }

  bool is_zero() const { return is_coboundary(rep_).has_value(); }
  CohClass operator+(const CohClass& o) const;
  CohClass operator-() const;
  CohClass operator-(const CohClass& o) const;
  bool operator==(const CohClass& o) const;
  bool operator!=(const CohClass& o) const { return !(*this == o); }

  const FgAbGroup& h1_group() const { return h1(rep_.module).group; }
  GroupElem coords() const { return h1_class(rep_.module, rep_); }

 private:
  Cocycle1 rep_;
};

}  // namespace galtor
