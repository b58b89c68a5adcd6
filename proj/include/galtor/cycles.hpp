#pragma once

#include "galtor/torsor.hpp"

#include <string>
#include <utility>

namespace galtor {

// ---------------------------------------------------------------------------
// Submodules of a G-module, presented on their own basis.
// ---------------------------------------------------------------------------

struct Submodule {
  GModule module;   // the subgroup with its induced action
  AbHom embedding;  // module.base -> ambient base, injective on classes
};

/// The subgroup generated by the classes of the given ambient columns; throws
/// if it is not stable under the group action.
Submodule build_submodule(const GModule& ambient, const IntMatrix& generator_columns);

GModule module_direct_sum(const GModule& a, const GModule& b);

// ---------------------------------------------------------------------------
// Cycle scenarios: the data (T, t0, Z, phi) in point-set form.  points is the
// parameter set, pointmap the fiber class assignment t -> Z_t, triv the
// submodule of "algebraically trivial" classes carrying phi, and components
// an equivariant map onto a G-set of geometric components.
// ---------------------------------------------------------------------------

class CycleModel {
 public:
  const GSet& points() const { return d_->points; }
  const GModule& ambient() const { return d_->ambient; }
  const std::vector<GroupElem>& pointmap() const { return d_->pointmap; }
  const Submodule& triv() const { return d_->triv; }
  const EquivariantHom& phi() const { return d_->phi; }
  const GModule& target() const { return d_->target; }
  const GSet& components() const { return d_->components; }
  const std::vector<int>& component_of() const { return d_->component_of; }

  /// f(t, t') = phi(Z_t - Z_t'); defined only for same-component pairs.
  GroupElem f(int t, int t_prime) const;

  std::vector<int> component_points(int comp) const;
  Subgroup component_stabilizer(int comp) const;

 private:
  struct Data {
    GSet points;
    GModule ambient;
    std::vector<GroupElem> pointmap;
    Submodule triv;
    EquivariantHom phi;
    GModule target;
    GSet components;
    std::vector<int> component_of;
    SmithForm emb_solver;  // decomposition of [embedding | ambient relations]
  };
  std::shared_ptr<const Data> d_;
  CycleModel(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  friend CycleModel make_cycle_model(GSet, GModule, std::vector<GroupElem>, Submodule,
                                     EquivariantHom, GSet, std::vector<int>);
};

/// Validates every scenario invariant: equivariance of the point map and the
/// component map, same-component differences landing in the submodule, and
/// equivariance of phi (via EquivariantHom).
CycleModel make_cycle_model(GSet points, GModule ambient, std::vector<GroupElem> pointmap,
                            Submodule triv, EquivariantHom phi, GSet components,
                            std::vector<int> component_of);

/// Convenience: submodule from generator columns, phi from images of those
/// generators (well-definedness checked), single component if none given.
CycleModel make_cycle_model(GSet points, GModule ambient, std::vector<GroupElem> pointmap,
                            const IntMatrix& triv_generators, GModule target,
                            const IntMatrix& phi_images);
CycleModel make_cycle_model(GSet points, GModule ambient, std::vector<GroupElem> pointmap,
                            const IntMatrix& triv_generators, GModule target,
                            const IntMatrix& phi_images, GSet components,
                            std::vector<int> component_of);

// ---------------------------------------------------------------------------
// The torsor construction.
// ---------------------------------------------------------------------------

struct ComponentCocycle {
  int basepoint;
  Subgroup stab;     // stabilizer of the basepoint's component
  Cocycle1 cocycle;  // alpha_sigma = f(t0^sigma, t0) over target restricted to stab
};

/// Theorem part (a): the cocycle at a basepoint.  With require_full_group the
/// basepoint's component must be G-stable.
ComponentCocycle build_cocycle(const CycleModel& s, int t0, bool require_full_group = false);

/// The scenario's cocycle at t0 over an arbitrary subgroup of the component
/// stabilizer (used for comparisons across scenarios).
Cocycle1 cocycle_over(const CycleModel& s, int t0, const Subgroup& h);

/// Theorem part (b): the class at any basepoint of the component of t0.
/// Equality across all basepoints is verified internally with the explicit
/// coboundary witness f(t0, t1); a violation throws.
CohClass torsor_class(const CycleModel& s, int t0);
/// Same, requiring a unique component.
CohClass torsor_class(const CycleModel& s);

struct DescendedMap {
  int basepoint;
  Subgroup stab;
  TwistedModule target;               // target module twisted by the cocycle
  std::vector<int> component_points;  // sorted points of the component
  std::vector<GroupElem> values;      // psi(t) = f(t, t0), parallel to component_points
  const GroupElem& psi(int t) const;
};

DescendedMap descended_map(const CycleModel& s, int t0);

/// Theorem part (c): the external sum on the product parameter set.
CycleModel boxplus(const CycleModel& a, const CycleModel& b);
CycleModel negate_model(const CycleModel& s);

/// d-fold box sum of a scenario with itself, on points(s)^d.
CycleModel sym_power(const CycleModel& s, int d);

struct EquivalentFibersResult {
  CohClass difference_class;  // class of s1 [+] (-s2), trivial by the theorem
  GroupElem phi_delta;        // phi of the fiber difference (zero by hypothesis)
};

/// If the fibers over t1, t2 differ by a submodule class with phi-value zero,
/// the two torsor classes agree; the hypothesis is a precondition and its
/// failure throws invalid_argument.
EquivalentFibersResult equivalent_fibers_imply_isomorphic(const CycleModel& s1,
                                                          const CycleModel& s2, int t1, int t2);

struct DisconnectedDescent {
  InducedObject object;
  std::vector<std::pair<int, GroupElem>> psi;  // per point: (component rep index, fiber value)
};

/// The coset-indexed object for a scenario whose group permutes the
/// components transitively; basepoints t_rho = t0^rho, transport by f.
DisconnectedDescent disconnected_descent(const CycleModel& s, int t0);

// ---------------------------------------------------------------------------
// Verification checks (theorem assertions evaluated explicitly).
// ---------------------------------------------------------------------------

struct Violation {
  std::string identity;  // name of the violated law
  int sigma = -1, tau = -1, point = -1;
  std::string detail;
};
using Check = std::optional<Violation>;

Check check_cocycle_condition(const CycleModel& s);
Check check_basepoint_independence(const CycleModel& s);
Check check_descended_equivariance(const CycleModel& s);
Check check_fixed_point_obstruction(const CycleModel& s);
Check check_boxplus_additivity(const CycleModel& a, const CycleModel& b);
Check check_sym_power(const CycleModel& s, int d);
Check check_disconnected_descent(const CycleModel& s, int t0);

/// All single-scenario checks in order; empty result means pass.
std::vector<Violation> verify_scenario(const CycleModel& s);

// ---------------------------------------------------------------------------
// Deterministic random scenarios.
// ---------------------------------------------------------------------------

struct ScenarioOptions {
  int max_group_order = 8;
  int max_points = 12;
  Index max_rank = 3;
  long max_factor = 12;
  int num_components = 1;  // 1, or 2..3 with a transitive component action
  long value_bound = 3;
};

FiniteGroup random_group(Rng& rng, int max_order);
GModule random_gmodule(Rng& rng, const FiniteGroup& g, Index max_rank, long max_factor);
CycleModel random_scenario(uint64_t seed, const ScenarioOptions& opt = {});
/// Two scenarios over the same group and the same target module.
std::pair<CycleModel, CycleModel> random_scenario_pair(uint64_t seed,
                                                       const ScenarioOptions& opt = {});

}  // namespace galtor
