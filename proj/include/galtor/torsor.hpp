#pragma once

#include "galtor/cohom.hpp"

namespace galtor {

// ---------------------------------------------------------------------------
// Twisted modules: the working model of a torsor under the module's group.
// The twisted action b^~sigma = beta_sigma + b^sigma satisfies the
// right-action composition law exactly because beta is a cocycle.
// ---------------------------------------------------------------------------

class TwistedModule {
 public:
  /// The twist is validated as a cocycle.
  explicit TwistedModule(Cocycle1 twist)
      : twist_(make_cocycle(twist.module, twist.values)) {}

  const GModule& module() const { return twist_.module; }
  const Cocycle1& twist() const { return twist_; }

  GroupElem act(int sigma, const GroupElem& b) const {
    return twist_.values[sigma] + module().act(sigma, b);
  }

 private:
  Cocycle1 twist_;
};

/// A point fixed by every twisted action, if one exists; equivalently the
/// twist is a coboundary (with witness the negated fixed point).
std::optional<GroupElem> fixed_point(const TwistedModule& t);

inline bool is_trivial(const TwistedModule& t) { return fixed_point(t).has_value(); }

/// Addition in the Weil-Chatelet group of the module.
CohClass wc_add(const CohClass& a, const CohClass& b);
CohClass wc_neg(const CohClass& a);
CohClass wc_zero(const GModule& m);

struct TorsorIso {
  bool isomorphic = false;
  /// Translation c with b -> b + c intertwining the two twisted actions.
  std::optional<GroupElem> translation;
};

/// Torsors are isomorphic iff their twists lie in the same class.
TorsorIso torsors_isomorphic(const TwistedModule& a, const TwistedModule& b);

// ---------------------------------------------------------------------------
// Induced objects over a coset system: |R| components, each a copy of the
// fiber module, glued by transport data.  Constructed in cycles from a
// scenario with a transitive component action.
// ---------------------------------------------------------------------------

struct InducedObject {
  GModule fiber_module;                          // the module A over the full group
  Subgroup stabilizer;                           // H, stabilizer of the distinguished component
  std::vector<int> reps;                         // coset representatives, identity first
  std::vector<int> component_basepoints;         // t_rho = t0^rho per representative
  std::vector<std::vector<int>> target_rep;      // [rho][sigma] -> index of rep of rho*sigma's coset
  std::vector<std::vector<GroupElem>> transport; // [rho][sigma] -> f(t_rho^sigma, t_rho')

  /// The induced action (rho, m)^sigma = (rho', transport + m^sigma).
  std::pair<int, GroupElem> act(int rep_index, const GroupElem& m, int sigma) const {
    return {target_rep[rep_index][sigma],
            transport[rep_index][sigma] + fiber_module.act(sigma, m)};
  }
};

}  // namespace galtor
