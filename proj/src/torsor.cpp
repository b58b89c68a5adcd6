#include "galtor/torsor.hpp"

namespace galtor {

std::optional<GroupElem> fixed_point(const TwistedModule& t) {
  // b is fixed iff beta_sigma = b - b^sigma for all sigma, i.e. beta is the
  // coboundary of -b.
  auto witness = is_coboundary(t.twist());
  if (!witness) return std::nullopt;
  return -*witness;
}

CohClass wc_add(const CohClass& a, const CohClass& b) { return a + b; }

CohClass wc_neg(const CohClass& a) { return -a; }

CohClass wc_zero(const GModule& m) { return CohClass(zero_cocycle(m)); }

TorsorIso torsors_isomorphic(const TwistedModule& a, const TwistedModule& b) {
  if (!a.module().same_module(b.module()))
    throw std::invalid_argument("torsors_isomorphic: different modules");
  auto witness = is_coboundary(cocycle_sub(b.twist(), a.twist()));
  if (!witness) return {};
  // b -> b + c maps the b-twist to the a-twist when beta_b - beta_a is the
  // coboundary of c.
  return TorsorIso{true, *witness};
}

}  // namespace galtor
