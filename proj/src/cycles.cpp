#include "galtor/cycles.hpp"

#include <algorithm>
#include <sstream>

namespace galtor {

// ---------------------------------------------------------------------------
// Submodules and direct sums
// ---------------------------------------------------------------------------

Submodule build_submodule(const GModule& ambient, const IntMatrix& generator_columns) {
  const Index n = ambient.base().ambient_rank();
  if (generator_columns.rows() != n)
    throw std::invalid_argument("submodule: generator rows != ambient rank");
  const IntMatrix& rels = ambient.base().relations();
  IntMatrix basis = hermite_basis(hcat(generator_columns, rels));
  const Index k = basis.cols();

  // The basis has full column rank, so expressing the ambient relations over
  // it is exact and yields precisely the subgroup's relation lattice.
  SmithForm exact = smith_normal_form(basis);
  IntMatrix w(k, rels.cols());
  for (Index j = 0; j < rels.cols(); ++j) {
    auto sol = solve_with(exact, rels.col(j));
    if (!sol) throw std::logic_error("submodule: ambient relations escape the spanned lattice");
    w.col(j) = *sol;
  }
  FgAbGroup sub_base(k, w);

  // induced action: solve each basis image back through the embedding,
  // modulo the ambient relations
  SmithForm solver = smith_normal_form(hcat(basis, rels));
  std::vector<IntMatrix> acts;
  acts.reserve(ambient.group().order());
  for (int s = 0; s < ambient.group().order(); ++s) {
    IntMatrix a(k, k);
    for (Index j = 0; j < k; ++j) {
      IntVector image = ambient.action_matrix(s) * basis.col(j);
      auto sol = solve_with(solver, image);
      if (!sol) throw std::invalid_argument("submodule: not stable under the group action");
      a.col(j) = sol->head(k);
    }
    acts.push_back(std::move(a));
  }
  GModule sub(ambient.group(), sub_base, std::move(acts));
  AbHom embedding(sub_base, ambient.base(), basis);
  if (!embedding.is_injective()) throw std::logic_error("submodule: embedding not injective");
  return Submodule{std::move(sub), std::move(embedding)};
}

GModule module_direct_sum(const GModule& a, const GModule& b) {
  if (!a.group().same_group(b.group()))
    throw std::invalid_argument("direct sum: modules over different groups");
  const Index n1 = a.base().ambient_rank(), n2 = b.base().ambient_rank();
  const IntMatrix &r1 = a.base().relations(), &r2 = b.base().relations();
  IntMatrix rels = IntMatrix::Zero(n1 + n2, r1.cols() + r2.cols());
  rels.block(0, 0, n1, r1.cols()) = r1;
  rels.block(n1, r1.cols(), n2, r2.cols()) = r2;
  FgAbGroup base(n1 + n2, rels);
  std::vector<IntMatrix> acts;
  for (int s = 0; s < a.group().order(); ++s) {
    IntMatrix m = IntMatrix::Zero(n1 + n2, n1 + n2);
    m.block(0, 0, n1, n1) = a.action_matrix(s);
    m.block(n1, n1, n2, n2) = b.action_matrix(s);
    acts.push_back(std::move(m));
  }
  return GModule(a.group(), base, std::move(acts));
}

// ---------------------------------------------------------------------------
// CycleModel
// ---------------------------------------------------------------------------

CycleModel make_cycle_model(GSet points, GModule ambient, std::vector<GroupElem> pointmap,
                            Submodule triv, EquivariantHom phi, GSet components,
                            std::vector<int> component_of) {
  const FiniteGroup& g = points.group();
  if (!g.same_group(ambient.group()) || !g.same_group(components.group()) ||
      !g.same_group(triv.module.group()) || !g.same_group(phi.target().group()))
    throw std::invalid_argument("scenario: constituents over different groups");
  if (!phi.source().same_module(triv.module))
    throw std::invalid_argument("scenario: phi must be defined on the distinguished submodule");
  if (!triv.embedding.target().same_presentation(ambient.base()))
    throw std::invalid_argument("scenario: submodule does not embed into the ambient module");
  if (static_cast<int>(pointmap.size()) != points.size())
    throw std::invalid_argument("scenario: one pointmap value per point required");
  for (const GroupElem& v : pointmap)
    if (!v.owner().same_presentation(ambient.base()))
      throw std::invalid_argument("scenario: pointmap value outside the ambient module");
  for (int s = 0; s < g.order(); ++s)
    for (int t = 0; t < points.size(); ++t)
      if (pointmap[points.apply(s, t)] != ambient.act(s, pointmap[t]))
        throw std::invalid_argument("scenario: pointmap is not equivariant");
  if (static_cast<int>(component_of.size()) != points.size())
    throw std::invalid_argument("scenario: one component per point required");
  std::vector<char> hit(components.size(), 0);
  for (int c : component_of) {
    if (c < 0 || c >= components.size()) throw std::invalid_argument("scenario: component index out of range");
    hit[c] = 1;
  }
  for (char h : hit)
    if (!h) throw std::invalid_argument("scenario: empty component");
  for (int s = 0; s < g.order(); ++s)
    for (int t = 0; t < points.size(); ++t)
      if (component_of[points.apply(s, t)] != components.apply(s, component_of[t]))
        throw std::invalid_argument("scenario: component map is not equivariant");

  SmithForm emb_solver = smith_normal_form(hcat(triv.embedding.matrix(), ambient.base().relations()));
  // Same-component differences must land in the submodule; anchored
  // differences suffice since the submodule is closed under subtraction.
  for (int c = 0; c < components.size(); ++c) {
    int anchor = -1;
    for (int t = 0; t < points.size(); ++t) {
      if (component_of[t] != c) continue;
      if (anchor < 0) {
        anchor = t;
        continue;
      }
      IntVector diff = (pointmap[t] - pointmap[anchor]).coords();
      if (!solve_with(emb_solver, diff))
        throw std::invalid_argument("scenario: same-component fiber difference escapes the submodule");
    }
  }

  auto data = std::make_shared<CycleModel::Data>(CycleModel::Data{
      std::move(points), std::move(ambient), std::move(pointmap), std::move(triv), phi,
      phi.target(), std::move(components), std::move(component_of), std::move(emb_solver)});
  return CycleModel(std::move(data));
}

CycleModel make_cycle_model(GSet points, GModule ambient, std::vector<GroupElem> pointmap,
                            const IntMatrix& triv_generators, GModule target,
                            const IntMatrix& phi_images, GSet components,
                            std::vector<int> component_of) {
  Submodule sub = build_submodule(ambient, triv_generators);
  if (phi_images.rows() != target.base().ambient_rank() || phi_images.cols() != triv_generators.cols())
    throw std::invalid_argument("scenario: phi image matrix has wrong shape");
  // well-definedness of generator images: integer combinations of the
  // generators that vanish in the ambient module must map to zero
  IntMatrix depsys = hcat(triv_generators, ambient.base().relations());
  IntMatrix deps = integer_kernel(depsys);
  for (Index j = 0; j < deps.cols(); ++j) {
    IntVector c = deps.col(j).head(triv_generators.cols());
    if (!target.base().element(phi_images * c).is_zero())
      throw std::invalid_argument("scenario: phi images do not define a homomorphism on the submodule");
  }
  // express phi on the submodule basis
  const IntMatrix& basis = sub.embedding.matrix();
  SmithForm solver = smith_normal_form(depsys);
  IntMatrix phi_matrix(target.base().ambient_rank(), basis.cols());
  for (Index j = 0; j < basis.cols(); ++j) {
    auto sol = solve_with(solver, basis.col(j));
    if (!sol) throw std::logic_error("scenario: submodule basis not generated by the given columns");
    phi_matrix.col(j) = phi_images * sol->head(triv_generators.cols());
  }
  EquivariantHom phi(sub.module, target, AbHom(sub.module.base(), target.base(), phi_matrix));
  return make_cycle_model(std::move(points), std::move(ambient), std::move(pointmap), std::move(sub),
                          std::move(phi), std::move(components), std::move(component_of));
}

CycleModel make_cycle_model(GSet points, GModule ambient, std::vector<GroupElem> pointmap,
                            const IntMatrix& triv_generators, GModule target,
                            const IntMatrix& phi_images) {
  GSet comps = GSet::trivial(points.group(), 1);
  std::vector<int> comp_of(points.size(), 0);
  return make_cycle_model(std::move(points), std::move(ambient), std::move(pointmap),
                          triv_generators, std::move(target), phi_images, std::move(comps),
                          std::move(comp_of));
}

GroupElem CycleModel::f(int t, int t_prime) const {
  if (d_->component_of[t] != d_->component_of[t_prime])
    throw std::invalid_argument("difference function: points lie in different components");
  IntVector diff = (d_->pointmap[t] - d_->pointmap[t_prime]).coords();
  auto sol = solve_with(d_->emb_solver, diff);
  if (!sol) throw std::logic_error("difference function: difference escapes the submodule");
  return d_->phi(d_->triv.module.base().element(sol->head(d_->triv.module.base().ambient_rank())));
}

std::vector<int> CycleModel::component_points(int comp) const {
  std::vector<int> out;
  for (int t = 0; t < points().size(); ++t)
    if (d_->component_of[t] == comp) out.push_back(t);
  return out;
}

Subgroup CycleModel::component_stabilizer(int comp) const { return d_->components.stabilizer(comp); }

// ---------------------------------------------------------------------------
// The torsor construction
// ---------------------------------------------------------------------------

ComponentCocycle build_cocycle(const CycleModel& s, int t0, bool require_full_group) {
  if (t0 < 0 || t0 >= s.points().size()) throw std::invalid_argument("build_cocycle: no such point");
  const int comp = s.component_of()[t0];
  Subgroup stab = s.component_stabilizer(comp);
  if (require_full_group && !stab.is_full())
    throw std::invalid_argument("build_cocycle: basepoint's component is moved by the group");
  GModule restricted = s.target().restrict_to(stab);
  std::vector<GroupElem> values;
  values.reserve(stab.order());
  for (int e : stab.elements()) values.push_back(s.f(s.points().apply(e, t0), t0));
  return ComponentCocycle{t0, stab, make_cocycle(restricted, std::move(values))};
}

Cocycle1 cocycle_over(const CycleModel& s, int t0, const Subgroup& h) {
  const int comp = s.component_of()[t0];
  for (int e : h.elements())
    if (s.components().apply(e, comp) != comp)
      throw std::invalid_argument("cocycle_over: subgroup moves the basepoint's component");
  GModule restricted = s.target().restrict_to(h);
  std::vector<GroupElem> values;
  values.reserve(h.order());
  for (int e : h.elements()) values.push_back(s.f(s.points().apply(e, t0), t0));
  return make_cocycle(restricted, std::move(values));
}

CohClass torsor_class(const CycleModel& s, int t0) {
  ComponentCocycle cc = build_cocycle(s, t0);
  const auto& h = cc.stab.elements();
  // basepoint independence, with the explicit coboundary witness f(t0, t1)
  for (int t1 : s.component_points(s.component_of()[t0])) {
    if (t1 == t0) continue;
    GroupElem w = s.f(t0, t1);
    std::vector<GroupElem> beta;
    beta.reserve(h.size());
    for (size_t k = 0; k < h.size(); ++k) {
      GroupElem b = s.f(s.points().apply(h[k], t1), t1);
      if (cc.cocycle.values[k] - b != s.target().act(h[k], w) - w)
        throw std::logic_error("torsor_class: coboundary witness fails basepoint independence");
      beta.push_back(std::move(b));
    }
    if (!is_coboundary(cocycle_sub(cc.cocycle, Cocycle1{cc.cocycle.module, beta})))
      throw std::logic_error("torsor_class: basepoint classes differ");
  }
  return CohClass(cc.cocycle);
}

CohClass torsor_class(const CycleModel& s) {
  if (s.components().size() != 1)
    throw std::invalid_argument("torsor_class: several components; pick a basepoint");
  return torsor_class(s, 0);
}

const GroupElem& DescendedMap::psi(int t) const {
  auto it = std::lower_bound(component_points.begin(), component_points.end(), t);
  if (it == component_points.end() || *it != t)
    throw std::invalid_argument("psi: point outside the basepoint's component");
  return values[it - component_points.begin()];
}

DescendedMap descended_map(const CycleModel& s, int t0) {
  ComponentCocycle cc = build_cocycle(s, t0);
  std::vector<int> pts = s.component_points(s.component_of()[t0]);
  std::vector<GroupElem> values;
  values.reserve(pts.size());
  for (int t : pts) values.push_back(s.f(t, t0));
  return DescendedMap{t0, cc.stab, TwistedModule(cc.cocycle), std::move(pts), std::move(values)};
}

CycleModel boxplus(const CycleModel& a, const CycleModel& b) {
  if (!a.points().group().same_group(b.points().group()))
    throw std::invalid_argument("boxplus: scenarios over different groups");
  if (!a.target().same_module(b.target()))
    throw std::invalid_argument("boxplus: scenarios with different target modules");
  GModule ambient = module_direct_sum(a.ambient(), b.ambient());
  GSet points = GSet::product(a.points(), b.points());
  const Index n1 = a.ambient().base().ambient_rank(), n2 = b.ambient().base().ambient_rank();

  std::vector<GroupElem> pointmap;
  pointmap.reserve(points.size());
  for (int t1 = 0; t1 < a.points().size(); ++t1)
    for (int t2 = 0; t2 < b.points().size(); ++t2) {
      IntVector v(n1 + n2);
      v.head(n1) = a.pointmap()[t1].coords();
      v.tail(n2) = b.pointmap()[t2].coords();
      pointmap.push_back(ambient.base().element(v));
    }

  const IntMatrix &e1 = a.triv().embedding.matrix(), &e2 = b.triv().embedding.matrix();
  IntMatrix gens = IntMatrix::Zero(n1 + n2, e1.cols() + e2.cols());
  gens.block(0, 0, n1, e1.cols()) = e1;
  gens.block(n1, e1.cols(), n2, e2.cols()) = e2;
  Submodule sub = build_submodule(ambient, gens);

  // phi on the combined submodule: split each basis vector and push the two
  // halves through the factors' phi maps
  const IntMatrix& basis = sub.embedding.matrix();
  IntMatrix phi_matrix(a.target().base().ambient_rank(), basis.cols());
  for (Index j = 0; j < basis.cols(); ++j) {
    auto x1 = a.triv().embedding.preimage(a.ambient().base().element(basis.col(j).head(n1)));
    auto x2 = b.triv().embedding.preimage(b.ambient().base().element(basis.col(j).tail(n2)));
    if (!x1 || !x2) throw std::logic_error("boxplus: combined submodule escapes the factors");
    phi_matrix.col(j) = (a.phi()(*x1) + b.phi()(*x2)).coords();
  }
  EquivariantHom phi(sub.module, a.target(), AbHom(sub.module.base(), a.target().base(), phi_matrix));

  GSet comps = GSet::product(a.components(), b.components());
  std::vector<int> comp_of;
  comp_of.reserve(points.size());
  for (int t1 = 0; t1 < a.points().size(); ++t1)
    for (int t2 = 0; t2 < b.points().size(); ++t2)
      comp_of.push_back(a.component_of()[t1] * b.components().size() + b.component_of()[t2]);

  return make_cycle_model(std::move(points), std::move(ambient), std::move(pointmap), std::move(sub),
                          std::move(phi), std::move(comps), std::move(comp_of));
}

CycleModel negate_model(const CycleModel& s) {
  std::vector<GroupElem> neg;
  neg.reserve(s.pointmap().size());
  for (const GroupElem& v : s.pointmap()) neg.push_back(-v);
  return make_cycle_model(s.points(), s.ambient(), std::move(neg), s.triv(), s.phi(),
                          s.components(), s.component_of());
}

CycleModel sym_power(const CycleModel& s, int d) {
  if (d < 1) throw std::invalid_argument("sym_power: d must be >= 1");
  CycleModel acc = s;
  for (int i = 1; i < d; ++i) acc = boxplus(acc, s);
  return acc;
}

EquivalentFibersResult equivalent_fibers_imply_isomorphic(const CycleModel& s1,
                                                          const CycleModel& s2, int t1, int t2) {
  if (!s1.ambient().same_module(s2.ambient()) || !s1.target().same_module(s2.target()) ||
      !s1.triv().module.same_module(s2.triv().module) ||
      !mat_eq(s1.triv().embedding.matrix(), s2.triv().embedding.matrix()) ||
      !mat_eq(s1.phi().hom().matrix(), s2.phi().hom().matrix()))
    throw std::invalid_argument("equivalent_fibers: scenarios do not share a joint model");
  GroupElem delta = s1.pointmap()[t1] - s2.pointmap()[t2];
  auto pre = s1.triv().embedding.preimage(delta);
  if (!pre)
    throw std::invalid_argument("equivalent_fibers: fiber difference is not in the distinguished submodule");
  GroupElem phi_delta = s1.phi()(*pre);
  if (!phi_delta.is_zero())
    throw std::invalid_argument("equivalent_fibers: phi of the fiber difference is nonzero");

  CycleModel box = boxplus(s1, negate_model(s2));
  int tbox = t1 * s2.points().size() + t2;
  CohClass difference = torsor_class(box, tbox);
  if (!difference.is_zero())
    throw std::logic_error("equivalent_fibers: difference class is nonzero despite the hypothesis");
  // direct comparison over the joint stabilizer
  Subgroup h = box.component_stabilizer(box.component_of()[tbox]);
  CohClass c1(cocycle_over(s1, t1, h)), c2(cocycle_over(s2, t2, h));
  if (!(c1 == c2)) throw std::logic_error("equivalent_fibers: classes differ despite the hypothesis");
  return EquivalentFibersResult{difference, phi_delta};
}

DisconnectedDescent disconnected_descent(const CycleModel& s, int t0) {
  const GSet& comps = s.components();
  if (comps.orbits().size() != 1)
    throw std::invalid_argument("disconnected_descent: component action is not transitive");
  const FiniteGroup& g = s.points().group();
  const int w = s.component_of()[t0];
  Subgroup stab = comps.stabilizer(w);
  CosetSystem cosets = right_cosets(stab);
  const int nreps = static_cast<int>(cosets.reps.size());

  std::vector<int> basepoints(nreps), comp_of_rep(nreps);
  for (int r = 0; r < nreps; ++r) {
    basepoints[r] = s.points().apply(cosets.reps[r], t0);
    comp_of_rep[r] = comps.apply(cosets.reps[r], w);
  }
  std::vector<int> rep_of_comp(comps.size(), -1);
  for (int r = 0; r < nreps; ++r) rep_of_comp[comp_of_rep[r]] = r;
  for (int c = 0; c < comps.size(); ++c)
    if (rep_of_comp[c] < 0) throw std::logic_error("disconnected_descent: coset reps miss a component");

  std::vector<std::vector<int>> target_rep(nreps, std::vector<int>(g.order()));
  std::vector<std::vector<GroupElem>> transport(nreps);
  for (int r = 0; r < nreps; ++r) {
    transport[r].reserve(g.order());
    for (int sg = 0; sg < g.order(); ++sg) {
      int rp = cosets.rep_index_of[g.mul(cosets.reps[r], sg)];
      target_rep[r][sg] = rp;
      int moved = s.points().apply(sg, basepoints[r]);
      // transport only ever pairs points of one component
      if (s.component_of()[moved] != s.component_of()[basepoints[rp]])
        throw std::logic_error("disconnected_descent: transport pairs points across components");
      transport[r].push_back(s.f(moved, basepoints[rp]));
    }
  }
  std::vector<std::pair<int, GroupElem>> psi;
  psi.reserve(s.points().size());
  for (int t = 0; t < s.points().size(); ++t) {
    int r = rep_of_comp[s.component_of()[t]];
    psi.push_back({r, s.f(t, basepoints[r])});
  }
  return DisconnectedDescent{
      InducedObject{s.target(), stab, cosets.reps, basepoints, std::move(target_rep),
                    std::move(transport)},
      std::move(psi)};
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

namespace {
std::string elem_str(const GroupElem& e) { return to_string(e.coords()); }
}  // namespace

Check check_cocycle_condition(const CycleModel& s) {
  for (int comp = 0; comp < s.components().size(); ++comp) {
    Subgroup stab = s.component_stabilizer(comp);
    GModule restricted = s.target().restrict_to(stab);
    for (int t0 : s.component_points(comp)) {
      std::vector<GroupElem> values;
      for (int e : stab.elements()) values.push_back(s.f(s.points().apply(e, t0), t0));
      CocycleCheck c = is_cocycle(restricted, values);
      if (!c.ok)
        return Violation{"cocycle condition", stab.elements()[c.sigma], stab.elements()[c.tau], t0,
                         "alpha_{st} != (alpha_s)^t + alpha_t"};
    }
  }
  return std::nullopt;
}

Check check_basepoint_independence(const CycleModel& s) {
  for (int comp = 0; comp < s.components().size(); ++comp) {
    Subgroup stab = s.component_stabilizer(comp);
    auto pts = s.component_points(comp);
    int t0 = pts.front();
    Cocycle1 alpha = cocycle_over(s, t0, stab);
    for (int t1 : pts) {
      if (t1 == t0) continue;
      Cocycle1 beta = cocycle_over(s, t1, stab);
      GroupElem w = s.f(t0, t1);
      for (size_t k = 0; k < stab.elements().size(); ++k) {
        int e = stab.elements()[k];
        if (alpha.values[k] - beta.values[k] != s.target().act(e, w) - w)
          return Violation{"basepoint coboundary witness", e, -1, t1,
                           "alpha - beta != d(f(t0,t1)) at witness " + elem_str(w)};
      }
      if (!is_coboundary(cocycle_sub(alpha, beta)))
        return Violation{"basepoint class equality", -1, -1, t1, "difference is not a coboundary"};
    }
  }
  return std::nullopt;
}

Check check_descended_equivariance(const CycleModel& s) {
  for (int comp = 0; comp < s.components().size(); ++comp) {
    auto pts = s.component_points(comp);
    DescendedMap dm = descended_map(s, pts.front());
    for (int t : pts)
      for (size_t k = 0; k < dm.stab.elements().size(); ++k) {
        int e = dm.stab.elements()[k];
        if (dm.psi(s.points().apply(e, t)) != dm.target.act(static_cast<int>(k), dm.psi(t)))
          return Violation{"descended map equivariance", e, -1, t,
                           "psi(t^sigma) != alpha_sigma + psi(t)^sigma"};
      }
  }
  return std::nullopt;
}

Check check_fixed_point_obstruction(const CycleModel& s) {
  for (int comp = 0; comp < s.components().size(); ++comp) {
    Subgroup stab = s.component_stabilizer(comp);
    for (int t : s.component_points(comp)) {
      bool fixed = true;
      for (int e : stab.elements())
        if (s.points().apply(e, t) != t) {
          fixed = false;
          break;
        }
      if (fixed) {
        if (!torsor_class(s, t).is_zero())
          return Violation{"fixed point obstruction", -1, -1, t,
                           "component has a fixed point but a nonzero class"};
        break;
      }
    }
  }
  return std::nullopt;
}

Check check_boxplus_additivity(const CycleModel& a, const CycleModel& b) {
  CycleModel box = boxplus(a, b);
  const int t1 = 0, t2 = 0;
  const int tbox = t1 * b.points().size() + t2;
  Subgroup h = box.component_stabilizer(box.component_of()[tbox]);
  CohClass cls_box = torsor_class(box, tbox);
  CohClass sum = wc_add(CohClass(cocycle_over(a, t1, h)), CohClass(cocycle_over(b, t2, h)));
  if (!(cls_box == sum))
    return Violation{"boxplus additivity", -1, -1, tbox, "class(a [+] b) != class(a) + class(b)"};
  return std::nullopt;
}

Check check_sym_power(const CycleModel& s, int d) {
  CycleModel p = sym_power(s, d);
  const int t0 = 0;
  std::vector<int> diag(d, t0);
  const int diag_idx = index_of_tuple(diag, s.points().size());
  DescendedMap dm = descended_map(p, diag_idx);

  // permutation invariance of psi on the component of the diagonal basepoint
  std::vector<int> perm(d);
  for (int t : dm.component_points) {
    std::vector<int> tup = tuple_of_index(t, s.points().size(), d);
    for (int i = 0; i < d; ++i) perm[i] = i;
    do {
      std::vector<int> permuted(d);
      for (int i = 0; i < d; ++i) permuted[i] = tup[perm[i]];
      int pt = index_of_tuple(permuted, s.points().size());
      if (dm.psi(pt) != dm.psi(t))
        return Violation{"symmetric power invariance", -1, -1, t,
                         "psi changes under a coordinate permutation"};
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  // class linearity: class of the d-fold sum is d times the class
  Subgroup h = p.component_stabilizer(p.component_of()[diag_idx]);
  CohClass cls_p = torsor_class(p, diag_idx);
  CohClass base(cocycle_over(s, t0, h));
  CohClass acc = base;
  for (int i = 1; i < d; ++i) acc = wc_add(acc, base);
  if (!(cls_p == acc))
    return Violation{"symmetric power class linearity", -1, -1, diag_idx,
                     "class(d-fold sum) != d * class"};
  return std::nullopt;
}

Check check_disconnected_descent(const CycleModel& s, int t0) {
  DisconnectedDescent dd = disconnected_descent(s, t0);
  const InducedObject& obj = dd.object;
  const FiniteGroup& g = s.points().group();
  const int nreps = static_cast<int>(obj.reps.size());

  // induced action law; the m-dependence reduces to the module's own
  // composition law, so m = 0 covers the transport identity
  for (int r = 0; r < nreps; ++r)
    for (int sg = 0; sg < g.order(); ++sg)
      for (int tu = 0; tu < g.order(); ++tu) {
        auto [r1, m1] = obj.act(r, s.target().base().zero(), sg);
        auto [r2, m2] = obj.act(r1, m1, tu);
        auto [rd, md] = obj.act(r, s.target().base().zero(), g.mul(sg, tu));
        if (r2 != rd || m2 != md)
          return Violation{"induced action law", sg, tu, r, "((rho,m)^s)^t != (rho,m)^{st}"};
      }
  // global map equivariance
  for (int t = 0; t < s.points().size(); ++t)
    for (int sg = 0; sg < g.order(); ++sg) {
      auto moved = dd.psi[s.points().apply(sg, t)];
      auto acted = obj.act(dd.psi[t].first, dd.psi[t].second, sg);
      if (moved.first != acted.first || !(moved.second == acted.second))
        return Violation{"global map equivariance", sg, -1, t, "Psi(t^sigma) != Psi(t)^sigma"};
    }
  // restriction to the distinguished component recovers the cocycle
  ComponentCocycle cc = build_cocycle(s, t0);
  for (size_t k = 0; k < cc.stab.elements().size(); ++k) {
    int e = cc.stab.elements()[k];
    if (obj.target_rep[0][e] != 0)
      return Violation{"distinguished component restriction", e, -1, t0,
                       "stabilizer element leaves the distinguished component"};
    if (!(obj.transport[0][e] == cc.cocycle.values[k]))
      return Violation{"distinguished component restriction", e, -1, t0,
                       "transport differs from the component cocycle"};
  }
  // component classes transform by conjugation
  for (int tau = 0; tau < g.order(); ++tau) {
    ConjugatedCocycle conj = conjugate_cocycle(s.target(), cc.stab, cc.cocycle, tau);
    ComponentCocycle direct = build_cocycle(s, s.points().apply(tau, t0));
    if (conj.subgroup.elements() != direct.stab.elements())
      return Violation{"component class conjugation", tau, -1, t0,
                       "conjugated stabilizer differs from the moved component's stabilizer"};
    if (!(CohClass(conj.cocycle) == CohClass(direct.cocycle)))
      return Violation{"component class conjugation", tau, -1, t0,
                       "conjugated class differs from the moved component's class"};
  }
  return std::nullopt;
}

std::vector<Violation> verify_scenario(const CycleModel& s) {
  std::vector<Violation> out;
  if (auto v = check_cocycle_condition(s)) out.push_back(*v);
  if (auto v = check_basepoint_independence(s)) out.push_back(*v);
  if (auto v = check_descended_equivariance(s)) out.push_back(*v);
  if (auto v = check_fixed_point_obstruction(s)) out.push_back(*v);
  return out;
}

// ---------------------------------------------------------------------------
// Random scenarios
// ---------------------------------------------------------------------------

namespace {

std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g) {
  std::vector<Subgroup> out;
  const int n = g.order();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & (1u << g.identity()))) continue;
    std::vector<int> elems;
    for (int e = 0; e < n; ++e)
      if (mask & (1u << e)) elems.push_back(e);
    bool closed = true;
    for (int a : elems) {
      if (!(mask & (1u << g.inverse(a)))) closed = false;
      for (int b : elems)
        if (!(mask & (1u << g.mul(a, b)))) closed = false;
      if (!closed) break;
    }
    if (closed) out.push_back(Subgroup(g, elems));
  }
  return out;
}

IntMatrix random_signed_perm(Rng& rng, Index n) {
  std::vector<Index> perm(n);
  for (Index i = 0; i < n; ++i) perm[i] = i;
  for (Index i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  IntMatrix m = IntMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(perm[i], i) = rng.below(2) ? Int(1) : Int(-1);
  return m;
}

}  // namespace

FiniteGroup random_group(Rng& rng, int max_order) {
  std::vector<FiniteGroup> catalog;
  for (int n = 1; n <= std::min(8, max_order); ++n) catalog.push_back(FiniteGroup::cyclic(n));
  if (max_order >= 4)
    catalog.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
  if (max_order >= 6) catalog.push_back(group_from_permutations(3, {{1, 0, 2}, {0, 2, 1}}).group);
  if (max_order >= 8) {
    catalog.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)));
    catalog.push_back(FiniteGroup::direct_product(
        FiniteGroup::cyclic(2), FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))));
    catalog.push_back(group_from_permutations(4, {{1, 2, 3, 0}, {3, 2, 1, 0}}).group);  // dihedral
  }
  return catalog[rng.below(static_cast<long>(catalog.size()))];
}

GModule random_gmodule(Rng& rng, const FiniteGroup& g, Index max_rank, long max_factor) {
  const Index rank = 1 + rng.below(max_rank);
  // monomial action: random signed permutations for the generators, retried
  // until they satisfy the group's relations
  GModule free_mod = GModule::trivial(g, FgAbGroup::free_group(rank));
  for (int attempt = 0; attempt < 40 && !g.generators().empty(); ++attempt) {
    std::vector<IntMatrix> gen_mats;
    for (size_t i = 0; i < g.generators().size(); ++i) gen_mats.push_back(random_signed_perm(rng, rank));
    try {
      free_mod = GModule::from_generator_actions(g, FgAbGroup::free_group(rank), gen_mats);
      break;
    } catch (const std::invalid_argument&) {
    }
  }
  // relations: free, scaled lattice, or the orbit closure of a random vector
  for (int attempt = 0; attempt < 10; ++attempt) {
    IntMatrix rels(rank, 0);
    long mode = rng.below(3);
    if (mode == 1) {
      Int c(2 + rng.below(max_factor - 1));
      rels = IntMatrix::Zero(rank, rank);
      for (Index i = 0; i < rank; ++i) rels(i, i) = c;
    } else if (mode == 2) {
      rels.resize(rank, g.order());
      IntVector v(rank);
      for (Index i = 0; i < rank; ++i) v(i) = Int(rng.range(-3, 3));
      for (int e = 0; e < g.order(); ++e) rels.col(e) = free_mod.action_matrix(e) * v;
    }
    FgAbGroup base(rank, rels);
    bool small = true;
    for (const Int& f : base.invariant_factors())
      if (f > max_factor) small = false;
    if (!small) continue;
    std::vector<IntMatrix> acts;
    for (int e = 0; e < g.order(); ++e) acts.push_back(free_mod.action_matrix(e));
    return GModule(g, base, std::move(acts));
  }
  return GModule::trivial(g, FgAbGroup(1, IntMatrix::Zero(1, 0)));
}

namespace {

CycleModel build_random_scenario(Rng& rng, const ScenarioOptions& opt,
                                 const FiniteGroup* fixed_group, const GModule* fixed_target) {
  FiniteGroup g = fixed_group ? *fixed_group : random_group(rng, opt.max_group_order);
  auto subgroups = enumerate_subgroups(g);

  // components: trivial, or a coset space of the requested index
  Subgroup k = Subgroup::full(g);
  if (opt.num_components > 1) {
    std::vector<Subgroup> candidates;
    for (const Subgroup& h : subgroups)
      if (g.order() == opt.num_components * h.order()) candidates.push_back(h);
    if (candidates.empty()) throw std::invalid_argument("random scenario: no subgroup of that index");
    k = candidates[rng.below(static_cast<long>(candidates.size()))];
  }
  GSet comps = opt.num_components > 1 ? GSet::coset_space(k) : GSet::trivial(g, 1);

  // points: one or two orbits of coset spaces H\G with H inside k
  std::vector<Subgroup> inside;
  for (const Subgroup& h : subgroups) {
    bool sub = true;
    for (int e : h.elements())
      if (!k.contains(e)) sub = false;
    if (sub) inside.push_back(h);
  }
  const int norbits = 1 + static_cast<int>(rng.below(2));
  std::vector<std::vector<int>> act(g.order());
  std::vector<int> comp_of;
  int budget = opt.max_points;
  int placed_orbits = 0;
  for (int i = 0; i < norbits; ++i) {
    std::vector<Subgroup> fitting;
    for (const Subgroup& h : inside)
      if (g.order() / h.order() <= budget) fitting.push_back(h);
    if (fitting.empty()) break;
    const Subgroup& h = fitting[rng.below(static_cast<long>(fitting.size()))];
    CosetSystem cs = right_cosets(h);
    CosetSystem kcs = right_cosets(k);
    const int offset = static_cast<int>(comp_of.size());
    const int sz = static_cast<int>(cs.reps.size());
    for (int e = 0; e < g.order(); ++e) {
      act[e].resize(offset + sz);
      for (int j = 0; j < sz; ++j)
        act[e][offset + j] = offset + cs.rep_index_of[g.mul(cs.reps[j], e)];
    }
    for (int j = 0; j < sz; ++j)
      comp_of.push_back(opt.num_components > 1 ? kcs.rep_index_of[cs.reps[j]] : 0);
    budget -= sz;
    ++placed_orbits;
  }
  if (placed_orbits == 0) throw std::invalid_argument("random scenario: no orbit fits the budget");
  GSet points(g, act);

  GModule ambient = random_gmodule(rng, g, opt.max_rank, opt.max_factor);
  std::vector<GroupElem> pointmap = random_equivariant_pointmap(points, ambient, rng, opt.value_bound);

  // distinguished submodule: same-component anchored differences, possibly
  // widened by an orbit closure or the full module
  const Index n = ambient.base().ambient_rank();
  std::vector<IntVector> gen_cols;
  for (int c = 0; c < comps.size(); ++c) {
    int anchor = -1;
    for (int t = 0; t < points.size(); ++t) {
      if (comp_of[t] != c) continue;
      if (anchor < 0)
        anchor = t;
      else
        gen_cols.push_back((pointmap[t] - pointmap[anchor]).coords());
    }
  }
  if (rng.chance(1, 4)) {
    for (Index i = 0; i < n; ++i) {
      IntVector e = IntVector::Zero(n);
      e(i) = 1;
      gen_cols.push_back(e);
    }
  } else if (rng.chance(1, 2)) {
    IntVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = Int(rng.range(-2, 2));
    for (int e = 0; e < g.order(); ++e) gen_cols.push_back(ambient.action_matrix(e) * v);
  }
  IntMatrix gens(n, static_cast<Index>(gen_cols.size()));
  for (size_t j = 0; j < gen_cols.size(); ++j) gens.col(static_cast<Index>(j)) = gen_cols[j];
  Submodule sub = build_submodule(ambient, gens);

  GModule target = fixed_target ? *fixed_target : random_gmodule(rng, g, opt.max_rank, opt.max_factor);

  // random equivariant phi: solve the commutation and well-definedness
  // constraints and take a random lattice point of the solution space
  const Index ks = sub.module.base().ambient_rank();
  const Index na = target.base().ambient_rank();
  const IntMatrix& tr = target.base().relations();
  std::vector<IntMatrix> row_blocks;
  for (int gen : g.generators()) {
    const IntMatrix& a0 = sub.module.action_matrix(gen);
    const IntMatrix& at = target.action_matrix(gen);
    for (Index j = 0; j < ks; ++j) {
      IntMatrix rows = IntMatrix::Zero(na, ks * na);
      for (Index i = 0; i < ks; ++i) {
        rows.block(0, i * na, na, na) += a0(i, j) * IntMatrix::Identity(na, na);
        if (i == j) rows.block(0, i * na, na, na) -= at;
      }
      row_blocks.push_back(std::move(rows));
    }
  }
  const IntMatrix& subrels = sub.module.base().relations();
  for (Index c = 0; c < subrels.cols(); ++c) {
    IntMatrix rows = IntMatrix::Zero(na, ks * na);
    for (Index i = 0; i < ks; ++i)
      rows.block(0, i * na, na, na) += subrels(i, c) * IntMatrix::Identity(na, na);
    row_blocks.push_back(std::move(rows));
  }
  const Index nb = static_cast<Index>(row_blocks.size());
  IntMatrix sys = IntMatrix::Zero(nb * na, ks * na + nb * tr.cols());
  for (Index b = 0; b < nb; ++b) {
    sys.block(b * na, 0, na, ks * na) = row_blocks[b];
    sys.block(b * na, ks * na + b * tr.cols(), na, tr.cols()) = tr;
  }
  IntMatrix solspace = integer_kernel(sys).topRows(ks * na);
  IntMatrix solbasis = hermite_basis(solspace);
  IntVector u = IntVector::Zero(ks * na);
  for (Index j = 0; j < solbasis.cols(); ++j) {
    Int c(rng.range(-2, 2));
    u += solbasis.col(j) * c;
  }
  IntMatrix phi_matrix(na, ks);
  for (Index j = 0; j < ks; ++j) phi_matrix.col(j) = u.segment(j * na, na);
  EquivariantHom phi(sub.module, target, AbHom(sub.module.base(), target.base(), phi_matrix));

  return make_cycle_model(std::move(points), std::move(ambient), std::move(pointmap), std::move(sub),
                          std::move(phi), std::move(comps), std::move(comp_of));
}

}  // namespace

CycleModel random_scenario(uint64_t seed, const ScenarioOptions& opt) {
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 40) throw std::runtime_error("random_scenario: no valid scenario found");
    Rng rng(derive_seed(seed, static_cast<uint64_t>(attempt)));
    try {
      return build_random_scenario(rng, opt, nullptr, nullptr);
    } catch (const std::invalid_argument&) {
    }
  }
}

std::pair<CycleModel, CycleModel> random_scenario_pair(uint64_t seed, const ScenarioOptions& opt) {
  CycleModel first = random_scenario(seed, opt);
  const FiniteGroup& g = first.points().group();
  const GModule& target = first.target();
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 40) throw std::runtime_error("random_scenario_pair: no valid partner found");
    Rng rng(derive_seed(seed ^ 0x5bf03635ULL, static_cast<uint64_t>(attempt)));
    try {
      return {first, build_random_scenario(rng, opt, &g, &target)};
    } catch (const std::invalid_argument&) {
    }
  }
}

}  // namespace galtor
