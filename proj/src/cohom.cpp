#include "galtor/cohom.hpp"

namespace galtor {

// Cached decomposition of the coboundary system of a module: the stacked
// blocks [(A_sigma - I) | relations] over the non-identity elements.
struct CobSolver {
  SmithForm snf;
  Index rows, cols;
};

namespace {

// Non-identity elements in index order; the flattened cochain layout.
std::vector<int> slots_of(const FiniteGroup& g) {
  std::vector<int> slots;
  for (int s = 0; s < g.order(); ++s)
    if (s != g.identity()) slots.push_back(s);
  return slots;
}

IntVector flatten(const GModule& m, const std::vector<GroupElem>& values) {
  const Index n = m.base().ambient_rank();
  auto slots = slots_of(m.group());
  IntVector flat(n * static_cast<Index>(slots.size()));
  for (size_t k = 0; k < slots.size(); ++k) flat.segment(k * n, n) = values[slots[k]].coords();
  return flat;
}

const CobSolver& cob_solver(const GModule& m) {
  {
    std::lock_guard<std::mutex> lock(m.cache_mutex());
    if (m.cob_slot()) return *m.cob_slot();
  }
  const Index n = m.base().ambient_rank();
  const IntMatrix& rels = m.base().relations();
  auto slots = slots_of(m.group());
  const Index k = static_cast<Index>(slots.size());
  IntMatrix sys = IntMatrix::Zero(n * k, n + rels.cols() * k);
  for (Index i = 0; i < k; ++i) {
    sys.block(i * n, 0, n, n) = m.action_matrix(slots[i]) - IntMatrix::Identity(n, n);
    sys.block(i * n, n + i * rels.cols(), n, rels.cols()) = rels;
  }
  auto solver = std::make_shared<CobSolver>(CobSolver{smith_normal_form(sys), sys.rows(), sys.cols()});
  std::lock_guard<std::mutex> lock(m.cache_mutex());
  if (!m.cob_slot()) m.cob_slot() = std::move(solver);
  return *m.cob_slot();
}

std::shared_ptr<const H1Data> compute_h1(const GModule& m) {
  const Index n = m.base().ambient_rank();
  const IntMatrix& rels = m.base().relations();
  const FiniteGroup& g = m.group();
  auto slots = slots_of(g);
  const Index nslots = static_cast<Index>(slots.size());
  std::vector<Index> slot_index(g.order(), -1);
  for (size_t k = 0; k < slots.size(); ++k) slot_index[slots[k]] = static_cast<Index>(k);

  // Cocycle conditions for sigma in a generating set and tau arbitrary
  // determine all conditions, which keeps the lattice systems small.
  std::vector<std::pair<int, int>> conds;
  for (int gen : g.generators()) {
    if (gen == g.identity()) continue;
    for (int tau = 0; tau < g.order(); ++tau) {
      if (tau == g.identity()) continue;
      conds.push_back({gen, tau});
    }
  }
  const Index nc = static_cast<Index>(conds.size());

  IntMatrix d1 = IntMatrix::Zero(n * nc, n * nslots);
  for (Index c = 0; c < nc; ++c) {
    auto [sg, tau] = conds[c];
    int prod = g.mul(sg, tau);
    if (prod != g.identity())
      d1.block(c * n, slot_index[prod] * n, n, n) += IntMatrix::Identity(n, n);
    d1.block(c * n, slot_index[sg] * n, n, n) -= m.action_matrix(tau);
    d1.block(c * n, slot_index[tau] * n, n, n) -= IntMatrix::Identity(n, n);
  }
  // Conditions hold modulo the relation lattice in each block.
  IntMatrix sys = IntMatrix::Zero(n * nc, n * nslots + rels.cols() * nc);
  sys.leftCols(n * nslots) = d1;
  for (Index c = 0; c < nc; ++c)
    sys.block(c * n, n * nslots + c * rels.cols(), n, rels.cols()) = rels;

  IntMatrix ker = integer_kernel(sys);
  IntMatrix z1 = hermite_basis(ker.topRows(n * nslots));

  // Coboundaries plus slotwise relations, expressed over the Z1 basis.
  IntMatrix sub(n * nslots, n + rels.cols() * nslots);
  sub.setZero();
  for (Index k = 0; k < nslots; ++k) {
    sub.block(k * n, 0, n, n) = m.action_matrix(slots[k]) - IntMatrix::Identity(n, n);
    sub.block(k * n, n + k * rels.cols(), n, rels.cols()) = rels;
  }
  SmithForm z1_solver = smith_normal_form(z1);
  IntMatrix w(z1.cols(), sub.cols());
  for (Index j = 0; j < sub.cols(); ++j) {
    auto sol = solve_with(z1_solver, sub.col(j));
    if (!sol) throw std::logic_error("h1: coboundary lattice not inside the cocycle lattice");
    w.col(j) = *sol;
  }
  return std::make_shared<const H1Data>(H1Data{FgAbGroup(z1.cols(), w), z1, std::move(z1_solver)});
}

}  // namespace

CocycleCheck is_cocycle(const GModule& m, const std::vector<GroupElem>& values) {
  const FiniteGroup& g = m.group();
  if (static_cast<int>(values.size()) != g.order())
    throw std::invalid_argument("is_cocycle: one value per group element required");
  for (const GroupElem& v : values)
    if (!v.owner().same_presentation(m.base()))
      throw std::invalid_argument("is_cocycle: value not in the module");
  for (int s = 0; s < g.order(); ++s)
    for (int t = 0; t < g.order(); ++t)
      if (values[g.mul(s, t)] != m.act(t, values[s]) + values[t]) return {false, s, t};
  return {};
}

Cocycle1 make_cocycle(GModule m, std::vector<GroupElem> values) {
  CocycleCheck c = is_cocycle(m, values);
  if (!c.ok) throw std::invalid_argument("cocycle condition violated");
  return Cocycle1{std::move(m), std::move(values)};
}

Cocycle1 zero_cocycle(const GModule& m) {
  return Cocycle1{m, std::vector<GroupElem>(m.group().order(), m.base().zero())};
}

Cocycle1 coboundary_of(const GModule& mod, const GroupElem& m) {
  std::vector<GroupElem> values;
  values.reserve(mod.group().order());
  for (int s = 0; s < mod.group().order(); ++s) values.push_back(mod.act(s, m) - m);
  return Cocycle1{mod, std::move(values)};
}

Cocycle1 cocycle_add(const Cocycle1& a, const Cocycle1& b) {
  if (!a.module.same_module(b.module)) throw std::invalid_argument("cocycle_add: different modules");
  std::vector<GroupElem> values;
  values.reserve(a.values.size());
  for (size_t i = 0; i < a.values.size(); ++i) values.push_back(a.values[i] + b.values[i]);
  return Cocycle1{a.module, std::move(values)};
}

Cocycle1 cocycle_neg(const Cocycle1& a) {
  std::vector<GroupElem> values;
  values.reserve(a.values.size());
  for (const GroupElem& v : a.values) values.push_back(-v);
  return Cocycle1{a.module, std::move(values)};
}

Cocycle1 cocycle_sub(const Cocycle1& a, const Cocycle1& b) { return cocycle_add(a, cocycle_neg(b)); }

std::optional<GroupElem> is_coboundary(const Cocycle1& a) {
  const GModule& m = a.module;
  const CobSolver& solver = cob_solver(m);
  IntVector flat = flatten(m, a.values);
  auto sol = solve_with(solver.snf, flat);
  if (!sol) return std::nullopt;
  return m.base().element(sol->head(m.base().ambient_rank()));
}

const H1Data& h1(const GModule& m) {
  {
    std::lock_guard<std::mutex> lock(m.cache_mutex());
    if (m.h1_slot()) return *m.h1_slot();
  }
  auto data = compute_h1(m);
  std::lock_guard<std::mutex> lock(m.cache_mutex());
  if (!m.h1_slot()) m.h1_slot() = std::move(data);
  return *m.h1_slot();
}

GroupElem h1_class(const GModule& m, const Cocycle1& a) {
  if (!a.module.same_module(m)) throw std::invalid_argument("h1_class: cocycle over a different module");
  const H1Data& data = h1(m);
  auto sol = solve_with(data.z1_solver, flatten(m, a.values));
  if (!sol) throw std::logic_error("h1_class: cocycle not in the computed cocycle lattice");
  return data.group.element(*sol);
}

FgAbGroup h1_cyclic_oracle(const GModule& m) {
  const FiniteGroup& g = m.group();
  int gen = g.cyclic_generator();
  if (g.element_order(gen) != g.order()) throw std::invalid_argument("h1_cyclic_oracle: group not cyclic");
  const Index n = m.base().ambient_rank();
  const IntMatrix& rels = m.base().relations();
  IntMatrix norm = IntMatrix::Zero(n, n);
  int cur = g.identity();
  for (int k = 0; k < g.order(); ++k) {
    norm += m.action_matrix(cur);
    cur = g.mul(cur, gen);
  }
  // kernel of Norm as a map of the presented group
  IntMatrix ker = integer_kernel(hcat(norm, rels));
  IntMatrix basis = hermite_basis(ker.topRows(n));
  // image of (sigma - 1) together with the relations, over that basis
  IntMatrix target = hcat(IntMatrix(m.action_matrix(gen) - IntMatrix::Identity(n, n)), rels);
  SmithForm solver = smith_normal_form(basis);
  IntMatrix w(basis.cols(), target.cols());
  for (Index j = 0; j < target.cols(); ++j) {
    auto sol = solve_with(solver, target.col(j));
    if (!sol) throw std::logic_error("h1_cyclic_oracle: image not inside the norm kernel");
    w.col(j) = *sol;
  }
  return FgAbGroup(basis.cols(), w);
}

FgAbGroup h1_cyclic_oracle(const TabModule& m) {
  const FiniteGroup& g = m.group();
  int gen = g.cyclic_generator();
  if (g.element_order(gen) != g.order()) throw std::invalid_argument("h1_cyclic_oracle: group not cyclic");
  // ker(Norm)
  std::vector<long> kernel;
  for (long x = 0; x < m.size(); ++x) {
    long acc = m.zero();
    int cur = g.identity();
    for (int k = 0; k < g.order(); ++k) {
      acc = m.add(acc, m.act(cur, x));
      cur = g.mul(cur, gen);
    }
    if (acc == m.zero()) kernel.push_back(x);
  }
  // image of (sigma - 1)
  std::vector<long> image;
  image.reserve(m.size());
  for (long x = 0; x < m.size(); ++x) image.push_back(m.add(m.act(gen, x), m.neg(x)));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  auto in_image = [&](long x) { return std::binary_search(image.begin(), image.end(), x); };
  for (long x : image)
    if (!std::binary_search(kernel.begin(), kernel.end(), x))
      throw std::logic_error("h1_cyclic_oracle: image not inside the norm kernel");

  const long q = static_cast<long>(kernel.size()) / static_cast<long>(image.size());
  auto scalar_in_quotient_killed = [&](long k) {
    long c = 0;
    for (long x : kernel) {
      long acc = m.zero(), base = x, e = k;
      while (e > 0) {
        if (e & 1) acc = m.add(acc, base);
        base = m.add(base, base);
        e >>= 1;
      }
      if (in_image(acc)) ++c;
    }
    return c / static_cast<long>(image.size());
  };
  return FgAbGroup::from_factors(invariant_factors_from_counts(q, scalar_in_quotient_killed));
}

Cocycle1 restrict_cocycle(const Cocycle1& a, const Subgroup& h) {
  GModule restricted = a.module.restrict_to(h);
  std::vector<GroupElem> values;
  values.reserve(h.order());
  for (int e : h.elements()) values.push_back(a.values[e]);
  return make_cocycle(restricted, std::move(values));
}

ConjugatedCocycle conjugate_cocycle(const GModule& parent, const Subgroup& h, const Cocycle1& beta,
                                    int tau) {
  if (static_cast<int>(beta.values.size()) != h.order())
    throw std::invalid_argument("conjugate_cocycle: cocycle does not match the subgroup");
  const FiniteGroup& g = parent.group();
  Subgroup hc = h.conjugate(tau);
  GModule restricted = parent.restrict_to(hc);
  std::vector<GroupElem> values;
  values.reserve(hc.order());
  for (int sp : hc.elements()) {
    int s = g.mul(g.mul(tau, sp), g.inverse(tau));
    int idx = h.index_of(s);
    if (idx < 0) throw std::logic_error("conjugate_cocycle: conjugation left the subgroup");
    values.push_back(parent.act(tau, beta.values[idx]));
  }
  return ConjugatedCocycle{hc, make_cocycle(restricted, std::move(values))};
}

CohClass CohClass::operator+(const CohClass& o) const { return CohClass(cocycle_add(rep_, o.rep_)); }

CohClass CohClass::operator-() const { return CohClass(cocycle_neg(rep_)); }

CohClass CohClass::operator-(const CohClass& o) const { return CohClass(cocycle_sub(rep_, o.rep_)); }

bool CohClass::operator==(const CohClass& o) const {
  return is_coboundary(cocycle_sub(rep_, o.rep_)).has_value();
}

}  // namespace galtor
