#include "galtor/gmod.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace galtor {

// ---------------------------------------------------------------------------
// FiniteGroup
// ---------------------------------------------------------------------------

namespace {

void validate_table(const std::vector<std::vector<int>>& mul, int& id_out, std::vector<int>& inv_out) {
  const int n = static_cast<int>(mul.size());
  if (n == 0) throw std::invalid_argument("group table: empty");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group table: not square");
    for (int x : row)
      if (x < 0 || x >= n) throw std::invalid_argument("group table: entry out of range");
  }
  int id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = mul[e][x] == x && mul[x][e] == x;
    if (ok) {
      id = e;
      break;
    }
  }
  if (id < 0) throw std::invalid_argument("group table: no identity element");
  inv_out.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (mul[a][b] == id && mul[b][a] == id) {
        inv_out[a] = b;
        break;
      }
    if (inv_out[a] < 0) throw std::invalid_argument("group table: missing inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          throw std::invalid_argument("group table: not associative");
  id_out = id;
}

std::vector<int> closure(const std::vector<std::vector<int>>& mul, int id, const std::vector<int>& gens) {
  std::vector<char> seen(mul.size(), 0);
  seen[id] = 1;
  std::vector<int> out{id};
  std::queue<int> q;
  q.push(id);
  while (!q.empty()) {
    int cur = q.front();
    q.pop();
    for (int g : gens) {
      int nxt = mul[cur][g];
      if (!seen[nxt]) {
        seen[nxt] = 1;
        out.push_back(nxt);
        q.push(nxt);
      }
    }
  }
  return out;
}

std::vector<int> greedy_generators(const std::vector<std::vector<int>>& mul, int id) {
  const int n = static_cast<int>(mul.size());
  std::vector<int> gens;
  while (static_cast<int>(closure(mul, id, gens).size()) < n) {
    auto covered = closure(mul, id, gens);
    std::vector<char> in(n, 0);
    for (int e : covered) in[e] = 1;
    // add the element producing the largest closure; ties to least index
    int best = -1;
    size_t best_size = 0;
    for (int e = 0; e < n; ++e) {
      if (in[e]) continue;
      auto g2 = gens;
      g2.push_back(e);
      size_t sz = closure(mul, id, g2).size();
      if (sz > best_size) {
        best_size = sz;
        best = e;
      }
    }
    gens.push_back(best);
  }
  return gens;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> mul, std::vector<int> generators) {
  auto data = std::make_shared<Data>();
  validate_table(mul, data->id, data->inv);
  data->n = static_cast<int>(mul.size());
  data->mul = std::move(mul);
  if (generators.empty() && data->n > 1) generators = greedy_generators(data->mul, data->id);
  for (int g : generators)
    if (g < 0 || g >= data->n) throw std::invalid_argument("group: generator index out of range");
  if (static_cast<int>(closure(data->mul, data->id, generators).size()) != data->n)
    throw std::invalid_argument("group: generators do not generate");
  data->gens = std::move(generators);

  // BFS tree (right multiplication by generators, in listed order).
  data->bfs_parent.assign(data->n, -1);
  data->bfs_gen.assign(data->n, -1);
  std::vector<char> seen(data->n, 0);
  seen[data->id] = 1;
  std::queue<int> q;
  q.push(data->id);
  while (!q.empty()) {
    int cur = q.front();
    q.pop();
    for (size_t k = 0; k < data->gens.size(); ++k) {
      int nxt = data->mul[cur][data->gens[k]];
      if (!seen[nxt]) {
        seen[nxt] = 1;
        data->bfs_parent[nxt] = cur;
        data->bfs_gen[nxt] = static_cast<int>(k);
        q.push(nxt);
      }
    }
  }
  return FiniteGroup(std::move(data));
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic: order must be positive");
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  std::vector<int> gens;
  if (n > 1) gens.push_back(1);
  return from_table(std::move(mul), std::move(gens));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  std::vector<std::vector<int>> mul(na * nb, std::vector<int>(na * nb));
  for (int x1 = 0; x1 < na; ++x1)
    for (int y1 = 0; y1 < nb; ++y1)
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2)
          mul[x1 * nb + y1][x2 * nb + y2] = a.mul(x1, x2) * nb + b.mul(y1, y2);
  std::vector<int> gens;
  for (int g : a.generators()) gens.push_back(g * nb + b.identity());
  for (int g : b.generators()) gens.push_back(a.identity() * nb + g);
  return from_table(std::move(mul), std::move(gens));
}

int FiniteGroup::element_order(int a) const {
  int ord = 1, cur = a;
  while (cur != identity()) {
    cur = mul(cur, a);
    ++ord;
  }
  return ord;
}

bool FiniteGroup::is_cyclic() const {
  for (int a = 0; a < order(); ++a)
    if (element_order(a) == order()) return true;
  return order() == 1;
}

int FiniteGroup::cyclic_generator() const {
  int best = identity(), best_ord = 1;
  for (int a = 0; a < order(); ++a) {
    int o = element_order(a);
    if (o > best_ord) {
      best = a;
      best_ord = o;
    }
  }
  return best;
}

bool FiniteGroup::same_group(const FiniteGroup& o) const {
  if (d_ == o.d_) return true;
  return d_->mul == o.d_->mul;
}

PermutationGroup group_from_permutations(int npoints, const std::vector<std::vector<int>>& gen_perms) {
  for (const auto& p : gen_perms) {
    if (static_cast<int>(p.size()) != npoints)
      throw std::invalid_argument("permutation group: wrong permutation length");
    std::vector<char> hit(npoints, 0);
    for (int x : p) {
      if (x < 0 || x >= npoints || hit[x]) throw std::invalid_argument("permutation group: not a permutation");
      hit[x] = 1;
    }
  }
  std::vector<int> ident(npoints);
  for (int i = 0; i < npoints; ++i) ident[i] = i;

  // Closure under composition; element product a*b acts as "apply a, then b".
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> elems;
  auto intern = [&](const std::vector<int>& p) {
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(elems.size());
    index.emplace(p, id);
    elems.push_back(p);
    return id;
  };
  intern(ident);
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    int cur = q.front();
    q.pop();
    for (const auto& g : gen_perms) {
      std::vector<int> composed(npoints);
      for (int t = 0; t < npoints; ++t) composed[t] = g[elems[cur][t]];
      if (index.find(composed) == index.end()) q.push(intern(composed));
      if (elems.size() > 5040) throw std::invalid_argument("permutation group: closure too large");
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> composed(npoints);
      for (int t = 0; t < npoints; ++t) composed[t] = elems[b][elems[a][t]];
      auto it = index.find(composed);
      if (it == index.end()) throw std::logic_error("permutation group: closure not closed");
      mul[a][b] = it->second;
    }
  std::vector<int> gens;
  for (const auto& g : gen_perms) gens.push_back(index.at(g));
  FiniteGroup grp = FiniteGroup::from_table(std::move(mul), std::move(gens));
  return PermutationGroup{grp, std::move(elems)};
}

// ---------------------------------------------------------------------------
// Subgroup
// ---------------------------------------------------------------------------

Subgroup::Subgroup(FiniteGroup parent, std::vector<int> elems) : parent_(std::move(parent)) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  for (int e : elems)
    if (e < 0 || e >= parent_.order()) throw std::invalid_argument("subgroup: element out of range");
  std::vector<char> in(parent_.order(), 0);
  for (int e : elems) in[e] = 1;
  if (!in[parent_.identity()]) throw std::invalid_argument("subgroup: identity missing");
  for (int a : elems) {
    if (!in[parent_.inverse(a)]) throw std::invalid_argument("subgroup: not closed under inverse");
    for (int b : elems)
      if (!in[parent_.mul(a, b)]) throw std::invalid_argument("subgroup: not closed under product");
  }
  elems_ = std::move(elems);
}

Subgroup Subgroup::full(const FiniteGroup& g) {
  std::vector<int> all(g.order());
  for (int i = 0; i < g.order(); ++i) all[i] = i;
  return Subgroup(g, std::move(all));
}

Subgroup Subgroup::trivial(const FiniteGroup& g) { return Subgroup(g, {g.identity()}); }

bool Subgroup::contains(int g) const {
  return std::binary_search(elems_.begin(), elems_.end(), g);
}

bool Subgroup::is_normal() const {
  for (int t = 0; t < parent_.order(); ++t)
    for (int h : elems_)
      if (!contains(parent_.mul(parent_.mul(parent_.inverse(t), h), t))) return false;
  return true;
}

Subgroup Subgroup::conjugate(int tau) const {
  std::vector<int> out;
  const int ti = parent_.inverse(tau);
  for (int h : elems_) out.push_back(parent_.mul(parent_.mul(ti, h), tau));
  return Subgroup(parent_, std::move(out));
}

FiniteGroup Subgroup::as_group() const {
  const int k = order();
  std::vector<std::vector<int>> mul(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      int prod = parent_.mul(elems_[a], elems_[b]);
      mul[a][b] = index_of(prod);
    }
  return FiniteGroup::from_table(std::move(mul));
}

int Subgroup::index_of(int parent_elem) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), parent_elem);
  if (it == elems_.end() || *it != parent_elem) return -1;
  return static_cast<int>(it - elems_.begin());
}

CosetSystem right_cosets(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  CosetSystem sys{h, {}, std::vector<int>(g.order(), -1)};
  // identity coset first
  sys.reps.push_back(g.identity());
  for (int e : h.elements()) sys.rep_index_of[e] = 0;
  for (int e = 0; e < g.order(); ++e) {
    if (sys.rep_index_of[e] >= 0) continue;
    int idx = static_cast<int>(sys.reps.size());
    sys.reps.push_back(e);
    for (int x : h.elements()) sys.rep_index_of[g.mul(x, e)] = idx;
  }
  return sys;
}

// ---------------------------------------------------------------------------
// GSet
// ---------------------------------------------------------------------------

GSet::GSet(FiniteGroup g, std::vector<std::vector<int>> act) {
  const int n = g.order();
  if (static_cast<int>(act.size()) != n) throw std::invalid_argument("gset: one permutation per group element required");
  const int size = act.empty() ? 0 : static_cast<int>(act[0].size());
  for (const auto& p : act) {
    if (static_cast<int>(p.size()) != size) throw std::invalid_argument("gset: ragged action table");
    std::vector<char> hit(size, 0);
    for (int x : p) {
      if (x < 0 || x >= size || hit[x]) throw std::invalid_argument("gset: action is not a permutation");
      hit[x] = 1;
    }
  }
  for (int t = 0; t < size; ++t)
    if (act[g.identity()][t] != t) throw std::invalid_argument("gset: identity must act trivially");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int t = 0; t < size; ++t)
        if (act[g.mul(a, b)][t] != act[b][act[a][t]])
          throw std::invalid_argument("gset: right-action composition law violated");
  d_ = std::shared_ptr<const Data>(new Data{std::move(g), size, std::move(act)});
}

GSet GSet::trivial(const FiniteGroup& g, int size) {
  std::vector<int> ident(size);
  for (int i = 0; i < size; ++i) ident[i] = i;
  return GSet(g, std::vector<std::vector<int>>(g.order(), ident));
}

GSet GSet::from_generator_images(const FiniteGroup& g, const std::vector<std::vector<int>>& gen_images) {
  if (gen_images.size() != g.generators().size())
    throw std::invalid_argument("gset: one permutation per group generator required");
  const int size = gen_images.empty() ? 0 : static_cast<int>(gen_images[0].size());
  if (g.generators().empty()) return trivial(g, size);
  std::vector<std::vector<int>> act(g.order());
  std::vector<int> ident(size);
  for (int i = 0; i < size; ++i) ident[i] = i;
  act[g.identity()] = ident;
  // extend along the BFS tree: t^(p*g) = (t^p)^g
  std::vector<int> order_of_fill;
  std::queue<int> q;
  q.push(g.identity());
  std::vector<char> filled(g.order(), 0);
  filled[g.identity()] = 1;
  while (!q.empty()) {
    int cur = q.front();
    q.pop();
    for (size_t k = 0; k < g.generators().size(); ++k) {
      int nxt = g.mul(cur, g.generators()[k]);
      if (filled[nxt]) continue;
      filled[nxt] = 1;
      act[nxt].resize(size);
      for (int t = 0; t < size; ++t) act[nxt][t] = gen_images[k][act[cur][t]];
      q.push(nxt);
    }
  }
  return GSet(g, std::move(act));  // constructor re-validates the law
}

GSet GSet::coset_space(const Subgroup& h) {
  CosetSystem sys = right_cosets(h);
  const FiniteGroup& g = h.parent();
  const int size = static_cast<int>(sys.reps.size());
  std::vector<std::vector<int>> act(g.order(), std::vector<int>(size));
  for (int s = 0; s < g.order(); ++s)
    for (int c = 0; c < size; ++c) act[s][c] = sys.rep_index_of[g.mul(sys.reps[c], s)];
  return GSet(g, std::move(act));
}

GSet GSet::product(const GSet& a, const GSet& b) {
  if (!a.group().same_group(b.group())) throw std::invalid_argument("gset product: different groups");
  const int na = a.size(), nb = b.size();
  std::vector<std::vector<int>> act(a.group().order(), std::vector<int>(na * nb));
  for (int s = 0; s < a.group().order(); ++s)
    for (int t1 = 0; t1 < na; ++t1)
      for (int t2 = 0; t2 < nb; ++t2)
        act[s][t1 * nb + t2] = a.apply(s, t1) * nb + b.apply(s, t2);
  return GSet(a.group(), std::move(act));
}

GSet GSet::power(const GSet& s, int d) {
  if (d < 1) throw std::invalid_argument("gset power: d must be >= 1");
  GSet acc = s;
  for (int i = 1; i < d; ++i) acc = product(acc, s);
  return acc;
}

std::vector<int> tuple_of_index(int index, int base, int d) {
  std::vector<int> t(d);
  for (int i = d - 1; i >= 0; --i) {
    t[i] = index % base;
    index /= base;
  }
  return t;
}

int index_of_tuple(const std::vector<int>& tuple, int base) {
  int idx = 0;
  for (int x : tuple) idx = idx * base + x;
  return idx;
}

std::vector<std::vector<int>> GSet::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(size(), 0);
  for (int t = 0; t < size(); ++t) {
    if (seen[t]) continue;
    std::vector<int> orbit;
    std::queue<int> q;
    q.push(t);
    seen[t] = 1;
    while (!q.empty()) {
      int cur = q.front();
      q.pop();
      orbit.push_back(cur);
      for (int s = 0; s < group().order(); ++s) {
        int nxt = apply(s, cur);
        if (!seen[nxt]) {
          seen[nxt] = 1;
          q.push(nxt);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

Subgroup GSet::stabilizer(int t) const {
  std::vector<int> elems;
  for (int s = 0; s < group().order(); ++s)
    if (apply(s, t) == t) elems.push_back(s);
  return Subgroup(group(), std::move(elems));
}

int GSet::transporter(int rep, int t) const {
  for (int s = 0; s < group().order(); ++s)
    if (apply(s, rep) == t) return s;
  return -1;
}

// ---------------------------------------------------------------------------
// GModule
// ---------------------------------------------------------------------------

namespace {
bool same_map_mod(const FgAbGroup& base, const IntMatrix& a, const IntMatrix& b) {
  for (Index i = 0; i < base.ambient_rank(); ++i)
    if (base.element(a.col(i)) != base.element(b.col(i))) return false;
  return true;
}
}  // namespace

GModule::GModule(FiniteGroup g, FgAbGroup base, std::vector<IntMatrix> action_matrices) {
  if (static_cast<int>(action_matrices.size()) != g.order())
    throw std::invalid_argument("gmodule: one action matrix per group element required");
  const Index n = base.ambient_rank();
  for (const IntMatrix& a : action_matrices) {
    if (a.rows() != n || a.cols() != n) throw std::invalid_argument("gmodule: action matrix has wrong shape");
    AbHom check(base, base, a);  // throws if not well-defined mod relations
  }
  if (!same_map_mod(base, action_matrices[g.identity()], IntMatrix::Identity(n, n)))
    throw std::invalid_argument("gmodule: identity must act as the identity map");
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (!same_map_mod(base, action_matrices[g.mul(a, b)], action_matrices[b] * action_matrices[a]))
        throw std::invalid_argument("gmodule: action violates the composition law (not an automorphism action)");
  d_ = std::shared_ptr<Data>(new Data{std::move(g), std::move(base), std::move(action_matrices)});
}

GModule GModule::trivial(const FiniteGroup& g, const FgAbGroup& base) {
  const Index n = base.ambient_rank();
  return GModule(g, base, std::vector<IntMatrix>(g.order(), IntMatrix::Identity(n, n)));
}

GModule GModule::from_generator_actions(const FiniteGroup& g, const FgAbGroup& base,
                                        const std::vector<IntMatrix>& gen_actions) {
  if (gen_actions.size() != g.generators().size())
    throw std::invalid_argument("gmodule: one matrix per group generator required");
  const Index n = base.ambient_rank();
  std::vector<IntMatrix> act(g.order(), IntMatrix::Identity(n, n));
  std::vector<char> filled(g.order(), 0);
  filled[g.identity()] = 1;
  std::queue<int> q;
  q.push(g.identity());
  while (!q.empty()) {
    int cur = q.front();
    q.pop();
    for (size_t k = 0; k < g.generators().size(); ++k) {
      int nxt = g.mul(cur, g.generators()[k]);
      if (filled[nxt]) continue;
      filled[nxt] = 1;
      act[nxt] = gen_actions[k] * act[cur];  // b^(cur*gen) = (b^cur)^gen
      q.push(nxt);
    }
  }
  return GModule(g, base, std::move(act));
}

GroupElem GModule::act(int sigma, const GroupElem& m) const {
  return d_->base.element(d_->act[sigma] * m.coords());
}

bool GModule::same_module(const GModule& o) const {
  if (d_ == o.d_) return true;
  if (!d_->group.same_group(o.d_->group)) return false;
  if (!d_->base.same_presentation(o.d_->base)) return false;
  for (int s = 0; s < d_->group.order(); ++s)
    if (!mat_eq(d_->act[s], o.d_->act[s])) return false;
  return true;
}

GModule GModule::restrict_to(const Subgroup& h) const {
  if (!h.parent().same_group(d_->group)) throw std::invalid_argument("restrict_to: subgroup of a different group");
  {
    std::lock_guard<std::mutex> lock(d_->mutex);
    auto it = d_->restrictions.find(h.elements());
    if (it != d_->restrictions.end()) return it->second;
  }
  FiniteGroup hg = h.as_group();
  std::vector<IntMatrix> act;
  act.reserve(h.order());
  for (int e : h.elements()) act.push_back(d_->act[e]);
  GModule restricted(hg, d_->base, std::move(act));
  std::lock_guard<std::mutex> lock(d_->mutex);
  auto [it, inserted] = d_->restrictions.emplace(h.elements(), restricted);
  return it->second;
}

EquivariantHom::EquivariantHom(GModule source, GModule target, AbHom hom)
    : source_(std::move(source)), target_(std::move(target)), hom_(std::move(hom)) {
  if (!source_.group().same_group(target_.group()))
    throw std::invalid_argument("equivariant hom: modules over different groups");
  if (!hom_.source().same_presentation(source_.base()) || !hom_.target().same_presentation(target_.base()))
    throw std::invalid_argument("equivariant hom: underlying hom does not match the modules");
  for (int s = 0; s < source_.group().order(); ++s)
    for (Index i = 0; i < source_.base().ambient_rank(); ++i) {
      GroupElem m = source_.base().basis_element(i);
      if (hom_(source_.act(s, m)) != target_.act(s, hom_(m)))
        throw std::invalid_argument("equivariant hom: phi(m^sigma) != phi(m)^sigma");
    }
}

// ---------------------------------------------------------------------------
// TabModule
// ---------------------------------------------------------------------------

TabModule::TabModule(FiniteGroup g, long size, long zero, std::function<long(long, long)> add,
                     std::function<long(long)> neg, std::vector<std::vector<long>> action_perms,
                     std::vector<std::string> labels)
    : group_(std::move(g)),
      size_(size),
      zero_(zero),
      add_(std::move(add)),
      neg_(std::move(neg)),
      action_(std::move(action_perms)),
      labels_(std::move(labels)) {
  if (static_cast<int>(action_.size()) != group_.order())
    throw std::invalid_argument("tabmodule: one permutation per group element required");
  for (const auto& p : action_)
    if (static_cast<long>(p.size()) != size_) throw std::invalid_argument("tabmodule: wrong permutation length");
}

TabModule TabModule::from_table(const FiniteGroup& g, const std::vector<std::vector<long>>& add_table,
                                long zero, const std::vector<std::vector<long>>& action_perms) {
  const long n = static_cast<long>(add_table.size());
  auto table = std::make_shared<std::vector<std::vector<long>>>(add_table);
  auto add = [table](long a, long b) { return (*table)[a][b]; };
  std::vector<long> negs(n, -1);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      if (add_table[a][b] == zero) negs[a] = b;
  auto negv = std::make_shared<std::vector<long>>(std::move(negs));
  auto neg = [negv](long a) { return (*negv)[a]; };
  TabModule m(g, n, zero, add, neg, action_perms);
  m.validate_exhaustive();
  return m;
}

const std::string& TabModule::label(long m) const {
  static const std::string empty;
  if (m < 0 || m >= static_cast<long>(labels_.size())) return empty;
  return labels_[m];
}

void TabModule::validate_exhaustive() const {
  for (long a = 0; a < size_; ++a) {
    if (add(a, zero_) != a || add(zero_, a) != a) throw std::invalid_argument("tabmodule: zero law fails");
    if (add(a, neg(a)) != zero_) throw std::invalid_argument("tabmodule: negation law fails");
    for (long b = 0; b < size_; ++b) {
      if (add(a, b) != add(b, a)) throw std::invalid_argument("tabmodule: not commutative");
      for (long c = 0; c < size_; ++c)
        if (add(add(a, b), c) != add(a, add(b, c))) throw std::invalid_argument("tabmodule: not associative");
    }
  }
  for (int s = 0; s < group_.order(); ++s) {
    std::vector<char> hit(size_, 0);
    for (long m = 0; m < size_; ++m) {
      long im = act(s, m);
      if (hit[im]) throw std::invalid_argument("tabmodule: action not bijective");
      hit[im] = 1;
    }
    if (act(s, zero_) != zero_) throw std::invalid_argument("tabmodule: action does not fix zero");
    for (long a = 0; a < size_; ++a)
      for (long b = 0; b < size_; ++b)
        if (act(s, add(a, b)) != add(act(s, a), act(s, b)))
          throw std::invalid_argument("tabmodule: action not additive");
  }
  for (int a = 0; a < group_.order(); ++a)
    for (int b = 0; b < group_.order(); ++b)
      for (long m = 0; m < size_; ++m)
        if (act(group_.mul(a, b), m) != act(b, act(a, m)))
          throw std::invalid_argument("tabmodule: right-action composition law violated");
}

std::vector<Int> abelian_invariant_factors(long size, long zero,
                                           const std::function<long(long, long)>& add) {
  auto scalar_mul = [&](long k, long x) {
    long acc = zero, base = x;
    while (k > 0) {
      if (k & 1) acc = add(acc, base);
      base = add(base, base);
      k >>= 1;
    }
    return acc;
  };
  auto count_killed = [&](long m) {
    long c = 0;
    for (long x = 0; x < size; ++x)
      if (scalar_mul(m, x) == zero) ++c;
    return c;
  };
  return invariant_factors_from_counts(size, count_killed);
}

std::vector<Int> invariant_factors_from_counts(long order,
                                               const std::function<long(long)>& count_killed) {
  if (order <= 1) return {};
  // prime factorization of the order
  std::vector<std::pair<long, int>> primes;
  long n = order;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      primes.push_back({p, e});
    }
  if (n > 1) primes.push_back({n, 1});

  // For each prime: lambda[r] = number of cyclic factors with p-valuation > r,
  // read off from the counting function N(p^j).
  std::vector<std::vector<int>> valuations;  // per prime: descending valuation list
  size_t max_factors = 0;
  for (auto [p, e] : primes) {
    std::vector<int> counts;  // counts[j-1] = #factors with valuation >= j
    long prev = 1, pj = 1;
    for (int j = 1; j <= e; ++j) {
      pj *= p;
      long nj = count_killed(pj);
      long ratio = nj / prev;
      int c = 0;
      long acc = 1;
      while (acc < ratio) {
        acc *= p;
        ++c;
      }
      counts.push_back(c);
      prev = nj;
      if (c == 0) break;
    }
    std::vector<int> lam;
    if (!counts.empty()) {
      lam.assign(counts[0], 0);
      for (size_t j = 0; j < counts.size(); ++j)
        for (int i = 0; i < counts[j]; ++i) lam[i] += 1;
    }
    valuations.push_back(lam);
    max_factors = std::max(max_factors, lam.size());
  }
  std::vector<Int> factors;  // computed largest-first, then reversed
  for (size_t r = 0; r < max_factors; ++r) {
    Int d(1);
    for (size_t pi = 0; pi < primes.size(); ++pi) {
      const auto& lam = valuations[pi];
      int v = r < lam.size() ? lam[r] : 0;
      for (int i = 0; i < v; ++i) d *= Int(primes[pi].first);
    }
    factors.push_back(d);
  }
  std::reverse(factors.begin(), factors.end());
  while (!factors.empty() && factors.front() == 1) factors.erase(factors.begin());
  return factors;
}

// ---------------------------------------------------------------------------
// Equivariant point maps
// ---------------------------------------------------------------------------

IntMatrix fixed_sublattice(const GModule& m, const Subgroup& stab) {
  const Index n = m.base().ambient_rank();
  std::vector<int> nontrivial;
  for (int h : stab.elements())
    if (h != m.group().identity()) nontrivial.push_back(h);
  if (nontrivial.empty()) return IntMatrix::Identity(n, n);
  const Index k = static_cast<Index>(nontrivial.size());
  const IntMatrix& rels = m.base().relations();
  IntMatrix sys(n * k, n + rels.cols() * k);
  sys.setZero();
  for (Index i = 0; i < k; ++i) {
    sys.block(i * n, 0, n, n) = m.action_matrix(nontrivial[i]) - IntMatrix::Identity(n, n);
    sys.block(i * n, n + i * rels.cols(), n, rels.cols()) = rels;
  }
  IntMatrix ker = integer_kernel(sys);
  IntMatrix xpart = ker.topRows(n);
  return hermite_basis(hcat(xpart, rels));
}

std::vector<GroupElem> random_equivariant_pointmap(const GSet& s, const GModule& m, Rng& rng,
                                                   long coeff_bound) {
  if (!s.group().same_group(m.group()))
    throw std::invalid_argument("pointmap: gset and module over different groups");
  std::vector<GroupElem> g(s.size(), m.base().zero());
  for (const auto& orbit : s.orbits()) {
    int rep = orbit.front();
    IntMatrix basis = fixed_sublattice(m, s.stabilizer(rep));
    IntVector coeffs(basis.cols());
    for (Index i = 0; i < coeffs.size(); ++i) coeffs(i) = Int(rng.range(-coeff_bound, coeff_bound));
    GroupElem val = m.base().element(basis * coeffs);
    for (int t : orbit) g[t] = m.act(s.transporter(rep, t), val);
  }
  return g;
}

}  // namespace galtor
