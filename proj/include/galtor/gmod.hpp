#pragma once

#include "galtor/fgab.hpp"
#include "galtor/rng.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace galtor {

struct H1Data;     // defined in cohom.hpp
struct CobSolver;  // defined in cohom.cpp

// ---------------------------------------------------------------------------
// Finite groups given by their multiplication table.
// ---------------------------------------------------------------------------

class FiniteGroup {
 public:
  static FiniteGroup cyclic(int n);
  /// Full table: mul[a][b] = a*b.  The table is validated (associativity,
  /// identity, inverses).  generators may be empty, in which case a small
  /// generating set is chosen greedily.
  static FiniteGroup from_table(std::vector<std::vector<int>> mul, std::vector<int> generators = {});
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

  int order() const { return d_->n; }
  int mul(int a, int b) const { return d_->mul[a][b]; }
  int inverse(int a) const { return d_->inv[a]; }
  int identity() const { return d_->id; }
  const std::vector<int>& generators() const { return d_->gens; }

  /// BFS tree over the generators: for e != identity, e = parent(e) * gen(e).
  int bfs_parent(int e) const { return d_->bfs_parent[e]; }
  int bfs_gen(int e) const { return d_->bfs_gen[e]; }

  bool is_cyclic() const;
  /// An element of maximal order; generates the group iff cyclic.
  int cyclic_generator() const;
  int element_order(int a) const;

  bool same_group(const FiniteGroup& o) const;

 private:
  struct Data {
    int n;
    std::vector<std::vector<int>> mul;
    std::vector<int> inv;
    int id;
    std::vector<int> gens;
    std::vector<int> bfs_parent, bfs_gen;
  };
  std::shared_ptr<const Data> d_;
  explicit FiniteGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
};

/// A group generated by permutations, with its natural right action.
struct PermutationGroup {
  FiniteGroup group;
  std::vector<std::vector<int>> element_perms;  // one permutation per element
};
PermutationGroup group_from_permutations(int npoints, const std::vector<std::vector<int>>& gen_perms);

// ---------------------------------------------------------------------------
// Subgroups and right cosets.
// ---------------------------------------------------------------------------

class Subgroup {
 public:
  /// elems must be closed under multiplication and inverse and contain the
  /// identity; sorted internally.
  Subgroup(FiniteGroup parent, std::vector<int> elems);
  static Subgroup full(const FiniteGroup& g);
  static Subgroup trivial(const FiniteGroup& g);

  const FiniteGroup& parent() const { return parent_; }
  const std::vector<int>& elements() const { return elems_; }
  int order() const { return static_cast<int>(elems_.size()); }
  bool contains(int g) const;
  bool is_normal() const;
  bool is_full() const { return order() == parent_.order(); }

  /// tau^{-1} H tau
  Subgroup conjugate(int tau) const;

  /// The subgroup as a standalone group; element i corresponds to elements()[i].
  FiniteGroup as_group() const;
  int index_of(int parent_elem) const;  // position in elements(), -1 if absent

 private:
  FiniteGroup parent_;
  std::vector<int> elems_;
};

/// Representatives for H\G.  The identity coset comes first with the identity
/// as its representative; the other representatives are least-index.
struct CosetSystem {
  Subgroup subgroup;
  std::vector<int> reps;
  std::vector<int> rep_index_of;  // per group element, index into reps
};
CosetSystem right_cosets(const Subgroup& h);

// ---------------------------------------------------------------------------
// Finite right G-sets: act(sigma) is a permutation and t^{sigma tau} = (t^sigma)^tau.
// ---------------------------------------------------------------------------

class GSet {
 public:
  GSet(FiniteGroup g, std::vector<std::vector<int>> act);
  static GSet trivial(const FiniteGroup& g, int size);
  static GSet from_generator_images(const FiniteGroup& g, const std::vector<std::vector<int>>& gen_images);
  /// Right multiplication on the cosets H\G.
  static GSet coset_space(const Subgroup& h);
  static GSet product(const GSet& a, const GSet& b);  // indices t1 * |b| + t2
  static GSet power(const GSet& s, int d);            // lexicographic tuples

  const FiniteGroup& group() const { return d_->group; }
  int size() const { return d_->size; }
  int apply(int sigma, int t) const { return d_->act[sigma][t]; }

  std::vector<std::vector<int>> orbits() const;
  Subgroup stabilizer(int t) const;
  /// Some sigma with rep^sigma = t, for t in the orbit of rep.
  int transporter(int rep, int t) const;

 private:
  struct Data {
    FiniteGroup group;
    int size;
    std::vector<std::vector<int>> act;
  };
  std::shared_ptr<const Data> d_;
  GSet(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
};

/// Index helpers for GSet::power tuples.
std::vector<int> tuple_of_index(int index, int base, int d);
int index_of_tuple(const std::vector<int>& tuple, int base);

// ---------------------------------------------------------------------------
// G-modules: a presented abelian group with a right action by automorphisms.
// ---------------------------------------------------------------------------

class GModule {
 public:
  /// action_matrices: one per group element, acting on ambient coordinates.
  GModule(FiniteGroup g, FgAbGroup base, std::vector<IntMatrix> action_matrices);
  static GModule trivial(const FiniteGroup& g, const FgAbGroup& base);
  /// Extends matrices given on the group's generating set along the BFS tree,
  /// then validates the composition law (rejects inconsistent data).
  static GModule from_generator_actions(const FiniteGroup& g, const FgAbGroup& base,
                                        const std::vector<IntMatrix>& gen_actions);

  const FiniteGroup& group() const { return d_->group; }
  const FgAbGroup& base() const { return d_->base; }
  const IntMatrix& action_matrix(int sigma) const { return d_->act[sigma]; }
  GroupElem act(int sigma, const GroupElem& m) const;

  bool same_module(const GModule& o) const;

  /// View over a subgroup: a module over h.as_group() with the same base.
  /// Deterministic and cached, so repeated restrictions share H1 work.
  GModule restrict_to(const Subgroup& h) const;

  // Internal cache slots (managed by cohom).
  std::shared_ptr<const H1Data>& h1_slot() const { return d_->h1; }
  std::shared_ptr<const CobSolver>& cob_slot() const { return d_->cob; }
  std::mutex& cache_mutex() const { return d_->mutex; }

 private:
  struct Data {
    FiniteGroup group;
    FgAbGroup base;
    std::vector<IntMatrix> act;
    mutable std::shared_ptr<const H1Data> h1;
    mutable std::shared_ptr<const CobSolver> cob;
    mutable std::map<std::vector<int>, GModule> restrictions;
    mutable std::mutex mutex;
  };
  std::shared_ptr<Data> d_;
  GModule(std::shared_ptr<Data> d) : d_(std::move(d)) {}
};

/// phi(m^sigma) = phi(m)^sigma, checked on ambient generators at construction.
class EquivariantHom {
 public:
  EquivariantHom(GModule source, GModule target, AbHom hom);
  const GModule& source() const { return source_; }
  const GModule& target() const { return target_; }
  const AbHom& hom() const { return hom_; }
  GroupElem operator()(const GroupElem& x) const { return hom_(x); }

 private:
  GModule source_, target_;
  AbHom hom_;
};

// ---------------------------------------------------------------------------
// Tabulated finite abelian groups with G-action (for elliptic curve points).
// Addition is functional so large point groups need no |M|^2 table.
// ---------------------------------------------------------------------------

class TabModule {
 public:
  TabModule(FiniteGroup g, long size, long zero,
            std::function<long(long, long)> add, std::function<long(long)> neg,
            std::vector<std::vector<long>> action_perms,
            std::vector<std::string> labels = {});

  static TabModule from_table(const FiniteGroup& g, const std::vector<std::vector<long>>& add_table,
                              long zero, const std::vector<std::vector<long>>& action_perms);

  const FiniteGroup& group() const { return group_; }
  long size() const { return size_; }
  long zero() const { return zero_; }
  long add(long a, long b) const { return add_(a, b); }
  long neg(long a) const { return neg_(a); }
  long act(long sigma, long m) const { return action_[sigma][m]; }
  const std::string& label(long m) const;

  /// Exhaustive group-law and action checks; intended for small tables.
  void validate_exhaustive() const;

 private:
  FiniteGroup group_;
  long size_, zero_;
  std::function<long(long, long)> add_;
  std::function<long(long)> neg_;
  std::vector<std::vector<long>> action_;
  std::vector<std::string> labels_;
};

/// Invariant factors (units dropped) of a finite abelian group given by an
/// addition law on 0..size-1, recovered from element-order statistics.
std::vector<Int> abelian_invariant_factors(long size, long zero,
                                           const std::function<long(long, long)>& add);

/// Same recovery from the counting function alone: count_killed(m) must
/// return the number of elements x with m*x = 0.
std::vector<Int> invariant_factors_from_counts(long order,
                                               const std::function<long(long)>& count_killed);

// ---------------------------------------------------------------------------
// Equivariant point maps for scenario generation.
// ---------------------------------------------------------------------------

/// Picks free values on orbit representatives inside the stabilizer-fixed
/// sublattice and extends along orbits; g(t^sigma) = g(t)^sigma by construction.
std::vector<GroupElem> random_equivariant_pointmap(const GSet& s, const GModule& m, Rng& rng,
                                                   long coeff_bound = 3);

/// The sublattice {x : x^h = x for all h in stab}, as ambient columns.
IntMatrix fixed_sublattice(const GModule& m, const Subgroup& stab);

}  // namespace galtor
