#pragma once

#include "galtor/int_types.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace galtor {

// ---------------------------------------------------------------------------
// Exact integer linear algebra.
// ---------------------------------------------------------------------------

/// Result of a Smith decomposition: left * m * right = diag, with left and
/// right unimodular, diag diagonal and diag(i,i) | diag(i+1,i+1).
struct SmithForm {
  IntMatrix left;      // rows x rows
  IntMatrix left_inv;  // exact inverse of left
  IntMatrix diag;      // rows x cols
  IntMatrix right;     // cols x cols
  Index rank = 0;      // number of nonzero diagonal entries

  Int d(Index i) const {
    return (i < std::min(diag.rows(), diag.cols())) ? diag(i, i) : Int(0);
  }
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Basis of the lattice spanned by the columns of m (column-style Hermite
/// reduction; the result has full column rank and is deterministic).
IntMatrix hermite_basis(const IntMatrix& m);

/// Exact determinant of a square matrix (fraction-free Bareiss elimination).
Int determinant(const IntMatrix& m);

bool is_unimodular(const IntMatrix& m);

/// One solution x of a*x = b over the integers, if any.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

/// Same, reusing a precomputed decomposition of a.
std::optional<IntVector> solve_with(const SmithForm& f, const IntVector& b);

/// Basis of {x : a*x = 0}; the columns are primitive (a direct summand).
IntMatrix integer_kernel(const IntMatrix& a);

/// Whether x lies in the lattice spanned by the columns of gens.
bool in_column_lattice(const IntMatrix& gens, const IntVector& x);

// ---------------------------------------------------------------------------
// Finitely generated abelian groups, presented as Z^n / L with L the lattice
// spanned by the columns of a relation matrix.
// ---------------------------------------------------------------------------

class GroupElem;
class AbHom;

class FgAbGroup {
 public:
  /// relations must have exactly ambient_rank rows; its columns span L.
  FgAbGroup(Index ambient_rank, IntMatrix relations);

  static FgAbGroup free_group(Index rank);
  static FgAbGroup trivial();
  /// Z/d1 x Z/d2 x ... (0 entries give free factors).
  static FgAbGroup from_factors(const std::vector<Int>& factors);

  Index ambient_rank() const { return d_->rank; }
  const IntMatrix& relations() const { return d_->rels; }
  const SmithForm& relation_snf() const { return d_->snf; }

  /// Invariant factors in divisibility order, unit factors dropped, one 0 per
  /// free rank.  A trivial group reports an empty list.
  const std::vector<Int>& invariant_factors() const { return d_->factors; }
  bool is_finite() const { return d_->finite; }
  bool is_trivial_group() const;
  const Int& order() const;  // throws for infinite groups

  GroupElem element(const IntVector& ambient_coords) const;
  GroupElem zero() const;
  GroupElem basis_element(Index i) const;

  /// All elements of a finite group; throws if infinite or order exceeds cap.
  std::vector<GroupElem> elements(const Int& cap = Int(100000)) const;

  bool same_presentation(const FgAbGroup& o) const;
  bool isomorphic(const FgAbGroup& o) const;

  // Internal coordinates: y = left * x reduced mod the diagonal entries.
  IntVector reduce_transformed(const IntVector& y) const;
  IntVector ambient_rep(const IntVector& y_reduced) const;

 private:
  struct Data {
    Index rank;
    IntMatrix rels;
    SmithForm snf;
    std::vector<Int> dvec;     // length rank; 0 where no relation constrains
    std::vector<Int> factors;  // canonical report
    bool finite;
    Int order;
  };
  std::shared_ptr<const Data> d_;
};

/// An element of an FgAbGroup.  Stored in canonical form: the reduced
/// coordinate vector is unique per coset of the relation lattice.
class GroupElem {
 public:
  GroupElem() = default;

  const FgAbGroup& owner() const { return owner_; }
  /// Canonical ambient coordinates (a distinguished coset representative).
  IntVector coords() const { return owner_.ambient_rep(y_); }
  const IntVector& canonical() const { return y_; }

  bool is_zero() const { return is_zero_vec(y_); }

  GroupElem operator+(const GroupElem& o) const;
  GroupElem operator-(const GroupElem& o) const;
  GroupElem operator-() const;
  GroupElem times(const Int& k) const;
  bool operator==(const GroupElem& o) const;
  bool operator!=(const GroupElem& o) const { return !(*this == o); }

  /// Least k > 0 with k*x = 0, or nullopt for infinite order.
  std::optional<Int> order() const;

 private:
  friend class FgAbGroup;
  GroupElem(FgAbGroup owner, IntVector y) : owner_(std::move(owner)), y_(std::move(y)) {}
  FgAbGroup owner_;
  IntVector y_;
};

struct GroupElemLess {
  bool operator()(const GroupElem& a, const GroupElem& b) const {
    return vec_less(a.canonical(), b.canonical());
  }
};

/// Homomorphism between presented groups, given by an integer matrix acting
/// on ambient coordinates.  Construction checks well-definedness (the matrix
/// must map the source relation lattice into the target one).
class AbHom {
 public:
  AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

  static AbHom identity(const FgAbGroup& g);
  static AbHom zero(const FgAbGroup& source, const FgAbGroup& target);

  const FgAbGroup& source() const { return d_->source; }
  const FgAbGroup& target() const { return d_->target; }
  const IntMatrix& matrix() const { return d_->matrix; }

  GroupElem operator()(const GroupElem& x) const;
  GroupElem apply_coords(const IntVector& ambient_coords) const;

  /// this after inner (i.e. x -> this(inner(x))).
  AbHom after(const AbHom& inner) const;

  bool is_injective() const;

  /// One preimage of val, if any (unique exactly when injective).
  std::optional<GroupElem> preimage(const GroupElem& val) const;

 private:
  struct Data {
    FgAbGroup source, target;
    IntMatrix matrix;
  };
  std::shared_ptr<const Data> d_;
};

struct SubgroupPart {
  FgAbGroup group;
  AbHom embedding;  // group -> ambient group
};

struct QuotientPart {
  FgAbGroup group;
  AbHom projection;  // ambient group -> group (surjective)
};

SubgroupPart hom_kernel(const AbHom& h);
SubgroupPart hom_image(const AbHom& h);
QuotientPart hom_cokernel(const AbHom& h);

/// Subgroup of g generated by the classes of the given ambient columns.
SubgroupPart subgroup_from_generators(const FgAbGroup& g, const IntMatrix& gens);

}  // namespace galtor
