#include "galtor/fgab.hpp"

#include <algorithm>

namespace galtor {

namespace {

// Shared row/column operation helpers for the normal form routines.  Each
// operation on the working matrix is mirrored on the transformation matrices
// so that the decomposition identity is maintained exactly.

struct RowOps {
  IntMatrix* s;
  IntMatrix* u;      // accumulates row ops: u * m_original
  IntMatrix* u_inv;  // kept in sync so that u * u_inv = I

  void swap(Index i, Index j) {
    if (i == j) return;
    s->row(i).swap(s->row(j));
    u->row(i).swap(u->row(j));
    u_inv->col(i).swap(u_inv->col(j));
  }
  // row_i += q * row_j
  void add(Index i, Index j, const Int& q) {
    s->row(i) += s->row(j) * q;
    u->row(i) += u->row(j) * q;
    u_inv->col(j) -= u_inv->col(i) * q;
  }
  void negate(Index i) {
    s->row(i) = -s->row(i);
    u->row(i) = -u->row(i);
    u_inv->col(i) = -u_inv->col(i);
  }
};

struct ColOps {
  IntMatrix* s;
  IntMatrix* v;  // accumulates column ops: m_original * v

  void swap(Index i, Index j) {
    if (i == j) return;
    s->col(i).swap(s->col(j));
    v->col(i).swap(v->col(j));
  }
  // col_i += q * col_j
  void add(Index i, Index j, const Int& q) {
    s->col(i) += s->col(j) * q;
    v->col(i) += v->col(j) * q;
  }
  void negate(Index i) {
    s->col(i) = -s->col(i);
    v->col(i) = -v->col(i);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const Index rows = m.rows(), cols = m.cols();
  SmithForm f;
  f.diag = m;
  f.left = IntMatrix::Identity(rows, rows);
  f.left_inv = IntMatrix::Identity(rows, rows);
  f.right = IntMatrix::Identity(cols, cols);

  IntMatrix& s = f.diag;
  RowOps rop{&s, &f.left, &f.left_inv};
  ColOps cop{&s, &f.right};

  const Index dim = std::min(rows, cols);
  Index t = 0;
  while (t < dim) {
    // Pivot: minimal nonzero entry of the trailing submatrix.
    Index pi = -1, pj = -1;
    for (Index j = t; j < cols; ++j)
      for (Index i = t; i < rows; ++i)
        if (s(i, j) != 0 && (pi < 0 || abs_less(s(i, j), s(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    rop.swap(t, pi);
    cop.swap(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (Index i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        Int q = s(i, t) / s(t, t);  // truncated: remainder strictly smaller
        if (q != 0) rop.add(i, t, -q);
        if (s(i, t) != 0) {
          rop.swap(t, i);
          clean = false;
        }
      }
      if (!clean) continue;
      for (Index j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        Int q = s(t, j) / s(t, t);
        if (q != 0) cop.add(j, t, -q);
        if (s(t, j) != 0) {
          cop.swap(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // The pivot must divide every remaining entry, or the divisibility
      // chain fails later; fold an offending row in and redo.
      for (Index i = t + 1; i < rows && clean; ++i)
        for (Index j = t + 1; j < cols && clean; ++j)
          if (!divides(s(t, t), s(i, j))) {
            rop.add(t, i, Int(1));
            clean = false;
          }
    }
    if (s(t, t) < 0) rop.negate(t);
    ++t;
  }
  f.rank = t;
  return f;
}

IntMatrix hermite_basis(const IntMatrix& m) {
  IntMatrix h = m;
  const Index rows = h.rows(), cols = h.cols();
  Index c = 0;
  for (Index r = 0; r < rows && c < cols; ++r) {
    while (true) {
      Index pj = -1;
      for (Index j = c; j < cols; ++j)
        if (h(r, j) != 0 && (pj < 0 || abs_less(h(r, j), h(r, pj)))) pj = j;
      if (pj < 0) break;
      h.col(c).swap(h.col(pj));
      bool done = true;
      for (Index j = c + 1; j < cols; ++j) {
        if (h(r, j) == 0) continue;
        Int q = h(r, j) / h(r, c);
        if (q != 0) h.col(j) -= h.col(c) * q;
        if (h(r, j) != 0) done = false;
      }
      if (done) break;
    }
    if (c < cols && h(r, c) != 0) {
      if (h(r, c) < 0) h.col(c) = -h.col(c);
      for (Index j = 0; j < c; ++j) {
        Int q = floor_div(h(r, j), h(r, c));
        if (q != 0) h.col(j) -= h.col(c) * q;
      }
      ++c;
    }
  }
  IntMatrix basis = h.leftCols(c);
  return basis;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const Index n = m.rows();
  if (n == 0) return Int(1);
  IntMatrix a = m;
  Int prev(1);
  int sign = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Index piv = -1;
      for (Index i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return Int(0);
      a.row(k).swap(a.row(piv));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j)
        a(i, j) = exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  Int d = determinant(m);
  return d == 1 || d == -1;
}

std::optional<IntVector> solve_with(const SmithForm& f, const IntVector& b) {
  const Index rows = f.diag.rows(), cols = f.diag.cols();
  if (b.size() != rows) throw std::invalid_argument("solve_with: size mismatch");
  IntVector c = f.left * b;
  IntVector y = IntVector::Zero(cols);
  for (Index i = 0; i < rows; ++i) {
    if (i < f.rank) {
      if (!divides(f.diag(i, i), c(i))) return std::nullopt;
      y(i) = exact_div(c(i), f.diag(i, i));
    } else if (c(i) != 0) {
      return std::nullopt;
    }
  }
  return IntVector(f.right * y);
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: size mismatch");
  return solve_with(smith_normal_form(a), b);
}

IntMatrix integer_kernel(const IntMatrix& a) {
  SmithForm f = smith_normal_form(a);
  const Index k = a.cols() - f.rank;
  IntMatrix basis(a.cols(), k);
  for (Index j = 0; j < k; ++j) basis.col(j) = f.right.col(f.rank + j);
  return basis;
}

bool in_column_lattice(const IntMatrix& gens, const IntVector& x) {
  return solve_integer(gens, x).has_value();
}

// ---------------------------------------------------------------------------
// FgAbGroup
// ---------------------------------------------------------------------------

FgAbGroup::FgAbGroup(Index ambient_rank, IntMatrix relations) {
  if (relations.rows() != ambient_rank)
    throw std::invalid_argument("FgAbGroup: relations must have ambient_rank rows");
  auto data = std::make_shared<Data>();
  data->rank = ambient_rank;
  data->rels = std::move(relations);
  data->snf = smith_normal_form(data->rels);
  data->dvec.resize(ambient_rank);
  for (Index i = 0; i < ambient_rank; ++i) data->dvec[i] = data->snf.d(i);
  for (Index i = 0; i < ambient_rank; ++i)
    if (data->dvec[i] > 1) data->factors.push_back(data->dvec[i]);
  const Index free_rank = ambient_rank - data->snf.rank;
  for (Index i = 0; i < free_rank; ++i) data->factors.push_back(Int(0));
  data->finite = free_rank == 0;
  data->order = 1;
  if (data->finite)
    for (const Int& d : data->factors) data->order *= d;
  d_ = std::move(data);
}

FgAbGroup FgAbGroup::free_group(Index rank) { return FgAbGroup(rank, IntMatrix(rank, 0)); }

FgAbGroup FgAbGroup::trivial() { return free_group(0); }

FgAbGroup FgAbGroup::from_factors(const std::vector<Int>& factors) {
  const Index n = static_cast<Index>(factors.size());
  Index k = 0;
  for (const Int& f : factors)
    if (f != 0) ++k;
  IntMatrix rels = IntMatrix::Zero(n, k);
  Index j = 0;
  for (Index i = 0; i < n; ++i)
    if (factors[i] != 0) rels(i, j++) = factors[i];
  return FgAbGroup(n, rels);
}

bool FgAbGroup::is_trivial_group() const { return d_->factors.empty(); }

const Int& FgAbGroup::order() const {
  if (!d_->finite) throw std::domain_error("order: group is infinite");
  return d_->order;
}

IntVector FgAbGroup::reduce_transformed(const IntVector& y) const {
  IntVector r = y;
  for (Index i = 0; i < d_->rank; ++i)
    if (d_->dvec[i] != 0) r(i) = mod_euclid(r(i), d_->dvec[i]);
  return r;
}

IntVector FgAbGroup::ambient_rep(const IntVector& y_reduced) const {
  return d_->snf.left_inv * y_reduced;
}

GroupElem FgAbGroup::element(const IntVector& ambient_coords) const {
  if (ambient_coords.size() != d_->rank)
    throw std::invalid_argument("element: coordinate vector has wrong length");
  return GroupElem(*this, reduce_transformed(d_->snf.left * ambient_coords));
}

GroupElem FgAbGroup::zero() const { return GroupElem(*this, IntVector::Zero(d_->rank)); }

GroupElem FgAbGroup::basis_element(Index i) const {
  IntVector e = IntVector::Zero(d_->rank);
  e(i) = 1;
  return element(e);
}

std::vector<GroupElem> FgAbGroup::elements(const Int& cap) const {
  if (!is_finite()) throw std::domain_error("elements: group is infinite");
  if (order() > cap) throw std::domain_error("elements: group too large to enumerate");
  std::vector<GroupElem> out;
  IntVector y = IntVector::Zero(d_->rank);
  while (true) {
    out.push_back(GroupElem(*this, y));
    Index i = 0;
    for (; i < d_->rank; ++i) {
      if (d_->dvec[i] <= 1) continue;
      y(i) += 1;
      if (y(i) < d_->dvec[i]) break;
      y(i) = 0;
    }
    if (i == d_->rank) break;
  }
  return out;
}

bool FgAbGroup::same_presentation(const FgAbGroup& o) const {
  if (d_ == o.d_) return true;
  return d_->rank == o.d_->rank && mat_eq(d_->rels, o.d_->rels);
}

bool FgAbGroup::isomorphic(const FgAbGroup& o) const { return d_->factors == o.d_->factors; }

// ---------------------------------------------------------------------------
// GroupElem
// ---------------------------------------------------------------------------

namespace {
void require_same_owner(const GroupElem& a, const GroupElem& b) {
  if (!a.owner().same_presentation(b.owner()))
    throw std::invalid_argument("group elements have different owners");
}
}  // namespace

GroupElem GroupElem::operator+(const GroupElem& o) const {
  require_same_owner(*this, o);
  return GroupElem(owner_, owner_.reduce_transformed(y_ + o.y_));
}

GroupElem GroupElem::operator-(const GroupElem& o) const {
  require_same_owner(*this, o);
  return GroupElem(owner_, owner_.reduce_transformed(y_ - o.y_));
}

GroupElem GroupElem::operator-() const { return GroupElem(owner_, owner_.reduce_transformed(-y_)); }

GroupElem GroupElem::times(const Int& k) const {
  return GroupElem(owner_, owner_.reduce_transformed(y_ * k));
}

bool GroupElem::operator==(const GroupElem& o) const {
  require_same_owner(*this, o);
  return vec_eq(y_, o.y_);
}

std::optional<Int> GroupElem::order() const {
  const auto& snf = owner_.relation_snf();
  Int ord(1);
  for (Index i = 0; i < y_.size(); ++i) {
    Int d = snf.d(i);
    if (d == 0) {
      if (y_(i) != 0) return std::nullopt;
    } else if (y_(i) != 0) {
      ord = int_lcm(ord, exact_div(d, int_gcd(d, y_(i))));
    }
  }
  return ord;
}

// ---------------------------------------------------------------------------
// AbHom
// ---------------------------------------------------------------------------

AbHom::AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix) {
  if (matrix.rows() != target.ambient_rank() || matrix.cols() != source.ambient_rank())
    throw std::invalid_argument("AbHom: matrix has wrong shape");
  const IntMatrix& rels = source.relations();
  for (Index j = 0; j < rels.cols(); ++j) {
    IntVector img = matrix * rels.col(j);
    if (!target.element(img).is_zero())
      throw std::invalid_argument("AbHom: matrix does not map relations into relations");
  }
  d_ = std::make_shared<Data>(Data{std::move(source), std::move(target), std::move(matrix)});
}

AbHom AbHom::identity(const FgAbGroup& g) {
  return AbHom(g, g, IntMatrix::Identity(g.ambient_rank(), g.ambient_rank()));
}

AbHom AbHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
  return AbHom(source, target, IntMatrix::Zero(target.ambient_rank(), source.ambient_rank()));
}

GroupElem AbHom::operator()(const GroupElem& x) const {
  if (!x.owner().same_presentation(d_->source))
    throw std::invalid_argument("AbHom: element not in source group");
  return d_->target.element(d_->matrix * x.coords());
}

GroupElem AbHom::apply_coords(const IntVector& ambient_coords) const {
  return d_->target.element(d_->matrix * ambient_coords);
}

AbHom AbHom::after(const AbHom& inner) const {
  if (!inner.target().same_presentation(source()))
    throw std::invalid_argument("AbHom::after: domains do not match");
  return AbHom(inner.source(), target(), matrix() * inner.matrix());
}

bool AbHom::is_injective() const { return hom_kernel(*this).group.is_trivial_group(); }

std::optional<GroupElem> AbHom::preimage(const GroupElem& val) const {
  if (!val.owner().same_presentation(d_->target))
    throw std::invalid_argument("AbHom: value not in target group");
  IntMatrix sys = hcat(d_->matrix, d_->target.relations());
  auto sol = solve_integer(sys, val.coords());
  if (!sol) return std::nullopt;
  return d_->source.element(sol->head(d_->source.ambient_rank()));
}

// ---------------------------------------------------------------------------
// Kernel / image / cokernel
// ---------------------------------------------------------------------------

namespace {

// Present the subgroup (span(columns of span_gens) + L) / L of the ambient
// group: pick a lattice basis, then express the ambient relations over it.
SubgroupPart present_sublattice(const FgAbGroup& ambient, const IntMatrix& span_gens) {
  IntMatrix basis = hermite_basis(hcat(span_gens, ambient.relations()));
  const Index k = basis.cols();
  const IntMatrix& rels = ambient.relations();
  IntMatrix w(k, rels.cols());
  for (Index j = 0; j < rels.cols(); ++j) {
    auto sol = solve_integer(basis, rels.col(j));
    if (!sol) throw std::logic_error("present_sublattice: relations not in spanned lattice");
    w.col(j) = *sol;
  }
  FgAbGroup sub(k, w);
  return SubgroupPart{sub, AbHom(sub, ambient, basis)};
}

}  // namespace

SubgroupPart hom_kernel(const AbHom& h) {
  // x is in the kernel iff h(x) lies in the target relation lattice.
  IntMatrix sys = hcat(h.matrix(), h.target().relations());
  IntMatrix ker = integer_kernel(sys);
  IntMatrix xpart = ker.topRows(h.source().ambient_rank());
  return present_sublattice(h.source(), xpart);
}

SubgroupPart hom_image(const AbHom& h) { return present_sublattice(h.target(), h.matrix()); }

QuotientPart hom_cokernel(const AbHom& h) {
  IntMatrix rels = hcat(h.matrix(), h.target().relations());
  FgAbGroup coker(h.target().ambient_rank(), rels);
  AbHom proj(h.target(), coker,
             IntMatrix::Identity(h.target().ambient_rank(), h.target().ambient_rank()));
  return QuotientPart{coker, proj};
}

SubgroupPart subgroup_from_generators(const FgAbGroup& g, const IntMatrix& gens) {
  if (gens.rows() != g.ambient_rank())
    throw std::invalid_argument("subgroup_from_generators: generator rows != ambient rank");
  return present_sublattice(g, gens);
}

}  // namespace galtor
