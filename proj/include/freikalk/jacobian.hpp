#pragma once

// Matrices over group rings, elementary row/column transformations with a
// replayable log, valuation-guided triangularization with machine-checkable
// certificates, and the staged generator-selection pipeline built on them.
//
// Everything is templated over an Ops policy supplying the ring:
//
//   struct Ops {
//     using Elem = ...;
//     Elem zero() const;  Elem one() const;
//     Elem add(a, b);  Elem neg(a);  Elem mul(a, b);
//     bool is_zero(a);  bool equal(a, b);
//     std::optional<long long> psi(a);   // valuation, nullopt = infinity
//     bool shadow_zero(a);               // kills the deeper-level part
//     bool commutative() const;
//   };
//
// Elimination is fraction-free: to clear e below a pivot p the row is scaled
// by p and then p's row times e is subtracted, which zeroes the entry exactly
// when p and e commute. Noncommutative pairs are detected and rejected rather
// than silently mishandled.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "freikalk/errors.hpp"
#include "freikalk/group_ring.hpp"
#include "freikalk/metab_ring.hpp"
#include "freikalk/quotient.hpp"
#include "freikalk/word.hpp"

namespace freikalk {

enum class TransformKind { swap_rows, swap_cols, scale_row, add_scaled_row };

// swap_rows/swap_cols exchange i and j. scale_row multiplies row i on the
// left by factor. add_scaled_row adds factor times row i to row j, with
// i < j (rows only ever absorb earlier rows).
template <typename Elem>
struct Transform {
  TransformKind kind{};
  int i = 0;
  int j = 0;
  std::optional<Elem> factor;
};

template <typename Elem>
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<Elem>> a;

  const Elem& at(int r, int c) const {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw IndexOutOfRange("matrix index out of range");
    return a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  Elem& at(int r, int c) {
    return const_cast<Elem&>(static_cast<const DenseMatrix&>(*this).at(r, c));
  }
};

template <typename Ops>
DenseMatrix<typename Ops::Elem> make_matrix(const Ops& ops, int rows, int cols) {
  if (rows < 0 || cols < 0) throw IndexOutOfRange("matrix shape must be nonnegative");
  DenseMatrix<typename Ops::Elem> m;
  m.rows = rows;
  m.cols = cols;
  m.a.assign(static_cast<std::size_t>(rows),
             std::vector<typename Ops::Elem>(static_cast<std::size_t>(cols), ops.zero()));
  return m;
}

template <typename Ops>
bool matrices_equal(Ops& ops, const DenseMatrix<typename Ops::Elem>& x,
                    const DenseMatrix<typename Ops::Elem>& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (int r = 0; r < x.rows; ++r)
    for (int c = 0; c < x.cols; ++c)
      if (!ops.equal(x.at(r, c), y.at(r, c))) return false;
  return true;
}

template <typename Ops>
DenseMatrix<typename Ops::Elem> apply_transform(Ops& ops,
                                                DenseMatrix<typename Ops::Elem> m,
                                                const Transform<typename Ops::Elem>& t) {
  auto check_row = [&](int r) {
    if (r < 0 || r >= m.rows) throw IndexOutOfRange("row index out of range");
  };
  auto check_col = [&](int c) {
    if (c < 0 || c >= m.cols) throw IndexOutOfRange("column index out of range");
  };
  switch (t.kind) {
    case TransformKind::swap_rows:
      check_row(t.i);
      check_row(t.j);
      if (t.i == t.j) throw PreconditionFailed("swap needs distinct indices");
      std::swap(m.a[static_cast<std::size_t>(t.i)], m.a[static_cast<std::size_t>(t.j)]);
      return m;
    case TransformKind::swap_cols:
      check_col(t.i);
      check_col(t.j);
      if (t.i == t.j) throw PreconditionFailed("swap needs distinct indices");
      for (int r = 0; r < m.rows; ++r)
        std::swap(m.at(r, t.i), m.at(r, t.j));
      return m;
    case TransformKind::scale_row: {
      check_row(t.i);
      if (!t.factor || ops.is_zero(*t.factor)) throw ZeroFactor("scale factor must be nonzero");
      for (int c = 0; c < m.cols; ++c) m.at(t.i, c) = ops.mul(*t.factor, m.at(t.i, c));
      return m;
    }
    case TransformKind::add_scaled_row: {
      check_row(t.i);
      check_row(t.j);
      if (t.i >= t.j) throw PreconditionFailed("add_scaled_row requires source before target");
      if (!t.factor || ops.is_zero(*t.factor)) throw ZeroFactor("add factor must be nonzero");
      for (int c = 0; c < m.cols; ++c)
        m.at(t.j, c) = ops.add(m.at(t.j, c), ops.mul(*t.factor, m.at(t.i, c)));
      return m;
    }
  }
  throw InternalInconsistency("unknown transform kind");
}

// Triangular-shape certificate: result = log replayed over original, the
// first t diagonal entries are nonzero pivots with zeros below them, rows
// beyond t vanish, and each pivot has minimal valuation in its row.
// col_origin[c] is the original position of the column now at c.
template <typename Elem>
struct TriangularCertificate {
  int t = 0;
  DenseMatrix<Elem> original;
  DenseMatrix<Elem> result;
  std::vector<Transform<Elem>> log;
  std::vector<int> col_origin;
};

enum class PivotMode { rows_only, full_pivot };

namespace detail {

// Clear entry (k, pc) using the pivot at (pr, pc): scale row k by the pivot,
// then subtract the entry times the pivot row. Exact when the two commute.
template <typename Ops>
void eliminate_entry(Ops& ops, DenseMatrix<typename Ops::Elem>& m, int pr, int pc, int k,
                     std::vector<Transform<typename Ops::Elem>>& log) {
  using Elem = typename Ops::Elem;
  Elem p = m.at(pr, pc);
  Elem e = m.at(k, pc);
  if (ops.is_zero(e)) return;
  if (!ops.commutative() && !ops.equal(ops.mul(p, e), ops.mul(e, p)))
    throw UnsupportedRing("pivot and entry do not commute; cross-multiplication unavailable");
  Transform<Elem> scale{TransformKind::scale_row, k, 0, p};
  m = apply_transform(ops, std::move(m), scale);
  log.push_back(scale);
  Transform<Elem> add{TransformKind::add_scaled_row, pr, k, ops.neg(e)};
  m = apply_transform(ops, std::move(m), add);
  log.push_back(add);
  if (!ops.is_zero(m.at(k, pc)))
    throw InternalInconsistency("cross-multiplication failed to clear the entry");
}

// Pivot with minimal valuation in the block starting at (r0, c0); ties go to
// the leftmost column, then the topmost row. nullopt when the block is zero.
template <typename Ops>
std::optional<std::pair<int, int>> find_pivot(Ops& ops,
                                              const DenseMatrix<typename Ops::Elem>& m,
                                              int r0, int c0) {
  std::optional<long long> best;
  std::optional<std::pair<int, int>> where;
  for (int c = c0; c < m.cols; ++c) {
    for (int r = r0; r < m.rows; ++r) {
      if (ops.is_zero(m.at(r, c))) continue;
      std::optional<long long> v = ops.psi(m.at(r, c));
      if (!v) throw InternalInconsistency("nonzero entry with infinite valuation");
      if (!best || *v < *best) {
        best = v;
        where = {r, c};
      }
    }
  }
  return where;
}

// Full-pivot triangularization of the block at (t0, t0) and below/right,
// recording transforms in whole-matrix indices. Returns the pivot count.
template <typename Ops>
int triangularize_block(Ops& ops, DenseMatrix<typename Ops::Elem>& m, int t0,
                        std::vector<Transform<typename Ops::Elem>>& log,
                        std::vector<int>& col_origin) {
  using Elem = typename Ops::Elem;
  int t = t0;
  while (t < m.rows && t < m.cols) {
    std::optional<std::pair<int, int>> pivot = find_pivot(ops, m, t, t);
    if (!pivot) break;
    auto [pr, pc] = *pivot;
    if (pc != t) {
      Transform<Elem> tc{TransformKind::swap_cols, t, pc, std::nullopt};
      m = apply_transform(ops, std::move(m), tc);
      log.push_back(tc);
      std::swap(col_origin[static_cast<std::size_t>(t)],
                col_origin[static_cast<std::size_t>(pc)]);
    }
    if (pr != t) {
      Transform<Elem> tr{TransformKind::swap_rows, t, pr, std::nullopt};
      m = apply_transform(ops, std::move(m), tr);
      log.push_back(tr);
    }
    for (int k = t + 1; k < m.rows; ++k) eliminate_entry(ops, m, t, t, k, log);
    ++t;
  }
  return t;
}

}  // namespace detail

// rows_only: Gaussian clearing below the diagonal using scale/add row
// transforms only; requires the shadow of the matrix to be triangular with
// nonzero shadow diagonal in every row (so every pivot has valuation zero).
// full_pivot: column and row swaps bring a minimal-valuation pivot to the
// diagonal before each clearing pass.
template <typename Ops>
TriangularCertificate<typename Ops::Elem> triangularize(Ops& ops,
                                                        DenseMatrix<typename Ops::Elem> m,
                                                        PivotMode mode) {
  TriangularCertificate<typename Ops::Elem> cert;
  cert.original = m;
  cert.col_origin.resize(static_cast<std::size_t>(m.cols));
  for (int c = 0; c < m.cols; ++c) cert.col_origin[static_cast<std::size_t>(c)] = c;

  if (mode == PivotMode::rows_only) {
    if (m.rows > m.cols)
      throw ShadowNotTriangular("more rows than columns; full row rank impossible");
    for (int r = 0; r < m.rows; ++r) {
      if (ops.shadow_zero(m.at(r, r)))
        throw ShadowNotTriangular("shadow diagonal vanishes at row " + std::to_string(r + 1));
      for (int c = 0; c < r; ++c)
        if (!ops.shadow_zero(m.at(r, c)))
          throw ShadowNotTriangular("shadow has a nonzero entry below the diagonal");
    }
    for (int k = 1; k < m.rows; ++k)
      for (int c = 0; c < k; ++c) detail::eliminate_entry(ops, m, c, c, k, cert.log);
    cert.t = m.rows;
  } else {
    cert.t = detail::triangularize_block(ops, m, 0, cert.log, cert.col_origin);
  }
  cert.result = std::move(m);
  return cert;
}

// Replay the log over the original and check every certificate invariant.
template <typename Ops>
bool verify_certificate(Ops& ops, const TriangularCertificate<typename Ops::Elem>& cert) {
  DenseMatrix<typename Ops::Elem> m = cert.original;
  std::vector<int> origin(static_cast<std::size_t>(m.cols));
  for (int c = 0; c < m.cols; ++c) origin[static_cast<std::size_t>(c)] = c;
  for (const Transform<typename Ops::Elem>& tr : cert.log) {
    m = apply_transform(ops, std::move(m), tr);
    if (tr.kind == TransformKind::swap_cols)
      std::swap(origin[static_cast<std::size_t>(tr.i)], origin[static_cast<std::size_t>(tr.j)]);
  }
  if (!matrices_equal(ops, m, cert.result)) return false;
  if (origin != cert.col_origin) return false;
  if (cert.t > m.rows || cert.t > m.cols) return false;

  for (int k = 0; k < cert.t; ++k) {
    if (ops.is_zero(m.at(k, k))) return false;
    for (int c = 0; c < k; ++c)
      if (!ops.is_zero(m.at(k, c))) return false;
    std::optional<long long> pv = ops.psi(m.at(k, k));
    if (!pv) return false;
    for (int c = 0; c < m.cols; ++c) {
      std::optional<long long> v = ops.psi(m.at(k, c));
      if (v && *v < *pv) return false;
    }
  }
  for (int r = cert.t; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      if (!ops.is_zero(m.at(r, c))) return false;
  return true;
}

// Scaled-combination bookkeeping over a commutative ring: the external row
// alpha satisfies alpha * denom = sum coeff[i] * row_i of the tracked matrix,
// and the relation survives each transform at the cost of growing denom.
// Row transforms leave alpha alone; column swaps permute its coordinates.
template <typename Ops>
struct RowCombination {
  std::vector<typename Ops::Elem> alpha;
  typename Ops::Elem denom;
  std::vector<typename Ops::Elem> coeff;
};

template <typename Ops>
RowCombination<Ops> combination_after(Ops& ops, RowCombination<Ops> combo,
                                      const Transform<typename Ops::Elem>& t) {
  if (!ops.commutative())
    throw UnsupportedRing("combination certificates need a commutative ring");
  auto check_row = [&](int r) {
    if (r < 0 || r >= static_cast<int>(combo.coeff.size()))
      throw IndexOutOfRange("row index out of range");
  };
  switch (t.kind) {
    case TransformKind::swap_rows:
      check_row(t.i);
      check_row(t.j);
      std::swap(combo.coeff[static_cast<std::size_t>(t.i)],
                combo.coeff[static_cast<std::size_t>(t.j)]);
      return combo;
    case TransformKind::swap_cols: {
      if (t.i < 0 || t.j < 0 || t.i >= static_cast<int>(combo.alpha.size()) ||
          t.j >= static_cast<int>(combo.alpha.size()))
        throw IndexOutOfRange("column index out of range");
      std::swap(combo.alpha[static_cast<std::size_t>(t.i)],
                combo.alpha[static_cast<std::size_t>(t.j)]);
      return combo;
    }
    case TransformKind::scale_row: {
      check_row(t.i);
      if (!t.factor || ops.is_zero(*t.factor)) throw ZeroFactor("scale factor must be nonzero");
      if (ops.is_zero(combo.coeff[static_cast<std::size_t>(t.i)])) return combo;
      for (std::size_t k = 0; k < combo.coeff.size(); ++k)
        if (static_cast<int>(k) != t.i) combo.coeff[k] = ops.mul(combo.coeff[k], *t.factor);
      combo.denom = ops.mul(combo.denom, *t.factor);
      return combo;
    }
    case TransformKind::add_scaled_row: {
      check_row(t.i);
      check_row(t.j);
      if (!t.factor || ops.is_zero(*t.factor)) throw ZeroFactor("add factor must be nonzero");
      // row_j' = row_j + c row_i, so the row_i coefficient absorbs -c beta_j.
      combo.coeff[static_cast<std::size_t>(t.i)] =
          ops.add(combo.coeff[static_cast<std::size_t>(t.i)],
                  ops.neg(ops.mul(combo.coeff[static_cast<std::size_t>(t.j)], *t.factor)));
      return combo;
    }
  }
  throw InternalInconsistency("unknown transform kind");
}

template <typename Ops>
bool verify_combination(Ops& ops, const DenseMatrix<typename Ops::Elem>& m,
                        const RowCombination<Ops>& combo) {
  if (static_cast<int>(combo.coeff.size()) != m.rows) return false;
  if (static_cast<int>(combo.alpha.size()) != m.cols) return false;
  if (ops.is_zero(combo.denom)) return false;
  for (int c = 0; c < m.cols; ++c) {
    typename Ops::Elem lhs = ops.mul(combo.alpha[static_cast<std::size_t>(c)], combo.denom);
    typename Ops::Elem rhs = ops.zero();
    for (int r = 0; r < m.rows; ++r)
      rhs = ops.add(rhs, ops.mul(combo.coeff[static_cast<std::size_t>(r)], m.at(r, c)));
    if (!ops.equal(lhs, rhs)) return false;
  }
  return true;
}

// ---- ring policies ----

struct FreeOps {
  using Elem = RingElement;
  Elem zero() const { return RingElement::zero(); }
  Elem one() const { return RingElement::one(); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  std::optional<long long> psi(const Elem& a) const {
    if (a.is_zero()) return std::nullopt;
    return 0;
  }
  bool shadow_zero(const Elem& a) const { return a.is_zero(); }
  bool commutative() const { return false; }
};

// Z[Z^n] with the trivial valuation (0 on nonzero elements).
struct LaurentOps {
  using Elem = Laurent;
  int nvars = 0;
  Elem zero() const { return Laurent::zero(nvars); }
  Elem one() const { return Laurent::one(nvars); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  std::optional<long long> psi(const Elem& a) const {
    if (a.is_zero()) return std::nullopt;
    return 0;
  }
  bool shadow_zero(const Elem& a) const { return a.is_zero(); }
  bool commutative() const { return true; }
};

// Z[Z^n] with the augmentation-power valuation; the shadow evaluates every
// variable at 1, so shadow-nonzero entries are exactly the valuation-zero
// ones.
struct LaurentAugOps {
  using Elem = Laurent;
  int nvars = 0;
  Elem zero() const { return Laurent::zero(nvars); }
  Elem one() const { return Laurent::one(nvars); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  std::optional<long long> psi(const Elem& a) const {
    std::vector<int> axes;
    for (int v = 1; v <= nvars; ++v) axes.push_back(v);
    return shift_valuation(a, axes);
  }
  bool shadow_zero(const Elem& a) const { return a.augmentation() == 0; }
  bool commutative() const { return true; }
};

struct MetabOps {
  using Elem = MetabElement;
  MetabRing* ring = nullptr;
  Elem zero() const { return ring->zero(); }
  Elem one() const { return ring->one(); }
  Elem add(const Elem& a, const Elem& b) const { return ring->add(a, b); }
  Elem neg(const Elem& a) const { return ring->neg(a); }
  Elem mul(const Elem& a, const Elem& b) const { return ring->mul(a, b); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  std::optional<long long> psi(const Elem& a) const { return ring->psi(a); }
  bool shadow_zero(const Elem& a) const { return ring->shadow(a).is_zero(); }
  bool commutative() const { return false; }
};

// ---- the generator-selection pipeline ----

DenseMatrix<RingElement> fox_jacobian(const std::vector<Word>& relators, int rank);
DenseMatrix<Laurent> project_to_coset_ring(const DenseMatrix<RingElement>& m, int rank);
DenseMatrix<MetabElement> project_to_level_one(const DenseMatrix<RingElement>& m,
                                               MetabRing& ring);

struct SelectionReport {
  int rank = 0;
  int relator_count = 0;
  int t0 = 0;
  int ts = 0;
  std::vector<int> pivot_columns;  // 1-based original column ids, ascending
  std::vector<int> selected;       // complement: the free generator ids
  TriangularCertificate<Laurent> stage0;
  TriangularCertificate<MetabElement> stage1;
  // Original coset-ring rows as scaled combinations of the stage-0 pivot rows.
  std::vector<RowCombination<LaurentOps>> stage0_combos;
};

// Staged selection: triangularize the coset-ring projection with full
// pivoting, replay the same transforms (factors lifted) on the level-one
// projection, re-clear the pivot block there, clear the pivot columns of the
// deeper rows, then full-pivot the trailing block under the level-one
// valuation. Pivot-source columns are dropped; the rest generate the
// subgroup the report names.
SelectionReport select_generators(const std::vector<Word>& relators, int rank,
                                  MetabRing& ring);

}  // namespace freikalk
