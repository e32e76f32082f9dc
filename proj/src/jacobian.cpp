#include "freikalk/jacobian.hpp"

#include <algorithm>
#include <string>

#include "freikalk/fox.hpp"

namespace freikalk {

namespace {

// Lift a coset-ring transform to the level-one ring: swaps carry over as-is,
// factors go through the canonical monomial lift.
Transform<MetabElement> lift_transform(const MetabRing& ring, const Transform<Laurent>& t) {
  Transform<MetabElement> out;
  out.kind = t.kind;
  out.i = t.i;
  out.j = t.j;
  if (t.factor) out.factor = ring.lift(*t.factor);
  return out;
}

}  // namespace

DenseMatrix<RingElement> fox_jacobian(const std::vector<Word>& relators, int rank) {
  if (rank < 1) throw RankTooSmall("need at least one generator");
  FreeOps ops;
  DenseMatrix<RingElement> m =
      make_matrix(ops, static_cast<int>(relators.size()), rank);
  for (std::size_t i = 0; i < relators.size(); ++i) {
    std::vector<long long> vec = abelianization(relators[i], rank);
    if (std::any_of(vec.begin(), vec.end(), [](long long e) { return e != 0; }))
      throw NotInVerbal("relator lies outside the kernel");
    for (int j = 1; j <= rank; ++j)
      m.at(static_cast<int>(i), j - 1) = fox_derivative(relators[i], j);
  }
  return m;
}

DenseMatrix<Laurent> project_to_coset_ring(const DenseMatrix<RingElement>& m, int rank) {
  LaurentOps ops{rank};
  DenseMatrix<Laurent> out = make_matrix(ops, m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) out.at(r, c) = abelianize(m.at(r, c), rank);
  return out;
}

DenseMatrix<MetabElement> project_to_level_one(const DenseMatrix<RingElement>& m,
                                               MetabRing& ring) {
  MetabOps ops{&ring};
  DenseMatrix<MetabElement> out = make_matrix(ops, m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) out.at(r, c) = ring.project(m.at(r, c));
  return out;
}

SelectionReport select_generators(const std::vector<Word>& relators, int rank,
                                  MetabRing& ring) {
  const int m = static_cast<int>(relators.size());
  if (m >= rank) throw TooManyRelators("need strictly fewer relators than generators");
  if (ring.rank() != rank) throw RankMismatch("ring rank differs from requested rank");

  SelectionReport report;
  report.rank = rank;
  report.relator_count = m;

  DenseMatrix<RingElement> jac = fox_jacobian(relators, rank);

  // Stage 0: full-pivot triangularization over the coset ring.
  LaurentOps lops{rank};
  DenseMatrix<Laurent> m0 = project_to_coset_ring(jac, rank);
  report.stage0 = triangularize(lops, m0, PivotMode::full_pivot);
  report.t0 = report.stage0.t;

  // Original coset-ring rows expressed over the triangular rows, denominator
  // and all; every transform preserves the identity by construction.
  for (int r = 0; r < m0.rows; ++r) {
    RowCombination<LaurentOps> combo{m0.a[static_cast<std::size_t>(r)], lops.one(), {}};
    combo.coeff.assign(static_cast<std::size_t>(m0.rows), lops.zero());
    combo.coeff[static_cast<std::size_t>(r)] = lops.one();
    for (const Transform<Laurent>& t : report.stage0.log)
      combo = combination_after(lops, std::move(combo), t);
    if (!verify_combination(lops, report.stage0.result, combo))
      throw InternalInconsistency("stage-0 combination certificate failed expansion");
    report.stage0_combos.push_back(std::move(combo));
  }

  // Stage 1: replay the stage-0 transforms on the level-one projection.
  MetabOps mops{&ring};
  DenseMatrix<MetabElement> m1 = project_to_level_one(jac, ring);
  TriangularCertificate<MetabElement> cert1;
  cert1.original = m1;
  cert1.col_origin = report.stage0.col_origin;
  for (const Transform<Laurent>& t : report.stage0.log) {
    Transform<MetabElement> lifted = lift_transform(ring, t);
    m1 = apply_transform(mops, std::move(m1), lifted);
    cert1.log.push_back(std::move(lifted));
  }

  // The shadow of the replayed matrix must reproduce the stage-0 result
  // exactly; this cross-checks that projection and lifting commute.
  for (int r = 0; r < m1.rows; ++r)
    for (int c = 0; c < m1.cols; ++c)
      if (!(ring.shadow(m1.at(r, c)) == report.stage0.result.at(r, c)))
        throw InternalInconsistency("level-one shadow disagrees with the coset-ring stage");

  // Re-clear below the diagonal of the pivot block: the shadow is zero there,
  // so the entries are valuation-positive, and the valuation-zero diagonal
  // eliminates them without column moves.
  for (int k = 1; k < report.t0; ++k)
    for (int c = 0; c < k; ++c) detail::eliminate_entry(mops, m1, c, c, k, cert1.log);

  // Clear the pivot columns of the deeper (shadow-zero) rows.
  for (int k = report.t0; k < m1.rows; ++k)
    for (int c = 0; c < report.t0; ++c) detail::eliminate_entry(mops, m1, c, c, k, cert1.log);

  // Full pivoting on the trailing block under the level-one valuation.
  report.ts = detail::triangularize_block(mops, m1, report.t0, cert1.log, cert1.col_origin);
  cert1.t = report.ts;
  cert1.result = std::move(m1);
  report.stage1 = std::move(cert1);

  if (!verify_certificate(lops, report.stage0))
    throw InternalInconsistency("stage-0 certificate failed verification");
  if (!verify_certificate(mops, report.stage1))
    throw InternalInconsistency("stage-1 certificate failed verification");

  for (int c = 0; c < report.ts; ++c)
    report.pivot_columns.push_back(report.stage1.col_origin[static_cast<std::size_t>(c)] + 1);
  std::sort(report.pivot_columns.begin(), report.pivot_columns.end());
  for (int j = 1; j <= rank; ++j)
    if (!std::binary_search(report.pivot_columns.begin(), report.pivot_columns.end(), j))
      report.selected.push_back(j);

  if (static_cast<int>(report.selected.size()) < rank - m)
    throw InternalInconsistency("selected fewer generators than the guaranteed count");
  return report;
}

}  // namespace freikalk
