#pragma once

// The integral group ring Z[F] of a free group: finitely supported Int
// combinations of reduced words. Terms are kept in the canonical order
// (word length, then syllable lex), which fixes a unique printed and
// serialized form for every element.
//
// rank() is the ambient alphabet size; rank 0 means "open alphabet"
// (used for lazily enumerated subgroup bases, where indices are ids in a
// generator registry). Mixing two concrete distinct ranks is refused.

#include <map>
#include <string>
#include <vector>

#include "freikalk/bigint.hpp"
#include "freikalk/word.hpp"

namespace freikalk {

class RingElement {
 public:
  using Terms = std::map<Word, Int, WordLess>;

  explicit RingElement(int rank = 0) : rank_(rank) {}

  static RingElement zero(int rank = 0) { return RingElement(rank); }
  static RingElement one(int rank = 0) { return constant(1, rank); }
  static RingElement constant(Int c, int rank = 0);
  static RingElement from_word(const Word& w, int rank = 0);

  int rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  // Coefficient of w (zero if absent).
  Int coeff(const Word& w) const;

  Int augmentation() const;

  void add_term(const Word& w, const Int& c);  // accumulates, drops zeros

  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator-(const RingElement& a);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const Int& c, RingElement a);
  // Equality is term equality over compatible alphabets; an open-rank element
  // equals its widening into any concrete rank.
  friend bool operator==(const RingElement& a, const RingElement& b) {
    if (a.rank_ != 0 && b.rank_ != 0 && a.rank_ != b.rank_) return false;
    return a.terms_ == b.terms_;
  }

  // Right and left translation by a word (cheaper than full products).
  RingElement times_word(const Word& w) const;
  RingElement word_times(const Word& w) const;

  std::string text() const;

 private:
  int rank_;
  Terms terms_;
};

// Merged ambient rank for a cross-element operation.
int merge_ranks(int a, int b);

// n(a - 1) - (a^n - 1): the defect of replacing a power difference by a
// scalar multiple. For a of layer class k it lies k+1 deep in the layer
// filtration; layer is recorded with the call so certificates can say at
// which depth the defect was consumed.
RingElement power_difference_normalize(const Word& a, long long n, int layer);

// Word-wise monoid substitution extended linearly: generator i -> images[i-1].
RingElement substitute(const RingElement& u, const std::vector<Word>& images);

}  // namespace freikalk
