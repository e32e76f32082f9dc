#pragma once

// Reduced words in a finitely generated free group. A word is a sequence of
// syllables g^e with 1-based generator indices and nonzero exponents, adjacent
// syllables having distinct generators. That form is canonical: two words are
// equal in the group iff their syllable vectors are equal.
//
// Words do not carry a rank; the ambient rank lives in context objects
// (FreeGroup, ring elements, Schreier systems) which validate indices at the
// boundaries. This lets the same machinery serve both a fixed alphabet
// y1..yn and the unbounded alphabets of lazily generated subgroup bases.

#include <compare>
#include <cstdint>
#include <vector>

#include "freikalk/errors.hpp"

namespace freikalk {

struct Syllable {
  int gen = 0;
  long long exp = 0;
  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

class Word {
 public:
  Word() = default;
  // Reduces an arbitrary syllable sequence (merging neighbours, dropping
  // zero exponents, cascading cancellations).
  explicit Word(std::vector<Syllable> raw);

  static Word letter(int gen, long long exp = 1);

  bool is_identity() const { return syl_.empty(); }
  long long length() const;  // letter count: sum of |exp|
  std::size_t syllable_count() const { return syl_.size(); }
  const std::vector<Syllable>& syllables() const { return syl_; }
  int max_generator() const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  struct Reduced {};
  Word(std::vector<Syllable> s, Reduced) : syl_(std::move(s)) {}

  std::vector<Syllable> syl_;

  friend Word inverse(const Word&);
  friend Word subword(const Word&, std::size_t, std::size_t);
};

Word inverse(const Word& w);
Word power(const Word& w, long long e);
// commutator(a, b) = a^-1 b^-1 a b
Word commutator(const Word& a, const Word& b);
// conjugate(w, f) = f^-1 w f
Word conjugate(const Word& w, const Word& f);

// w == conjugator^-1 * core * conjugator, with core cyclically reduced.
struct CyclicForm {
  Word core;
  Word conjugator;
};
CyclicForm cyclic_reduce(const Word& w);

// Total order used for canonical term ordering in ring elements:
// first by letter count, then lexicographically by syllables
// (generator index, then exponent). Deterministic everywhere.
bool word_less(const Word& a, const Word& b);

struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

long long exponent_sum(const Word& w, int gen);
std::vector<long long> abelianization(const Word& w, int rank);
bool supported_on(const Word& w, const std::vector<int>& gens);

// Monoid-homomorphic substitution: generator i maps to images[i-1].
Word substitute(const Word& w, const std::vector<Word>& images);

// Word over syllables [i, j) of w (0-based syllable positions).
Word subword(const Word& w, std::size_t i, std::size_t j);

// Validation context for a fixed ambient rank.
class FreeGroup {
 public:
  explicit FreeGroup(int rank);
  int rank() const { return rank_; }
  void check(const Word& w) const;  // InvalidGenerator beyond rank
  Word generator(int i) const;

 private:
  int rank_;
};

}  // namespace freikalk
