#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "freikalk/group_ring.hpp"
#include "freikalk/magnus.hpp"
#include "freikalk/parser.hpp"
#include "freikalk/schreier.hpp"
#include "freikalk/word.hpp"

namespace freikalk {

// Position in the two-index layer grid: stage k of the tower, layer l within
// the stage. Stage 1 is the only stage with computational support; deeper
// stages would need Schreier machinery over an unbounded symbol alphabet.
struct LevelIndex {
  int k = 1;
  int l = 1;
  friend bool operator==(const LevelIndex&, const LevelIndex&) = default;
};

// Layer of r inside the kernel: the unique i with r in gamma_i(N) but not
// gamma_{i+1}(N), found by rewriting r into Schreier symbols and reading the
// lower-central class there.
//
//   NotInVerbal      r lies outside N
//   IdentityElement  r is trivial (member of every layer)
//   LevelOutOfRange  class exceeds sig's first-stage depth m1
//   Inconclusive     truncation too shallow to separate the layers
int locate_level(const Word& r, const ParsedSignature& sig, SchreierSystem& sys,
                 int bound);

// Augmentation-power valuation of u in Z[N]: support words are rewritten into
// Schreier symbols and the minimum expansion degree is taken over the symbol
// alphabet. nullopt means deeper than the bound. Support words must lie in N.
std::optional<int> delta_valuation(const RingElement& u, SchreierSystem& sys,
                                   int bound);

// Whether the lower-central class of a symbol word reaches at least l. The
// identity passes; a class beyond the bound certifies "at least l" whenever
// bound >= l - 1.
bool class_at_least(const Word& symbol_word, int l, int bound);

// Whether membership of u in the i-th filtration layer looks the same from
// the ambient group and from the subgroup it actually lives in. Support words
// must lie in the kernel and use only generators marked in `marked`; the
// intrinsic valuation relabels those generators onto a fresh alphabet of rank
// |marked| and rewrites in that group's own Schreier system. Requires
// bound >= i so that "deeper than bound" certifies membership on both sides.
bool restriction_check(const RingElement& u, const std::vector<int>& marked,
                       SchreierSystem& sys, int i, int bound);

// Lowest nonzero homogeneous component of the symbol-alphabet expansion of u.
//   ZeroElement   u == 0
//   Inconclusive  expansion vanishes through the bound
TruncSeries leading_form(const RingElement& u, SchreierSystem& sys, int bound);

// Weight of the layer monomial prod c_j^{a_j}: sum of a_j times the layer of
// c_j. Factors are ambient words in N; exponents must be positive.
//   UnknownLayer  some factor's layer lies beyond the bound
long long monomial_weight(const std::vector<std::pair<Word, long long>>& factors,
                          SchreierSystem& sys, int bound);

// One factor of a normal-closure product: relators[relator]^sign conjugated
// by `conjugator`.
struct RootFactor {
  int relator = 0;
  int sign = 1;
  Word conjugator;
};

// Search caps for is_in_root. Conjugators run over reduced words up to
// max_conj_len letters; products use up to max_factors factors.
struct RootSearchBounds {
  long long max_power = 3;
  int max_factors = 2;
  int max_conj_len = 2;
};

// Outcome of the bounded root search. When found, v^power = P * residue with
// P the spelled product of `product` and residue in layer target.l of N; the
// identity is re-derived by free reduction before returning.
struct RootMembership {
  bool found = false;
  long long power = 0;
  std::vector<RootFactor> product;
  Word residue;
};

// Bounded search for a power of v inside R^N * gamma_l(N): powers 1..J,
// products of at most C factors (r_a^sign)^f with conjugators enumerated by
// length then letters. Misses beyond the caps are reported as not found, not
// as nonmembership.
//   LevelOutOfRange  target.k != 1
RootMembership is_in_root(const Word& v, const LevelIndex& target,
                          const std::vector<Word>& relators, SchreierSystem& sys,
                          const RootSearchBounds& bounds, int trunc);

// Deterministic enumeration of reduced words of length <= max_len over the
// given rank: shorter first, then letters in order y1, y1^-1, y2, y2^-1, ...
// Shared by the root search and the conjugacy search.
std::vector<Word> enumerate_reduced_words(int rank, int max_len);

}  // namespace freikalk
