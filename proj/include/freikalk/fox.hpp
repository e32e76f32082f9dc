#pragma once

// Free differential calculus on F = F(x1..xn), right convention:
//
//   D_j(uv) = D_j(u) v + eps(u) D_j(v),   D_j(x_k) = [j == k],
//
// where eps is the augmentation. Consequences used throughout:
//   D_j(w^-1)  = -D_j(w) w^-1
//   D_j(x^e)   = sum_{t=0}^{e-1} x^t          (e > 0)
//              = -sum_{t=e}^{-1} x^t          (e < 0)
//   u - eps(u) = sum_j (x_j - 1) D_j(u)       (fundamental identity)

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "freikalk/group_ring.hpp"
#include "freikalk/quotient.hpp"
#include "freikalk/word.hpp"

namespace freikalk {

RingElement fox_derivative(const Word& w, int gen);
RingElement fox_derivative(const RingElement& u, int gen);

// All first derivatives D_1(u)..D_rank(u), cross-checked against the
// fundamental identity before returning. A mismatch is an implementation
// bug, never a property of the input.
std::vector<RingElement> fundamental_decomposition(const RingElement& u, int rank);

// Memoizes word-level derivatives across repeated queries (Jacobian rows,
// chain-rule sums over long rewritten words).
class FoxContext {
 public:
  const RingElement& derive(const Word& w, int gen);

 private:
  struct KeyLess {
    bool operator()(const std::pair<Word, int>& a, const std::pair<Word, int>& b) const {
      if (word_less(a.first, b.first)) return true;
      if (word_less(b.first, a.first)) return false;
      return a.second < b.second;
    }
  };
  std::map<std::pair<Word, int>, RingElement, KeyLess> memo_;
};

// Checks D_k(f^-1 r f) == D_k(r) f modulo the ideal Z[F](N - 1) for
// N = gamma_c F, via the quotient-ring image. Requires r in N.
bool conjugation_congruence_check(const Word& r, const Word& f, int gen,
                                  const QuotientSpec& q);

// Writes w as a product of elements of `basis` and their inverses, if it is
// one with at most max_factors factors; the returned word is over symbols
// x1..x|basis| with x_z standing for basis[z-1]. Bounded search: nullopt
// means "no expression within the factor bound", not a disproof.
std::optional<Word> express_in_basis(const Word& w, const std::vector<Word>& basis,
                                     int max_factors);

// Chain rule for a subgroup basis: if v = b(x -> basis) then
//   D_j(v) = sum_z D_j(basis[z-1]) * spell(D-hat_z(b)),
// where D-hat_z is the derivative on the symbol alphabet and spell
// substitutes basis words back in. Returns true iff the identity holds
// exactly for the given data.
bool chain_rule_check(const Word& b, const std::vector<Word>& basis, int gen);

}  // namespace freikalk
