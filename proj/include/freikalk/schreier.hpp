#pragma once

// Schreier transversal and rewriting for the commutator subgroup N of a free
// group F of finite rank. Cosets of N are indexed by exponent vectors in Z^n;
// the transversal consists of the sorted words y1^{a1}..yn^{an}, which is
// prefix-closed, so coset-walk rewriting produces words over the free basis
//
//   x_{s,j} = s y_j u(s y_j)^-1,   s a representative, u() the rep map,
//
// where the pair (s, j) is a tree edge (trivial generator) exactly when s has
// no letters of index greater than j. Basis elements are registered lazily
// and identified by sequential ids in first-use order, so rewritten words are
// ordinary words over an open alphabet and all of the free-group and
// free-calculus machinery applies to them unchanged.
//
// Only the class-2 case (N = gamma_2 F) is supported: deeper verbal
// subgroups have no prefix-closed transversal of this shape, and nothing
// downstream needs one.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "freikalk/group_ring.hpp"
#include "freikalk/word.hpp"

namespace freikalk {

class SchreierSystem {
 public:
  using Vec = std::vector<long long>;

  explicit SchreierSystem(int rank, int c = 2);

  int rank() const { return rank_; }

  Vec coset_vector(const Word& w) const;
  Word representative(const Word& w) const;
  Word representative_of_vector(const Vec& v) const;
  bool in_kernel(const Word& w) const;

  // Whether the coset of w meets the standard subgroup generated by
  // {y_k : k in K}: true iff the representative is supported on K.
  bool coset_meets_subgroup(const Word& w, const std::vector<int>& K) const;

  // The word s y_j u(s y_j)^-1 (s must be a representative).
  Word schreier_generator_word(const Word& s, int j) const;
  bool is_tree_pair(const Word& s, int j) const;

  // Registry of basis elements; ids are 1-based and sequential in first-use
  // order, so they double as generator indices of an open alphabet.
  int pair_id(const Word& s, int j);
  int registered_count() const { return static_cast<int>(by_id_.size()); }
  const Word& generator_word(int id) const;  // spelled form in F
  std::pair<Word, int> pair_of(int id) const;
  std::optional<int> lookup_pair(const Vec& s, int j) const;

  // Coset-walk rewriting of w in N into a word over registered basis ids.
  // The inverse direction is spell(); spell(rewrite(w)) == w exactly.
  Word rewrite(const Word& w);
  Word spell(const Word& symbol_word) const;
  RingElement spell(const RingElement& symbol_elem) const;

  // rep(s + t)^-1 rep(s) rep(t) as a word over basis ids. This orientation is
  // the one the product law of the level-1 quotient ring consumes:
  // rep(s) n rep(t) n' = rep(s + t) * carry(s,t) * n^rep(t) * n'.
  Word carry(const Vec& s, const Vec& t);
  // rep(t)^-1 x_id rep(t) as a word over basis ids.
  Word conjugated_generator(int id, const Vec& t);

 private:
  int rank_;
  std::map<std::pair<Vec, int>, int> id_of_pair_;
  struct Entry {
    Word s;
    int j;
    Word word;  // spelled Schreier generator
  };
  std::vector<Entry> by_id_;
};

// Coset classification against a marked subgroup H = gr(y_k : k in K):
// alpha-cosets meet H (and their representatives automatically lie in H,
// since a sorted word supported on K is a word in H), beta-cosets do not.
enum class CosetKind { alpha, beta };

struct CosetClass {
  CosetKind kind;
  Word representative;
};

CosetClass classify(const SchreierSystem& sys, const Word& u, const std::vector<int>& K);

// Terms of u lying in the coset with abelianization vector kappa.
RingElement coset_component(const RingElement& u, const SchreierSystem::Vec& kappa,
                            int rank);

// D_j(v) grouped by coset, exhaustively: the slices partition the support.
struct CosetSlice {
  SchreierSystem::Vec coset;
  RingElement component;
};
std::vector<CosetSlice> derivative_coset_decomposition(SchreierSystem& sys, const Word& v,
                                                       int j);

// Column decomposition of a Fox derivative along cosets: for v in N and each
// coset carrying a non-tree pair z = (s, j), the component of D_j(v) in the
// coset of u(s y_j)^-1 must equal u(s y_j)^-1 * spell(D-hat_z(rewrite(v))),
// the derivative taken on the basis-id alphabet; components at tree-pair
// cosets are unconstrained. Returns true iff every covered coset matches.
bool derivative_component_check(SchreierSystem& sys, const Word& v, int j);

}  // namespace freikalk
