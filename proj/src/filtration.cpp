#include "freikalk/filtration.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "freikalk/errors.hpp"

namespace freikalk {

namespace {

// Push every support word of u through the Schreier rewrite, keeping
// coefficients. The result lives over the symbol alphabet.
RingElement rewrite_ring(const RingElement& u, SchreierSystem& sys) {
  RingElement out;
  for (const auto& [w, c] : u.terms()) out.add_term(sys.rewrite(w), c);
  return out;
}

}  // namespace

bool class_at_least(const Word& symbol_word, int l, int bound) {
  if (symbol_word.is_identity()) return true;
  if (l <= 1) return true;
  std::optional<int> cls = lcs_class(symbol_word, bound);
  if (!cls) return bound >= l - 1;  // class > bound
  return *cls >= l;
}

int locate_level(const Word& r, const ParsedSignature& sig, SchreierSystem& sys,
                 int bound) {
  if (sig.c != 2)
    throw UnsupportedQuotient("tower base must be the commutator subgroup");
  if (sig.classes.empty())
    throw PreconditionFailed("signature needs at least one stage");
  if (!sys.in_kernel(r)) throw NotInVerbal("word lies outside the kernel");

  const int m1 = sig.classes.front();
  Word b = sys.rewrite(r);
  std::optional<int> cls = lcs_class(b, bound);  // throws on identity
  if (!cls) {
    if (bound >= m1)
      throw LevelOutOfRange("element lies beyond the first tower stage");
    throw Inconclusive("truncation " + std::to_string(bound) +
                       " cannot separate layers up to " + std::to_string(m1));
  }
  if (*cls > m1)
    throw LevelOutOfRange("element lies beyond the first tower stage");
  return *cls;
}

std::optional<int> delta_valuation(const RingElement& u, SchreierSystem& sys,
                                   int bound) {
  return ideal_valuation(rewrite_ring(u, sys), bound);
}

bool restriction_check(const RingElement& u, const std::vector<int>& marked,
                       SchreierSystem& sys, int i, int bound) {
  if (i < 1) throw IndexOutOfRange("layer index must be positive");
  if (bound < i)
    throw Inconclusive("bound must reach the layer being compared");
  if (marked.empty()) throw RankTooSmall("need at least one marked generator");
  for (std::size_t t = 1; t < marked.size(); ++t)
    if (marked[t - 1] >= marked[t])
      throw PreconditionFailed("marked generators must be strictly increasing");

  // Position of each marked generator, for relabeling onto a fresh alphabet.
  std::map<int, int> position;
  for (std::size_t t = 0; t < marked.size(); ++t)
    position[marked[t]] = static_cast<int>(t) + 1;

  RingElement relabeled;
  for (const auto& [w, c] : u.terms()) {
    if (!sys.in_kernel(w))
      throw NotInKernel("support word lies outside the kernel");
    if (!supported_on(w, marked))
      throw NotInSubgroup("support word uses an unmarked generator");
    std::vector<Syllable> sylls;
    for (const Syllable& s : w.syllables())
      sylls.push_back({position.at(s.gen), s.exp});
    relabeled.add_term(Word(std::move(sylls)), c);
  }

  std::optional<int> ambient = delta_valuation(u, sys, bound);
  SchreierSystem intrinsic(static_cast<int>(marked.size()), 2);
  std::optional<int> inner = delta_valuation(relabeled, intrinsic, bound);

  bool ambient_in = !ambient || *ambient >= i;
  bool inner_in = !inner || *inner >= i;
  return ambient_in == inner_in;
}

TruncSeries leading_form(const RingElement& u, SchreierSystem& sys, int bound) {
  if (u.is_zero()) throw ZeroElement("zero has no leading form");
  TruncSeries series = expand(rewrite_ring(u, sys), bound);
  std::optional<int> d = series.min_degree();
  if (!d) throw Inconclusive("expansion vanishes through the bound");
  return series.homogeneous_component(*d);
}

long long monomial_weight(const std::vector<std::pair<Word, long long>>& factors,
                          SchreierSystem& sys, int bound) {
  long long total = 0;
  for (const auto& [c, a] : factors) {
    if (a == 0) throw ZeroExponent("monomial exponents must be positive");
    if (a < 0) throw PreconditionFailed("monomial exponents must be positive");
    if (!sys.in_kernel(c)) throw NotInVerbal("factor lies outside the kernel");
    std::optional<int> cls = lcs_class(sys.rewrite(c), bound);
    if (!cls) throw UnknownLayer("factor layer lies beyond the bound");
    total += a * *cls;
  }
  return total;
}

std::vector<Word> enumerate_reduced_words(int rank, int max_len) {
  if (rank < 1) throw RankTooSmall("need at least one generator");
  std::vector<Word> out{Word()};
  std::vector<Word> level{Word()};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : level) {
      for (int g = 1; g <= rank; ++g) {
        for (int sign : {1, -1}) {
          Word ext = w * Word::letter(g, sign);
          if (ext.length() == w.length() + 1) next.push_back(ext);
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

RootMembership is_in_root(const Word& v, const LevelIndex& target,
                          const std::vector<Word>& relators, SchreierSystem& sys,
                          const RootSearchBounds& bounds, int trunc) {
  if (target.k != 1)
    throw LevelOutOfRange("only the first tower stage is searchable");
  if (target.l < 1) throw IndexOutOfRange("layer index must be positive");
  if (trunc < target.l)
    throw Inconclusive("truncation must reach the target layer");
  if (bounds.max_power < 1) throw PreconditionFailed("power cap must be positive");

  RootMembership miss;

  // A power of v can only reach the kernel if v itself dies under
  // abelianization; otherwise every positive power is visibly outside.
  const int rank = sys.rank();
  if (!v.is_identity()) {
    std::vector<long long> vec = abelianization(v, rank);
    if (std::any_of(vec.begin(), vec.end(), [](long long e) { return e != 0; }))
      return miss;
  }

  struct Cand {
    int relator;
    int sign;
    Word conj;
    Word value;
  };
  std::vector<Cand> cands;
  std::vector<Word> conjs = enumerate_reduced_words(rank, bounds.max_conj_len);
  for (std::size_t a = 0; a < relators.size(); ++a) {
    for (int sign : {1, -1}) {
      Word base = sign > 0 ? relators[a] : inverse(relators[a]);
      for (const Word& f : conjs)
        cands.push_back({static_cast<int>(a), sign, f, conjugate(base, f)});
    }
  }

  for (long long j = 1; j <= bounds.max_power; ++j) {
    Word vj = power(v, j);
    std::vector<int> pick;

    // Depth-first over factor sequences, shorter products first at each
    // branch, sequence order lexicographic in the candidate list.
    auto search = [&](auto&& self, const Word& prefix) -> bool {
      Word u = inverse(prefix) * vj;
      if (sys.in_kernel(u) && class_at_least(sys.rewrite(u), target.l, trunc)) {
        miss.found = true;
        miss.power = j;
        miss.residue = u;
        for (int idx : pick)
          miss.product.push_back(
              {cands[idx].relator, cands[idx].sign, cands[idx].conj});
        return true;
      }
      if (static_cast<int>(pick.size()) == bounds.max_factors) return false;
      for (std::size_t idx = 0; idx < cands.size(); ++idx) {
        pick.push_back(static_cast<int>(idx));
        if (self(self, prefix * cands[idx].value)) return true;
        pick.pop_back();
      }
      return false;
    };

    if (search(search, Word())) {
      // Re-derive the factorization by free reduction before reporting it.
      Word check;
      for (const RootFactor& f : miss.product) {
        Word base = f.sign > 0 ? relators[f.relator] : inverse(relators[f.relator]);
        check = check * conjugate(base, f.conjugator);
      }
      check = check * miss.residue;
      if (!(check == vj))
        throw InternalInconsistency("root certificate failed free reduction");
      return miss;
    }
  }
  return miss;
}

}  // namespace freikalk
