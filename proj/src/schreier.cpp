#include "freikalk/schreier.hpp"

#include <algorithm>
#include <set>

#include "freikalk/errors.hpp"
#include "freikalk/fox.hpp"

namespace freikalk {

SchreierSystem::SchreierSystem(int rank, int c) : rank_(rank) {
  if (rank < 1) throw RankTooSmall("transversal needs at least one generator");
  if (c != 2) {
    throw UnsupportedQuotient(
        "sorted-word transversals are prefix-closed only for the commutator subgroup");
  }
}

SchreierSystem::Vec SchreierSystem::coset_vector(const Word& w) const {
  return abelianization(w, rank_);
}

Word SchreierSystem::representative_of_vector(const Vec& v) const {
  if (static_cast<int>(v.size()) != rank_) throw RankMismatch("coset vector width");
  std::vector<Syllable> syl;
  for (int j = 0; j < rank_; ++j) {
    if (v[static_cast<size_t>(j)] != 0) syl.push_back({j + 1, v[static_cast<size_t>(j)]});
  }
  return Word(std::move(syl));
}

Word SchreierSystem::representative(const Word& w) const {
  return representative_of_vector(coset_vector(w));
}

bool SchreierSystem::in_kernel(const Word& w) const {
  Vec v = coset_vector(w);
  return std::all_of(v.begin(), v.end(), [](long long a) { return a == 0; });
}

bool SchreierSystem::coset_meets_subgroup(const Word& w, const std::vector<int>& K) const {
  Vec v = coset_vector(w);
  for (int j = 1; j <= rank_; ++j) {
    if (v[static_cast<size_t>(j - 1)] == 0) continue;
    if (std::find(K.begin(), K.end(), j) == K.end()) return false;
  }
  return true;
}

Word SchreierSystem::schreier_generator_word(const Word& s, int j) const {
  if (j < 1 || j > rank_) throw InvalidGenerator("pair index outside the rank");
  if (!(representative(s) == s)) throw PreconditionFailed("pair word is not a representative");
  Word sg = s * Word::letter(j);
  return sg * inverse(representative(sg));
}

bool SchreierSystem::is_tree_pair(const Word& s, int j) const {
  return schreier_generator_word(s, j).is_identity();
}

int SchreierSystem::pair_id(const Word& s, int j) {
  Word gen = schreier_generator_word(s, j);
  if (gen.is_identity()) throw IdentityElement("tree pairs carry no basis element");
  auto key = std::make_pair(coset_vector(s), j);
  auto it = id_of_pair_.find(key);
  if (it != id_of_pair_.end()) return it->second;
  by_id_.push_back({s, j, gen});
  int id = static_cast<int>(by_id_.size());
  id_of_pair_.emplace(std::move(key), id);
  return id;
}

const Word& SchreierSystem::generator_word(int id) const {
  if (id < 1 || id > registered_count()) throw IndexOutOfRange("unregistered basis id");
  return by_id_[static_cast<size_t>(id - 1)].word;
}

std::pair<Word, int> SchreierSystem::pair_of(int id) const {
  if (id < 1 || id > registered_count()) throw IndexOutOfRange("unregistered basis id");
  const Entry& e = by_id_[static_cast<size_t>(id - 1)];
  return {e.s, e.j};
}

std::optional<int> SchreierSystem::lookup_pair(const Vec& s, int j) const {
  auto it = id_of_pair_.find(std::make_pair(s, j));
  if (it == id_of_pair_.end()) return std::nullopt;
  return it->second;
}

Word SchreierSystem::rewrite(const Word& w) {
  if (!in_kernel(w)) throw NotInKernel("word is not in the commutator subgroup");
  Vec state(static_cast<size_t>(rank_), 0);
  std::vector<Syllable> out;
  for (const Syllable& syl : w.syllables()) {
    long long step = syl.exp > 0 ? 1 : -1;
    for (long long t = 0; t != syl.exp; t += step) {
      // Positive letter y at state u emits the pair (u, y); a negative letter
      // moves first and emits the inverse of the pair at the new state. Tree
      // pairs spell the identity and are skipped.
      if (step > 0) {
        Word s = representative_of_vector(state);
        if (!is_tree_pair(s, syl.gen)) out.push_back({pair_id(s, syl.gen), 1});
        state[static_cast<size_t>(syl.gen - 1)] += 1;
      } else {
        state[static_cast<size_t>(syl.gen - 1)] -= 1;
        Word s = representative_of_vector(state);
        if (!is_tree_pair(s, syl.gen)) out.push_back({pair_id(s, syl.gen), -1});
      }
    }
  }
  return Word(std::move(out));
}

Word SchreierSystem::spell(const Word& symbol_word) const {
  if (symbol_word.max_generator() > registered_count()) {
    throw IndexOutOfRange("symbol word uses an unregistered basis id");
  }
  std::vector<Word> images;
  images.reserve(by_id_.size());
  for (const Entry& e : by_id_) images.push_back(e.word);
  return substitute(symbol_word, images);
}

RingElement SchreierSystem::spell(const RingElement& symbol_elem) const {
  RingElement out = RingElement::zero(rank_);
  for (const auto& [w, c] : symbol_elem.terms()) out.add_term(spell(w), c);
  return out;
}

Word SchreierSystem::carry(const Vec& s, const Vec& t) {
  Vec sum(s);
  if (t.size() != sum.size()) throw RankMismatch("coset vector width");
  for (size_t i = 0; i < sum.size(); ++i) sum[i] += t[static_cast<size_t>(i)];
  Word c = inverse(representative_of_vector(sum)) * representative_of_vector(s) *
           representative_of_vector(t);
  return rewrite(c);
}

Word SchreierSystem::conjugated_generator(int id, const Vec& t) {
  Word rep = representative_of_vector(t);
  return rewrite(conjugate(generator_word(id), rep));
}

CosetClass classify(const SchreierSystem& sys, const Word& u, const std::vector<int>& K) {
  CosetKind kind = sys.coset_meets_subgroup(u, K) ? CosetKind::alpha : CosetKind::beta;
  return {kind, sys.representative(u)};
}

RingElement coset_component(const RingElement& u, const SchreierSystem::Vec& kappa,
                            int rank) {
  RingElement out = RingElement::zero(rank);
  for (const auto& [w, c] : u.terms()) {
    if (abelianization(w, rank) == kappa) out.add_term(w, c);
  }
  return out;
}

std::vector<CosetSlice> derivative_coset_decomposition(SchreierSystem& sys, const Word& v,
                                                       int j) {
  if (j < 1 || j > sys.rank()) throw InvalidGenerator("derivative index outside the rank");
  if (!sys.in_kernel(v)) throw NotInKernel("word is not in the commutator subgroup");
  RingElement dj = fox_derivative(v, j);
  std::map<SchreierSystem::Vec, RingElement> slices;
  for (const auto& [w, c] : dj.terms()) {
    auto [it, fresh] =
        slices.try_emplace(sys.coset_vector(w), RingElement::zero(sys.rank()));
    it->second.add_term(w, c);
  }
  std::vector<CosetSlice> out;
  out.reserve(slices.size());
  for (auto& [kappa, comp] : slices) out.push_back({kappa, std::move(comp)});
  return out;
}

bool derivative_component_check(SchreierSystem& sys, const Word& v, int j) {
  if (j < 1 || j > sys.rank()) throw InvalidGenerator("derivative index outside the rank");
  Word b = sys.rewrite(v);
  RingElement dj = fox_derivative(v, j);

  // Cosets to examine: everything in the support of D_j(v), plus the target
  // coset of every pair (s, j) used by the rewritten word (to catch a
  // predicted-nonzero component that is absent).
  std::set<SchreierSystem::Vec> cosets;
  for (const auto& [w, c] : dj.terms()) cosets.insert(sys.coset_vector(w));
  for (const Syllable& syl : b.syllables()) {
    auto [s, jj] = sys.pair_of(syl.gen);
    if (jj != j) continue;
    SchreierSystem::Vec target = sys.coset_vector(s);
    target[static_cast<size_t>(j - 1)] += 1;
    for (auto& a : target) a = -a;
    cosets.insert(target);
  }

  for (const auto& kappa : cosets) {
    // The unique pair mapping onto this coset: s with vec(s) = -kappa - e_j.
    SchreierSystem::Vec svec(kappa);
    for (auto& a : svec) a = -a;
    svec[static_cast<size_t>(j - 1)] -= 1;
    Word s = sys.representative_of_vector(svec);
    if (sys.is_tree_pair(s, j)) continue;  // residual coset, not covered
    RingElement comp = coset_component(dj, kappa, sys.rank());
    Word t_inv = inverse(sys.representative(s * Word::letter(j)));
    RingElement pred = RingElement::zero(sys.rank());
    if (auto id = sys.lookup_pair(svec, j)) {
      pred = sys.spell(fox_derivative(b, *id)).word_times(t_inv);
    }
    if (!(comp == pred)) return false;
  }
  return true;
}

}  // namespace freikalk
