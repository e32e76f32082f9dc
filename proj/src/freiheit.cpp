#include "freikalk/freiheit.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "freikalk/errors.hpp"
#include "freikalk/fox.hpp"
#include "freikalk/oracle.hpp"

namespace freikalk {

namespace {

bool contains(const std::vector<int>& xs, int x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// Retraction images for substitute(): marked letters survive, the rest
// collapse to the identity.
std::vector<Word> retraction_images(int rank, const std::vector<int>& marked) {
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(rank));
  for (int j = 1; j <= rank; ++j)
    images.push_back(contains(marked, j) ? Word::letter(j) : Word());
  return images;
}

// A registered Schreier symbol (s, j) lies in the marked block when its
// fiber index is marked and its base representative stays in the marked
// subgroup. Words of the marked subgroup rewrite to exactly these symbols.
bool is_alpha_symbol(const SchreierSystem& sys, int id, const std::vector<int>& marked) {
  auto [s, j] = sys.pair_of(id);
  return contains(marked, j) && supported_on(s, marked);
}

std::vector<int> alpha_ids(const SchreierSystem& sys, const std::vector<int>& marked) {
  std::vector<int> ids;
  for (int id = 1; id <= sys.registered_count(); ++id)
    if (is_alpha_symbol(sys, id, marked)) ids.push_back(id);
  return ids;
}

// One crossing of a word's coset walk: the Schreier pair it reads, as the
// base exponent vector plus the fiber index, with the net crossing count.
// Whether the pair sits on the tree depends on the walk's base point, so it
// is a property of the shifted base and is not recorded here.
struct WalkCrossing {
  SchreierSystem::Vec base;
  int fiber = 0;
  long long count = 0;
};

// Every crossing of w's walk from the origin, merged by pair; opposite
// crossings of the same pair cancel. A positive letter j reads the pair at
// the current state, a negative letter steps down first and reads the pair
// it crosses backwards.
std::vector<WalkCrossing> walk_crossings(const Word& w, int rank) {
  std::map<std::pair<SchreierSystem::Vec, int>, long long> merged;
  SchreierSystem::Vec state(static_cast<std::size_t>(rank), 0);
  for (const Syllable& syl : w.syllables()) {
    long long step = syl.exp > 0 ? 1 : -1;
    std::size_t c = static_cast<std::size_t>(syl.gen - 1);
    for (long long t = 0; t != syl.exp; t += step) {
      if (step < 0) state[c] -= 1;
      merged[{state, syl.gen}] += step;
      if (step > 0) state[c] += 1;
    }
  }
  std::vector<WalkCrossing> out;
  for (const auto& [key, count] : merged)
    if (count != 0) out.push_back(WalkCrossing{key.first, key.second, count});
  return out;
}

// Exponent vectors with 1-norm <= cap, smallest norm first, then
// lexicographic; the deterministic order makes searches reproducible.
std::vector<SchreierSystem::Vec> vectors_by_norm(int rank, int cap) {
  std::vector<SchreierSystem::Vec> out;
  SchreierSystem::Vec cur(static_cast<std::size_t>(rank), 0);
  auto walk = [&](auto&& self, int pos, int budget) -> void {
    if (pos == rank) {
      out.push_back(cur);
      return;
    }
    for (long long v = -budget; v <= budget; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, budget - static_cast<int>(v < 0 ? -v : v));
    }
    cur[static_cast<std::size_t>(pos)] = 0;
  };
  walk(walk, 0, cap);
  std::stable_sort(out.begin(), out.end(),
                   [](const SchreierSystem::Vec& a, const SchreierSystem::Vec& b) {
                     long long na = 0, nb = 0;
                     for (long long v : a) na += v < 0 ? -v : v;
                     for (long long v : b) nb += v < 0 ? -v : v;
                     if (na != nb) return na < nb;
                     return a < b;
                   });
  return out;
}

}  // namespace

bool residue_criterion(const Word& v, const std::vector<int>& marked,
                       const QuotientSpec& q) {
  if (q.rank < 1) throw RankTooSmall("quotient rank must be positive");
  if (v.max_generator() > q.rank)
    throw RankMismatch("word uses letters beyond the quotient rank");
  for (int k : marked)
    if (k < 1 || k > q.rank) throw IndexOutOfRange("marked index outside the alphabet");
  for (int j = 1; j <= q.rank; ++j) {
    if (contains(marked, j)) continue;
    if (!coset_map(fox_derivative(v, j), q).is_zero()) return false;
  }
  // Nonzero residues are definitive at any depth; an all-zero answer is only
  // as deep as the representation, which is faithful just for the abelian
  // quotient.
  if (q.c != 2)
    throw Inconclusive("residues vanish only through the truncation beyond the abelian quotient");
  return true;
}

bool relative_criterion(const Word& v, const std::vector<int>& marked, int n,
                        int d) {
  if (n < 1) throw PreconditionFailed("filtration depth must be positive");
  if (d < n + 1) throw Inconclusive("truncation must reach one past the depth");
  for (int k : marked)
    if (k < 1) throw IndexOutOfRange("marked index must be positive");
  int rank = v.max_generator();
  for (int k : marked) rank = std::max(rank, k);
  if (rank == 0) return true;
  std::vector<Word> images = retraction_images(rank, marked);
  for (int j = 1; j <= rank; ++j) {
    RingElement dv = fox_derivative(v, j);
    // Marked derivatives must agree with an element of the marked subring
    // n deep; the retraction image is such an element, and conversely any
    // agreement forces agreement with the retraction image.
    RingElement test = contains(marked, j) ? dv - substitute(dv, images) : dv;
    std::optional<int> val = ideal_valuation(test, d);
    if (val && *val < n) return false;
  }
  return true;
}

Word retract_word(const Word& v, const std::vector<int>& marked) {
  std::vector<Syllable> kept;
  for (const Syllable& s : v.syllables())
    if (contains(marked, s.gen)) kept.push_back(s);
  return Word(std::move(kept));
}

ConjugacySearch conjugate_into_subgroup_mod(const Word& r, int i,
                                            const std::vector<int>& marked,
                                            SchreierSystem& sys,
                                            const SearchBounds& bounds) {
  const int rank = sys.rank();
  for (int k : marked)
    if (k < 1 || k > rank) throw IndexOutOfRange("marked index outside the alphabet");
  if (i < 1) throw LevelOutOfRange("layer index must be positive");
  if (bounds.trunc < i + 1)
    throw Inconclusive("truncation must reach one layer past the word");
  if (!sys.in_kernel(r)) throw NotInVerbal("word lies outside the kernel");

  ConjugacySearch res;
  res.level = i;

  Word sw = sys.rewrite(r);
  std::optional<int> cls = lcs_class(sw, bounds.trunc);
  if (!cls || *cls != i)
    throw PreconditionFailed("word does not sit at the stated layer");

  // Leading grade and layer are computed by independent routes; they must
  // agree before either is trusted.
  RingElement rm1 = RingElement::from_word(r) - RingElement::one();
  TruncSeries lf = leading_form(rm1, sys, bounds.trunc);
  if (lf.min_degree() != std::optional<int>(i))
    throw InternalInconsistency("leading form disagrees with the layer");

  auto try_candidate = [&](const Word& f) -> bool {
    ++res.candidates_tried;
    Word w = conjugate(r, f);
    Word swf = sys.rewrite(w);
    std::vector<int> kalpha = alpha_ids(sys, marked);
    if (!relative_criterion(swf, kalpha, i, bounds.trunc)) return false;
    // Membership granted: the retraction of the symbol word spells the
    // subgroup part, and the remainder lands one layer deeper by itself.
    Word h = sys.spell(retract_word(swf, kalpha));
    Word u = inverse(h) * w;
    if (!supported_on(h, marked))
      throw InternalInconsistency("spelled subgroup part left the marked block");
    if (!sys.in_kernel(u))
      throw InternalInconsistency("conjugacy residue left the kernel");
    if (!class_at_least(sys.rewrite(u), i + 1, bounds.trunc))
      throw InternalInconsistency("conjugacy residue missed the deeper layer");
    res.status = ConjugacyStatus::witness;
    res.witness = ConjugacyWitness{f, h, u};
    return true;
  };

  if (i == 1) {
    // The first layer is decided exactly. Conjugating by f replays the same
    // walk with every state shifted by the exponent vector of f, and
    // conjugation by kernel elements is invisible one layer deeper, so the
    // conjugate's class is the signed sum of the shifted pairs that stay off
    // the tree: those keeping a nonzero base coordinate above their fiber.
    // Landing in the marked block forces every surviving pair to carry a
    // marked fiber and a base agreeing with the shift on the unmarked
    // coordinates; every other crossing has to melt into the tree, which
    // pins the shift above its fiber to its own base. A consistent set of
    // pins yields a conjugator, an inconsistent one rules them all out.
    std::vector<WalkCrossing> crossings = walk_crossings(r, rank);
    auto unmarked_part = [&](const SchreierSystem::Vec& b) {
      SchreierSystem::Vec off = b;
      for (int c = 1; c <= rank; ++c)
        if (contains(marked, c)) off[static_cast<std::size_t>(c - 1)] = 0;
      return off;
    };
    std::set<SchreierSystem::Vec> anchors;
    for (const WalkCrossing& x : crossings) anchors.insert(unmarked_part(x.base));
    for (const SchreierSystem::Vec& w0 : anchors) {
      bool feasible = true;
      SchreierSystem::Vec shift = w0;
      std::vector<bool> pinned(static_cast<std::size_t>(rank), false);
      for (const WalkCrossing& x : crossings) {
        if (unmarked_part(x.base) == w0 && contains(marked, x.fiber)) continue;
        for (int c = x.fiber + 1; c <= rank && feasible; ++c) {
          std::size_t idx = static_cast<std::size_t>(c - 1);
          long long need = x.base[idx];
          if (!contains(marked, c)) {
            if (w0[idx] != need) feasible = false;
          } else if (pinned[idx]) {
            if (shift[idx] != need) feasible = false;
          } else {
            pinned[idx] = true;
            shift[idx] = need;
          }
        }
        if (!feasible) break;
      }
      if (!feasible) continue;
      if (!try_candidate(sys.representative_of_vector(shift)))
        throw InternalInconsistency("an aligned shift failed the membership criterion");
      return res;
    }
    res.status = ConjugacyStatus::provably_none;
    res.reason =
        "the first-layer crossings pin conflicting shifts, so every conjugate "
        "keeps a symbol outside the marked block";
    return res;
  }

  // Deeper layers get a bounded search over transversal representatives and
  // short words; exhausting it proves nothing, so the caller stays agnostic.
  std::vector<Word> candidates;
  std::set<Word, WordLess> seen;
  auto push = [&](const Word& f) {
    if (seen.insert(f).second) candidates.push_back(f);
  };
  for (const Word& f : enumerate_reduced_words(rank, bounds.conj_len)) push(f);
  for (const SchreierSystem::Vec& v : vectors_by_norm(rank, bounds.conj_norm))
    push(sys.representative_of_vector(v));
  for (const Word& f : candidates)
    if (try_candidate(f)) return res;

  res.status = ConjugacyStatus::none_within_bounds;
  return res;
}

bool verify_witness(const Witness& w, const std::vector<Word>& relators,
                    const std::vector<int>& marked, SchreierSystem& sys,
                    int trunc) {
  if (w.level.k != 1) return false;
  if (w.word_class < 1 || w.word_class >= w.level.l) return false;
  if (w.word.is_identity()) return false;
  if (!supported_on(w.word, marked)) return false;

  Word p;
  for (const RootFactor& f : w.product) {
    if (f.relator < 0 || f.relator >= static_cast<int>(relators.size())) return false;
    if (f.sign != 1 && f.sign != -1) return false;
    p = p * conjugate(power(relators[static_cast<std::size_t>(f.relator)], f.sign),
                      f.conjugator);
  }
  if (!(p * w.residue == w.word)) return false;

  if (!sys.in_kernel(w.residue)) return false;
  if (!class_at_least(sys.rewrite(w.residue), w.level.l, trunc)) return false;

  if (!sys.in_kernel(w.word)) return false;
  std::optional<int> cls = lcs_class(sys.rewrite(w.word), trunc);
  return cls && *cls == w.word_class;
}

Witness climb_witness(Witness w, const LevelIndex& target,
                      const std::vector<Word>& relators,
                      const std::vector<int>& marked, SchreierSystem& sys,
                      int trunc) {
  if (target.k != 1)
    throw LevelOutOfRange("stage two and deeper carry no witness machinery");
  if (marked.size() < 2)
    throw RankTooSmall("climbing needs at least two marked letters");
  if (target.l < w.level.l)
    throw PreconditionFailed("target lies below the witness layer");
  if (trunc < target.l)
    throw Inconclusive("truncation too shallow to certify the target layer");
  if (!verify_witness(w, relators, marked, sys, trunc))
    throw PreconditionFailed("incoming witness failed certificate verification");

  std::vector<int> marked_sorted = marked;
  std::sort(marked_sorted.begin(), marked_sorted.end());

  while (w.level.l < target.l) {
    Word sw = sys.rewrite(w.word);

    // The minimal derivative valuation over the symbol alphabet sits exactly
    // one below the class; commutation with any other marked-block letter
    // raises that minimum, and with it the class, by exactly one.
    std::set<int> used;
    for (const Syllable& s : sw.syllables()) used.insert(s.gen);
    int i0 = 0;
    int best = trunc + 1;
    for (int id : used) {
      std::optional<int> val = ideal_valuation(fox_derivative(sw, id), trunc);
      int v = val ? *val : trunc + 1;
      if (v < best) {
        best = v;
        i0 = id;
      }
    }
    if (i0 == 0 || best != w.word_class - 1)
      throw InternalInconsistency("derivative valuations disagree with the witness class");

    int x_id = 0;
    for (int id = 1; id <= sys.registered_count(); ++id) {
      if (id == i0) continue;
      if (is_alpha_symbol(sys, id, marked)) {
        x_id = id;
        break;
      }
    }
    if (x_id == 0) {
      // Register a fresh marked-block pair; a base letter above the fiber
      // index keeps the pair off the tree, and two marked letters guarantee
      // one at norm 1 already.
      for (const SchreierSystem::Vec& vec : vectors_by_norm(sys.rank(), 4)) {
        bool marked_only = true;
        for (int c = 1; c <= sys.rank(); ++c)
          if (!contains(marked, c) && vec[static_cast<std::size_t>(c - 1)] != 0) {
            marked_only = false;
            break;
          }
        if (!marked_only) continue;
        Word rep = sys.representative_of_vector(vec);
        for (int j : marked_sorted) {
          if (sys.is_tree_pair(rep, j)) continue;
          int id = sys.pair_id(rep, j);
          if (id != i0) {
            x_id = id;
            break;
          }
        }
        if (x_id != 0) break;
      }
      if (x_id == 0)
        throw InternalInconsistency("no commutation letter found in the marked block");
    }

    // [v, x] = (P^-1)^u * P^(xu) * [u, x] for v = P u: the product
    // certificate transforms by reversing with flipped signs and conjugating
    // everything through u, then repeating the original factors through xu.
    Word x = sys.generator_word(x_id);
    Word u = w.residue;
    std::vector<RootFactor> next;
    next.reserve(w.product.size() * 2);
    for (auto it = w.product.rbegin(); it != w.product.rend(); ++it)
      next.push_back(RootFactor{it->relator, -it->sign, it->conjugator * u});
    for (const RootFactor& f : w.product)
      next.push_back(RootFactor{f.relator, f.sign, f.conjugator * (x * u)});

    w.word = commutator(w.word, x);
    w.product = std::move(next);
    w.residue = commutator(u, x);
    w.word_class += 1;
    w.level.l += 1;

    if (!verify_witness(w, relators, marked, sys, trunc))
      throw InternalInconsistency("climb step broke a witness certificate");
  }
  return w;
}

Verdict freiheit_check(const Word& r, int rank, const ParsedSignature& sig,
                       const std::vector<LevelIndex>& targets,
                       const SearchBounds& bounds) {
  if (rank <= 2) throw RankTooSmall("the freeness test needs rank at least 3");
  if (r.max_generator() > rank)
    throw RankMismatch("relator uses generators beyond the rank");

  std::vector<int> marked;
  for (int j = 1; j < rank; ++j) marked.push_back(j);

  SchreierSystem sys(rank, sig.c);
  Verdict verdict;
  verdict.bounds = bounds;
  verdict.level = locate_level(r, sig, sys, bounds.trunc);
  verdict.conj = conjugate_into_subgroup_mod(r, verdict.level, marked, sys, bounds);

  std::vector<Word> relators{r};

  if (verdict.conj.status == ConjugacyStatus::witness) {
    verdict.outcome = Outcome::NotFree;
    const ConjugacyWitness& cw = *verdict.conj.witness;
    Witness base;
    base.word = cw.h;
    base.level = LevelIndex{1, verdict.level + 1};
    base.product = {RootFactor{0, 1, cw.conjugator}};
    base.residue = inverse(cw.residue);
    base.word_class = verdict.level;
    if (!verify_witness(base, relators, marked, sys, bounds.trunc))
      throw InternalInconsistency("base witness failed certificate verification");
    for (const LevelIndex& t : targets) {
      if (t.k != 1)
        throw LevelOutOfRange("stage two and deeper carry no witness machinery");
      if (t.l <= verdict.level) {
        // At or below the relator's own layer the closure is swallowed by
        // the layer and the two sides agree for free; nothing to witness.
        verdict.unwitnessed.push_back(t);
        continue;
      }
      verdict.witnesses.push_back(
          climb_witness(base, t, relators, marked, sys, bounds.trunc));
    }
  } else if (verdict.conj.status == ConjugacyStatus::provably_none) {
    verdict.outcome = Outcome::Free;
    verdict.provable = true;
    SampleSpec spec;
    spec.relators = relators;
    spec.rank = rank;
    spec.conj_len = bounds.conj_len;
    spec.factors = 2;
    spec.count = bounds.oracle_samples;
    spec.seed = bounds.oracle_seed;
    spec.level = LevelIndex{1, verdict.level + 1};
    FalsifyReport rep = falsify_freedom(spec, marked, sys);
    verdict.oracle.samples = rep.samples;
    verdict.oracle.subgroup_hits = rep.subgroup_hits;
    verdict.oracle.counterexamples = static_cast<long long>(rep.counterexamples.size());
    if (!rep.counterexamples.empty())
      throw InternalInconsistency("sampling found a counterexample against a provable rejection");
  } else {
    verdict.outcome = Outcome::Unknown;
  }
  return verdict;
}

}  // namespace freikalk
