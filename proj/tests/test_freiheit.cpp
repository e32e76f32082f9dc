#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "freikalk/errors.hpp"
#include "freikalk/filtration.hpp"
#include "freikalk/fox.hpp"
#include "freikalk/freiheit.hpp"
#include "freikalk/magnus.hpp"
#include "freikalk/oracle.hpp"
#include "freikalk/parser.hpp"
#include "freikalk/quotient.hpp"
#include "freikalk/schreier.hpp"
#include "freikalk/word.hpp"

using namespace freikalk;

namespace {

Word W(const std::string& s) { return parse_word(s); }

bool has(const std::vector<int>& xs, int x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// Re-derive the marked-block symbol ids from the public registry, so the
// tests do not trust the library's own selection.
std::vector<int> marked_block_ids(SchreierSystem& sys, const std::vector<int>& marked) {
  std::vector<int> ids;
  for (int id = 1; id <= sys.registered_count(); ++id) {
    auto [s, j] = sys.pair_of(id);
    if (has(marked, j) && supported_on(s, marked)) ids.push_back(id);
  }
  return ids;
}

// Nonempty random word over the marked letters that lies in the kernel and
// sits at the first layer: a product of two conjugated brackets cannot melt.
Word random_first_layer_marked(Sampler& rng) {
  Word base = commutator(Word::letter(1), Word::letter(2));
  Word u1 = rng.word(2, 3);
  Word u2 = rng.word(2, 3);
  return conjugate(base, u1) * conjugate(base, u2);
}

// Element of the second derived layer of the kernel: a commutator of two
// kernel elements always sits at least two deep.
Word random_deep_kernel(Sampler& rng) {
  Word k1 = conjugate(commutator(Word::letter(1), Word::letter(2)), rng.word(3, 3));
  Word k2 = conjugate(commutator(Word::letter(1), Word::letter(3)), rng.word(3, 3));
  return commutator(k1, k2);
}

SearchBounds small_bounds() {
  SearchBounds b;
  b.conj_norm = 2;
  b.conj_len = 2;
  b.trunc = 5;
  b.oracle_samples = 200;
  b.oracle_seed = 7;
  return b;
}

}  // namespace

TEST_CASE("residue criterion splits the desk relators") {
  QuotientSpec q{3, 2};
  std::vector<int> marked{1, 2};
  CHECK(residue_criterion(W("[y1,y2]"), marked, q));
  CHECK(residue_criterion(conjugate(W("[y1,y2]"), W("y3")), marked, q));
  CHECK_FALSE(residue_criterion(W("[y1,y3]"), marked, q));
  CHECK_FALSE(residue_criterion(W("[y2,y3]"), marked, q));
  CHECK_FALSE(residue_criterion(commutator(W("x1"), W("x2")), {1}, QuotientSpec{2, 2}));
  CHECK(residue_criterion(W("x1^2"), {1}, QuotientSpec{2, 2}));
}

TEST_CASE("residue criterion depth policy and guards") {
  // Beyond the abelian quotient a nonzero residue still refutes, but an
  // all-zero scan is only truncation-deep.
  CHECK_FALSE(residue_criterion(W("[x1,x2]"), {1}, QuotientSpec{2, 3}));
  CHECK_THROWS_AS(residue_criterion(W("x1^2"), {1}, (QuotientSpec{2, 3})), Inconclusive);
  CHECK_THROWS_AS(residue_criterion(W("x1"), {1}, (QuotientSpec{0, 2})), RankTooSmall);
  CHECK_THROWS_AS(residue_criterion(W("x1*x3"), {1}, (QuotientSpec{2, 2})), RankMismatch);
  CHECK_THROWS_AS(residue_criterion(W("x1"), {5}, (QuotientSpec{2, 2})), IndexOutOfRange);
  CHECK_THROWS_AS(residue_criterion(W("x1"), {0}, (QuotientSpec{2, 2})), IndexOutOfRange);
}

TEST_CASE("residue criterion on constructed families") {
  Sampler rng(11);
  QuotientSpec q{3, 2};
  std::vector<int> marked{1, 2};
  for (int t = 0; t < 20; ++t) {
    // Words of the marked subgroup have identically zero unmarked derivatives.
    Word w = rng.word(2, 8);
    CHECK(residue_criterion(w, marked, q));
    // A single unmarked letter spliced in leaves a unit residue there.
    Word bad = w * Word::letter(3) * rng.word(2, 4);
    CHECK_FALSE(residue_criterion(bad, marked, q));
  }
}

TEST_CASE("relative criterion desk values") {
  std::vector<int> marked{1, 2};
  // The bracket with the outside letter clears depth one (it lies in the
  // commutator subgroup) but not depth two.
  CHECK(relative_criterion(W("[y1,y3]"), marked, 1, 4));
  CHECK_FALSE(relative_criterion(W("[y1,y3]"), marked, 2, 4));
  // Marked-subgroup words pass at every depth: the retraction fixes them.
  CHECK(relative_criterion(W("[y1,y2]"), marked, 1, 4));
  CHECK(relative_criterion(W("[y1,y2]"), marked, 3, 5));
  CHECK(relative_criterion(W("y1^2*y2^-1"), marked, 3, 5));
  // A stray unmarked letter fails already at depth one.
  CHECK_FALSE(relative_criterion(W("y1*y3"), marked, 1, 4));
}

TEST_CASE("relative criterion guards") {
  CHECK_THROWS_AS(relative_criterion(W("y1"), {1}, 0, 4), PreconditionFailed);
  CHECK_THROWS_AS(relative_criterion(W("y1"), {1}, 2, 2), Inconclusive);
  CHECK_THROWS_AS(relative_criterion(W("y1"), {0}, 1, 4), IndexOutOfRange);
}

TEST_CASE("relative criterion recognizes constructed members and rejects escapes") {
  Sampler rng(23);
  std::vector<int> marked{1, 2};
  for (int n = 1; n <= 2; ++n) {
    for (int t = 0; t < 15; ++t) {
      // a1 * c^g * a2 with c a weight-(n+1) left-normed bracket lies in the
      // marked subgroup times the (n+1)-st lower-central term.
      Word c = commutator(Word::letter(1), Word::letter(3));
      for (int w = 1; w < n; ++w) c = commutator(c, Word::letter(2));
      c = commutator(c, Word::letter(3));
      Word v = rng.word(2, 4) * conjugate(c, rng.word(3, 3)) * rng.word(2, 4);
      CHECK(relative_criterion(v, marked, n, n + 2));
      // An unmarked letter with nonzero exponent sum escapes at every depth.
      Word bad = rng.word(2, 4) * power(Word::letter(3), rng.range(1, 3)) * rng.word(2, 4);
      CHECK_FALSE(relative_criterion(bad, marked, n, n + 2));
    }
  }
}

TEST_CASE("word retraction is the marked-letter homomorphism") {
  std::vector<int> marked{1, 2};
  CHECK(retract_word(W("[y1,y3]") * W("y2"), marked) == W("y2"));
  CHECK(retract_word(W("y3^4"), marked).is_identity());
  Sampler rng(5);
  for (int t = 0; t < 20; ++t) {
    Word a = rng.word(3, 6);
    Word b = rng.word(3, 6);
    CHECK(retract_word(a * b, marked) == retract_word(a, marked) * retract_word(b, marked));
    CHECK(retract_word(retract_word(a, marked), marked) == retract_word(a, marked));
    CHECK(supported_on(retract_word(a, marked), marked));
  }
}

TEST_CASE("conjugacy search guards") {
  SchreierSystem sys(3, 2);
  SearchBounds b = small_bounds();
  Word r = W("[y1,y2]");
  CHECK_THROWS_AS(conjugate_into_subgroup_mod(r, 1, {0}, sys, b), IndexOutOfRange);
  CHECK_THROWS_AS(conjugate_into_subgroup_mod(r, 1, {4}, sys, b), IndexOutOfRange);
  CHECK_THROWS_AS(conjugate_into_subgroup_mod(r, 0, {1, 2}, sys, b), LevelOutOfRange);
  SearchBounds shallow = b;
  shallow.trunc = 2;
  CHECK_THROWS_AS(conjugate_into_subgroup_mod(r, 2, {1, 2}, sys, shallow), Inconclusive);
  CHECK_THROWS_AS(conjugate_into_subgroup_mod(W("y1"), 1, {1, 2}, sys, b), NotInVerbal);
  // Stated layer must match the computed one in both directions. Depth in
  // the kernel comes from brackets of two kernel elements; bracketing with
  // an ambient letter stays at the first layer.
  CHECK_THROWS_AS(conjugate_into_subgroup_mod(r, 2, {1, 2}, sys, b), PreconditionFailed);
  Word deep = commutator(W("[y1,y2]"), W("[y1,y3]"));
  CHECK_THROWS_AS(conjugate_into_subgroup_mod(deep, 1, {1, 2}, sys, b), PreconditionFailed);
}

TEST_CASE("conjugacy search finds the desk witnesses at the first layer") {
  std::vector<int> marked{1, 2};
  SearchBounds b = small_bounds();

  SUBCASE("a marked relator is its own witness") {
    SchreierSystem sys(3, 2);
    Word r = W("[y1,y2]");
    ConjugacySearch cs = conjugate_into_subgroup_mod(r, 1, marked, sys, b);
    REQUIRE(cs.status == ConjugacyStatus::witness);
    REQUIRE(cs.witness.has_value());
    CHECK(cs.witness->conjugator.is_identity());
    CHECK(cs.witness->h == r);
    CHECK(cs.witness->residue.is_identity());
    CHECK(cs.candidates_tried == 1);
    CHECK(cs.level == 1);
  }

  SUBCASE("a conjugated marked relator is pulled back by the aligning shift") {
    SchreierSystem sys(3, 2);
    Word r = conjugate(W("[y1,y2]"), W("y3"));
    ConjugacySearch cs = conjugate_into_subgroup_mod(r, 1, marked, sys, b);
    REQUIRE(cs.status == ConjugacyStatus::witness);
    CHECK(cs.witness->conjugator == W("y3^-1"));
    CHECK(cs.witness->h == W("[y1,y2]"));
    CHECK(cs.witness->residue.is_identity());
    // The witness equation holds on the nose.
    CHECK(cs.witness->h * cs.witness->residue == conjugate(r, cs.witness->conjugator));
  }

  SUBCASE("witness output is deterministic") {
    SchreierSystem s1(3, 2), s2(3, 2);
    Word r = conjugate(W("[y1,y2]"), W("y3"));
    ConjugacySearch a = conjugate_into_subgroup_mod(r, 1, marked, s1, b);
    ConjugacySearch c = conjugate_into_subgroup_mod(r, 1, marked, s2, b);
    CHECK(a.witness->conjugator == c.witness->conjugator);
    CHECK(a.witness->h == c.witness->h);
    CHECK(a.witness->residue == c.witness->residue);
  }
}

TEST_CASE("conjugacy rejection at the first layer is exact and exhaustive") {
  std::vector<int> marked{1, 2};
  SearchBounds b = small_bounds();
  SchreierSystem sys(3, 2);
  Word r = W("[y1,y3]");
  ConjugacySearch cs = conjugate_into_subgroup_mod(r, 1, marked, sys, b);
  REQUIRE(cs.status == ConjugacyStatus::provably_none);
  CHECK_FALSE(cs.witness.has_value());
  CHECK_FALSE(cs.reason.empty());

  // The rejection implies residue nonvanishing for the relator itself.
  CHECK_FALSE(residue_criterion(r, marked, QuotientSpec{3, 2}));

  // And it dominates the bounded search: every conjugate up to the bounds
  // fails the relative criterion over the marked symbol block.
  std::set<Word, WordLess> cands;
  for (const Word& f : enumerate_reduced_words(3, 3)) cands.insert(f);
  for (long long a = -2; a <= 2; ++a)
    for (long long c = -2; c <= 2; ++c)
      for (long long d = -2; d <= 2; ++d)
        cands.insert(sys.representative_of_vector({a, c, d}));
  for (const Word& f : cands) {
    Word swf = sys.rewrite(conjugate(r, f));
    std::vector<int> kalpha = marked_block_ids(sys, marked);
    CHECK_FALSE(relative_criterion(swf, kalpha, 1, 4));
  }
}

TEST_CASE("first-layer rejection is stable under conjugation of the input") {
  std::vector<int> marked{1, 2};
  SearchBounds b = small_bounds();
  Sampler rng(31);
  for (int t = 0; t < 10; ++t) {
    SchreierSystem sys(3, 2);
    Word r = conjugate(W("[y1,y3]"), rng.word(3, 4));
    ConjugacySearch cs = conjugate_into_subgroup_mod(r, 1, marked, sys, b);
    CHECK(cs.status == ConjugacyStatus::provably_none);
  }
}

TEST_CASE("constructed conjugates into the marked block are always found") {
  std::vector<int> marked{1, 2};
  SearchBounds b = small_bounds();
  Sampler rng(47);
  for (int t = 0; t < 12; ++t) {
    Word h = random_first_layer_marked(rng);
    Word f = rng.word(3, 5);  // deliberately past the bounded-search caps
    Word r = conjugate(h, f) * random_deep_kernel(rng);
    SchreierSystem sys(3, 2);
    REQUIRE(sys.in_kernel(r));
    ConjugacySearch cs = conjugate_into_subgroup_mod(r, 1, marked, sys, b);
    REQUIRE_MESSAGE(cs.status == ConjugacyStatus::witness, "trial ", t);
    // Re-derive every claim of the witness.
    CHECK(supported_on(cs.witness->h, marked));
    CHECK(cs.witness->h * cs.witness->residue == conjugate(r, cs.witness->conjugator));
    REQUIRE(sys.in_kernel(cs.witness->residue));
    CHECK(class_at_least(sys.rewrite(cs.witness->residue), 2, b.trunc));
  }
}

TEST_CASE("deeper layers fall back to the bounded search") {
  std::vector<int> marked{1, 2};
  SearchBounds b = small_bounds();

  SUBCASE("a marked second-layer word is its own witness") {
    SchreierSystem sys(3, 2);
    Word r = commutator(W("[y1,y2]"), conjugate(W("[y1,y2]"), W("y2")));
    ConjugacySearch cs = conjugate_into_subgroup_mod(r, 2, marked, sys, b);
    REQUIRE(cs.status == ConjugacyStatus::witness);
    CHECK(cs.witness->conjugator.is_identity());
    CHECK(cs.witness->h == r);
    CHECK(cs.witness->residue.is_identity());
  }

  SUBCASE("an unreachable second-layer word exhausts the bounds without a verdict") {
    SchreierSystem sys(3, 2);
    Word r = commutator(W("[y1,y3]"), W("[y2,y3]"));
    REQUIRE(lcs_class(sys.rewrite(r), b.trunc) == std::optional<int>(2));
    ConjugacySearch cs = conjugate_into_subgroup_mod(r, 2, marked, sys, b);
    CHECK(cs.status == ConjugacyStatus::none_within_bounds);
    CHECK(cs.candidates_tried > 0);
  }
}

TEST_CASE("witness verification re-derives all three certificates") {
  SchreierSystem sys(3, 2);
  std::vector<int> marked{1, 2};
  std::vector<Word> relators{W("[y1,y2]")};
  Witness w;
  w.word = W("[y1,y2]");
  w.level = LevelIndex{1, 2};
  w.product = {RootFactor{0, 1, Word()}};
  w.residue = Word();
  w.word_class = 1;
  REQUIRE(verify_witness(w, relators, marked, sys, 5));

  // The same data also witnesses deeper targets: the word stays two layers
  // shallower than the closure it certifies.
  Witness deep = w;
  deep.level = LevelIndex{1, 3};
  CHECK(verify_witness(deep, relators, marked, sys, 5));

  SUBCASE("tampered stage index") {
    Witness t = w;
    t.level.k = 2;
    CHECK_FALSE(verify_witness(t, relators, marked, sys, 5));
  }
  SUBCASE("tampered class ordering") {
    Witness t = w;
    t.word_class = 2;
    CHECK_FALSE(verify_witness(t, relators, marked, sys, 5));
  }
  SUBCASE("identity word refused") {
    Witness t = w;
    t.word = Word();
    t.product.clear();
    CHECK_FALSE(verify_witness(t, relators, marked, sys, 5));
  }
  SUBCASE("unmarked support refused") {
    Witness t = w;
    t.word = W("y3") * W("[y1,y2]");
    CHECK_FALSE(verify_witness(t, relators, marked, sys, 5));
  }
  SUBCASE("bad product index or sign") {
    Witness t = w;
    t.product = {RootFactor{1, 1, Word()}};
    CHECK_FALSE(verify_witness(t, relators, marked, sys, 5));
    t.product = {RootFactor{0, 2, Word()}};
    CHECK_FALSE(verify_witness(t, relators, marked, sys, 5));
  }
  SUBCASE("product replay must reproduce the word") {
    Witness t = w;
    t.residue = W("[y1,y2]");
    CHECK_FALSE(verify_witness(t, relators, marked, sys, 5));
  }
  SUBCASE("residue must clear the target layer") {
    Witness t = w;
    t.product.clear();
    t.residue = W("[y1,y2]");  // replay now matches, class is too shallow
    CHECK_FALSE(verify_witness(t, relators, marked, sys, 5));
  }
  SUBCASE("stated class must equal the computed class") {
    // Every other certificate holds (empty product, the word is its own
    // residue two layers deep), only the stated class lies one low.
    Witness t = w;
    t.word = commutator(W("[y1,y2]"), conjugate(W("[y1,y2]"), W("y2")));
    t.product.clear();
    t.residue = t.word;
    REQUIRE(sys.in_kernel(t.residue));
    CHECK_FALSE(verify_witness(t, relators, marked, sys, 5));
  }
}

TEST_CASE("witness climbing raises the layer one commutation at a time") {
  SchreierSystem sys(3, 2);
  std::vector<int> marked{1, 2};
  std::vector<Word> relators{W("[y1,y2]")};
  Witness base;
  base.word = W("[y1,y2]");
  base.level = LevelIndex{1, 2};
  base.product = {RootFactor{0, 1, Word()}};
  base.residue = Word();
  base.word_class = 1;

  SUBCASE("climb to the fourth layer") {
    Witness top = climb_witness(base, LevelIndex{1, 4}, relators, marked, sys, 6);
    CHECK(top.level == LevelIndex{1, 4});
    CHECK(top.word_class == 3);
    CHECK(supported_on(top.word, marked));
    CHECK(lcs_class(sys.rewrite(top.word), 6) == std::optional<int>(3));
    CHECK(verify_witness(top, relators, marked, sys, 6));
  }

  SUBCASE("climb to the current layer is a no-op") {
    Witness same = climb_witness(base, LevelIndex{1, 2}, relators, marked, sys, 5);
    CHECK(same.word == base.word);
    CHECK(same.level == base.level);
  }

  SUBCASE("guards") {
    CHECK_THROWS_AS(climb_witness(base, (LevelIndex{2, 3}), relators, marked, sys, 5),
                    LevelOutOfRange);
    CHECK_THROWS_AS(climb_witness(base, (LevelIndex{1, 3}), relators, {1}, sys, 5),
                    RankTooSmall);
    CHECK_THROWS_AS(climb_witness(base, (LevelIndex{1, 1}), relators, marked, sys, 5),
                    PreconditionFailed);
    CHECK_THROWS_AS(climb_witness(base, (LevelIndex{1, 4}), relators, marked, sys, 3),
                    Inconclusive);
    Witness broken = base;
    broken.word_class = 2;
    CHECK_THROWS_AS(climb_witness(broken, (LevelIndex{1, 3}), relators, marked, sys, 5),
                    PreconditionFailed);
  }
}

TEST_CASE("freeness verdicts on the desk relators") {
  ParsedSignature sig = parse_signature("gamma2;m=[2]");
  std::vector<LevelIndex> targets{LevelIndex{1, 2}, LevelIndex{1, 3}};
  SearchBounds b = small_bounds();

  SUBCASE("outside bracket: free with a provable rejection") {
    Verdict v = freiheit_check(W("[y1,y3]"), 3, sig, targets, b);
    CHECK(v.outcome == Outcome::Free);
    CHECK(v.provable);
    CHECK(v.level == 1);
    CHECK(v.conj.status == ConjugacyStatus::provably_none);
    CHECK(v.oracle.samples == 200);
    CHECK(v.oracle.counterexamples == 0);
    CHECK(v.witnesses.empty());
  }

  SUBCASE("inside bracket: witnessed failure at every target") {
    Verdict v = freiheit_check(W("[y1,y2]"), 3, sig, targets, b);
    CHECK(v.outcome == Outcome::NotFree);
    CHECK_FALSE(v.provable);
    REQUIRE(v.witnesses.size() == 2);
    CHECK(v.witnesses[0].level == LevelIndex{1, 2});
    CHECK(v.witnesses[1].level == LevelIndex{1, 3});
    SchreierSystem fresh(3, 2);
    std::vector<Word> relators{W("[y1,y2]")};
    for (const Witness& w : v.witnesses)
      CHECK(verify_witness(w, relators, {1, 2}, fresh, b.trunc));
  }

  SUBCASE("conjugated inside bracket: same verdict through the found conjugator") {
    Verdict v = freiheit_check(conjugate(W("[y1,y2]"), W("y3")), 3, sig, targets, b);
    CHECK(v.outcome == Outcome::NotFree);
    REQUIRE(v.conj.witness.has_value());
    CHECK(v.conj.witness->conjugator == W("y3^-1"));
    REQUIRE(v.witnesses.size() == 2);
    SchreierSystem fresh(3, 2);
    std::vector<Word> relators{conjugate(W("[y1,y2]"), W("y3"))};
    for (const Witness& w : v.witnesses)
      CHECK(verify_witness(w, relators, {1, 2}, fresh, b.trunc));
  }

  SUBCASE("targets at or below the relator layer are reported unwitnessed") {
    Verdict v = freiheit_check(W("[y1,y2]"), 3, sig, {LevelIndex{1, 1}}, b);
    CHECK(v.outcome == Outcome::NotFree);
    CHECK(v.witnesses.empty());
    REQUIRE(v.unwitnessed.size() == 1);
    CHECK(v.unwitnessed[0] == LevelIndex{1, 1});
  }

  SUBCASE("second-layer relator out of reach of both routes is unknown") {
    Verdict v = freiheit_check(commutator(W("[y1,y3]"), W("[y2,y3]")), 3, sig,
                               targets, b);
    CHECK(v.outcome == Outcome::Unknown);
    CHECK_FALSE(v.provable);
    CHECK(v.level == 2);
    CHECK(v.conj.status == ConjugacyStatus::none_within_bounds);
    CHECK(v.witnesses.empty());
  }

  SUBCASE("guards") {
    CHECK_THROWS_AS(freiheit_check(W("[x1,x2]"), 2, sig, targets, b), RankTooSmall);
    CHECK_THROWS_AS(freiheit_check(W("[y1,y4]"), 3, sig, targets, b), RankMismatch);
    CHECK_THROWS_AS(freiheit_check(W("[y1,y2]"), 3, sig, {LevelIndex{2, 2}}, b),
                    LevelOutOfRange);
  }
}

TEST_CASE("membership side of the freeness test on constructed relators") {
  // Relators built as a conjugated marked-subgroup word times deeper noise
  // must always be caught as not free.
  ParsedSignature sig = parse_signature("gamma2;m=[2]");
  SearchBounds b = small_bounds();
  b.oracle_samples = 50;
  Sampler rng(101);
  for (int t = 0; t < 5; ++t) {
    Word r = conjugate(random_first_layer_marked(rng), rng.word(3, 4)) *
             random_deep_kernel(rng);
    Verdict v = freiheit_check(r, 3, sig, {LevelIndex{1, 2}}, b);
    REQUIRE_MESSAGE(v.outcome == Outcome::NotFree, "trial ", t);
    REQUIRE(v.witnesses.size() == 1);
    SchreierSystem fresh(3, 2);
    CHECK(verify_witness(v.witnesses[0], {r}, {1, 2}, fresh, b.trunc));
  }
}

TEST_CASE("verdicts agree between a relator and its cyclically reduced core") {
  ParsedSignature sig = parse_signature("gamma2;m=[2]");
  SearchBounds b = small_bounds();
  b.oracle_samples = 50;
  std::vector<LevelIndex> targets{LevelIndex{1, 2}};
  Sampler rng(131);
  std::vector<Word> rs;
  rs.push_back(conjugate(W("[y1,y2]"), W("y3")));
  rs.push_back(conjugate(W("[y1,y3]"), W("y2^-1*y1")));
  for (int t = 0; t < 4; ++t)
    rs.push_back(conjugate(random_first_layer_marked(rng), rng.word(3, 3)) *
                 random_deep_kernel(rng));
  for (const Word& r : rs) {
    CyclicForm cf = cyclic_reduce(r);
    CHECK(conjugate(cf.core, cf.conjugator) == r);
    Verdict a = freiheit_check(r, 3, sig, targets, b);
    Verdict c = freiheit_check(cf.core, 3, sig, targets, b);
    CHECK(a.outcome == c.outcome);
  }
}
