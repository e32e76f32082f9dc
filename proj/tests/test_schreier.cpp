#include <doctest.h>

#include "freikalk/schreier.hpp"
#include "freikalk/errors.hpp"
#include "freikalk/fox.hpp"
#include "freikalk/parser.hpp"
#include "freikalk/oracle.hpp"

#include <set>

using namespace freikalk;

namespace {

Word w(const char* text) { return parse_word(text); }

// Product of a few commutators: a guaranteed kernel element of gamma_2 F.
Word random_kernel_word(Sampler& rng, int rank, int pieces, int max_len) {
  Word out;
  for (int i = 0; i < pieces; ++i) {
    out = out * commutator(rng.word(rank, max_len), rng.word(rank, max_len));
  }
  return out;
}

}  // namespace

TEST_CASE("transversal words are sorted and prefix-consistent") {
  SchreierSystem sys(3);
  CHECK(sys.representative(w("x2*x1")) == w("x1*x2"));
  CHECK(sys.representative(w("x1*x2*x1^-1")) == w("x2"));
  CHECK(sys.representative(Word{}).is_identity());
  CHECK(sys.representative_of_vector({-1, 0, 2}) == w("x1^-1*x3^2"));
  CHECK(sys.coset_vector(w("x3*x1^-2")) == SchreierSystem::Vec{-2, 0, 1});
  CHECK(sys.in_kernel(w("[x1,x2]")));
  CHECK(sys.in_kernel(w("[x1,x3]*[x2^2,x1*x3]")));
  CHECK(!sys.in_kernel(w("x1")));
  CHECK_THROWS_AS((SchreierSystem(3, 3)), UnsupportedQuotient);
}

TEST_CASE("tree pairs spell trivial generators") {
  SchreierSystem sys(3);
  // (s, j) is a tree edge exactly when s has no letter of index > j.
  CHECK(sys.is_tree_pair(w("x1^2"), 2));
  CHECK(sys.is_tree_pair(Word{}, 1));
  CHECK(!sys.is_tree_pair(w("x2"), 1));
  // Tree generators spell the identity after reduction.
  CHECK(sys.schreier_generator_word(w("x1^2"), 2).is_identity());
  CHECK(sys.schreier_generator_word(w("x1"), 2).is_identity());
  CHECK(sys.schreier_generator_word(w("x2"), 1) ==
        w("x2*x1") * inverse(w("x1*x2")));
}

TEST_CASE("rewriting a commutator yields one positive symbol") {
  SchreierSystem sys(2);
  Word sw = sys.rewrite(w("[x1,x2]"));
  REQUIRE(sw.syllable_count() == 1);
  CHECK(sw.syllables()[0].exp == 1);
  int id = sw.syllables()[0].gen;
  auto [s, j] = sys.pair_of(id);
  CHECK(sys.coset_vector(s) == SchreierSystem::Vec{-1, -1});
  CHECK(j == 1);
}

TEST_CASE("spell inverts rewrite exactly") {
  SchreierSystem sys(3);
  Sampler rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    Word u = random_kernel_word(rng, 3, 1 + static_cast<int>(rng.below(2)), 6);
    CHECK(sys.spell(sys.rewrite(u)) == u);
  }
  CHECK(sys.rewrite(Word{}).is_identity());
  CHECK_THROWS_AS(sys.rewrite(w("x1")), NotInKernel);
}

TEST_CASE("rewriting is a homomorphism on the kernel") {
  SchreierSystem sys(2);
  Sampler rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    Word u = random_kernel_word(rng, 2, 1, 5);
    Word v = random_kernel_word(rng, 2, 1, 5);
    CHECK(sys.rewrite(u * v) == sys.rewrite(u) * sys.rewrite(v));
    CHECK(sys.rewrite(inverse(u)) == inverse(sys.rewrite(u)));
  }
}

TEST_CASE("registered generators spell their defining words") {
  SchreierSystem sys(3);
  Sampler rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    sys.rewrite(random_kernel_word(rng, 3, 2, 5));
  }
  REQUIRE(sys.registered_count() >= 3);
  for (int id = 1; id <= sys.registered_count(); ++id) {
    auto [s, j] = sys.pair_of(id);
    CHECK(!sys.is_tree_pair(s, j));
    CHECK(sys.generator_word(id) == sys.schreier_generator_word(s, j));
    CHECK(sys.in_kernel(sys.generator_word(id)));
    CHECK(sys.lookup_pair(sys.coset_vector(s), j) == id);
  }
  CHECK(sys.lookup_pair({77, 0, 0}, 2) == std::nullopt);
  CHECK_THROWS_AS(sys.generator_word(0), IndexOutOfRange);
  CHECK_THROWS_AS(sys.generator_word(sys.registered_count() + 1), IndexOutOfRange);
}

TEST_CASE("carry words satisfy the cocycle spelling") {
  SchreierSystem sys(2);
  Sampler rng(54);
  for (int trial = 0; trial < 40; ++trial) {
    SchreierSystem::Vec s = {rng.range(-2, 2), rng.range(-2, 2)};
    SchreierSystem::Vec t = {rng.range(-2, 2), rng.range(-2, 2)};
    SchreierSystem::Vec sum = {s[0] + t[0], s[1] + t[1]};
    Word expected = inverse(sys.representative_of_vector(sum)) *
                    sys.representative_of_vector(s) * sys.representative_of_vector(t);
    CHECK(sys.spell(sys.carry(s, t)) == expected);
  }
}

TEST_CASE("conjugated generators spell the conjugation") {
  SchreierSystem sys(2);
  Word sw = sys.rewrite(w("[x1,x2]"));
  int id = sw.syllables()[0].gen;
  Sampler rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    SchreierSystem::Vec t = {rng.range(-2, 2), rng.range(-2, 2)};
    Word rep = sys.representative_of_vector(t);
    CHECK(sys.spell(sys.conjugated_generator(id, t)) ==
          conjugate(sys.generator_word(id), rep));
  }
}

TEST_CASE("spell extends linearly to symbol ring elements") {
  SchreierSystem sys(2);
  Word s1 = sys.rewrite(w("[x1,x2]"));
  Word s2 = sys.rewrite(w("[x1^2,x2]"));
  RingElement sym(0);
  sym.add_term(s1, 2);
  sym.add_term(s2 * s1, -1);
  RingElement expected(0);
  expected.add_term(w("[x1,x2]"), 2);
  expected.add_term(w("[x1^2,x2]") * w("[x1,x2]"), -1);
  CHECK(sys.spell(sym) == expected);
}

TEST_CASE("coset classification against a marked subgroup") {
  SchreierSystem sys(3);
  std::vector<int> K = {1, 2};
  CosetClass a = classify(sys, w("x1*x2^3"), K);
  CHECK(a.kind == CosetKind::alpha);
  CHECK(a.representative == w("x1*x2^3"));
  CosetClass b = classify(sys, w("x3*x1"), K);
  CHECK(b.kind == CosetKind::beta);
  CHECK(b.representative == w("x1*x3"));
  CHECK(sys.coset_meets_subgroup(w("x2*x1*[x1,x3]"), K));
  CHECK(!sys.coset_meets_subgroup(w("x3"), K));
}

TEST_CASE("coset components partition a derivative") {
  SchreierSystem sys(2);
  Sampler rng(56);
  for (int trial = 0; trial < 30; ++trial) {
    Word v = random_kernel_word(rng, 2, 1 + static_cast<int>(rng.below(2)), 5);
    if (v.is_identity()) continue;
    for (int j = 1; j <= 2; ++j) {
      RingElement d = fox_derivative(v, j);
      auto slices = derivative_coset_decomposition(sys, v, j);
      RingElement sum(2);
      std::set<SchreierSystem::Vec> seen;
      for (const auto& slice : slices) {
        CHECK(seen.insert(slice.coset).second);
        CHECK(!slice.component.is_zero());
        CHECK(slice.component == coset_component(d, slice.coset, 2));
        for (const auto& [word, c] : slice.component.terms()) {
          (void)c;
          CHECK(sys.coset_vector(word) == slice.coset);
        }
        sum += slice.component;
      }
      CHECK(sum == d);
    }
  }
}

TEST_CASE("derivative columns match the rewritten derivative") {
  SchreierSystem sys(2);
  Sampler rng(57);
  for (int trial = 0; trial < 25; ++trial) {
    Word v = random_kernel_word(rng, 2, 1 + static_cast<int>(rng.below(2)), 5);
    if (v.is_identity()) continue;
    for (int j = 1; j <= 2; ++j) {
      CHECK(derivative_component_check(sys, v, j));
    }
  }
}
