#pragma once

// Independent corroboration: seeded sampling of normal-closure elements with
// factorization certificates, a falsifier that hunts for subgroup members
// escaping a kernel layer, and cross-validation of the decision criteria
// against families whose membership status is known by construction.
//
// Reports here are evidence, not proof: membership in R times a layer is
// recursively enumerable only, so "none found" never upgrades to a theorem.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "freikalk/filtration.hpp"
#include "freikalk/schreier.hpp"
#include "freikalk/word.hpp"

namespace freikalk {

// Deterministic random stream. Raw engine output is folded by rejection
// sampling, so the sequence depends only on the seed, not on any library's
// distribution internals.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }
  long long below(long long n);                // uniform over [0, n)
  long long range(long long lo, long long hi); // uniform over [lo, hi]
  Word word(int rank, int max_len);            // reduced word, length <= max_len

 private:
  std::mt19937_64 eng_;
};

struct SampleSpec {
  std::vector<Word> relators;
  int rank = 3;
  int conj_len = 3;
  int factors = 2;
  long long count = 1000;
  std::uint64_t seed = 1;
  LevelIndex level{1, 2};
};

// One sampled element of R times the level-th kernel layer, with its
// factorization: word = product of conjugated relator powers, times a
// residue built as a left-normed commutator of Schreier letters of weight
// exactly level.l (verified by valuation at construction).
struct SampledElement {
  Word word;
  std::vector<RootFactor> product;
  Word residue;
};

SampledElement sample_RN_element(Sampler& rng, const SampleSpec& spec,
                                 SchreierSystem& sys);

struct FalsifyReport {
  long long samples = 0;
  long long subgroup_hits = 0;
  std::vector<Word> counterexamples;
};

// Sample spec.count elements of R * N_(1,l); every one landing in the marked
// subgroup is tested for membership in the layer itself. A certified escape
// (class strictly below l, certificates re-derived from scratch) is a
// counterexample to freeness of the marked subgroup at that layer.
FalsifyReport falsify_freedom(const SampleSpec& spec, const std::vector<int>& marked,
                              SchreierSystem& sys);

struct CrossValidationReport {
  long long relative_members = 0;
  long long relative_non_members = 0;
  long long residue_members = 0;
  long long residue_non_members = 0;
  std::vector<std::string> disagreements;
};

// Constructed ground truth against the criteria: syntactic members must pass,
// elements with a visibly nonzero invariant (exponent sum off the marked
// block; a residue known in closed form) must fail. Any disagreement is
// listed verbatim.
CrossValidationReport cross_validate_criteria(std::uint64_t seed, int rounds);

}  // namespace freikalk
