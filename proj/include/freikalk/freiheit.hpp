#pragma once

// Decision procedures for the one-relator freeness question: a residue
// criterion over a verbal quotient, a relative criterion over a free base, a
// conjugacy-into-subgroup search that decides the first kernel layer exactly
// and bounds the deeper ones, witness climbing to higher layers, and the
// overall verdict pipeline that ties them to the sampling oracle.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freikalk/filtration.hpp"
#include "freikalk/magnus.hpp"
#include "freikalk/quotient.hpp"
#include "freikalk/schreier.hpp"
#include "freikalk/word.hpp"

namespace freikalk {

// True iff every Fox derivative with index outside `marked` dies in the
// group ring of F / gamma_c F. For c = 2 the test is exact; for deeper
// quotients a nonzero residue is still definitive but an all-zero answer is
// only truncation-deep, reported as Inconclusive rather than true.
bool residue_criterion(const Word& v, const std::vector<int>& marked,
                       const QuotientSpec& q);

// True iff v lies in the subgroup generated by the marked letters together
// with the (n+1)-st lower-central term of the ambient free group: derivatives
// outside `marked` must sit n deep in the augmentation filtration, and
// derivatives inside must agree with their own retraction (unmarked letters
// sent to 1) n deep. Requires d >= n + 1 so both sides are decidable.
bool relative_criterion(const Word& v, const std::vector<int>& marked, int n,
                        int d);

// Word-level retraction: syllables of unmarked generators are dropped and
// the rest reduced. This is the homomorphism the relative criterion's
// membership certificate spells.
Word retract_word(const Word& v, const std::vector<int>& marked);

enum class ConjugacyStatus { witness, provably_none, none_within_bounds };

struct ConjugacyWitness {
  Word conjugator;  // f with r^f = h * residue
  Word h;           // word in the marked generators
  Word residue;     // lies one layer deeper than r
};

struct ConjugacySearch {
  ConjugacyStatus status = ConjugacyStatus::none_within_bounds;
  std::optional<ConjugacyWitness> witness;
  std::string reason;  // set when provably_none
  int level = 1;
  long long candidates_tried = 0;
};

struct SearchBounds {
  int conj_norm = 2;  // 1-norm cap for transversal-representative conjugators
  int conj_len = 2;   // length cap for plain word conjugators
  long long oracle_samples = 10000;
  std::uint64_t oracle_seed = 1;
  int trunc = kDefaultTrunc;
};

// Search for f with r^f congruent to a marked-subgroup word modulo the
// (i+1)-st kernel layer. The first layer is decided exactly: conjugation
// replays r's coset walk with every state shifted by the exponent vector of
// f, so each crossing either survives as a marked-block symbol (its base
// must then match the shift on the unmarked coordinates and its fiber must
// be marked) or must melt into the spanning tree, which pins the shift
// above its fiber. Consistent pins produce a verified witness, conflicting
// pins refute every conjugator at once (provably_none). Deeper layers run a
// bounded search over short words and transversal representatives, whose
// exhaustion proves nothing (none_within_bounds).
ConjugacySearch conjugate_into_subgroup_mod(const Word& r, int i,
                                            const std::vector<int>& marked,
                                            SchreierSystem& sys,
                                            const SearchBounds& bounds);

// A freeness counterexample at layer (1, l): word lies in the marked
// subgroup and in R times the l-th kernel layer (the product certificate
// spells that factorization) but not in the layer itself (its own class is
// l - 1).
struct Witness {
  Word word;
  LevelIndex level;
  std::vector<RootFactor> product;
  Word residue;
  int word_class = 0;
};

// Re-derive all three witness certificates from scratch: syllable support,
// free reduction of the product against the relators, and the two layer
// valuations.
bool verify_witness(const Witness& w, const std::vector<Word>& relators,
                    const std::vector<int>& marked, SchreierSystem& sys,
                    int trunc);

// Push a witness up one layer at a time by commutation with a marked-block
// Schreier letter chosen off the minimal-valuation derivative, which raises
// the class by exactly one. Certificates are transformed alongside and
// re-verified after every step.
Witness climb_witness(Witness w, const LevelIndex& target,
                      const std::vector<Word>& relators,
                      const std::vector<int>& marked, SchreierSystem& sys,
                      int trunc);

enum class Outcome { Free, NotFree, Unknown };

struct OracleSummary {
  long long samples = 0;
  long long subgroup_hits = 0;
  long long counterexamples = 0;
};

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  int level = 0;  // layer of the relator inside the kernel
  ConjugacySearch conj;
  std::vector<Witness> witnesses;         // NotFree: one per reachable target
  std::vector<LevelIndex> unwitnessed;    // targets at or below the base layer
  bool provable = false;                  // Free via the exact first-layer rejection
  OracleSummary oracle;
  SearchBounds bounds;
};

// The full check for one relator r against the subgroup on the first
// rank - 1 generators: locate r's layer, run the conjugacy search, then
// either climb witnesses to every requested target (NotFree), corroborate a
// provable rejection by sampling (Free), or report Unknown with the bounds.
Verdict freiheit_check(const Word& r, int rank, const ParsedSignature& sig,
                       const std::vector<LevelIndex>& targets,
                       const SearchBounds& bounds);

}  // namespace freikalk
