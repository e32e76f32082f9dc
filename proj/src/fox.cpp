#include "freikalk/fox.hpp"

#include <algorithm>

#include "freikalk/errors.hpp"

namespace freikalk {

namespace {

// Word g^t * tail, where tail is reduced and never starts with generator g.
Word power_times(int gen, long long t, const Word& tail) {
  if (t == 0) return tail;
  std::vector<Syllable> syl;
  syl.reserve(tail.syllable_count() + 1);
  syl.push_back({gen, t});
  for (const auto& s : tail.syllables()) syl.push_back(s);
  return Word(std::move(syl));
}

}  // namespace

RingElement fox_derivative(const Word& w, int gen) {
  if (gen < 1) throw InvalidGenerator("derivative index must be positive");
  RingElement out = RingElement::zero(0);
  const auto& syl = w.syllables();
  // Right convention: a letter x^{+1} at position i contributes +suffix(i+1),
  // a letter x^{-1} contributes -suffix(i). Collapsing each syllable x^e gives
  // the closed form D(x^e) = sum_t x^t over t in [0,e) or -(sum over [e,0)),
  // each term multiplied by the suffix that follows the syllable.
  Word suffix;
  for (auto it = syl.rbegin(); it != syl.rend(); ++it) {
    if (it->gen == gen) {
      if (it->exp > 0) {
        for (long long t = 0; t < it->exp; ++t) out.add_term(power_times(gen, t, suffix), 1);
      } else {
        for (long long t = it->exp; t < 0; ++t) out.add_term(power_times(gen, t, suffix), -1);
      }
    }
    suffix = power_times(it->gen, it->exp, suffix);
  }
  return out;
}

RingElement fox_derivative(const RingElement& u, int gen) {
  // Z-linear extension; constants have zero derivative, so linearity over the
  // word terms is the whole story.
  RingElement out = RingElement::zero(u.rank());
  for (const auto& [w, c] : u.terms()) {
    RingElement dw_all = fox_derivative(w, gen);
    for (const auto& [dw, dc] : dw_all.terms()) out.add_term(dw, c * dc);
  }
  return out;
}

std::vector<RingElement> fundamental_decomposition(const RingElement& u, int rank) {
  if (rank < 1) throw RankTooSmall("decomposition needs at least one generator");
  FreeGroup group(rank);
  for (const auto& [w, c] : u.terms()) group.check(w);
  std::vector<RingElement> parts;
  parts.reserve(static_cast<size_t>(rank));
  RingElement recon = RingElement::constant(u.augmentation(), rank);
  for (int j = 1; j <= rank; ++j) {
    parts.push_back(fox_derivative(u, j));
    RingElement factor =
        RingElement::from_word(group.generator(j), rank) - RingElement::one(rank);
    recon += factor * parts.back();
  }
  if (!(recon == u)) {
    throw InternalInconsistency("fundamental identity failed to reconstruct the element");
  }
  return parts;
}

const RingElement& FoxContext::derive(const Word& w, int gen) {
  auto key = std::make_pair(w, gen);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  return memo_.emplace(std::move(key), fox_derivative(w, gen)).first->second;
}

bool conjugation_congruence_check(const Word& r, const Word& f, int gen,
                                  const QuotientSpec& q) {
  // Precondition r in N = gamma_c F. For c = 2 that is an exponent-sum check;
  // deeper classes are certified by the Magnus valuation, which is exact for
  // the statement "val(r - 1) >= c".
  int rank = q.rank;
  if (r.max_generator() > rank || f.max_generator() > rank) {
    throw RankMismatch("word uses generators beyond the quotient rank");
  }
  RingElement r1 = RingElement::from_word(r, rank) - RingElement::one(rank);
  if (q.c == 2) {
    if (!abelianize(r1, rank).is_zero()) throw NotInKernel("relator is not in gamma_2 F");
  } else {
    if (ideal_valuation(r1, q.c - 1).has_value()) {
      throw NotInKernel("relator is not in gamma_c F");
    }
  }
  RingElement lhs = fox_derivative(conjugate(r, f), gen);
  RingElement rhs = fox_derivative(r, gen).times_word(f);
  return coset_map(lhs - rhs, q).is_zero();
}

namespace {

bool dfs_express(const Word& target, const std::vector<Word>& basis, int max_factors,
                 const Word& partial, const Word& spelled, int last_symbol, Word& out) {
  if (spelled == target) {
    out = partial;
    return true;
  }
  if (max_factors == 0) return false;
  for (int z = 1; z <= static_cast<int>(basis.size()); ++z) {
    for (int sgn : {+1, -1}) {
      if (last_symbol == -z * sgn) continue;  // skip immediate cancellation
      const Word& b = basis[static_cast<size_t>(z - 1)];
      Word step = sgn > 0 ? b : inverse(b);
      if (dfs_express(target, basis, max_factors - 1, partial * Word::letter(z, sgn),
                      spelled * step, z * sgn, out)) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::optional<Word> express_in_basis(const Word& w, const std::vector<Word>& basis,
                                     int max_factors) {
  if (basis.empty()) throw RankTooSmall("empty basis");
  for (const auto& b : basis) {
    if (b.is_identity()) throw IdentityElement("basis contains the identity");
  }
  if (max_factors < 0) throw IndexOutOfRange("negative factor bound");
  Word out;
  if (dfs_express(w, basis, max_factors, Word(), Word(), 0, out)) return out;
  return std::nullopt;
}

bool chain_rule_check(const Word& b, const std::vector<Word>& basis, int gen) {
  if (basis.empty()) throw RankTooSmall("empty basis");
  if (b.max_generator() > static_cast<int>(basis.size())) {
    throw RankMismatch("symbol word uses more symbols than basis entries");
  }
  Word v = substitute(b, basis);
  RingElement lhs = fox_derivative(v, gen);
  RingElement rhs = RingElement::zero(0);
  for (size_t z = 0; z < basis.size(); ++z) {
    RingElement outer = fox_derivative(basis[z], gen);
    if (outer.is_zero()) continue;
    RingElement inner = fox_derivative(b, static_cast<int>(z) + 1);
    rhs += outer * substitute(inner, basis);
  }
  return lhs == rhs;
}

}  // namespace freikalk
