#pragma once

// Exact arithmetic in the integral group ring of F / [N,N], N the commutator
// subgroup of F. A group element factors uniquely as rep(kappa) * nu with
// kappa the exponent vector over F/N and nu in the free abelian group N^{ab}
// on the Schreier basis, so elements are finite Int-combinations of pairs
// (kappa, sparse exponent map). Multiplication needs the rewriting system:
// rep(s) nu rep(t) mu = rep(s+t) * carry(s,t) * nu^rep(t) * mu, with carry
// and the conjugation action computed (and memoized) through Schreier
// rewriting. Everything here is exact; the valuation psi is the depth in the
// powers of the ideal generated by (N^{ab} - 1), computed by clearing
// denominators with unit monomials and shift-expanding x -> 1 + T in the
// polynomial ring, which is exact with no truncation.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freikalk/bigint.hpp"
#include "freikalk/group_ring.hpp"
#include "freikalk/quotient.hpp"
#include "freikalk/schreier.hpp"

namespace freikalk {

struct MetabGroupElt {
  std::vector<long long> coset;  // exponent vector over F/N
  std::map<int, Int> kernel;     // Schreier basis id -> exponent (zeros absent)

  friend bool operator==(const MetabGroupElt&, const MetabGroupElt&) = default;
};

struct MetabEltLess {
  bool operator()(const MetabGroupElt& a, const MetabGroupElt& b) const;
};

struct MetabElement {
  std::map<MetabGroupElt, Int, MetabEltLess> terms;

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const MetabElement&, const MetabElement&) = default;
};

// Ring context: owns the memo tables, borrows the Schreier system (which
// grows its basis registry as rewriting demands).
class MetabRing {
 public:
  explicit MetabRing(SchreierSystem& sys) : sys_(&sys) {}

  SchreierSystem& system() const { return *sys_; }
  int rank() const { return sys_->rank(); }

  MetabElement zero() const { return {}; }
  MetabElement one() const;
  MetabElement from_group(const MetabGroupElt& g, const Int& c) const;

  MetabGroupElt project_word(const Word& w);
  MetabElement project(const RingElement& u);
  // Canonical lift of the coset ring Z[F/N]: monomials to kernel-free pairs.
  MetabElement lift(const Laurent& u) const;

  MetabGroupElt group_mul(const MetabGroupElt& a, const MetabGroupElt& b);
  MetabGroupElt group_inv(const MetabGroupElt& a);

  MetabElement add(const MetabElement& a, const MetabElement& b) const;
  MetabElement sub(const MetabElement& a, const MetabElement& b) const;
  MetabElement neg(const MetabElement& a) const;
  MetabElement mul(const MetabElement& a, const MetabElement& b);

  // Depth in the powers of the ideal generated by (nu - 1), nu in N^{ab}:
  // per coset, the kernel parts form a Laurent polynomial over the basis ids
  // whose augmentation-adic valuation is computed exactly; psi is the
  // minimum over cosets. nullopt encodes infinity (the zero element).
  std::optional<long long> psi(const MetabElement& a) const;

  // Ring map onto Z[F/N] killing N^{ab} (kernel parts evaluate to 1).
  Laurent shadow(const MetabElement& a) const;

  std::string text(const MetabElement& a) const;

 private:
  SchreierSystem* sys_;
  std::map<std::pair<int, std::vector<long long>>, std::map<int, Int>> act_memo_;
  std::map<std::pair<std::vector<long long>, std::vector<long long>>, std::map<int, Int>>
      carry_memo_;

  std::map<int, Int> symbol_abelianization(const Word& symbol_word) const;
  const std::map<int, Int>& act_image(int id, const std::vector<long long>& t);
  const std::map<int, Int>& carry_image(const std::vector<long long>& s,
                                        const std::vector<long long>& t);
  std::map<int, Int> act_on(const std::map<int, Int>& nu, const std::vector<long long>& t);
};

// Exact augmentation-adic valuation of a Laurent polynomial with respect to
// the ideal generated by (x_i - 1) for the listed axes (all variables when
// axes is empty is NOT implied; pass the axes explicitly). Used for the
// single-axis valuation on Z[Z^2] in the triangularization tests and for the
// kernel-part valuation above. nullopt encodes infinity (zero input).
std::optional<long long> shift_valuation(const Laurent& p, const std::vector<int>& axes);

}  // namespace freikalk
