#pragma once

// Images of Z[F] in the group ring of a verbal quotient F / gamma_c F.
//
// For c = 2 the quotient is free abelian and the image ring is Laurent
// polynomials Z[Z^n]; that representation is faithful, so the zero test is
// exact. For c > 2 the image is represented by the truncated Magnus
// expansion through degree c - 1: group elements embed faithfully, and the
// ideal generated by (gamma_c F - 1) maps to zero, but a vanishing image
// certifies ideal membership only through the cut. Callers that need a
// definite "nonzero residue" (the only direction the decision procedures
// rely on) get an exact answer in both cases.

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "freikalk/group_ring.hpp"
#include "freikalk/magnus.hpp"

namespace freikalk {

class Laurent {
 public:
  using Exponents = std::vector<long long>;

  explicit Laurent(int vars) : vars_(vars) {}

  static Laurent zero(int vars) { return Laurent(vars); }
  static Laurent one(int vars);
  static Laurent monomial(Exponents e, Int c);

  int vars() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Int>& terms() const { return terms_; }
  Int coeff(const Exponents& e) const;

  void add_term(const Exponents& e, const Int& c);

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(const Laurent& a);
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent&, const Laurent&) = default;

  Int augmentation() const;
  std::string text() const;

 private:
  int vars_;
  std::map<Exponents, Int> terms_;
};

Laurent abelianize(const RingElement& u, int rank);

struct QuotientSpec {
  int rank = 2;
  int c = 2;  // N = gamma_c F
};

struct CosetImage {
  std::variant<Laurent, TruncSeries> value;
  bool exact = true;  // false for c > 2, where zero-testing is truncated

  bool is_zero() const;
  std::string text() const;
};

CosetImage coset_map(const RingElement& u, const QuotientSpec& q);

}  // namespace freikalk
