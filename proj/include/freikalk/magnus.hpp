#pragma once

// Truncated Magnus series: the embedding of a free group into power series
// in noncommuting variables, y_j -> 1 + t_j, cut at a fixed total degree d.
// Under that embedding the powers of the augmentation ideal pull back to
// degree filtrations, so membership questions about the lower central
// series become degree computations here. Everything through degree d is
// exact; "no nonzero term through d" proves membership d+1 deep and is
// reported as an open valuation rather than a number.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freikalk/bigint.hpp"
#include "freikalk/group_ring.hpp"
#include "freikalk/word.hpp"

namespace freikalk {

// A monomial is the sequence of its variable indices; degree = size().
using Mono = std::vector<int>;

class TruncSeries {
 public:
  explicit TruncSeries(int bound);

  int bound() const { return bound_; }
  bool is_zero() const;

  static TruncSeries zero(int bound) { return TruncSeries(bound); }
  static TruncSeries constant(const Int& c, int bound);
  static TruncSeries variable(int var, int bound);

  const std::map<Mono, Int>& bucket(int deg) const;
  void add_term(const Mono& m, const Int& c);
  Int coeff(const Mono& m) const;

  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

  // Smallest degree with a nonzero term; nullopt when zero through bound.
  std::optional<int> min_degree() const;
  TruncSeries homogeneous_component(int deg) const;

  std::string text() const;

 private:
  int bound_;
  std::vector<std::map<Mono, Int>> deg_;  // deg_[d]: monomials of degree d
};

// Image of y_g^e: sum_k binom(e, k) t_g^k, valid for either sign of e.
TruncSeries generator_image(int gen, long long e, int bound);

TruncSeries expand(const Word& w, int bound);
TruncSeries expand(const RingElement& u, int bound);

// Depth of u in the powers of the augmentation ideal, measured through the
// truncation: the value is exact when <= bound, nullopt means "deeper than
// bound" (and that statement itself is exact, since expansion through the
// bound is exact).
std::optional<int> ideal_valuation(const RingElement& u, int bound);
std::optional<int> ideal_valuation(const TruncSeries& s);

// Lower-central-series class of v, computed along two independent routes
// (valuation of v - 1; one plus the minimal valuation of the Fox
// derivatives) which are cross-checked against each other. nullopt means
// the class exceeds the truncation bound.
std::optional<int> lcs_class(const Word& v, int bound);

// Commutation with a fresh generator pushes the first derivative exactly one
// step deeper in the ideal filtration: given val D_1(v) = j - 1 (checked),
// verifies val D_1([v, y_2]) = j. The truncation must reach j.
bool commutation_depth_step(const Word& v, int j, int bound);

// Default truncation depth used when a caller does not pin one.
inline constexpr int kDefaultTrunc = 8;

}  // namespace freikalk
