#include "freikalk/group_ring.hpp"

#include <sstream>

#include "freikalk/parser.hpp"

namespace freikalk {

int merge_ranks(int a, int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if (a != b) throw RankMismatch("elements come from different ambient ranks");
  return a;
}

RingElement RingElement::constant(Int c, int rank) {
  RingElement r(rank);
  if (c != 0) r.terms_[Word()] = std::move(c);
  return r;
}

RingElement RingElement::from_word(const Word& w, int rank) {
  if (rank > 0 && w.max_generator() > rank)
    throw InvalidGenerator("word uses a generator beyond the ambient rank");
  RingElement r(rank);
  r.terms_[w] = 1;
  return r;
}

Int RingElement::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Int(0) : it->second;
}

Int RingElement::augmentation() const {
  Int s = 0;
  for (const auto& [w, c] : terms_) s += c;
  return s;
}

void RingElement::add_term(const Word& w, const Int& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

RingElement& RingElement::operator+=(const RingElement& o) {
  rank_ = merge_ranks(rank_, o.rank_);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  rank_ = merge_ranks(rank_, o.rank_);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

RingElement operator-(const RingElement& a) {
  RingElement r(a.rank_);
  for (const auto& [w, c] : a.terms_) r.terms_[w] = -c;
  return r;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  RingElement r(merge_ranks(a.rank_, b.rank_));
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) r.add_term(wa * wb, ca * cb);
  return r;
}

RingElement operator*(const Int& c, RingElement a) {
  if (c == 0) return RingElement::zero(a.rank_);
  RingElement r(a.rank_);
  for (auto& [w, k] : a.terms_) r.terms_[w] = c * k;
  return r;
}

RingElement RingElement::times_word(const Word& w) const {
  RingElement r(rank_);
  for (const auto& [u, c] : terms_) r.add_term(u * w, c);
  return r;
}

RingElement RingElement::word_times(const Word& w) const {
  RingElement r(rank_);
  for (const auto& [u, c] : terms_) r.add_term(w * u, c);
  return r;
}

std::string RingElement::text() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Int a = c;
    if (first) {
      if (a < 0) {
        os << '-';
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (w.is_identity()) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << '*';
      os << word_text(w);
    }
  }
  return os.str();
}

RingElement power_difference_normalize(const Word& a, long long n, int layer) {
  if (layer < 1) throw UnknownLayer("layer class must be at least 1");
  RingElement lhs(0);
  lhs.add_term(a, make_int(n));
  lhs.add_term(Word(), make_int(-n));
  RingElement rhs(0);
  rhs.add_term(power(a, n), 1);
  rhs.add_term(Word(), -1);
  return lhs - rhs;
}

RingElement substitute(const RingElement& u, const std::vector<Word>& images) {
  RingElement r(0);
  for (const auto& [w, c] : u.terms()) r.add_term(substitute(w, images), c);
  return r;
}

}  // namespace freikalk
