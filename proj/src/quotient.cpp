#include "freikalk/quotient.hpp"

#include <sstream>

#include "freikalk/errors.hpp"

namespace freikalk {

Laurent Laurent::one(int vars) {
  Laurent r(vars);
  r.add_term(Exponents(static_cast<size_t>(vars), 0), 1);
  return r;
}

Laurent Laurent::monomial(Exponents e, Int c) {
  Laurent r(static_cast<int>(e.size()));
  r.add_term(e, c);
  return r;
}

Int Laurent::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

void Laurent::add_term(const Exponents& e, const Int& c) {
  if (static_cast<int>(e.size()) != vars_) throw RankMismatch("laurent exponent width");
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Laurent& Laurent::operator+=(const Laurent& o) {
  if (o.vars_ != vars_) throw RankMismatch("laurent sum");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  if (o.vars_ != vars_) throw RankMismatch("laurent difference");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Laurent operator-(const Laurent& a) {
  Laurent r(a.vars_);
  for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
  return r;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  if (a.vars_ != b.vars_) throw RankMismatch("laurent product");
  Laurent r(a.vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Laurent::Exponents e(ea);
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Int Laurent::augmentation() const {
  Int s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

namespace {

std::string laurent_monomial_text(const Laurent::Exponents& e) {
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) out << '*';
    first = false;
    out << 'y' << (i + 1);
    if (e[i] != 1) out << '^' << e[i];
  }
  if (first) return "1";
  return out.str();
}

}  // namespace

std::string Laurent::text() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Int a = c;
    if (first) {
      if (a < 0) {
        out << '-';
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    std::string mono = laurent_monomial_text(e);
    if (mono == "1") {
      out << to_string(a);
    } else {
      if (a != 1) out << to_string(a) << '*';
      out << mono;
    }
  }
  return out.str();
}

Laurent abelianize(const RingElement& u, int rank) {
  Laurent r(rank);
  for (const auto& [w, c] : u.terms()) {
    r.add_term(abelianization(w, rank), c);
  }
  return r;
}

bool CosetImage::is_zero() const {
  if (std::holds_alternative<Laurent>(value)) return std::get<Laurent>(value).is_zero();
  const auto& s = std::get<TruncSeries>(value);
  return !s.min_degree().has_value();
}

std::string CosetImage::text() const {
  if (std::holds_alternative<Laurent>(value)) return std::get<Laurent>(value).text();
  return std::get<TruncSeries>(value).text();
}

CosetImage coset_map(const RingElement& u, const QuotientSpec& q) {
  if (q.rank < 1) throw RankTooSmall("quotient rank must be at least 1");
  if (q.c < 2) throw UnsupportedQuotient("lower central class must be at least 2");
  if (q.c == 2) return CosetImage{abelianize(u, q.rank), true};
  // Degree c - 1 suffices: gamma_c F - 1 sits in degree >= c of the Magnus
  // filtration, so everything below the cut already lives in Z[F / gamma_c F].
  return CosetImage{expand(u, q.c - 1), false};
}

}  // namespace freikalk
