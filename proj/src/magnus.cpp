#include "freikalk/magnus.hpp"

#include <sstream>

#include "freikalk/fox.hpp"

namespace freikalk {

TruncSeries::TruncSeries(int bound) : bound_(bound) {
  if (bound < 0) throw IndexOutOfRange("truncation bound must be nonnegative");
  deg_.resize(static_cast<std::size_t>(bound) + 1);
}

bool TruncSeries::is_zero() const {
  for (const auto& b : deg_)
    if (!b.empty()) return false;
  return true;
}

TruncSeries TruncSeries::constant(const Int& c, int bound) {
  TruncSeries s(bound);
  if (c != 0) s.deg_[0][Mono{}] = c;
  return s;
}

TruncSeries TruncSeries::variable(int var, int bound) {
  if (var <= 0) throw InvalidGenerator("variable index must be positive");
  TruncSeries s(bound);
  if (bound >= 1) s.deg_[1][Mono{var}] = 1;
  return s;
}

const std::map<Mono, Int>& TruncSeries::bucket(int deg) const {
  if (deg < 0 || deg > bound_) throw IndexOutOfRange("degree outside truncation");
  return deg_[static_cast<std::size_t>(deg)];
}

void TruncSeries::add_term(const Mono& m, const Int& c) {
  int d = static_cast<int>(m.size());
  if (d > bound_ || c == 0) return;
  auto& b = deg_[static_cast<std::size_t>(d)];
  auto [it, fresh] = b.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) b.erase(it);
  }
}

Int TruncSeries::coeff(const Mono& m) const {
  int d = static_cast<int>(m.size());
  if (d > bound_) return 0;
  const auto& b = deg_[static_cast<std::size_t>(d)];
  auto it = b.find(m);
  return it == b.end() ? Int(0) : it->second;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  if (o.bound_ != bound_) throw RankMismatch("mixing truncation bounds");
  for (const auto& b : o.deg_)
    for (const auto& [m, c] : b) add_term(m, c);
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  if (o.bound_ != bound_) throw RankMismatch("mixing truncation bounds");
  for (const auto& b : o.deg_)
    for (const auto& [m, c] : b) add_term(m, -c);
  return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  if (a.bound_ != b.bound_) throw RankMismatch("mixing truncation bounds");
  TruncSeries r(a.bound_);
  for (int da = 0; da <= a.bound_; ++da) {
    const auto& ba = a.deg_[static_cast<std::size_t>(da)];
    if (ba.empty()) continue;
    for (int db = 0; da + db <= a.bound_; ++db) {
      const auto& bb = b.deg_[static_cast<std::size_t>(db)];
      if (bb.empty()) continue;
      for (const auto& [ma, ca] : ba)
        for (const auto& [mb, cb] : bb) {
          Mono m = ma;
          m.insert(m.end(), mb.begin(), mb.end());
          r.add_term(m, ca * cb);
        }
    }
  }
  return r;
}

std::optional<int> TruncSeries::min_degree() const {
  for (int d = 0; d <= bound_; ++d)
    if (!deg_[static_cast<std::size_t>(d)].empty()) return d;
  return std::nullopt;
}

TruncSeries TruncSeries::homogeneous_component(int deg) const {
  TruncSeries r(bound_);
  if (deg >= 0 && deg <= bound_) r.deg_[static_cast<std::size_t>(deg)] = deg_[static_cast<std::size_t>(deg)];
  return r;
}

std::string TruncSeries::text() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& b : deg_)
    for (const auto& [m, c] : b) {
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
      if (m.empty()) {
        os << a.get_str();
        continue;
      }
      if (a != 1) os << a.get_str() << '*';
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) os << ' ';
        os << 't' << m[i];
      }
    }
  return os.str();
}

TruncSeries generator_image(int gen, long long e, int bound) {
  TruncSeries s(bound);
  Mono m;
  for (int k = 0; k <= bound; ++k) {
    Int c = binomial(e, static_cast<unsigned long>(k));
    if (c != 0) s.add_term(m, c);
    m.push_back(gen);
  }
  return s;
}

TruncSeries expand(const Word& w, int bound) {
  TruncSeries s = TruncSeries::constant(1, bound);
  for (const Syllable& syl : w.syllables()) s = s * generator_image(syl.gen, syl.exp, bound);
  return s;
}

TruncSeries expand(const RingElement& u, int bound) {
  TruncSeries s(bound);
  for (const auto& [w, c] : u.terms()) {
    TruncSeries t = expand(w, bound);
    for (int d = 0; d <= bound; ++d)
      for (const auto& [m, k] : t.bucket(d)) s.add_term(m, c * k);
  }
  return s;
}

std::optional<int> ideal_valuation(const TruncSeries& s) { return s.min_degree(); }

std::optional<int> ideal_valuation(const RingElement& u, int bound) {
  return expand(u, bound).min_degree();
}

std::optional<int> lcs_class(const Word& v, int bound) {
  if (v.is_identity()) throw IdentityElement("the identity has no class");
  RingElement vm1 = RingElement::from_word(v) - RingElement::one();
  std::optional<int> direct = ideal_valuation(vm1, bound);

  // Independent route: the class is one more than the minimal ideal
  // valuation over the Fox derivatives. Generators absent from v have zero
  // derivative and drop out.
  std::optional<int> dmin;
  for (int g = 1; g <= v.max_generator(); ++g) {
    RingElement d = fox_derivative(v, g);
    if (d.is_zero()) continue;
    std::optional<int> val = ideal_valuation(d, bound);
    if (val && (!dmin || *val < *dmin)) dmin = val;
  }

  if (direct) {
    if (!dmin || *dmin != *direct - 1)
      throw InternalInconsistency("class routes disagree: direct " + std::to_string(*direct) +
                                  ", derivative " + (dmin ? std::to_string(*dmin) : ">bound"));
    return direct;
  }
  // Class beyond the bound: the derivative route must not see anything
  // shallower than the bound either.
  if (dmin && *dmin < bound)
    throw InternalInconsistency("derivative route found shallow valuation for deep class");
  return std::nullopt;
}

bool commutation_depth_step(const Word& v, int j, int bound) {
  if (bound < j) throw Inconclusive("truncation must reach j");
  RingElement d1 = fox_derivative(v, 1);
  std::optional<int> val = ideal_valuation(d1, bound);
  if (!val || *val != j - 1)
    throw PreconditionFailed("first derivative does not sit at depth j-1");
  Word w = commutator(v, Word::letter(2));
  std::optional<int> val2 = ideal_valuation(fox_derivative(w, 1), bound);
  return val2 && *val2 == j;
}

}  // namespace freikalk
