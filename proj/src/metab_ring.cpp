#include "freikalk/metab_ring.hpp"

#include <algorithm>
#include <sstream>

#include "freikalk/errors.hpp"

namespace freikalk {

bool MetabEltLess::operator()(const MetabGroupElt& a, const MetabGroupElt& b) const {
  if (a.coset != b.coset) return a.coset < b.coset;
  auto ia = a.kernel.begin(), ib = b.kernel.begin();
  for (; ia != a.kernel.end() && ib != b.kernel.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    int c = cmp(ia->second, ib->second);
    if (c != 0) return c < 0;
  }
  return ib != b.kernel.end();
}

namespace {

void accumulate(std::map<int, Int>& into, const std::map<int, Int>& from, const Int& mult) {
  if (mult == 0) return;
  for (const auto& [id, e] : from) {
    auto [it, fresh] = into.try_emplace(id, e * mult);
    if (!fresh) {
      it->second += e * mult;
      if (it->second == 0) into.erase(it);
    }
  }
}

}  // namespace

MetabElement MetabRing::one() const {
  MetabGroupElt id;
  id.coset.assign(static_cast<size_t>(rank()), 0);
  return from_group(id, 1);
}

MetabElement MetabRing::from_group(const MetabGroupElt& g, const Int& c) const {
  if (static_cast<int>(g.coset.size()) != rank()) throw RankMismatch("coset vector width");
  MetabElement r;
  if (c != 0) r.terms.emplace(g, c);
  return r;
}

std::map<int, Int> MetabRing::symbol_abelianization(const Word& symbol_word) const {
  std::map<int, Int> out;
  for (const Syllable& s : symbol_word.syllables()) {
    auto [it, fresh] = out.try_emplace(s.gen, make_int(s.exp));
    if (!fresh) {
      it->second += make_int(s.exp);
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

MetabGroupElt MetabRing::project_word(const Word& w) {
  MetabGroupElt g;
  g.coset = sys_->coset_vector(w);
  Word n = inverse(sys_->representative_of_vector(g.coset)) * w;
  g.kernel = symbol_abelianization(sys_->rewrite(n));
  return g;
}

MetabElement MetabRing::project(const RingElement& u) {
  MetabElement r;
  for (const auto& [w, c] : u.terms()) {
    MetabGroupElt g = project_word(w);
    auto [it, fresh] = r.terms.try_emplace(std::move(g), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) r.terms.erase(it);
    }
  }
  return r;
}

MetabElement MetabRing::lift(const Laurent& u) const {
  if (u.vars() != rank()) throw RankMismatch("coset ring rank");
  MetabElement r;
  for (const auto& [e, c] : u.terms()) {
    MetabGroupElt g;
    g.coset = e;
    r.terms.emplace(std::move(g), c);
  }
  return r;
}

const std::map<int, Int>& MetabRing::act_image(int id, const std::vector<long long>& t) {
  auto key = std::make_pair(id, t);
  auto it = act_memo_.find(key);
  if (it != act_memo_.end()) return it->second;
  std::map<int, Int> img = symbol_abelianization(sys_->conjugated_generator(id, t));
  return act_memo_.emplace(std::move(key), std::move(img)).first->second;
}

const std::map<int, Int>& MetabRing::carry_image(const std::vector<long long>& s,
                                                 const std::vector<long long>& t) {
  auto key = std::make_pair(s, t);
  auto it = carry_memo_.find(key);
  if (it != carry_memo_.end()) return it->second;
  std::map<int, Int> img = symbol_abelianization(sys_->carry(s, t));
  return carry_memo_.emplace(std::move(key), std::move(img)).first->second;
}

std::map<int, Int> MetabRing::act_on(const std::map<int, Int>& nu,
                                     const std::vector<long long>& t) {
  bool trivial = std::all_of(t.begin(), t.end(), [](long long a) { return a == 0; });
  if (trivial) return nu;
  std::map<int, Int> out;
  for (const auto& [id, e] : nu) accumulate(out, act_image(id, t), e);
  return out;
}

MetabGroupElt MetabRing::group_mul(const MetabGroupElt& a, const MetabGroupElt& b) {
  if (a.coset.size() != b.coset.size()) throw RankMismatch("coset vector width");
  MetabGroupElt r;
  r.coset.resize(a.coset.size());
  for (size_t i = 0; i < r.coset.size(); ++i) r.coset[i] = a.coset[i] + b.coset[i];
  r.kernel = act_on(a.kernel, b.coset);
  accumulate(r.kernel, carry_image(a.coset, b.coset), 1);
  accumulate(r.kernel, b.kernel, 1);
  return r;
}

MetabGroupElt MetabRing::group_inv(const MetabGroupElt& a) {
  // Solve (a.coset, a.kernel)(r.coset, r.kernel) = identity.
  MetabGroupElt r;
  r.coset.resize(a.coset.size());
  for (size_t i = 0; i < r.coset.size(); ++i) r.coset[i] = -a.coset[i];
  std::map<int, Int> acted = act_on(a.kernel, r.coset);
  accumulate(acted, carry_image(a.coset, r.coset), 1);
  for (auto& [id, e] : acted) r.kernel.emplace(id, -e);
  return r;
}

MetabElement MetabRing::add(const MetabElement& a, const MetabElement& b) const {
  MetabElement r = a;
  for (const auto& [g, c] : b.terms) {
    auto [it, fresh] = r.terms.try_emplace(g, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) r.terms.erase(it);
    }
  }
  return r;
}

MetabElement MetabRing::neg(const MetabElement& a) const {
  MetabElement r;
  for (const auto& [g, c] : a.terms) r.terms.emplace(g, -c);
  return r;
}

MetabElement MetabRing::sub(const MetabElement& a, const MetabElement& b) const {
  return add(a, neg(b));
}

MetabElement MetabRing::mul(const MetabElement& a, const MetabElement& b) {
  MetabElement r;
  for (const auto& [ga, ca] : a.terms) {
    for (const auto& [gb, cb] : b.terms) {
      MetabGroupElt g = group_mul(ga, gb);
      Int c = ca * cb;
      auto [it, fresh] = r.terms.try_emplace(std::move(g), c);
      if (!fresh) {
        it->second += c;
        if (it->second == 0) r.terms.erase(it);
      }
    }
  }
  return r;
}

namespace {

long long to_ll(const Int& v) {
  if (!v.fits_slong_p()) throw IndexOutOfRange("exponent too large for valuation");
  return v.get_si();
}

// Expansion of prod (1 + T_i)^{k_i} with k_i >= 0; result: degree vector -> c.
void expand_shift(const std::vector<long long>& k, size_t pos, std::vector<long long>& deg,
                  const Int& coeff, std::map<std::vector<long long>, Int>& out) {
  if (pos == k.size()) {
    auto [it, fresh] = out.try_emplace(deg, coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second == 0) out.erase(it);
    }
    return;
  }
  for (long long d = 0; d <= k[pos]; ++d) {
    deg[pos] = d;
    expand_shift(k, pos + 1, deg, coeff * binomial(k[pos], static_cast<unsigned long>(d)),
                 out);
  }
  deg[pos] = 0;
}

}  // namespace

std::optional<long long> shift_valuation(const Laurent& p, const std::vector<int>& axes) {
  if (p.is_zero()) return std::nullopt;
  for (int a : axes) {
    if (a < 1 || a > p.vars()) throw IndexOutOfRange("valuation axis outside variables");
  }
  // Clear negative exponents on the axes with a unit monomial (valuation 0).
  std::vector<long long> clear(static_cast<size_t>(p.vars()), 0);
  for (const auto& [e, c] : p.terms()) {
    for (int a : axes) {
      size_t i = static_cast<size_t>(a - 1);
      clear[i] = std::max(clear[i], -e[i]);
    }
  }
  // Key: (axis degree vector, exponents of the non-axis variables).
  std::map<std::pair<std::vector<long long>, std::vector<long long>>, Int> acc;
  for (const auto& [e, c] : p.terms()) {
    std::vector<long long> k(axes.size());
    std::vector<long long> rest;
    rest.reserve(e.size());
    for (int v = 1; v <= p.vars(); ++v) {
      auto it = std::find(axes.begin(), axes.end(), v);
      size_t i = static_cast<size_t>(v - 1);
      if (it != axes.end()) {
        k[static_cast<size_t>(it - axes.begin())] = e[i] + clear[i];
      } else {
        rest.push_back(e[i]);
      }
    }
    std::map<std::vector<long long>, Int> shifted;
    std::vector<long long> deg(axes.size(), 0);
    expand_shift(k, 0, deg, c, shifted);
    for (const auto& [d, cc] : shifted) {
      auto key = std::make_pair(d, rest);
      auto [it, fresh] = acc.try_emplace(std::move(key), cc);
      if (!fresh) {
        it->second += cc;
        if (it->second == 0) acc.erase(it);
      }
    }
  }
  std::optional<long long> best;
  for (const auto& [key, c] : acc) {
    long long total = 0;
    for (long long d : key.first) total += d;
    if (!best || total < *best) best = total;
  }
  return best;
}

std::optional<long long> MetabRing::psi(const MetabElement& a) const {
  if (a.is_zero()) return std::nullopt;
  // Group terms by coset; each group is a Laurent polynomial over the basis
  // ids it mentions, and psi is the minimum of the per-coset valuations.
  std::map<std::vector<long long>, std::vector<const std::pair<const MetabGroupElt, Int>*>>
      groups;
  for (const auto& term : a.terms) groups[term.first.coset].push_back(&term);
  std::optional<long long> best;
  for (const auto& [coset, terms] : groups) {
    std::vector<int> ids;
    for (const auto* t : terms) {
      for (const auto& [id, e] : t->first.kernel) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    Laurent poly(static_cast<int>(ids.size()));
    for (const auto* t : terms) {
      std::vector<long long> e(ids.size(), 0);
      for (const auto& [id, exp] : t->first.kernel) {
        size_t pos = static_cast<size_t>(
            std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
        e[pos] = to_ll(exp);
      }
      poly.add_term(e, t->second);
    }
    std::vector<int> axes(ids.size());
    for (size_t i = 0; i < ids.size(); ++i) axes[i] = static_cast<int>(i) + 1;
    std::optional<long long> v = shift_valuation(poly, axes);
    if (!v) continue;  // coset group cancelled to zero
    if (!best || *v < *best) best = v;
  }
  return best;
}

Laurent MetabRing::shadow(const MetabElement& a) const {
  Laurent out(rank());
  for (const auto& [g, c] : a.terms) out.add_term(g.coset, c);
  return out;
}

std::string MetabRing::text(const MetabElement& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : a.terms) {
    Int v = c;
    if (first) {
      if (v < 0) {
        os << '-';
        v = -v;
      }
    } else {
      os << (v < 0 ? " - " : " + ");
      if (v < 0) v = -v;
    }
    first = false;
    std::ostringstream body;
    Word rep = sys_->representative_of_vector(g.coset);
    bool have = false;
    if (!rep.is_identity()) {
      body << Laurent::monomial(g.coset, 1).text();
      have = true;
    }
    for (const auto& [id, e] : g.kernel) {
      if (have) body << '*';
      have = true;
      body << 'x' << id;
      if (e != 1) body << '^' << e.get_str();
    }
    std::string btxt = have ? body.str() : "1";
    if (btxt == "1") {
      os << v.get_str();
    } else {
      if (v != 1) os << v.get_str() << '*';
      os << btxt;
    }
  }
  return os.str();
}

}  // namespace freikalk
