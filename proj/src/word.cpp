#include "freikalk/word.hpp"

#include <algorithm>
#include <cstdlib>

namespace freikalk {

namespace {

// Push one syllable onto a reduced prefix, merging with the top and
// cascading the cancellation when a merge empties the top syllable.
void push_reduced(std::vector<Syllable>& out, Syllable s) {
  if (s.exp == 0) return;
  if (s.gen <= 0) throw InvalidGenerator("generator index must be positive");
  while (!out.empty() && out.back().gen == s.gen) {
    s.exp += out.back().exp;
    out.pop_back();
    if (s.exp == 0) return;
  }
  out.push_back(s);
}

}  // namespace

Word::Word(std::vector<Syllable> raw) {
  syl_.reserve(raw.size());
  for (const Syllable& s : raw) push_reduced(syl_, s);
}

Word Word::letter(int gen, long long exp) {
  if (gen <= 0) throw InvalidGenerator("generator index must be positive");
  Word w;
  if (exp != 0) w.syl_.push_back({gen, exp});
  return w;
}

long long Word::length() const {
  long long n = 0;
  for (const Syllable& s : syl_) n += std::llabs(s.exp);
  return n;
}

int Word::max_generator() const {
  int m = 0;
  for (const Syllable& s : syl_) m = std::max(m, s.gen);
  return m;
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Syllable> out = a.syl_;
  for (const Syllable& s : b.syl_) push_reduced(out, s);
  return Word(std::move(out), Word::Reduced{});
}

Word inverse(const Word& w) {
  std::vector<Syllable> out;
  out.reserve(w.syl_.size());
  for (auto it = w.syl_.rbegin(); it != w.syl_.rend(); ++it)
    out.push_back({it->gen, -it->exp});
  return Word(std::move(out), Word::Reduced{});
}

Word power(const Word& w, long long e) {
  if (e == 0 || w.is_identity()) return Word();
  Word base = e < 0 ? inverse(w) : w;
  long long n = e < 0 ? -e : e;
  Word acc;
  while (n > 0) {
    acc = acc * base;  // linear, fine at the scales we run
    --n;
  }
  return acc;
}

Word commutator(const Word& a, const Word& b) {
  return inverse(a) * inverse(b) * a * b;
}

Word conjugate(const Word& w, const Word& f) { return inverse(f) * w * f; }

CyclicForm cyclic_reduce(const Word& w) {
  std::vector<Syllable> s = w.syllables();
  std::vector<Syllable> prefix;  // peeled head; conjugator is its inverse
  while (s.size() >= 2) {
    Syllable& f = s.front();
    Syllable& b = s.back();
    if (f.gen != b.gen || (f.exp > 0) == (b.exp > 0)) break;
    long long t = std::min(std::llabs(f.exp), std::llabs(b.exp));
    long long sign = f.exp > 0 ? 1 : -1;
    prefix.push_back({f.gen, sign * t});
    f.exp -= sign * t;
    b.exp += sign * t;
    if (b.exp == 0) s.pop_back();
    if (f.exp == 0) s.erase(s.begin());
  }
  Word core(std::move(s));
  Word conj = inverse(Word(std::move(prefix)));
  return {core, conj};
}

bool word_less(const Word& a, const Word& b) {
  long long la = a.length(), lb = b.length();
  if (la != lb) return la < lb;
  return std::lexicographical_compare(
      a.syllables().begin(), a.syllables().end(), b.syllables().begin(),
      b.syllables().end(), [](const Syllable& x, const Syllable& y) {
        if (x.gen != y.gen) return x.gen < y.gen;
        return x.exp < y.exp;
      });
}

long long exponent_sum(const Word& w, int gen) {
  long long n = 0;
  for (const Syllable& s : w.syllables())
    if (s.gen == gen) n += s.exp;
  return n;
}

std::vector<long long> abelianization(const Word& w, int rank) {
  std::vector<long long> v(static_cast<std::size_t>(rank), 0);
  for (const Syllable& s : w.syllables()) {
    if (s.gen > rank) throw InvalidGenerator("generator beyond rank");
    v[static_cast<std::size_t>(s.gen - 1)] += s.exp;
  }
  return v;
}

bool supported_on(const Word& w, const std::vector<int>& gens) {
  for (const Syllable& s : w.syllables())
    if (std::find(gens.begin(), gens.end(), s.gen) == gens.end()) return false;
  return true;
}

Word substitute(const Word& w, const std::vector<Word>& images) {
  Word out;
  for (const Syllable& s : w.syllables()) {
    if (s.gen > static_cast<int>(images.size()))
      throw InvalidGenerator("no image for generator");
    out = out * power(images[static_cast<std::size_t>(s.gen - 1)], s.exp);
  }
  return out;
}

Word subword(const Word& w, std::size_t i, std::size_t j) {
  if (i > j || j > w.syl_.size()) throw IndexOutOfRange("bad subword range");
  return Word(std::vector<Syllable>(w.syl_.begin() + static_cast<long>(i),
                                    w.syl_.begin() + static_cast<long>(j)),
              Word::Reduced{});
}

FreeGroup::FreeGroup(int rank) : rank_(rank) {
  if (rank < 1) throw RankTooSmall("free group rank must be at least 1");
}

void FreeGroup::check(const Word& w) const {
  if (w.max_generator() > rank_)
    throw InvalidGenerator("word uses a generator beyond the ambient rank");
}

Word FreeGroup::generator(int i) const {
  if (i < 1 || i > rank_) throw InvalidGenerator("generator index out of range");
  return Word::letter(i);
}

}  // namespace freikalk
