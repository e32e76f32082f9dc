#include "freikalk/parser.hpp"

#include <cctype>
#include <sstream>

namespace freikalk {

namespace {

class WordParser {
 public:
  WordParser(const std::string& text, int rank) : s_(text), rank_(rank) {}

  Word parse() {
    Word w = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return w;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  int rank_;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_atom(char c) const {
    return c == '(' || c == '[' || c == 'x' || c == 'y' || c == 'X' || c == 'Y';
  }

  long long integer() {
    skip_ws();
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected integer");
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (1LL << 40)) throw ParseError("exponent too large", start);
      ++pos_;
    }
    return neg ? -v : v;
  }

  Word gen() {
    char c = s_[pos_];
    bool inv = c == 'X' || c == 'Y';
    ++pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected generator index");
    long long idx = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      idx = idx * 10 + (s_[pos_] - '0');
      if (idx > 1'000'000) fail("generator index too large");
      ++pos_;
    }
    if (idx < 1) fail("generator index must be at least 1");
    if (rank_ > 0 && idx > rank_) fail("generator index beyond rank");
    return Word::letter(static_cast<int>(idx), inv ? -1 : 1);
  }

  Word atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Word w = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word a = expr();
      if (peek() != ',') fail("expected ',' in commutator");
      ++pos_;
      Word b = expr();
      if (peek() != ']') fail("expected ']'");
      ++pos_;
      return commutator(a, b);
    }
    if (c == 'x' || c == 'y' || c == 'X' || c == 'Y') return gen();
    fail("expected generator, '(' or '['");
  }

  Word term() {
    Word a = atom();
    if (peek() == '^') {
      ++pos_;
      long long e = integer();
      return power(a, e);
    }
    return a;
  }

  Word expr() {
    Word w = term();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        w = w * term();
      } else if (starts_atom(c)) {
        w = w * term();
      } else {
        return w;
      }
    }
  }
};

}  // namespace

Word parse_word(const std::string& text, int rank) {
  WordParser p(text, rank);
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '1' && text.substr(i + 1).find_first_not_of(" \t\r\n") ==
                                               std::string::npos)
    return Word();  // the identity prints as "1"; accept it back
  return p.parse();
}

std::vector<Word> parse_word_list(const std::string& text, int rank) {
  std::vector<Word> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    std::string piece = text.substr(start, end == std::string::npos ? end : end - start);
    if (piece.find_first_not_of(" \t\r\n") != std::string::npos)
      out.push_back(parse_word(piece, rank));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

std::string word_text(const Word& w) {
  if (w.is_identity()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Syllable& s : w.syllables()) {
    if (!first) os << '*';
    first = false;
    os << 'y' << s.gen;
    if (s.exp != 1) os << '^' << s.exp;
  }
  return os.str();
}

ParsedSignature parse_signature(const std::string& text) {
  if (text.rfind("gamma", 0) != 0) throw ParseError("expected 'gamma<c>'", 0);
  std::size_t pos = 5;
  int c = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    c = c * 10 + (text[pos] - '0');
    ++pos;
  }
  if (c < 2) throw ParseError("verbal base needs gamma_c with c >= 2", pos);
  ParsedSignature sig;
  sig.c = c;
  if (pos == text.size()) {
    sig.classes = {1};
    return sig;
  }
  if (text.compare(pos, 4, ";m=[") != 0) throw ParseError("expected ';m=[...]'", pos);
  pos += 4;
  for (;;) {
    int m = 0;
    bool digits = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      m = m * 10 + (text[pos] - '0');
      ++pos;
      digits = true;
    }
    if (!digits || m < 1) throw ParseError("expected class >= 1", pos);
    sig.classes.push_back(m);
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  if (pos >= text.size() || text[pos] != ']') throw ParseError("expected ']'", pos);
  if (pos + 1 != text.size()) throw ParseError("trailing input after signature", pos + 1);
  return sig;
}

std::string signature_text(const ParsedSignature& sig) {
  std::ostringstream os;
  os << "gamma" << sig.c << ";m=[";
  for (std::size_t i = 0; i < sig.classes.size(); ++i) {
    if (i) os << ',';
    os << sig.classes[i];
  }
  os << ']';
  return os.str();
}

}  // namespace freikalk
