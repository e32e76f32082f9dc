#pragma once

// Word grammar shared by the CLI, the serializers and the tests:
//
//   expr := term (('*')? term)*          juxtaposition or explicit *
//   term := atom ('^' int)?
//   atom := gen | '(' expr ')' | '[' expr ',' expr ']'
//   gen  := [xy] digits  |  [XY] digits  (uppercase = inverse)
//
// [u,v] is commutator sugar for u^-1 v^-1 u v. Whitespace separates freely.
// Parse failures throw ParseError carrying the byte offset.

#include <string>
#include <vector>

#include "freikalk/word.hpp"

namespace freikalk {

// rank <= 0 skips the range check (open alphabets).
Word parse_word(const std::string& text, int rank = 0);

// Semicolon-separated word list, e.g. "[y1,y2];[y3,y4]".
std::vector<Word> parse_word_list(const std::string& text, int rank = 0);

// Canonical text form; identity prints as "1". Round-trips through
// parse_word for any reduced word.
std::string word_text(const Word& w);

struct ParsedSignature {
  int c = 2;                  // verbal base gamma_c F
  std::vector<int> classes;   // nilpotency class per tower level
};

// Signature grammar: "gamma<c>;m=[m1,m2,...]", e.g. "gamma2;m=[2]".
ParsedSignature parse_signature(const std::string& text);
std::string signature_text(const ParsedSignature& sig);

}  // namespace freikalk
