#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace cohomolab {

// One letter of a word: generator index (0-based) and exponent sign (+1/-1).
struct Letter {
  int gen = 0;
  int sign = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Word in the free group on the generators; the empty word is the identity.
// Words are not forced to be freely reduced, reduction is explicit.
struct Word {
  std::vector<Letter> letters;

  int size() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

Word free_reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& u, const Word& v);
// First `count` letters of w, as a word.
Word prefix(const Word& w, int count);

// Largest generator index used, or -1 for the empty word.
int max_generator(const Word& w);

// Text form: 'a'..'z' are generators 0..25, 'A'..'Z' their inverses,
// "1" is the empty word. parse_word throws ParseError on anything else.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

}  // namespace cohomolab
