#include "cohomolab/word.hpp"

#include <algorithm>

#include "cohomolab/errors.hpp"

namespace cohomolab {

Word free_reduce(const Word& w) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (const Letter& l : w.letters) {
    if (!out.letters.empty() && out.letters.back().gen == l.gen &&
        out.letters.back().sign == -l.sign) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

Word inverse(const Word& w) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back({it->gen, -it->sign});
  return out;
}

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
  return out;
}

Word prefix(const Word& w, int count) {
  Word out;
  out.letters.assign(w.letters.begin(), w.letters.begin() + count);
  return out;
}

int max_generator(const Word& w) {
  int m = -1;
  for (const Letter& l : w.letters) m = std::max(m, l.gen);
  return m;
}

Word parse_word(std::string_view text) {
  if (text == "1") return {};
  if (text.empty()) throw ParseError("empty word (the identity is written '1')");
  Word w;
  w.letters.reserve(text.size());
  for (char c : text) {
    if (c >= 'a' && c <= 'z')
      w.letters.push_back({c - 'a', +1});
    else if (c >= 'A' && c <= 'Z')
      w.letters.push_back({c - 'A', -1});
    else
      throw ParseError(std::string("bad letter '") + c + "' in word '" + std::string(text) + "'");
  }
  return w;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  s.reserve(w.letters.size());
  for (const Letter& l : w.letters)
    s += static_cast<char>((l.sign > 0 ? 'a' : 'A') + l.gen);
  return s;
}

}  // namespace cohomolab
