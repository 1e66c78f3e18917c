#include "cohomolab/group_ring.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "cohomolab/errors.hpp"
#include "cohomolab/text_format.hpp"

namespace cohomolab {

namespace {

// Canonical term order: shorter words first, then lexicographic on letters.
bool word_before(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters < b.letters;
}

}  // namespace

void GroupRingElement::add_term(const Word& w, long long c) {
  if (c == 0) return;
  Word r = free_reduce(w);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), r,
                             [](const auto& t, const Word& key) { return word_before(t.first, key); });
  if (it != terms_.end() && it->first == r) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {r, c});
  }
}

GroupRingElement ring_zero() { return {}; }

GroupRingElement ring_one() {
  GroupRingElement a;
  a.add_term({}, 1);
  return a;
}

GroupRingElement ring_word(const Word& w, long long c) {
  GroupRingElement a;
  a.add_term(w, c);
  return a;
}

GroupRingElement generator_minus_one(int gen) {
  GroupRingElement a;
  a.add_term(Word{{{gen, +1}}}, 1);
  a.add_term({}, -1);
  return a;
}

GroupRingElement add(const GroupRingElement& a, const GroupRingElement& b) {
  GroupRingElement out = a;
  for (const auto& [w, c] : b.terms()) out.add_term(w, c);
  return out;
}

GroupRingElement mul(const GroupRingElement& a, const GroupRingElement& b) {
  GroupRingElement out;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) out.add_term(concat(wa, wb), ca * cb);
  return out;
}

GroupRingElement scale(const GroupRingElement& a, long long c) {
  GroupRingElement out;
  for (const auto& [w, cw] : a.terms()) out.add_term(w, cw * c);
  return out;
}

long long incidence_weight(const GroupRingElement& a) {
  long long n = 0;
  for (const auto& [w, c] : a.terms()) n += std::llabs(c);
  return n;
}

int max_generator(const GroupRingElement& a) {
  int m = -1;
  for (const auto& [w, c] : a.terms()) m = std::max(m, max_generator(w));
  return m;
}

GroupRingElement fox_derivative(const Word& r, int gen) {
  // d(x1...xn)/dg = sum over occurrences of g: +prefix before a positive
  // letter, -(prefix through the letter) for an inverse letter.
  GroupRingElement out;
  for (int i = 0; i < r.size(); ++i) {
    const Letter& l = r.letters[i];
    if (l.gen != gen) continue;
    if (l.sign > 0)
      out.add_term(prefix(r, i), 1);
    else
      out.add_term(prefix(r, i + 1), -1);
  }
  return out;
}

std::string format_ring_element(const GroupRingElement& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (const auto& [w, c] : a.terms()) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c);
    s += '*';
    s += format_word(w);
  }
  return s;
}

namespace {

long long parse_coefficient(std::string_view t) {
  if (t.empty()) throw ParseError("empty coefficient");
  for (char ch : t)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw ParseError("bad coefficient '" + std::string(t) + "'");
  return std::stoll(std::string(t));
}

std::pair<Word, long long> parse_ring_term(std::string_view t) {
  t = trim(t);
  if (t.empty()) throw ParseError("empty group-ring term");
  long long sign = 1;
  if (t.front() == '+' || t.front() == '-') {
    if (t.front() == '-') sign = -1;
    t.remove_prefix(1);
    t = trim(t);
  }
  auto star = t.find('*');
  if (star == std::string_view::npos) {
    // Bare word or bare integer.
    if (!t.empty() && (std::isdigit(static_cast<unsigned char>(t.front())))) {
      if (t == "1") return {Word{}, sign};  // "1" alone is the identity word
      return {Word{}, sign * parse_coefficient(t)};
    }
    return {parse_word(t), sign};
  }
  long long c = parse_coefficient(trim(t.substr(0, star)));
  Word w = parse_word(trim(t.substr(star + 1)));
  return {w, sign * c};
}

}  // namespace

GroupRingElement parse_ring_element(std::string_view text) {
  text = trim(text);
  if (text == "0") return {};
  GroupRingElement out;
  // Terms are joined by '+' at top level. A '+'/'-' at the very front of a
  // term is its sign; coefficients are plain integers, so every later '+'
  // is a separator.
  size_t start = 0;
  while (start < text.size()) {
    while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
    size_t term_begin = start;
    if (start < text.size() && (text[start] == '+' || text[start] == '-')) ++start;
    size_t plus = text.find('+', start);
    std::string_view piece = (plus == std::string_view::npos)
                                 ? text.substr(term_begin)
                                 : text.substr(term_begin, plus - term_begin);
    auto [w, c] = parse_ring_term(piece);
    out.add_term(w, c);
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return out;
}

}  // namespace cohomolab
