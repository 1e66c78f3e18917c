#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohomolab/word.hpp"

namespace cohomolab {

// Element of the integral group ring: a finite Z-linear combination of freely
// reduced words. Terms are kept in a canonical order (length, then letters),
// like terms merged, zero coefficients dropped.
class GroupRingElement {
 public:
  GroupRingElement() = default;

  // Adds c * w (w is freely reduced first).
  void add_term(const Word& w, long long c);

  const std::vector<std::pair<Word, long long>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

 private:
  std::vector<std::pair<Word, long long>> terms_;
};

GroupRingElement ring_zero();
GroupRingElement ring_one();
GroupRingElement ring_word(const Word& w, long long c = 1);
// g - 1 for a single generator, the degree-1 boundary entry.
GroupRingElement generator_minus_one(int gen);

GroupRingElement add(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement mul(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement scale(const GroupRingElement& a, long long c);

// Sum of |coefficient| over terms: the number of cell incidences the element
// encodes, counted with multiplicity.
long long incidence_weight(const GroupRingElement& a);
// Largest generator index appearing in any term, or -1.
int max_generator(const GroupRingElement& a);

// Fox free derivative d(r)/d(gen) of a word with respect to one generator:
// d(uv) = d(u) + u d(v), d(g)/d(g) = 1, d(g^-1)/d(g) = -g^-1.
GroupRingElement fox_derivative(const Word& r, int gen);

// Text form "c*word" terms joined by " + ", identity word written "1",
// the zero element written "0". Example: "1*1 + -1*abA".
std::string format_ring_element(const GroupRingElement& a);
GroupRingElement parse_ring_element(std::string_view text);

}  // namespace cohomolab
