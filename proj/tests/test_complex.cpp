#include <random>
#include <sstream>

#include "cohomolab/complex.hpp"
#include "cohomolab/errors.hpp"
#include "cohomolab/group_ring.hpp"
#include "cohomolab/linalg.hpp"
#include "cohomolab/representation.hpp"
#include "doctest.h"

using namespace cohomolab;

namespace {

// Independent Fox-derivative oracle: the recursive product rule
// d(x u) = d(x) + x d(u), in contrast to the occurrence-enumeration
// implementation.
GroupRingElement fox_oracle(const Word& w, int gen) {
  if (w.empty()) return ring_zero();
  const Letter& x = w.letters[0];
  GroupRingElement head;
  if (x.gen == gen) {
    if (x.sign > 0)
      head.add_term({}, 1);
    else
      head.add_term(Word{{{gen, -1}}}, -1);
  }
  Word rest{std::vector<Letter>(w.letters.begin() + 1, w.letters.end())};
  return add(head, mul(ring_word(Word{{x}}), fox_oracle(rest, gen)));
}

Word random_word(std::mt19937_64& rng, int gens, int len) {
  Word w;
  for (int i = 0; i < len; ++i)
    w.letters.push_back({static_cast<int>(rng() % gens), rng() % 2 == 0 ? 1 : -1});
  return w;
}

GroupRingElement two_terms(const Word& a, long long ca, const Word& b, long long cb) {
  GroupRingElement e;
  e.add_term(a, ca);
  e.add_term(b, cb);
  return e;
}

}  // namespace

TEST_SUITE_BEGIN("complex");

TEST_CASE("group ring arithmetic and canonical form") {
  GroupRingElement a = generator_minus_one(0);
  CHECK(a.term_count() == 2);
  CHECK(format_ring_element(a) == "-1*1 + 1*a");
  CHECK(format_ring_element(ring_zero()) == "0");
  CHECK(add(a, scale(a, -1)).is_zero());
  // (a - 1)(a + 1) = a^2 - 1
  GroupRingElement b = two_terms(parse_word("a"), 1, Word{}, 1);
  CHECK(mul(a, b) == two_terms(parse_word("aa"), 1, Word{}, -1));
  // terms with non-reduced words merge after reduction
  GroupRingElement c;
  c.add_term(parse_word("abB"), 2);
  c.add_term(parse_word("a"), -2);
  CHECK(c.is_zero());
  CHECK(incidence_weight(two_terms(parse_word("a"), 3, parse_word("b"), -2)) == 5);
  CHECK(max_generator(two_terms(parse_word("a"), 1, parse_word("c"), 1)) == 2);
  CHECK(parse_ring_element(format_ring_element(mul(a, b))) == mul(a, b));
  CHECK(parse_ring_element("0").is_zero());
  CHECK_THROWS_AS(parse_ring_element("2a"), ParseError);
}

TEST_CASE("fox derivative matches the recursive product-rule oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    int gens = 1 + static_cast<int>(rng() % 3);
    Word w = free_reduce(random_word(rng, gens, 1 + static_cast<int>(rng() % 10)));
    for (int g = 0; g < gens; ++g) CHECK(fox_derivative(w, g) == fox_oracle(w, g));
  }
  CHECK(fox_derivative(Word{}, 0).is_zero());
  CHECK(fox_derivative(parse_word("aaa"), 0) ==
        add(two_terms(Word{}, 1, parse_word("a"), 1), ring_word(parse_word("aa"))));
}

TEST_CASE("fundamental identity sum_g dr/dg (g-1) = r - 1") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    int gens = 1 + static_cast<int>(rng() % 3);
    Word r = free_reduce(random_word(rng, gens, 1 + static_cast<int>(rng() % 12)));
    GroupRingElement lhs;
    for (int g = 0; g < gens; ++g)
      lhs = add(lhs, mul(fox_derivative(r, g), generator_minus_one(g)));
    CHECK(lhs == two_terms(r, 1, Word{}, -1));
  }
  // and evaluated through random unitary representations
  GroupPresentation P = presentation_F2();
  Word r = parse_word("abABab");
  for (int s = 0; s < 5; ++s) {
    Representation pi = random_unitary_rep(P, 3, 100 + s);
    Matrix lhs = Matrix::Zero(3, 3);
    for (int g = 0; g < 2; ++g)
      lhs += evaluate(pi, fox_derivative(r, g)) * (evaluate(pi, Word{{{g, 1}}}) - Matrix::Identity(3, 3));
    Matrix rhs = evaluate(pi, r) - Matrix::Identity(3, 3);
    CHECK(spectral_norm(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("presentation complexes have the expected cells and boundaries") {
  EquivariantComplex XZ = presentation_complex(presentation_Z());
  CHECK(XZ.max_degree == 1);
  CHECK(XZ.cells == std::vector<int>{1, 1});
  CHECK(XZ.boundary(1, 0, 0) == generator_minus_one(0));

  EquivariantComplex X2 = presentation_complex(presentation_Z2());
  CHECK(X2.max_degree == 2);
  CHECK(X2.cells == std::vector<int>{1, 2, 1});
  CHECK(X2.boundary(1, 0, 0) == generator_minus_one(0));
  CHECK(X2.boundary(1, 1, 0) == generator_minus_one(1));
  // d(abAB)/da = 1 - abA, d(abAB)/db = a - abAB
  CHECK(X2.boundary(2, 0, 0) == two_terms(Word{}, 1, parse_word("abA"), -1));
  CHECK(X2.boundary(2, 0, 1) == two_terms(parse_word("a"), 1, parse_word("abAB"), -1));

  EquivariantComplex X3 = presentation_complex(presentation_Z3());
  CHECK(X3.cells == std::vector<int>{1, 1, 1});
  GroupRingElement expected;
  expected.add_term(Word{}, 1);
  expected.add_term(parse_word("a"), 1);
  expected.add_term(parse_word("aa"), 1);
  CHECK(X3.boundary(2, 0, 0) == expected);
}

TEST_CASE("euler characteristic and incidence bounds") {
  CHECK(euler_characteristic(presentation_complex(presentation_Z())) == 0);
  CHECK(euler_characteristic(presentation_complex(presentation_F2())) == -1);
  CHECK(euler_characteristic(presentation_complex(presentation_Z2())) == 0);
  CHECK(euler_characteristic(presentation_complex(presentation_Z3())) == 1);
  for (const char* name : {"Z", "F2", "Z2", "Z3"}) {
    EquivariantComplex X = presentation_complex(preset_presentation(name));
    CHECK(X.incidence_bound == recount_incidence_bounds(X));
    CHECK(X.incidence_bound[0] == 0);
  }
  EquivariantComplex X3 = presentation_complex(presentation_Z3());
  CHECK(X3.incidence_bound[1] == 2);  // a - 1: two incidences
  CHECK(X3.incidence_bound[2] == 3);  // 1 + a + aa
}

TEST_CASE("complex file round-trip is bit-exact") {
  for (const char* name : {"Z", "F2", "Z2", "Z3"}) {
    EquivariantComplex X = presentation_complex(preset_presentation(name));
    std::ostringstream first;
    write_complex(first, X);
    std::istringstream in(first.str());
    EquivariantComplex Y = read_complex(in, X.name);
    std::ostringstream second;
    write_complex(second, Y);
    CHECK(first.str() == second.str());
    CHECK(Y.cells == X.cells);
    CHECK(Y.boundaries == X.boundaries);
    CHECK(Y.generator_count == X.generator_count);
  }
}

TEST_CASE("complex validation and parse errors") {
  EquivariantComplex X = presentation_complex(presentation_Z2());
  CHECK_NOTHROW(validate(X));
  EquivariantComplex bad = X;
  bad.incidence_bound[1] += 1;
  CHECK_THROWS_AS(validate(bad), ParseError);
  bad = X;
  bad.cells[0] = 0;
  CHECK_THROWS_AS(validate(bad), ParseError);

  std::istringstream no_degrees("cells 0: 1\n");
  CHECK_THROWS_AS(read_complex(no_degrees), ParseError);
  std::istringstream bad_degree("degrees: 1\ncells 5: 3\n");
  CHECK_THROWS_AS(read_complex(bad_degree), ParseError);
  std::istringstream bad_index("degrees: 1\ncells 0: 1\ncells 1: 1\nboundary 1 4 0: 1*a\n");
  CHECK_THROWS_WITH_AS(read_complex(bad_index), doctest::Contains("out of range"), ParseError);
  std::istringstream junk("degrees: 1\nwhatever\n");
  CHECK_THROWS_WITH_AS(read_complex(junk, "X"), doctest::Contains("X:2"), ParseError);
  std::istringstream commented(
      "# a circle\ndegrees: 1  # top degree\ncells 0: 1\ncells 1: 1\n"
      "boundary 1 0 0: -1*1 + 1*a  # the loop\n");
  EquivariantComplex Y = read_complex(commented);
  CHECK(Y.boundary(1, 0, 0) == generator_minus_one(0));
}

TEST_SUITE_END();
