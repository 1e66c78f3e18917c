#include "cohomolab/complex.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "cohomolab/errors.hpp"
#include "cohomolab/text_format.hpp"

namespace cohomolab {

void validate(const EquivariantComplex& X) {
  std::string who = "complex '" + X.name + "': ";
  if (X.max_degree < 0) throw ParseError(who + "negative max_degree");
  if (static_cast<int>(X.cells.size()) != X.max_degree + 1)
    throw ParseError(who + "cell-count list does not span degrees 0..max_degree");
  for (int k = 0; k <= X.max_degree; ++k)
    if (X.cells[k] <= 0)
      throw ParseError(who + "cell count at degree " + std::to_string(k) + " must be positive");
  if (static_cast<int>(X.boundaries.size()) != X.max_degree + 1)
    throw ParseError(who + "boundary list size mismatch");
  for (int k = 1; k <= X.max_degree; ++k) {
    size_t want = static_cast<size_t>(X.cells[k]) * X.cells[k - 1];
    if (X.boundaries[k].size() != want)
      throw ParseError(who + "boundary " + std::to_string(k) + " shape mismatch");
    for (const auto& e : X.boundaries[k])
      if (max_generator(e) >= X.generator_count)
        throw ParseError(who + "boundary " + std::to_string(k) +
                         " uses a generator outside the alphabet");
  }
  if (X.incidence_bound != recount_incidence_bounds(X))
    throw ParseError(who + "stored incidence bounds disagree with a recount");
}

EquivariantComplex presentation_complex(const GroupPresentation& P) {
  validate(P);
  EquivariantComplex X;
  X.name = P.name;
  X.generator_count = P.generator_count;
  bool has_relators = !P.relators.empty();
  X.max_degree = has_relators ? 2 : 1;
  X.cells = {1, P.generator_count};
  X.boundaries.resize(X.max_degree + 1);
  X.boundaries[1].reserve(P.generator_count);
  for (int g = 0; g < P.generator_count; ++g)
    X.boundaries[1].push_back(generator_minus_one(g));
  if (has_relators) {
    X.cells.push_back(static_cast<int>(P.relators.size()));
    X.boundaries[2].reserve(P.relators.size() * P.generator_count);
    for (const Word& r : P.relators)
      for (int g = 0; g < P.generator_count; ++g)
        X.boundaries[2].push_back(fox_derivative(r, g));
  }
  X.incidence_bound = recount_incidence_bounds(X);
  return X;
}

int euler_characteristic(const EquivariantComplex& X) {
  int chi = 0;
  for (int k = 0; k <= X.max_degree; ++k) chi += (k % 2 == 0 ? 1 : -1) * X.cells[k];
  return chi;
}

std::vector<long long> recount_incidence_bounds(const EquivariantComplex& X) {
  std::vector<long long> bounds(X.max_degree + 1, 0);
  for (int k = 1; k <= X.max_degree; ++k) {
    long long best = 0;
    for (int j = 0; j < X.cells[k - 1]; ++j) {
      long long touch = 0;
      for (int i = 0; i < X.cells[k]; ++i) touch += incidence_weight(X.boundary(k, i, j));
      best = std::max(best, touch);
    }
    bounds[k] = best;
  }
  return bounds;
}

EquivariantComplex read_complex(std::istream& in, std::string name) {
  EquivariantComplex X;
  X.name = std::move(name);
  X.max_degree = -1;
  std::string line;
  int line_no = 0;
  std::vector<std::tuple<int, int, int, GroupRingElement>> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::string_view t = strip_comment(line);
    std::string where = X.name + ":" + std::to_string(line_no);
    try {
      if (t.rfind("degrees:", 0) == 0) {
        X.max_degree = static_cast<int>(parse_real(t.substr(8)));
        X.cells.assign(X.max_degree + 1, 0);
      } else if (t.rfind("cells", 0) == 0) {
        std::istringstream ss{std::string(t.substr(5))};
        int k = -1;
        char colon = 0;
        int count = 0;
        if (!(ss >> k >> colon >> count) || colon != ':')
          throw ParseError("malformed 'cells' line");
        if (X.max_degree < 0) throw ParseError("'cells' before 'degrees'");
        if (k < 0 || k > X.max_degree) throw ParseError("cell degree out of range");
        X.cells[k] = count;
      } else if (t.rfind("boundary", 0) == 0) {
        auto colon = t.find(':');
        if (colon == std::string_view::npos) throw ParseError("malformed 'boundary' line");
        std::istringstream ss{std::string(t.substr(8, colon - 8))};
        int k = -1, i = -1, j = -1;
        if (!(ss >> k >> i >> j)) throw ParseError("malformed 'boundary' indices");
        entries.emplace_back(k, i, j, parse_ring_element(t.substr(colon + 1)));
      } else {
        throw ParseError("expected 'degrees:', 'cells', or 'boundary' line");
      }
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (X.max_degree < 0) throw ParseError("complex '" + X.name + "': missing 'degrees:' line");
  X.boundaries.resize(X.max_degree + 1);
  for (int k = 1; k <= X.max_degree; ++k)
    X.boundaries[k].assign(static_cast<size_t>(std::max(X.cells[k], 0)) *
                               std::max(X.cells[k - 1], 0),
                           GroupRingElement{});
  for (auto& [k, i, j, e] : entries) {
    if (k < 1 || k > X.max_degree || i < 0 || i >= X.cells[k] || j < 0 || j >= X.cells[k - 1])
      throw ParseError("complex '" + X.name + "': boundary " + std::to_string(k) + " " +
                       std::to_string(i) + " " + std::to_string(j) + " out of range");
    X.boundary(k, i, j) = std::move(e);
    X.generator_count = std::max(X.generator_count, max_generator(X.boundary(k, i, j)) + 1);
  }
  X.incidence_bound = recount_incidence_bounds(X);
  validate(X);
  return X;
}

EquivariantComplex read_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open complex file '" + path + "'");
  return read_complex(in, path);
}

void write_complex(std::ostream& out, const EquivariantComplex& X) {
  out << "degrees: " << X.max_degree << "\n";
  for (int k = 0; k <= X.max_degree; ++k) out << "cells " << k << ": " << X.cells[k] << "\n";
  for (int k = 1; k <= X.max_degree; ++k)
    for (int i = 0; i < X.cells[k]; ++i)
      for (int j = 0; j < X.cells[k - 1]; ++j)
        if (!X.boundary(k, i, j).is_zero())
          out << "boundary " << k << " " << i << " " << j << ": "
              << format_ring_element(X.boundary(k, i, j)) << "\n";
}

}  // namespace cohomolab
