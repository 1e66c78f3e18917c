#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cohomolab/group_ring.hpp"
#include "cohomolab/presentation.hpp"

namespace cohomolab {

// Cocompact equivariant cell data: orbit-cell counts per degree and boundary
// matrices over the integral group ring. boundary(k) has one row per k-cell
// and one column per (k-1)-cell; absent entries are the zero element. The
// codifferential above max_degree is the zero map by convention.
struct EquivariantComplex {
  int max_degree = 0;
  std::vector<int> cells;                               // size max_degree+1
  std::vector<std::vector<GroupRingElement>> boundaries;  // [k] row-major, k>=1
  std::vector<long long> incidence_bound;               // [k] = M_k, [0] = 0
  int generator_count = 0;
  std::string name;

  const GroupRingElement& boundary(int k, int i, int j) const {
    return boundaries[k][static_cast<size_t>(i) * cells[k - 1] + j];
  }
  GroupRingElement& boundary(int k, int i, int j) {
    return boundaries[k][static_cast<size_t>(i) * cells[k - 1] + j];
  }
};

// Consistency: positive cell counts through max_degree, boundary shapes match
// cell counts, stored incidence bounds equal a recount. Throws ParseError.
void validate(const EquivariantComplex& X);

// Presentation 2-complex: one vertex, one edge g with boundary g - 1 per
// generator, one 2-cell per relator with Fox-derivative boundary row.
// max_degree is 2 when relators exist, 1 otherwise.
EquivariantComplex presentation_complex(const GroupPresentation& P);

// sum (-1)^k |F^(k)|
int euler_characteristic(const EquivariantComplex& X);

// M_k = max over (k-1)-cells of the number of k-cell boundary incidences
// touching it (group-ring terms counted with |coefficient| multiplicity).
std::vector<long long> recount_incidence_bounds(const EquivariantComplex& X);

// Text format:
//   degrees: <max_degree>
//   cells <k>: <count>
//   boundary <k> <i> <j>: <group-ring expr>   (0-based i, j; zero entries omitted)
// Write -> read is bit-exact.
EquivariantComplex read_complex(std::istream& in, std::string name = "");
EquivariantComplex read_complex_file(const std::string& path);
void write_complex(std::ostream& out, const EquivariantComplex& X);

}  // namespace cohomolab
