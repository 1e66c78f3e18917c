#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cohomolab/word.hpp"

namespace cohomolab {

// Finite presentation <g_1..g_k | r_1..r_m>. Relators are nonempty freely
// reduced words over the generators.
struct GroupPresentation {
  int generator_count = 0;
  std::vector<Word> relators;
  std::string name;
};

// Throws ParseError if the presentation is malformed: generator_count < 1,
// a relator that is empty, not freely reduced, longer than 10^4 letters, or
// using a generator outside the alphabet.
void validate(const GroupPresentation& P);

// Bundled fixtures.
GroupPresentation presentation_Z();    // <a | >
GroupPresentation presentation_F2();   // <a,b | >
GroupPresentation presentation_Z2();   // <a,b | abAB>  (the torus group)
GroupPresentation presentation_Z3();   // <a | aaa>
// Lookup by name ("Z", "F2", "Z2", "Z3", case-insensitive); throws ParseError.
GroupPresentation preset_presentation(std::string_view name);

// Text format:
//   gens: <k>
//   rel: <word>     (zero or more lines)
// with '#' comments and blank lines ignored.
GroupPresentation read_presentation(std::istream& in, std::string name = "");
GroupPresentation read_presentation_file(const std::string& path);
void write_presentation(std::ostream& out, const GroupPresentation& P);

}  // namespace cohomolab
