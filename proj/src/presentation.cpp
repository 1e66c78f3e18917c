#include "cohomolab/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cohomolab/errors.hpp"
#include "cohomolab/text_format.hpp"

namespace cohomolab {

namespace {
constexpr int kMaxRelatorLetters = 10000;
}

void validate(const GroupPresentation& P) {
  if (P.generator_count < 1)
    throw ParseError("presentation '" + P.name + "': generator count must be >= 1");
  if (P.generator_count > 26)
    throw ParseError("presentation '" + P.name + "': at most 26 generators (letters a..z)");
  for (size_t i = 0; i < P.relators.size(); ++i) {
    const Word& r = P.relators[i];
    std::string where = "presentation '" + P.name + "', relator " + std::to_string(i + 1);
    if (r.empty()) throw ParseError(where + ": empty relator");
    if (r.size() > kMaxRelatorLetters)
      throw ParseError(where + ": longer than " + std::to_string(kMaxRelatorLetters) + " letters");
    if (free_reduce(r) != r) throw ParseError(where + ": not freely reduced");
    if (max_generator(r) >= P.generator_count)
      throw ParseError(where + ": uses a generator outside the alphabet");
  }
}

GroupPresentation presentation_Z() { return {1, {}, "Z"}; }

GroupPresentation presentation_F2() { return {2, {}, "F2"}; }

GroupPresentation presentation_Z2() { return {2, {parse_word("abAB")}, "Z2"}; }

GroupPresentation presentation_Z3() { return {1, {parse_word("aaa")}, "Z3"}; }

GroupPresentation preset_presentation(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (key == "Z") return presentation_Z();
  if (key == "F2") return presentation_F2();
  if (key == "Z2") return presentation_Z2();
  if (key == "Z3") return presentation_Z3();
  throw ParseError("unknown preset '" + std::string(name) + "' (have Z, F2, Z2, Z3)");
}

GroupPresentation read_presentation(std::istream& in, std::string name) {
  GroupPresentation P;
  P.name = std::move(name);
  std::string line;
  int line_no = 0;
  bool have_gens = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::string_view t = strip_comment(line);
    std::string where = P.name + ":" + std::to_string(line_no);
    if (t.rfind("gens:", 0) == 0) {
      P.generator_count = static_cast<int>(parse_real(t.substr(5)));
      have_gens = true;
    } else if (t.rfind("rel:", 0) == 0) {
      try {
        // Normalize on input; the stored relator is always freely reduced.
        P.relators.push_back(free_reduce(parse_word(trim(t.substr(4)))));
      } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
      }
    } else {
      throw ParseError(where + ": expected 'gens:' or 'rel:' line");
    }
  }
  if (!have_gens) throw ParseError("presentation '" + P.name + "': missing 'gens:' line");
  validate(P);
  return P;
}

GroupPresentation read_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open presentation file '" + path + "'");
  return read_presentation(in, path);
}

void write_presentation(std::ostream& out, const GroupPresentation& P) {
  out << "gens: " << P.generator_count << "\n";
  for (const Word& r : P.relators) out << "rel: " << format_word(r) << "\n";
}

}  // namespace cohomolab
