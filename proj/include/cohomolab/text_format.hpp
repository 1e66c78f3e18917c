#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace cohomolab {

// All numeric text I/O goes through these helpers: '.' decimal separator,
// 17 significant digits (lossless double round-trip), locale independent.
std::string format_real(double x);
double parse_real(std::string_view text);  // throws ParseError

// Compact complex entry "re+imj" / "re-imj", used by representation files.
std::string format_complex(std::complex<double> z);
std::complex<double> parse_complex(std::string_view text);

// Whitespace trim and simple line utilities shared by the file readers.
std::string_view trim(std::string_view s);
bool is_blank_or_comment(std::string_view line);
// Line content before any '#' comment, trimmed ('#' cannot occur in a token).
std::string_view strip_comment(std::string_view line);

}  // namespace cohomolab
