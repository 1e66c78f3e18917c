#include "cohomolab/text_format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

#include "cohomolab/errors.hpp"

namespace cohomolab {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "+inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  if (text == "nan") return NAN;
  std::string_view body = text;  // from_chars rejects a leading '+'
  if (!body.empty() && body.front() == '+') {
    body.remove_prefix(1);
    if (body.empty() || body.front() == '+' || body.front() == '-')
      throw ParseError("bad real number: '" + std::string(text) + "'");
  }
  double value = 0;
  auto res = std::from_chars(body.data(), body.data() + body.size(), value);
  if (res.ec != std::errc() || res.ptr != body.data() + body.size())
    throw ParseError("bad real number: '" + std::string(text) + "'");
  return value;
}

std::string format_complex(std::complex<double> z) {
  std::string s = format_real(z.real());
  double im = z.imag();
  if (std::signbit(im) && !std::isnan(im)) {
    s += '-';
    s += format_real(-im);
  } else {
    s += '+';
    s += format_real(im);
  }
  s += 'j';
  return s;
}

std::complex<double> parse_complex(std::string_view text) {
  text = trim(text);
  if (text.empty() || text.back() != 'j')
    throw ParseError("bad complex entry (missing trailing 'j'): '" + std::string(text) + "'");
  text.remove_suffix(1);
  // Split at the last '+'/'-' that is not a leading sign and not an exponent sign.
  size_t split = std::string_view::npos;
  for (size_t i = text.size(); i-- > 1;) {
    char c = text[i];
    if ((c == '+' || c == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos)
    throw ParseError("bad complex entry (no imaginary part): '" + std::string(text) + "j'");
  double re = parse_real(text.substr(0, split));
  double im = parse_real(text.substr(split));  // keeps the sign
  return {re, im};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_blank_or_comment(std::string_view line) {
  auto t = trim(line);
  return t.empty() || t.front() == '#';
}

std::string_view strip_comment(std::string_view line) {
  size_t hash = line.find('#');
  return trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

}  // namespace cohomolab
