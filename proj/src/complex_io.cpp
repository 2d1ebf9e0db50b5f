#include "fqw/complex_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fqw/errors.hpp"

namespace fqw {

std::string format_complex(std::complex<double> z, double zero_threshold) {
  if (std::abs(z) < zero_threshold) return "0~";
  char buf[80];
  double re = z.real() == 0.0 ? 0.0 : z.real();  // normalize -0
  double im = z.imag() == 0.0 ? 0.0 : z.imag();
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", re, im);
  return buf;
}

std::string format_complex_sci(std::complex<double> z) {
  char buf[96];
  double re = z.real() == 0.0 ? 0.0 : z.real();
  double im = z.imag() == 0.0 ? 0.0 : z.imag();
  std::snprintf(buf, sizeof(buf), "%.12e%+.12ei", re, im);
  return buf;
}

namespace {

// One signed float with optional trailing 'i'. Returns chars consumed, 0 on failure.
size_t scan_term(std::string_view s, double* value, bool* imaginary) {
  size_t i = 0;
  size_t start = i;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  size_t digits_begin = i;
  while (i < s.size() && (std::isdigit((unsigned char)s[i]) || s[i] == '.')) ++i;
  bool has_mantissa = i > digits_begin;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E') && has_mantissa) {
    size_t j = i + 1;
    if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
    size_t exp_begin = j;
    while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
    if (j > exp_begin) i = j;
  }
  *imaginary = false;
  if (i < s.size() && s[i] == 'i') {
    *imaginary = true;
    if (!has_mantissa) {
      // bare "i", "+i", "-i"
      *value = (start < s.size() && s[start] == '-') ? -1.0 : 1.0;
      return i + 1;
    }
  }
  if (!has_mantissa) return 0;
  *value = std::stod(std::string(s.substr(start, i - start)));
  return *imaginary ? i + 1 : i;
}

}  // namespace

std::complex<double> parse_complex(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace((unsigned char)s.front())) s.remove_prefix(1);
  while (!s.empty() && std::isspace((unsigned char)s.back())) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty complex literal");

  double re = 0.0, im = 0.0;
  size_t pos = 0;
  int terms = 0;
  bool seen_re = false, seen_im = false;
  while (pos < s.size()) {
    double v = 0.0;
    bool imag = false;
    size_t used = scan_term(s.substr(pos), &v, &imag);
    if (used == 0 || ++terms > 2)
      throw ParseError("bad complex literal '" + std::string(text) + "'");
    if (imag) {
      if (seen_im) throw ParseError("bad complex literal '" + std::string(text) + "'");
      im = v;
      seen_im = true;
    } else {
      if (seen_re) throw ParseError("bad complex literal '" + std::string(text) + "'");
      re = v;
      seen_re = true;
    }
    pos += used;
  }
  return {re, im};
}

std::complex<double> parse_unit_complex(std::string_view text) {
  std::string s(text);
  std::complex<double> z;
  if (s.rfind("exp(", 0) == 0 && s.back() == ')') {
    // exp(i*pi*p/q) with real p, positive q (q optional)
    std::string inner = s.substr(4, s.size() - 5);
    double p = 0.0, q = 1.0;
    if (std::sscanf(inner.c_str(), "i*pi*%lf/%lf", &p, &q) == 2 ||
        std::sscanf(inner.c_str(), "i*pi*%lf", &p) == 1) {
      if (q == 0.0) throw ParseError("zero denominator in '" + s + "'");
      z = std::polar(1.0, std::numbers::pi * p / q);
    } else {
      throw ParseError("bad unit complex spec '" + s + "'");
    }
  } else if (s.size() > 3 && s.substr(s.size() - 3) == "deg") {
    double degrees = 0.0;
    try {
      degrees = std::stod(s.substr(0, s.size() - 3));
    } catch (const std::exception&) {
      throw ParseError("bad degree spec '" + s + "'");
    }
    z = std::polar(1.0, std::numbers::pi * degrees / 180.0);
  } else {
    z = parse_complex(s);
  }
  if (std::abs(std::abs(z) - 1.0) > 1e-9)
    throw ValidationError("'" + s + "' is not on the unit circle");
  return z / std::abs(z);
}

}  // namespace fqw
