#include "psdcert/scalar.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>

namespace psdcert {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("not a number: '" + std::string(text) + "'");
}

}  // namespace

// Accepts integers, "p/q", and decimals with an optional exponent. Decimals
// are converted exactly: "0.8" is 4/5.
Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    Integer d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    value = Rational(Integer(std::string(num), 10), d);
    value.canonicalize();
  } else {
    std::string_view mantissa = body;
    long exponent = 0;
    if (const auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = body.substr(0, e);
      std::string_view ex = body.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex) || ex.size() > 6) bad_number(text);
      exponent = std::stol(std::string(ex));
      if (eneg) exponent = -exponent;
    }
    std::string digits;
    std::string_view ip = mantissa;
    std::string_view fp;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      ip = mantissa.substr(0, dot);
      fp = mantissa.substr(dot + 1);
    }
    if (ip.empty() && fp.empty()) bad_number(text);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) bad_number(text);
    digits.append(ip);
    digits.append(fp);
    exponent -= static_cast<long>(fp.size());
    Integer n(digits.empty() ? std::string("0") : digits, 10);
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    value = exponent < 0 ? Rational(n, p) : Rational(n * p);
    value.canonicalize();
  }
  return negative ? Rational(-value) : value;
}

double parse_double(std::string_view text) {
  const std::string_view s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const double den = parse_double(s.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return parse_double(s.substr(0, slash)) / den;
  }
  std::string_view body = s;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || ptr != body.data() + body.size() || body.empty()) bad_number(text);
  if (!std::isfinite(v)) bad_number(text);
  return v;
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string_view backend_name(Backend b) { return b == Backend::exact ? "exact" : "float"; }

}  // namespace psdcert
