#include "rational.hpp"

#include <cctype>
#include <stdexcept>

namespace genmetric {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rat> try_parse_rational(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = (s[0] == '-');
    s.erase(0, 1);
  }
  if (s.empty()) return std::nullopt;

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d(den);
    if (d == 0) return std::nullopt;
    Rat q(mpz_class(num), d);
    q.canonicalize();
    return negative ? Rat(-q) : q;
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
    mpz_class scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class num = mpz_class(whole) * scale + mpz_class(frac);
    Rat q(num, scale);
    q.canonicalize();
    return negative ? Rat(-q) : q;
  }

  if (!all_digits(s)) return std::nullopt;
  Rat q{mpz_class(s)};
  return negative ? Rat(-q) : q;
}

Rat parse_rational(const std::string& text) {
  auto q = try_parse_rational(text);
  if (!q) {
    throw InputError("malformed rational: \"" + text + "\"");
  }
  return *q;
}

std::string format_rational(const Rat& q) {
  return q.get_str();
}

std::string format_point_label(const Rat& q) {
  mpz_class den = q.get_den();
  // Count factors of 2 and 5; a terminating decimal exists iff nothing remains.
  mpz_class rest = den;
  unsigned long twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return q.get_str();
  if (den == 1) return q.get_num().get_str();

  unsigned long digits = std::max(twos, fives);
  mpz_class scale = 1;
  for (unsigned long i = 0; i < digits; ++i) scale *= 10;
  mpz_class num = q.get_num();
  bool negative = num < 0;
  if (negative) num = -num;
  mpz_class scaled = num * (scale / den);
  mpz_class whole = scaled / scale;
  mpz_class frac = scaled % scale;
  std::string frac_str = frac.get_str();
  frac_str.insert(0, digits - frac_str.size(), '0');
  while (!frac_str.empty() && frac_str.back() == '0') frac_str.pop_back();
  std::string out = (negative ? "-" : "") + whole.get_str();
  if (!frac_str.empty()) out += "." + frac_str;
  return out;
}

Rat pow_rational(const Rat& base, unsigned long exp) {
  Rat result = 1;
  Rat b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    b *= b;
    exp >>= 1;
  }
  return result;
}

}  // namespace genmetric
