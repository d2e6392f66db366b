#include "voa/exact/rational.hpp"

#include <cctype>

#include "voa/error.hpp"

namespace voa {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  std::string num(trim(s.substr(0, slash)));
  std::string den = slash == std::string_view::npos ? "1" : std::string(trim(s.substr(slash + 1)));
  if (!num.empty() && num.front() == '+') num.erase(0, 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-')
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  Integer n(num), d(den);
  if (d == 0) throw DivisionByZero();
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer binomial(long n, unsigned long k) {
  Integer r, nn(n);
  mpz_bin_ui(r.get_mpz_t(), nn.get_mpz_t(), k);
  return r;
}

Integer falling_factorial(long n, unsigned long k) {
  Integer r = 1;
  for (unsigned long i = 0; i < k; ++i) r *= n - static_cast<long>(i);
  return r;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace voa
