#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "voa/exact/rational.hpp"

namespace voa {

// The fixed set of indeterminates used throughout.
enum class Var : std::uint8_t { k, lambda, Delta, w, x, t, r, r_prime, s, s_prime };

inline constexpr std::size_t kVarCount = 10;

std::string_view var_name(Var v);
std::optional<Var> var_from_name(std::string_view name);

struct Exponents {
  std::array<std::uint16_t, kVarCount> e{};

  unsigned total() const;
  bool divides(const Exponents& o) const;
  bool operator==(const Exponents&) const = default;
  std::uint16_t& operator[](Var v) { return e[static_cast<std::size_t>(v)]; }
  std::uint16_t operator[](Var v) const { return e[static_cast<std::size_t>(v)]; }
};

// Graded lexicographic; k > λ > Δ > ... within a degree.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

using Bindings = std::map<Var, Rational>;

class Poly {
 public:
  using Terms = std::map<Exponents, Rational, GrlexLess>;

  Poly() = default;
  Poly(long c);
  Poly(const Rational& c);
  static Poly variable(Var v, unsigned power = 1);
  static Poly monomial(const Exponents& e, const Rational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // coefficient of the unit monomial
  bool contains(Var v) const;
  unsigned degree(Var v) const;

  // grlex-leading term; requires non-zero
  const Exponents& leading_exponents() const { return terms_.rbegin()->first; }
  const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  int compare(const Poly& o) const;

  std::map<unsigned, Poly> coefficients_in(Var v) const;
  Poly leading_coefficient_in(Var v) const;

  Poly substitute(const Bindings& b) const;
  std::optional<Rational> evaluate(const Bindings& b) const;  // nullopt if a free variable remains

  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  Terms terms_;
};

// Rational content with the sign of the leading coefficient; p / content(p)
// has coprime integer coefficients and positive leading coefficient.
Rational content(const Poly& p);
Poly primitive_part(const Poly& p);

// Throws Error when b does not divide a.
Poly divide_exact(const Poly& a, const Poly& b);

// Normalised greatest common divisor (primitive, positive leading coefficient).
Poly gcd(const Poly& a, const Poly& b);

}  // namespace voa
