#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "voa/exact/poly.hpp"

namespace voa {

// Quotient of polynomials in canonical form: gcd(num, den) = 1, the integer
// contents of num and den are coprime, and den has positive leading coefficient.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}
  RatFunc(int c) : RatFunc(static_cast<long>(c)) {}
  RatFunc(const Rational& c);
  RatFunc(Poly p);
  RatFunc(Poly num, Poly den);

  static RatFunc var(Var v) { return RatFunc(Poly::variable(v)); }
  static RatFunc parse(std::string_view text);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  std::optional<Rational> constant_value() const;
  bool contains(Var v) const { return num_.contains(v) || den_.contains(v); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }

  RatFunc pow(int e) const;

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  int compare(const RatFunc& o) const;
  bool operator<(const RatFunc& o) const { return compare(o) < 0; }

  // Throws CriticalSpecialization when the bindings hit a pole.
  RatFunc specialize(const Bindings& b) const;

  std::string to_string() const;

 private:
  void canonicalize();
  Poly num_, den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

}  // namespace voa
