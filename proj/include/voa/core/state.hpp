#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "voa/exact/ratfunc.hpp"

namespace voa {

struct Generator {
  std::string name;
  int twice_weight = 2;  // conformal weight times two

  Rational weight() const {
    Rational q(twice_weight, 2);
    q.canonicalize();
    return q;
  }
};

// a_(index) in the Borcherds convention a(z) = sum a_(n) z^{-n-1}
struct Mode {
  int generator = 0;
  int index = 0;
  auto operator<=>(const Mode&) const = default;
};

// PBW monomial, applied right to left to a ground vector. Normal form:
// non-decreasing in (generator, index), so for each generator the most
// negative mode sits leftmost.
using Monomial = std::vector<Mode>;

bool is_normal(const Monomial& m);

struct GroundVector {
  enum class Kind { vacuum, highest_weight, one_dimensional };
  Kind kind = Kind::vacuum;
  // zero-mode eigenvalues, keyed by generator
  std::map<int, RatFunc> eigenvalues;

  bool operator==(const GroundVector&) const = default;
};

using GroundPtr = std::shared_ptr<const GroundVector>;

GroundPtr vacuum_ground();
GroundPtr highest_weight_ground(std::map<int, RatFunc> eigenvalues);
// One-dimensional module on which only zero modes act, by the given scalars.
GroundPtr one_dimensional_ground(std::map<int, RatFunc> eigenvalues);

bool same_ground(const GroundPtr& a, const GroundPtr& b);

class State {
 public:
  using Terms = std::map<Monomial, RatFunc>;

  State() : ground_(vacuum_ground()) {}
  explicit State(GroundPtr g) : ground_(std::move(g)) {}

  static State vacuum() { return ground(vacuum_ground()); }
  static State ground(GroundPtr g);
  // The monomial must already be in normal form.
  static State monomial(Monomial m, GroundPtr g = vacuum_ground(), RatFunc c = 1);

  const GroundPtr& ground_ptr() const { return ground_; }
  const GroundVector& ground() const { return *ground_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const RatFunc& c);
  RatFunc coefficient(const Monomial& m) const;

  State& operator+=(const State& o);
  State& operator-=(const State& o);
  State& operator*=(const RatFunc& c);
  friend State operator+(State a, const State& b) { return a += b; }
  friend State operator-(State a, const State& b) { return a -= b; }
  friend State operator*(State a, const RatFunc& c) { return a *= c; }
  friend State operator*(const RatFunc& c, State a) { return a *= c; }
  State operator-() const;

  bool operator==(const State& o) const;

  State specialize(const Bindings& b) const;

 private:
  void adopt_ground(const State& o);
  GroundPtr ground_;
  Terms terms_;
};

}  // namespace voa
