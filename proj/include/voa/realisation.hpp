#pragma once

#include <map>
#include <string>
#include <vector>

#include "voa/core/engine.hpp"
#include "voa/lattice.hpp"
#include "voa/transform.hpp"

namespace voa {

struct TensorKey {
  Monomial left;
  LatticeKey right;

  auto operator<=>(const TensorKey& o) const {
    if (auto c = left <=> o.left; c != 0) return c;
    return right <=> o.right;
  }
  bool operator==(const TensorKey&) const = default;
};

// Finite sum of (left PBW monomial on a ground vector) (x) (lattice basis vector).
class TensorState {
 public:
  using Terms = std::map<TensorKey, RatFunc>;

  TensorState() : ground_(vacuum_ground()) {}
  explicit TensorState(GroundPtr g) : ground_(std::move(g)) {}
  static TensorState product(const State& left, const LatticeState& right);
  static TensorState vacuum() { return product(State::vacuum(), LatticeState::vacuum()); }

  const GroundPtr& ground_ptr() const { return ground_; }
  const GroundVector& ground() const { return *ground_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const TensorKey& key, const RatFunc& c);
  RatFunc coefficient(const TensorKey& key) const;

  TensorState& operator+=(const TensorState& o);
  TensorState& operator-=(const TensorState& o);
  TensorState& operator*=(const RatFunc& c);
  friend TensorState operator+(TensorState a, const TensorState& b) { return a += b; }
  friend TensorState operator-(TensorState a, const TensorState& b) { return a -= b; }
  friend TensorState operator*(TensorState a, const RatFunc& c) { return a *= c; }
  TensorState operator-() const { return *this * RatFunc(-1); }
  bool operator==(const TensorState& o) const;

  TensorState specialize(const Bindings& b) const;

 private:
  void adopt_ground(const TensorState& o);
  GroundPtr ground_;
  Terms terms_;
};

// Vertex algebra V (x) Pi for V given by an OPE table (Zamolodchikov or the
// commutative centre at the critical level).
class TensorEngine {
 public:
  TensorEngine(OpeTable left, RatFunc k);

  const Engine& left() const { return left_; }
  const LatticeEngine& right() const { return right_; }

  // (u (x) v)_(n) (x (x) y) = sum_p u_(p) x (x) v_(n-1-p) y; ell flows the lattice factor only.
  TensorState act(const TensorState& u, int n, const TensorState& x, int ell = 0) const;
  TensorState derivative(const TensorState& s) const;

  std::string render(const TensorState& s) const;

 private:
  Engine left_;
  LatticeEngine right_;
};

// The embedding of BP^k into Zam^k (x) Pi, or of the critical BP into centre (x) Pi.
class Realisation {
 public:
  // k = -3 selects the critical realisation.
  explicit Realisation(const RatFunc& k = RatFunc::var(Var::k));

  bool critical() const { return critical_; }
  const RatFunc& level() const { return k_; }
  const Engine& source() const { return source_; }
  const TensorEngine& target() const { return target_; }

  // image of a generator field, as a state
  const TensorState& generator_image(int g) const { return images_.at(g); }
  // multiplicative extension to states of the vacuum module of the source
  TensorState phi(const State& s) const;

 private:
  bool critical_;
  RatFunc k_;
  Engine source_;
  TensorEngine target_;
  std::vector<TensorState> images_;
  mutable std::mutex mutex_;
  mutable std::map<Monomial, TensorState> cache_;
};

struct ProductCheck {
  std::string left, right;
  int order = 0;  // j in X_(j) Y
  std::string expected, computed;
  bool pass = false;
};

// phi(X)_(j) phi(Y) against phi(X_(j) Y) for all ordered generator pairs and
// j up to the pole order; entries are in canonical (pair, order) order.
std::vector<ProductCheck> verify_homomorphism(const Realisation& r, int threads = 0);

struct InjectivityRow {
  Rational level;
  int weight = 0;
  std::size_t monomials = 0;  // number of PBW monomials of this weight
  std::size_t rank = 0;       // rank of their images
  std::size_t expected = 0;   // dimension from the generating function
  bool pass() const { return rank == monomials && monomials == expected; }
};

std::vector<InjectivityRow> verify_injectivity(int max_weight, const std::vector<Rational>& levels, int threads = 0);

// Dimensions of the weight spaces of the universal BP algebra from
// prod_n (1-q^n)^{-2} prod_{n>=2} (1-q^n)^{-2}.
std::vector<std::size_t> bp_expected_dimensions(int max_weight);

struct FlowCompatCheck {
  std::string generator;
  int mode = 0;
  std::size_t vector = 0;
  bool pass = false;
};

// phi(sigma^ell_BP(X))_(m) v against (id (x) sigma^ell_Pi)(phi(X))_(m) v on test vectors.
std::vector<FlowCompatCheck> spectral_flow_compat(const Realisation& r, int ell, int lo = -2, int hi = 2);

// Rank of a sparse rational matrix, by exact row reduction.
std::size_t matrix_rank(std::vector<std::map<std::size_t, Rational>> rows);

// Worker count: VOA_THREADS if set, else the hardware concurrency.
int default_threads();

}  // namespace voa
