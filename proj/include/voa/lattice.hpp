#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voa/exact/ratfunc.hpp"
#include "voa/qseries.hpp"

namespace voa {

// h = alpha a + beta b in the rank-2 Heisenberg space, <a,a> = -<b,b> = 1, <a,b> = 0.
struct HeisVector {
  RatFunc alpha, beta;

  static HeisVector a() { return {1, 0}; }
  static HeisVector b() { return {0, 1}; }
  static HeisVector c() { return {1, -1}; }
  static HeisVector d() { return {1, 1}; }
  // j = b + (k+3)/3 c and i = a - (k+3)/3 c
  static HeisVector j(const RatFunc& k);
  static HeisVector i(const RatFunc& k);

  HeisVector operator+(const HeisVector& o) const { return {alpha + o.alpha, beta + o.beta}; }
  HeisVector operator*(const RatFunc& s) const { return {alpha * s, beta * s}; }
  bool operator==(const HeisVector&) const = default;
};

RatFunc pairing(const HeisVector& x, const HeisVector& y);

// e^{r j + mu c}
struct ExpLabel {
  Rational r;
  RatFunc mu;

  auto operator<=>(const ExpLabel& o) const {
    if (int c = cmp(r, o.r); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (mu < o.mu) return std::strong_ordering::less;
    if (o.mu < mu) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  bool operator==(const ExpLabel& o) const { return r == o.r && mu == o.mu; }
};

// j_(-mu) c_(-nu), parts weakly decreasing
struct FockMonomial {
  std::vector<int> j_parts, c_parts;

  int degree() const;
  auto operator<=>(const FockMonomial&) const = default;
};

struct LatticeKey {
  ExpLabel label;
  FockMonomial fock;

  auto operator<=>(const LatticeKey& o) const {
    if (auto c = label <=> o.label; c != 0) return c;
    return fock <=> o.fock;
  }
  bool operator==(const LatticeKey&) const = default;
};

class LatticeState {
 public:
  using Terms = std::map<LatticeKey, RatFunc>;

  LatticeState() = default;
  static LatticeState exponential(ExpLabel label, RatFunc c = 1);
  static LatticeState vacuum() { return exponential({0, 0}); }
  static LatticeState term(LatticeKey key, RatFunc c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const LatticeKey& key, const RatFunc& c);
  RatFunc coefficient(const LatticeKey& key) const;

  LatticeState& operator+=(const LatticeState& o);
  LatticeState& operator-=(const LatticeState& o);
  LatticeState& operator*=(const RatFunc& c);
  friend LatticeState operator+(LatticeState a, const LatticeState& b) { return a += b; }
  friend LatticeState operator-(LatticeState a, const LatticeState& b) { return a -= b; }
  friend LatticeState operator*(LatticeState a, const RatFunc& c) { return a *= c; }
  LatticeState operator-() const { return *this * RatFunc(-1); }
  bool operator==(const LatticeState& o) const { return terms_ == o.terms_; }

  LatticeState specialize(const Bindings& b) const;

 private:
  Terms terms_;
};

// Element j_(-mu) e^c_(-nu-1) e^{nc} of the exponential-mode basis of the vacuum module.
struct ExpBasisKey {
  std::vector<int> j_parts;
  std::vector<int> nu;  // e^c_(-nu_i - 1), parts >= 0 are not allowed: nu_i >= 1
  long n = 0;
  auto operator<=>(const ExpBasisKey&) const = default;
};
using ExpBasisState = std::map<ExpBasisKey, RatFunc>;

struct PiCharacter {
  Rational y_exp;     // power of y
  RatFunc z_exp;      // power of z
  QSeries series;     // 1/eta(q)^2, offset included
  bool delta = true;  // multiplied by delta(z) = sum_n z^n
};

class LatticeEngine {
 public:
  explicit LatticeEngine(RatFunc k = RatFunc::var(Var::k));

  const RatFunc& level() const { return k_; }
  // <j,j> = (2k+3)/3
  const RatFunc& kappa_prime() const { return kp_; }

  // Coordinates of h in the basis (j, c).
  std::pair<RatFunc, RatFunc> jc_coordinates(const HeisVector& h) const;
  HeisVector j() const { return HeisVector::j(k_); }
  HeisVector i() const { return HeisVector::i(k_); }

  // h_(n) v. Flow by ell replaces h_(n) with h_(n) - ell <h,j> delta_{n,0}.
  LatticeState h_mode(const HeisVector& h, int n, const LatticeState& v, int ell = 0) const;
  // e^{mc}_(q) v; flow by ell replaces it with e^{mc}_(q - ell m). Twisted sectors are rejected.
  LatticeState exp_mode(int m, int q, const LatticeState& v, int ell = 0) const;

  // u_(n) x for u in the vacuum module (labels with r = 0 and integral mu).
  // ell != 0 evaluates the spectrally flowed field.
  LatticeState act(const LatticeState& u, int n, const LatticeState& x, int ell = 0) const;
  // Largest n for which u_(n) x can be non-zero.
  long mode_bound(const LatticeState& u, const LatticeState& x, int ell = 0) const;
  LatticeState nth_product(const LatticeState& a, int n, const LatticeState& b) const { return act(a, n, b); }
  LatticeState derivative(const LatticeState& s) const;

  // Creation monomials h_(-n1) ... h_(-nr) applied to v.
  LatticeState create(const HeisVector& h, std::vector<int> depths, const LatticeState& v) const;

  LatticeState conformal_vector() const;
  RatFunc exponent_weight(const ExpLabel& label) const;
  // t_(1)-eigenvalue of a homogeneous state
  RatFunc conformal_weight(const LatticeState& v) const;

  // S_m(c) e^0
  LatticeState schur(int m) const;

  LatticeState from_exp_basis(const ExpBasisState& s) const;
  LatticeState from_exp_basis(const ExpBasisKey& key) const;
  // Only for states of the vacuum module.
  ExpBasisState to_exp_basis(const LatticeState& s) const;

  // e^{-j + (lambda+n) c}, n = n_min..n_max. Only r = -1 has a top space.
  std::vector<LatticeState> top_space(const Rational& r, const RatFunc& lambda, int n_min, int n_max) const;
  PiCharacter character_pi(const RatFunc& lambda, int order) const;

  std::string render(const LatticeState& s) const;
  LatticeState parse(std::string_view text) const;

 private:
  LatticeState h_mode_xy(const RatFunc& x, const RatFunc& y, int n, const LatticeState& v, int ell) const;
  LatticeState act_monomial(const LatticeKey& u, int p, const LatticeKey& x, int ell) const;
  LatticeState act_state(const LatticeKey& u, int p, const LatticeState& x, int ell) const;
  const std::map<std::vector<int>, Rational>& schur_terms(int m, int p) const;

  RatFunc k_, kp_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, std::map<std::vector<int>, Rational>> schur_cache_;
  mutable std::map<std::tuple<LatticeKey, int, LatticeKey>, LatticeState> act_cache_;
};

// Field description of the flowed generators.
struct LatticeFlowField {
  std::string generator;
  RatFunc scalar_shift;  // coefficient of z^{-1} added to a Heisenberg field
  int z_power = 0;       // exponential fields are multiplied by z^{z_power}
};
// generator: "a", "b", "c", "d", "j", "i" or "e^<m>c"
LatticeFlowField spectral_flow_field(const LatticeEngine& e, int ell, std::string_view generator);
// sigma^ell(Pi_r(lambda)) = Pi_{r+ell}(lambda)
std::pair<Rational, RatFunc> flow_module(const Rational& r, const RatFunc& lambda, int ell);

struct LatticeCheckReport {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return checks > 0 && failures.empty(); }
  void record(bool pass, const std::string& what);
};

// On e^{-j+lambda c} (lambda symbolic) and e^{nc}, for partitions of weight <= max_weight:
//   e^c_{+mu} j_{-mu} c_{-nu} e^{-j+lambda c} = (-1)^l(mu) prod m_i(mu)! c_{-nu} e^{-j+(lambda+l(mu))c},
//     and zero for mu' of larger length, or equal length and weight >= |mu|;
//   j_{+nu} c_{-nu} e^{-j+lambda c} = prod nu_i prod m_i(nu)! e^{-j+lambda c}, zero for other |nu'| >= |nu|;
//   e^c_(-m-1) e^{nc} = S_m(c) e^{(n+1)c}, e^c_{-m} e^{-j+(lambda+n)c} = S_m(c) e^{-j+(lambda+n+1)c};
//   e^c_(-nu-1) e^{nc} = S_nu1(c) ... S_nul(c) e^{(n+l)c} = c_(-nu) e^{(n+l)c} / prod nu_i + higher c-degree;
//   e^c_n e^{-j+lambda c} = delta_{n,0} e^{-j+(lambda+1)c} for n >= 0.
LatticeCheckReport verify_lattice_lemmas(const LatticeEngine& e, int max_weight);
// Flowed generating fields j, c, e^{+-c} and t obey the unflowed commutator
// formula on sample vectors of Pi_{-1}(lambda), and the flowed t equals
// t - ell z^{-1} j + kappa' ell(ell+1)/2 z^{-2}.
LatticeCheckReport verify_lattice_flow(const LatticeEngine& e, int ell);
// to_exp_basis o from_exp_basis = id on basis vectors of Fock degree <= max_weight, and conversely.
LatticeCheckReport verify_exp_basis_round_trip(const LatticeEngine& e, int max_weight);

}  // namespace voa
