#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "voa/exact/ratfunc.hpp"
#include "voa/qseries.hpp"
#include "voa/realisation.hpp"

namespace voa {

// T_0- and W_0-eigenvalues of a Zamolodchikov highest-weight vector
// (S2 and S3 eigenvalues at the critical level).
struct HwData {
  RatFunc delta;
  RatFunc w;
};

// Watts parametrisation; t = k + 3.
struct WattsParams {
  RatFunc r, r_prime, s, s_prime, t;

  static WattsParams symbolic();
  RatFunc level() const { return t - RatFunc(3); }
  HwData hw() const;
};

// c0 + c1 x + c2 x^2 + c3 x^3
struct Cubic {
  std::array<RatFunc, 4> c;

  RatFunc operator()(const RatFunc& x) const;
  RatFunc as_ratfunc(Var v = Var::x) const;
  bool operator==(const Cubic&) const = default;
  static Cubic from_roots(const std::array<RatFunc, 3>& roots);  // -(x-x1)(x-x2)(x-x3)
};

// w - (k+2)(k+3)D + [(k+3)D - 2(k+2)^2] x + 3(k+2) x^2 - x^3. Throws CriticalLevel at k = -3.
Cubic p_poly(const HwData& hw, const RatFunc& k);
// w + D + (D-2) x - 3x^2 - x^3
Cubic g_poly(const HwData& hw);
std::array<RatFunc, 3> p_factor(const WattsParams& p);

// Zero-mode coefficients on the top space of M (x) Pi_{-1}(lambda):
// G+_0 sends the (lambda+n)-vector to the (lambda+n+1)-vector times gplus0,
// G-_0 sends it to the (lambda+n-1)-vector times gminus0.
RatFunc gplus0();
RatFunc gminus0(const RatFunc& k, const HwData& hw, const RatFunc& lambda, int n);
// Same at k = -3; the coefficient is g(lambda+n).
RatFunc gminus0_critical(const HwData& hw, const RatFunc& lambda, int n);

struct TopSpaceComponent {
  std::string name;
  RatFunc weight;    // coefficient of the component in the image of G-
  RatFunc computed;  // component_(1) v as a multiple of the shifted vector
  RatFunc expected;
  bool proportional = true;
  bool pass() const { return proportional && computed == expected; }
};

// Zero modes computed with the realisation engine on v = u (x) e^{-j+(lambda+n)c}.
struct TopSpaceAction {
  RatFunc x;  // lambda + n
  RatFunc gplus, gminus;
  bool gplus_proportional = true, gminus_proportional = true;
  std::vector<TopSpaceComponent> components;
  std::optional<RatFunc> j0, l0;  // eigenvalues, when v is an eigenvector
};

// Works for both the generic and the critical realisation; hw gives (T_0, W_0)
// or (S2, S3) eigenvalues of u accordingly.
TopSpaceAction top_space_action(const Realisation& r, const HwData& hw, const RatFunc& lambda, int n);

// (mu - (2k+3)/3, D + (2k+3)/3)
std::pair<RatFunc, RatFunc> top_weights(const RatFunc& mu, const RatFunc& delta, const RatFunc& k);

struct ComplexRational {
  Rational re, im;
  bool operator==(const ComplexRational&) const = default;
  std::string to_string() const;
};

enum class RelaxedStatus { irreducible, reducible, undetermined, generically_irreducible };
std::string to_string(RelaxedStatus s);

struct Classification {
  RelaxedStatus status = RelaxedStatus::irreducible;
  // mu = lambda + n with a vanishing zero-mode coefficient, ascending in n;
  // u (x) e^{-j+mu c} are then the conjugate highest-weight vectors
  std::vector<ComplexRational> roots_in_coset;
  std::optional<ComplexRational> maximal_mu;
  std::optional<std::pair<ComplexRational, ComplexRational>> top_weights;  // of maximal_mu
  std::vector<Rational> rational_roots;  // all rational roots of the cubic, ascending
  Rational cauchy_bound;
  long n_min = 0, n_max = 0;  // integer window searched
  bool has_highest_weight_vectors = false;
};

// Rational k != -3, D, w; lambda = re + i im.
Classification classify(const Rational& k, const Rational& delta, const Rational& w, const ComplexRational& lambda);
// Symbolic lambda with rational k, D, w gives generically_irreducible.
Classification classify(const RatFunc& k, const HwData& hw, const RatFunc& lambda);
// irreducible when g has no roots in lambda + Z, else undetermined.
Classification classify_critical(const Rational& delta, const Rational& w, const ComplexRational& lambda);

// Throws Error on an empty list.
ComplexRational maximal_chw(const Classification& c);

// Integers n with cubic(lambda + n) = 0, by exact evaluation inside the Cauchy window.
struct CosetRoots {
  std::vector<long> n;
  Rational bound;
  long n_min = 0, n_max = 0;
};
CosetRoots roots_in_coset(const std::array<Rational, 4>& cubic, const ComplexRational& lambda);
std::vector<Rational> rational_roots(const std::array<Rational, 4>& cubic);

struct RelaxedCharacter {
  RatFunc z_exp;  // lambda - (2k+3)/3
  QSeries series; // ch[M] / eta^2
  bool delta = true;
};
RelaxedCharacter character_relaxed(const RatFunc& k, const RatFunc& lambda, const QSeries& ch_m, int order);

// chi_m(z) = sum_n chi_m(n) z^{-n-m}; gradable iff only chi_m(0) is non-zero.
bool gradable_critical(const std::map<int, Rational>& chi2, const std::map<int, Rational>& chi3);
// (chi_2(0), chi_3(0)) of gradable data
HwData critical_hw(const std::map<int, Rational>& chi2, const std::map<int, Rational>& chi3);

}  // namespace voa
