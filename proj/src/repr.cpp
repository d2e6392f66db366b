#include "voa/repr.hpp"

#include <algorithm>
#include <set>

#include "voa/error.hpp"
#include "voa/presentations.hpp"

namespace voa {

namespace {

RatFunc half(const RatFunc& f) { return f / RatFunc(2); }

Rational constant(const RatFunc& f) {
  auto v = f.constant_value();
  if (!v) throw Error("expected a rational number, got " + f.to_string());
  return *v;
}

long floor_q(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f.get_si();
}

long ceil_q(const Rational& q) {
  Integer f;
  mpz_cdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f.get_si();
}

std::array<Rational, 4> constants(const Cubic& p) {
  return {constant(p.c[0]), constant(p.c[1]), constant(p.c[2]), constant(p.c[3])};
}

// positive divisors of |a|, a != 0
std::vector<Integer> divisors(Integer a) {
  a = abs(a);
  if (a > Integer("1000000000000")) throw Unsupported("rational root search: coefficient too large");
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= a; ++d) {
    if (a % d != 0) continue;
    small.push_back(d);
    if (d * d != a) large.push_back(a / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Rational evaluate(const std::array<Rational, 4>& p, const Rational& x) {
  return ((p[3] * x + p[2]) * x + p[1]) * x + p[0];
}

ComplexRational shift(const ComplexRational& z, const Rational& by) { return {z.re + by, z.im}; }

Classification classify_cubic(const std::array<Rational, 4>& cubic, const ComplexRational& lambda, bool critical) {
  Classification out;
  CosetRoots cr = roots_in_coset(cubic, lambda);
  out.cauchy_bound = cr.bound;
  out.n_min = cr.n_min;
  out.n_max = cr.n_max;
  for (long n : cr.n) out.roots_in_coset.push_back(shift(lambda, Rational(n)));
  out.rational_roots = rational_roots(cubic);
  if (out.roots_in_coset.empty()) {
    out.status = RelaxedStatus::irreducible;
  } else {
    out.status = critical ? RelaxedStatus::undetermined : RelaxedStatus::reducible;
    out.maximal_mu = out.roots_in_coset.back();
  }
  return out;
}

}  // namespace

WattsParams WattsParams::symbolic() {
  return {RatFunc::var(Var::r), RatFunc::var(Var::r_prime), RatFunc::var(Var::s), RatFunc::var(Var::s_prime),
          RatFunc::var(Var::t)};
}

HwData WattsParams::hw() const {
  const RatFunc R = r - t * s, Rp = r_prime - t * s_prime;
  const RatFunc delta = (R * R + R * Rp + Rp * Rp) / (t * 3) - (t - 1) * (t - 1) / t;
  const RatFunc w = (R - Rp) * (R * 2 + Rp) * (R + Rp * 2) / RatFunc(27);
  return {delta, w};
}

RatFunc Cubic::operator()(const RatFunc& x) const { return ((c[3] * x + c[2]) * x + c[1]) * x + c[0]; }

RatFunc Cubic::as_ratfunc(Var v) const { return (*this)(RatFunc::var(v)); }

Cubic Cubic::from_roots(const std::array<RatFunc, 3>& x) {
  // -(x-a)(x-b)(x-c) = -x^3 + (a+b+c) x^2 - (ab+bc+ca) x + abc
  return {{x[0] * x[1] * x[2], -(x[0] * x[1] + x[1] * x[2] + x[2] * x[0]), x[0] + x[1] + x[2], RatFunc(-1)}};
}

Cubic p_poly(const HwData& hw, const RatFunc& k) {
  if (is_critical(k)) throw CriticalLevel();
  const RatFunc k2 = k + 2, k3 = k + 3;
  return {{hw.w - k2 * k3 * hw.delta, k3 * hw.delta - k2 * k2 * 2, k2 * 3, RatFunc(-1)}};
}

Cubic g_poly(const HwData& hw) { return {{hw.w + hw.delta, hw.delta - 2, RatFunc(-3), RatFunc(-1)}}; }

std::array<RatFunc, 3> p_factor(const WattsParams& p) {
  const RatFunc R = p.r - p.t * p.s, Rp = p.r_prime - p.t * p.s_prime, base = p.t - 1;
  return {base - (R - Rp) / RatFunc(3), base + (R * 2 + Rp) / RatFunc(3), base - (R + Rp * 2) / RatFunc(3)};
}

RatFunc gplus0() { return 1; }

RatFunc gminus0(const RatFunc& k, const HwData& hw, const RatFunc& lambda, int n) {
  return p_poly(hw, k)(lambda + n);
}

RatFunc gminus0_critical(const HwData& hw, const RatFunc& lambda, int n) { return g_poly(hw)(lambda + n); }

TopSpaceAction top_space_action(const Realisation& r, const HwData& hw, const RatFunc& lambda, int n) {
  const TensorEngine& te = r.target();
  const LatticeEngine& pi = te.right();
  const bool crit = r.critical();
  const GroundPtr g = crit ? one_dimensional_ground({{center::S2, hw.delta}, {center::S3, hw.w}})
                           : highest_weight_ground({{zam::T, hw.delta}, {zam::W, hw.w}});
  const RatFunc x = lambda + n;
  auto top = [&](const RatFunc& mu) { return TensorState::product(State::ground(g), LatticeState::exponential({-1, mu})); };
  const TensorState v = top(x), down = top(x - 1), up = top(x + 1);

  auto ratio = [](const TensorState& s, const TensorState& basis, bool& proportional) {
    RatFunc c = s.coefficient(basis.terms().begin()->first);
    proportional = s == basis * c;
    return c;
  };

  TopSpaceAction out;
  out.x = x;
  out.gplus = ratio(te.act(r.generator_image(bp::Gp), 0, v), up, out.gplus_proportional);
  out.gminus = ratio(te.act(r.generator_image(bp::Gm), 1, v), down, out.gminus_proportional);
  bool eigen = true;
  RatFunc j0 = ratio(te.act(r.generator_image(bp::J), 0, v), v, eigen);
  if (eigen) out.j0 = j0;
  if (!crit) {
    RatFunc l0 = ratio(te.act(r.generator_image(bp::L), 1, v), v, eigen);
    if (eigen) out.l0 = l0;
  }

  // the six pieces of the image of G^-
  const Engine& left = te.left();
  const State one = State::vacuum();
  const State a = State::monomial({{crit ? center::S3 : zam::W, -1}});
  const State b = State::monomial({{crit ? center::S2 : zam::T, -1}});
  const State db = left.derivative(b);
  const LatticeState em = LatticeState::exponential({0, -1});
  const HeisVector i = pi.i();
  const RatFunc k = r.level(), k2 = k + 2, k3 = k + 3;
  const std::string A = crit ? "S3" : "W", B = crit ? "S2" : "T";
  struct Piece {
    std::string name;
    State left;
    LatticeState right;
    RatFunc weight, expected;
  };
  std::vector<Piece> pieces{
      {A + " (x) e^{-c}", a, em, 1, hw.w},
      {B + " (x) i_{-1}e^{-c}", b, pi.create(i, {1}, em), crit ? RatFunc(1) : k3, hw.delta * x},
      {"d" + B + " (x) e^{-c}", db, em, crit ? RatFunc(Rational(-1, 2)) : half(k2 * k3), hw.delta * -2},
      {"1 (x) i_{-1}^3 e^{-c}", one, pi.create(i, {1, 1, 1}, em), -1, x * x * x},
      {"1 (x) i_{-2}i_{-1}e^{-c}", one, pi.create(i, {2, 1}, em), crit ? RatFunc(3) : k2 * -3, -(x * x)},
      {"1 (x) i_{-3}e^{-c}", one, pi.create(i, {3}, em), crit ? RatFunc(-2) : k2 * k2 * -2, x},
  };
  for (const auto& p : pieces) {
    TopSpaceComponent c{p.name, p.weight, 0, p.expected};
    c.computed = ratio(te.act(TensorState::product(p.left, p.right), 1, v), down, c.proportional);
    out.components.push_back(std::move(c));
  }
  return out;
}

std::pair<RatFunc, RatFunc> top_weights(const RatFunc& mu, const RatFunc& delta, const RatFunc& k) {
  const RatFunc kp = (k * 2 + 3) / RatFunc(3);
  return {mu - kp, delta + kp};
}

std::string ComplexRational::to_string() const {
  if (im == 0) return voa::to_string(re);
  std::string s = re == 0 ? "" : voa::to_string(re) + (im > 0 ? "+" : "");
  return s + voa::to_string(im) + "i";
}

std::string to_string(RelaxedStatus s) {
  switch (s) {
    case RelaxedStatus::irreducible:
      return "irreducible";
    case RelaxedStatus::reducible:
      return "reducible";
    case RelaxedStatus::undetermined:
      return "undetermined";
    case RelaxedStatus::generically_irreducible:
      return "generically irreducible";
  }
  return "?";
}

CosetRoots roots_in_coset(const std::array<Rational, 4>& p, const ComplexRational& lambda) {
  if (p[3] == 0) throw Error("not a cubic");
  CosetRoots out;
  Rational m = 0;
  for (int i = 0; i < 3; ++i) m = std::max(m, Rational(abs(p[i] / p[3])));
  out.bound = 1 + m;
  // every root has |x| <= bound, so |Re(lambda) + n| <= bound
  out.n_min = ceil_q(-out.bound - lambda.re);
  out.n_max = floor_q(out.bound - lambda.re);
  for (long n = out.n_min; n <= out.n_max; ++n) {
    // Horner in (re, im)
    const Rational a = lambda.re + n, b = lambda.im;
    Rational vr = p[3], vi = 0;
    for (int i = 2; i >= 0; --i) {
      Rational nr = vr * a - vi * b + p[i], ni = vr * b + vi * a;
      vr = nr;
      vi = ni;
    }
    if (vr == 0 && vi == 0) out.n.push_back(n);
  }
  return out;
}

std::vector<Rational> rational_roots(const std::array<Rational, 4>& p) {
  Integer l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> a;
  for (const auto& c : p) a.push_back(Integer(c * l));
  while (!a.empty() && a.back() == 0) a.pop_back();
  if (a.size() < 2) throw Error("polynomial has no isolated roots");
  std::set<Rational> roots;
  while (a.front() == 0) {
    roots.insert(0);
    a.erase(a.begin());
  }
  if (a.size() > 1) {
    std::array<Rational, 4> q{};
    for (std::size_t i = 0; i < a.size(); ++i) q[i] = a[i];
    for (const auto& num : divisors(a.front()))
      for (const auto& den : divisors(a.back()))
        for (int s : {1, -1}) {
          Rational x(num * s, den);
          x.canonicalize();
          if (evaluate(q, x) == 0) roots.insert(x);
        }
  }
  return {roots.begin(), roots.end()};
}

Classification classify(const Rational& k, const Rational& delta, const Rational& w, const ComplexRational& lambda) {
  if (k == -3) throw CriticalLevel();
  Classification out = classify_cubic(constants(p_poly({delta, w}, k)), lambda, false);
  if (out.maximal_mu) {
    auto [j, l] = top_weights(RatFunc(out.maximal_mu->re), delta, k);
    out.top_weights = {{constant(j), out.maximal_mu->im}, {constant(l), 0}};
  }
  return out;
}

Classification classify(const RatFunc& k, const HwData& hw, const RatFunc& lambda) {
  auto kv = k.constant_value(), dv = hw.delta.constant_value(), wv = hw.w.constant_value();
  if (!kv || !dv || !wv) throw Unsupported("classification needs rational k, Delta and w");
  if (auto lv = lambda.constant_value()) return classify(*kv, *dv, *wv, {*lv, 0});
  if (*kv == -3) throw CriticalLevel();
  Classification out;
  out.status = RelaxedStatus::generically_irreducible;
  out.rational_roots = rational_roots(constants(p_poly({*dv, *wv}, *kv)));
  return out;
}

Classification classify_critical(const Rational& delta, const Rational& w, const ComplexRational& lambda) {
  return classify_cubic(constants(g_poly({delta, w})), lambda, true);
}

ComplexRational maximal_chw(const Classification& c) {
  if (c.roots_in_coset.empty()) throw Error("no conjugate highest-weight vectors");
  return c.roots_in_coset.back();
}

RelaxedCharacter character_relaxed(const RatFunc& k, const RatFunc& lambda, const QSeries& ch_m, int order) {
  const RatFunc kp = (k * 2 + 3) / RatFunc(3);
  return {lambda - kp, ch_m.truncated(order) * QSeries::eta_power(-2, order), true};
}

bool gradable_critical(const std::map<int, Rational>& chi2, const std::map<int, Rational>& chi3) {
  for (const auto* chi : {&chi2, &chi3})
    for (const auto& [n, v] : *chi)
      if (n != 0 && v != 0) return false;
  return true;
}

HwData critical_hw(const std::map<int, Rational>& chi2, const std::map<int, Rational>& chi3) {
  if (!gradable_critical(chi2, chi3)) throw Error("critical data is not gradable");
  auto at0 = [](const std::map<int, Rational>& chi) {
    auto it = chi.find(0);
    return it == chi.end() ? Rational(0) : it->second;
  };
  return {at0(chi2), at0(chi3)};
}

}  // namespace voa
