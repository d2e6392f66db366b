#include "voa/presentations.hpp"

#include <sstream>

#include "voa/error.hpp"

namespace voa {

namespace {

RatFunc k_var() { return RatFunc::var(Var::k); }

State vac(RatFunc c = 1) { return State::ground(vacuum_ground()) * c; }

State mono(std::initializer_list<Mode> modes, RatFunc c = 1) { return State::monomial(Monomial(modes), vacuum_ground(), c); }

}  // namespace

RatFunc bp_central_charge(const RatFunc& k) { return RatFunc(-4) * (k + 1) * (k * 2 + 3) / (k + 3); }

RatFunc zam_central_charge(const RatFunc& k) { return RatFunc(-2) * (k * 3 + 5) * (k * 4 + 9) / (k + 3); }

RatFunc lattice_central_charge(const RatFunc& k) { return RatFunc(2) + RatFunc(8) * (k * 2 + 3); }

RatFunc zam_normalisation(const RatFunc& k) {
  return -(k + 3).pow(2) * (k * 3 + 4) * (k * 5 + 12) / RatFunc(6);
}

bool is_critical(const RatFunc& k) {
  auto v = k.constant_value();
  return v && *v == -3;
}

OpeTable bp_table(const RatFunc& k) {
  if (is_critical(k)) return bp_critical_table();
  using namespace bp;
  OpeTable t("bp", {{"J", 2}, {"G+", 2}, {"L", 4}, {"G-", 4}});
  t.set_central_charge(bp_central_charge(k));
  RatFunc kp = (k * 2 + 3) / RatFunc(3);
  t.set(J, 1, J, vac(kp));
  t.set(J, 0, Gp, mono({{Gp, -1}}));
  t.set(J, 0, Gm, mono({{Gm, -1}}, -1));
  t.set(L, 2, J, vac(-kp));
  t.set(L, 1, J, mono({{J, -1}}));
  t.set(L, 0, J, mono({{J, -2}}));
  t.set(L, 1, Gp, mono({{Gp, -1}}));
  t.set(L, 0, Gp, mono({{Gp, -2}}));
  t.set(L, 3, L, vac(*t.central_charge() / RatFunc(2)));
  t.set(L, 1, L, mono({{L, -1}}, 2));
  t.set(L, 0, L, mono({{L, -2}}));
  t.set(L, 1, Gm, mono({{Gm, -1}}, 2));
  t.set(L, 0, Gm, mono({{Gm, -2}}));
  t.declare(Gp, Gp);
  t.declare(Gm, Gm);
  t.set(Gp, 2, Gm, vac((k + 1) * (k * 2 + 3)));
  t.set(Gp, 1, Gm, mono({{J, -1}}, (k + 1) * 3));
  t.set(Gp, 0, Gm, mono({{J, -1}, {J, -1}}, 3) + mono({{J, -2}}, k * 2 + 3) + mono({{L, -1}}, -(k + 3)));
  return t;
}

OpeTable bp_critical_table() {
  using namespace crit;
  OpeTable t("bp-critical", {{"J", 2}, {"G+", 2}, {"S", 4}, {"G-", 4}});
  t.set(J, 1, J, vac(-1));
  t.set(J, 0, Gp, mono({{Gp, -1}}));
  t.set(J, 0, Gm, mono({{Gm, -1}}, -1));
  t.declare(Gp, Gp);
  t.declare(Gm, Gm);
  for (int x : {J, Gp, S, Gm}) t.declare(S, x);
  t.set(Gp, 2, Gm, vac(6));
  t.set(Gp, 1, Gm, mono({{J, -1}}, -6));
  t.set(Gp, 0, Gm, mono({{J, -1}, {J, -1}}, 3) + mono({{J, -2}}, -3) + mono({{S, -1}}, -1));
  return t;
}

OpeTable zam_table(const RatFunc& k) {
  if (is_critical(k)) throw CriticalLevel();
  using namespace zam;
  OpeTable t("zam", {{"T", 4}, {"W", 6}});
  RatFunc c = zam_central_charge(k);
  t.set_central_charge(c);
  t.set(T, 3, T, vac(c / RatFunc(2)));
  t.set(T, 1, T, mono({{T, -1}}, 2));
  t.set(T, 0, T, mono({{T, -2}}));
  t.set(T, 1, W, mono({{W, -1}}, 3));
  t.set(T, 0, W, mono({{W, -2}}));
  // Lambda and its derivative only involve T, so the partial table suffices.
  Engine partial(t);
  State d2T = mono({{T, -3}}, 2), d3T = mono({{T, -4}}, 6);
  State lambda = mono({{T, -1}, {T, -1}}) - d2T * RatFunc(Rational(3, 10));
  State dlambda = partial.derivative(lambda);
  RatFunc A = zam_normalisation(k);
  RatFunc k3 = (k + 3).pow(3) / RatFunc(3);
  t.set(W, 5, W, vac(A * c / RatFunc(3)));
  t.set(W, 3, W, mono({{T, -1}}, A * 2));
  t.set(W, 2, W, mono({{T, -2}}, A));
  t.set(W, 1, W, lambda * (k3 * 2) + d2T * (A * RatFunc(Rational(3, 10))));
  t.set(W, 0, W, dlambda * k3 + d3T * (A / RatFunc(15)));
  return t;
}

OpeTable center_table() {
  using namespace center;
  OpeTable t("center", {{"S2", 4}, {"S3", 6}});
  t.declare(S2, S2);
  t.declare(S2, S3);
  t.declare(S3, S3);
  return t;
}

int borcherds_index(const Generator& g, int shifted) {
  if (g.twice_weight % 2) throw Unsupported("half-integer weights have no integral weight-shifted modes");
  return shifted + g.twice_weight / 2 - 1;
}

int shifted_index(const Generator& g, int borcherds) {
  if (g.twice_weight % 2) throw Unsupported("half-integer weights have no integral weight-shifted modes");
  return borcherds - g.twice_weight / 2 + 1;
}

State bp_twisted_conformal_vector(const Engine& e) {
  State j = State::monomial({{bp::J, -1}});
  return State::monomial({{bp::L, -1}}) - e.derivative(j) * RatFunc(Rational(1, 2));
}

RatFunc singular_vector_closed_form(int n, const RatFunc& k) {
  return RatFunc(-n) * (RatFunc(n) - k - 2) * (RatFunc(n) - k * 2 - 4);
}

SingularVectorResult singular_vector_check(const Engine& e, int n) {
  const auto& tb = e.table();
  const Generator& gp = tb.generator(bp::Gp);
  const Generator& gm = tb.generator(bp::Gm);
  const Generator& jj = tb.generator(bp::J);
  const Generator& ll = tb.generator(bp::L);
  Monomial gpow(n, Mode{bp::Gp, borcherds_index(gp, -1)});
  Monomial lower(n - 1, Mode{bp::Gp, borcherds_index(gp, -1)});
  State v = State::monomial(gpow);
  State r = e.apply(bp::Gm, borcherds_index(gm, 1), v);
  SingularVectorResult out;
  out.coefficient = r.coefficient(lower);
  out.proportional = (r - State::monomial(lower) * out.coefficient).is_zero();
  for (int m = 1; m <= 3; ++m) {
    bool zero = e.apply(bp::J, borcherds_index(jj, m), v).is_zero() &&
                e.apply(bp::L, borcherds_index(ll, m), v).is_zero() &&
                e.apply(bp::Gm, borcherds_index(gm, m), v).is_zero() &&
                e.apply(bp::Gp, borcherds_index(gp, m), v).is_zero();
    out.annihilated = out.annihilated && zero;
    bool others = e.apply(bp::J, borcherds_index(jj, m), v).is_zero() &&
                  e.apply(bp::L, borcherds_index(ll, m), v).is_zero() &&
                  e.apply(bp::Gm, borcherds_index(gm, m + 1), v).is_zero() &&
                  e.apply(bp::Gp, borcherds_index(gp, m - 1), v).is_zero();
    out.other_modes_annihilate = out.other_modes_annihilate && others;
  }
  return out;
}

bool is_singular_vector(int n, const Rational& k) {
  if (k == -3) throw CriticalLevel();
  if (n <= 0) return false;
  return Rational(n) == k + 2 || Rational(n) == 2 * (k + 2);
}

bool universal_bp_is_simple(const Rational& k) {
  if (k == -3) throw CriticalLevel();
  Rational q = k + 3;
  return !(q.get_num() >= 2);
}

bool simple_embedding_exists(const Rational& k) {
  if (k == -3) throw CriticalLevel();
  Rational q = 2 * k + 3;
  return !(is_integer(q) && q >= 0);
}

bool central_charge_identity() {
  RatFunc k = k_var();
  return bp_central_charge(k) == zam_central_charge(k) + lattice_central_charge(k);
}

namespace {

struct Closed {
  const OpeTable& t;
  ModeExpression e;

  void add(std::pair<Monomial, int> key, const RatFunc& c) {
    if (c.is_zero()) return;
    e[key] += c;
    if (e[key].is_zero()) e.erase(key);
  }
  // generator mode in the weight-shifted convention
  void gen(int g, int n, const RatFunc& c) { add({{Mode{g, -1}}, borcherds_index(t.generator(g), n)}, c); }
  // modes of the normally ordered square :JJ:
  void jj(int p, const RatFunc& c) { add({{Mode{bp::J, -1}, Mode{bp::J, -1}}, p + 1}, c); }
  void id(bool on, const RatFunc& c) {
    if (on) add({{}, -1}, c);
  }
};

}  // namespace

ModeExpression bp_bracket(const Engine& e, int a, int m, int b, int n) {
  const auto& t = e.table();
  return e.mode_expression(
      e.mode_commutator(Mode{a, borcherds_index(t.generator(a), m)}, Mode{b, borcherds_index(t.generator(b), n)}));
}

std::optional<ModeExpression> bp_bracket_closed_form(const OpeTable& t, const RatFunc& k, int a, int m, int b, int n) {
  using namespace bp;
  const RatFunc kp = (k * 2 + 3) / RatFunc(3), M(m), N(n);
  const bool d = m + n == 0;
  Closed c{t, {}};
  if (a == J && b == J) {
    c.id(d, kp * M);
  } else if (a == J && b == Gp) {
    c.gen(Gp, m + n, 1);
  } else if (a == J && b == Gm) {
    c.gen(Gm, m + n, -1);
  } else if (a == L && b == Gp) {
    c.gen(Gp, m + n, -N);
  } else if (a == L && b == Gm) {
    c.gen(Gm, m + n, M - N);
  } else if (a == L && b == J) {
    // central term from the third-order pole L(z)J(w) ~ -kappa'/(z-w)^3
    c.gen(J, m + n, -N);
    c.id(d, -kp * RatFunc(m * m + m) / RatFunc(2));
  } else if ((a == Gp && b == Gp) || (a == Gm && b == Gm)) {
  } else if (a == L && b == L) {
    c.gen(L, m + n, M - N);
    c.id(d, -(k * 2 + 3) * (k + 1) / (k + 3) * RatFunc(m * m * m - m) / RatFunc(3));
  } else if (a == Gp && b == Gm) {
    c.jj(m + n, 3);
    c.gen(L, m + n, -(k + 3));
    c.gen(J, m + n, k * M - (k * 2 + 3) * (N + 1));
    c.id(d, (k + 1) * (k * 2 + 3) * RatFunc(m * m - m) / RatFunc(2));
  } else {
    return std::nullopt;
  }
  return c.e;
}

CommutatorReport verify_commutators(int lo, int hi) {
  const RatFunc k = RatFunc::var(Var::k);
  const Engine e(bp_table(k));
  const OpeTable& t = e.table();
  CommutatorReport r;
  for (int a = 0; a < t.size(); ++a)
    for (int b = 0; b < t.size(); ++b)
      for (int m = lo; m <= hi; ++m)
        for (int n = lo; n <= hi; ++n) {
          auto closed = bp_bracket_closed_form(t, k, a, m, b, n);
          if (!closed) continue;
          ++r.checks;
          if (bp_bracket(e, a, m, b, n) != *closed) {
            std::ostringstream os;
            os << "[" << t.generator(a).name << "_" << m << ", " << t.generator(b).name << "_" << n << "]";
            r.failures.push_back(os.str());
          }
        }
  return r;
}

}  // namespace voa
