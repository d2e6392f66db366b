#include <doctest.h>

#include "voa/error.hpp"
#include "voa/presentations.hpp"
#include "voa/qseries.hpp"

using namespace voa;

namespace {

RatFunc K() { return RatFunc::var(Var::k); }

State M(Monomial m, RatFunc c = 1) { return State::monomial(std::move(m), vacuum_ground(), std::move(c)); }

const Engine& bp_engine() {
  static const Engine e(bp_table());
  return e;
}

// A few homogeneous vacuum states of small weight, some composite.
std::vector<State> samples(const Engine& e) {
  using namespace bp;
  return {
      M({{J, -1}}),
      M({{Gp, -1}}),
      M({{Gm, -1}}),
      M({{L, -1}}),
      M({{J, -1}, {Gp, -1}}),
      M({{J, -2}}) + M({{J, -1}, {J, -1}}, K()),
      e.derivative(M({{Gm, -1}})),
  };
}

// Twice the weight of a homogeneous state.
int twice_weight(const Engine& e, const State& s) { return e.max_twice_depth(s); }

State dpow(const Engine& e, State s, int i) {
  for (int r = 0; r < i; ++r) s = e.derivative(s);
  return s;
}

}  // namespace

TEST_CASE("basic products") {
  using namespace bp;
  const Engine& e = bp_engine();
  RatFunc kp = (K() * 2 + 3) / RatFunc(3);
  CHECK(e.product(J, 1, J) == State::vacuum() * kp);
  CHECK(e.product(J, 0, J).is_zero());
  CHECK(e.product(Gp, 0, Gp).is_zero());
  CHECK(e.product(Gp, 1, J).is_zero());
  // G+_(0) J = -J_(0) G+ by skew-symmetry
  CHECK(e.product(Gp, 0, J) == -M({{Gp, -1}}));
  CHECK_THROWS_AS(Engine(OpeTable("x", {{"a", 2}, {"b", 2}})).product(0, 0, 1), TableIncomplete);
}

TEST_CASE("normal ordering agrees with a hand computation") {
  using namespace bp;
  const Engine& e = bp_engine();
  State lhs = e.normal_order({{Gp, 0}, {Gm, -2}});
  State rhs = M({{J, -2}, {J, -1}}, 6) + M({{J, -3}}, (K() * 2 + 3) * 2) + M({{L, -2}}, -(K() + 3));
  CHECK(lhs == rhs);

  // J_(-1) J_(-2) = J_(-2) J_(-1) since [J_(-1), J_(-2)] = 0 on the vacuum
  CHECK(e.normal_order({{J, -1}, {J, -2}}) == M({{J, -2}, {J, -1}}));
  // J_(1) J_(-1) 1 = kappa'
  CHECK(e.normal_order({{J, 1}, {J, -1}}) == State::vacuum() * ((K() * 2 + 3) / RatFunc(3)));
  // J_(0) G+_(-1) G-_(-1) 1 = 0
  CHECK(e.normal_order({{J, 0}, {Gp, -1}, {Gm, -1}}).is_zero());
}

TEST_CASE("translation and conformal vector") {
  using namespace bp;
  const Engine& e = bp_engine();
  State Lv = M({{L, -1}});
  for (const auto& x : samples(e)) {
    CHECK(e.act(Lv, 0, x) == e.derivative(x));
    // L_(1) acts by the weight on these homogeneous states
    CHECK(e.act(Lv, 1, x) == x * RatFunc(Rational(twice_weight(e, x), 2)));
    // the vacuum field is the identity
    CHECK(e.act(State::vacuum(), -1, x) == x);
    CHECK(e.act(x, -1, State::vacuum()) == x);
  }
  // (dA)_(n) B = -n A_(n-1) B
  auto s = samples(e);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      for (int n = 0; n <= 3; ++n)
        CHECK(e.act(e.derivative(s[i]), n, s[j]) == e.act(s[i], n - 1, s[j]) * RatFunc(-n));
}

TEST_CASE("skew-symmetry on composite states") {
  const Engine& e = bp_engine();
  auto s = samples(e);
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); b += 2) {
      int bound = (twice_weight(e, s[a]) + twice_weight(e, s[b])) / 2;
      for (int n = 0; n <= 1; ++n) {
        State lhs = e.act(s[a], n, s[b]);
        State rhs;
        for (int i = 0; n + i <= bound; ++i) {
          State t = dpow(e, e.act(s[b], n + i, s[a]), i) * RatFunc(Rational(1, factorial(i)));
          rhs += ((n + i + 1) % 2 == 0) ? t : -t;
        }
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("commutator formula for composite fields") {
  using namespace bp;
  const Engine& e = bp_engine();
  auto s = samples(e);
  State x = M({{Gm, -1}});
  for (std::size_t a = 0; a < s.size(); a += 2) {
    for (std::size_t b = 1; b < s.size(); b += 2) {
      for (int m = 0; m <= 2; ++m) {
        for (int n = -1; n <= 1; ++n) {
          State lhs = e.act(s[a], m, e.act(s[b], n, x)) - e.act(s[b], n, e.act(s[a], m, x));
          State rhs;
          for (int j = 0; j <= m; ++j) rhs += e.act(e.act(s[a], j, s[b]), m + n - j, x) * RatFunc(Rational(binomial(m, j)));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("highest-weight ground vectors") {
  using namespace bp;
  const Engine& e = bp_engine();
  RatFunc mu = RatFunc::var(Var::lambda), D = RatFunc::var(Var::Delta), w = RatFunc::var(Var::w);
  auto g = highest_weight_ground({{J, mu}, {L, D}, {Gp, 0}, {Gm, 0}});
  State v = State::ground(g);
  CHECK(e.apply(L, 1, v) == v * D);
  CHECK(e.apply(J, 0, v) == v * mu);
  State u = e.apply(J, -1, v);
  CHECK(e.apply(L, 1, u) == u * (D + 1));
  CHECK(e.apply(J, 0, e.apply(Gp, -1, v)) == e.apply(Gp, -1, v) * (mu + 1));
  CHECK(e.apply(J, 1, u) == v * ((K() * 2 + 3) / RatFunc(3)));
  // missing zero-mode eigenvalue
  auto bad = highest_weight_ground({{J, mu}});
  CHECK_THROWS(e.apply(L, 1, State::ground(bad)));

  auto chi = one_dimensional_ground({{L, w}});
  CHECK(e.apply(L, 1, State::ground(chi)) == State::ground(chi) * w);
  CHECK(e.apply(J, 0, State::ground(chi)).is_zero());
  CHECK(e.apply(J, -1, State::ground(chi)).is_zero());
}

TEST_CASE("graded dimensions match the PBW generating function") {
  const Engine& e = bp_engine();
  const int N = 6;
  // prod (1-q^n)^{-2} (n >= 1) * prod (1-q^n)^{-2} (n >= 2)
  QSeries f = QSeries::eta_power(-4, N);
  std::vector<Rational> g = f.coeffs;
  // divide out (1-q)^{-2}: multiply by (1-q)^2
  std::vector<Rational> h(N + 1);
  for (int n = 0; n <= N; ++n) h[n] = g[n] - (n >= 1 ? 2 * g[n - 1] : Rational(0)) + (n >= 2 ? g[n - 2] : Rational(0));
  auto dims = e.graded_dimension(N);
  CHECK(dims[0] == 1);
  CHECK(dims[1] == 2);
  CHECK(dims[2] == 7);
  for (int n = 0; n <= N; ++n) CHECK(Rational(static_cast<long>(dims[n])) == h[n]);

  Engine z(zam_table());
  auto zd = z.graded_dimension(4);
  CHECK(zd == std::vector<std::size_t>{1, 0, 1, 2, 3});
  for (const auto& m : e.pbw_basis(4)) CHECK(is_normal(m));
}

TEST_CASE("tables round-trip through text") {
  for (const auto& t : {bp_table(), zam_table(), bp_critical_table(), center_table()}) {
    OpeTable back = OpeTable::parse(t.dump());
    CHECK(back == t);
    CHECK(back.dump() == t.dump());
  }
  CHECK_THROWS_AS(OpeTable::parse("algebra x\ngenerator a weight 1\na(0)b = 0\n"), ParseError);
  CHECK_THROWS_AS(OpeTable::parse("algebra x\ngenerator a weight 1\na(0)a = (1)*a(-3)|0>\n"), Error);
  OpeTable t = bp_table();
  CHECK_THROWS_AS(t.parse_state("(k+1)*J(-2)J(-1)|0> + G+(-1)|hw J=1/2 L=k>"), ParseError);
  State s = t.parse_state("(k+1)*J(-2)J(-1)|0> + (-1/2)*G+(-1)|0>");
  CHECK(s == M({{bp::J, -2}, {bp::J, -1}}, K() + 1) + M({{bp::Gp, -1}}, Rational(-1, 2)));
  CHECK(t.parse_state(t.render(s)) == s);
  State h = t.parse_state("G+(-1)|hw J=1/2 L=k>");
  CHECK(t.parse_state(t.render(h)) == h);
}
