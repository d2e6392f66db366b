#include <doctest.h>

#include "voa/core/partition.hpp"
#include "voa/error.hpp"
#include "voa/lattice.hpp"
#include "voa/presentations.hpp"

using namespace voa;

namespace {

RatFunc K() { return RatFunc::var(Var::k); }
RatFunc Lam() { return RatFunc::var(Var::lambda); }

const LatticeEngine& eng() {
  static const LatticeEngine e;
  return e;
}

LatticeState E(Rational r, RatFunc mu) { return LatticeState::exponential({std::move(r), std::move(mu)}); }

LatticeState key_state(std::vector<int> j, std::vector<int> c, Rational r, RatFunc mu, RatFunc coeff = 1) {
  return LatticeState::term({{std::move(r), std::move(mu)}, {std::move(j), std::move(c)}}, std::move(coeff));
}

// weight-shifted modes of weight-one fields coincide with Borcherds modes
LatticeState ec_modes(const LatticeEngine& e, const std::vector<int>& idx, LatticeState v) {
  for (auto it = idx.rbegin(); it != idx.rend(); ++it) v = e.exp_mode(1, *it, v);
  return v;
}

LatticeState j_modes(const LatticeEngine& e, const std::vector<int>& idx, LatticeState v) {
  for (auto it = idx.rbegin(); it != idx.rend(); ++it) v = e.h_mode(e.j(), *it, v);
  return v;
}

std::vector<int> neg(std::vector<int> v) {
  for (int& x : v) x = -x;
  return v;
}

// prod of m_i! over the multiplicities of the parts
Integer multiplicity_factorial(const std::vector<int>& parts) {
  Integer out = 1;
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    out *= factorial(j - i);
    i = j;
  }
  return out;
}

// Oracle: S_m = sum over partitions of m of prod c_(-l) / z_lambda.
LatticeState schur_oracle(int m) {
  LatticeState out;
  for (const auto& p : partitions_of(m)) {
    Integer z = 1;
    for (std::size_t i = 0; i < p.parts.size();) {
      std::size_t j = i;
      while (j < p.parts.size() && p.parts[j] == p.parts[i]) ++j;
      for (std::size_t r = i; r < j; ++r) z *= p.parts[i];
      z *= factorial(j - i);
      i = j;
    }
    out += key_state({}, p.parts, 0, 0, RatFunc(Rational(1) / Rational(z)));
  }
  return out;
}

std::vector<LatticeState> vacuum_samples(const LatticeEngine& e) {
  return {
      key_state({1}, {}, 0, 0),
      key_state({}, {1}, 0, 0),
      E(0, 1),
      E(0, -1),
      key_state({1}, {}, 0, -1),
      key_state({2}, {1}, 0, 1),
      e.conformal_vector(),
  };
}

std::vector<LatticeState> module_samples() {
  RatFunc l = Lam();
  return {
      E(-1, l),
      key_state({1}, {}, -1, l + 2),
      key_state({}, {2}, -1, l - 1),
      key_state({1}, {1}, -1, l),
  };
}

}  // namespace

TEST_CASE("Heisenberg pairings") {
  const auto& e = eng();
  RatFunc kp = (K() * 2 + 3) / RatFunc(3);
  HeisVector j = e.j(), i = e.i(), c = HeisVector::c(), d = HeisVector::d();
  CHECK(pairing(j, j) == kp);
  CHECK(pairing(i, i) == -kp);
  CHECK(pairing(j, c) == 1);
  CHECK(pairing(i, c) == 1);
  CHECK(pairing(i, j) == 0);
  CHECK(pairing(c, c) == 0);
  CHECK(pairing(d, d) == 0);
  // i = d - j
  CHECK(i == d + j * RatFunc(-1));
  auto [x, y] = e.jc_coordinates(c);
  CHECK(x == 0);
  CHECK(y == 1);
}

TEST_CASE("zero modes on exponentials") {
  const auto& e = eng();
  RatFunc kp = e.kappa_prime(), mu = Lam();
  CHECK(e.h_mode(e.j(), 0, E(-1, mu)) == E(-1, mu) * (mu - kp));
  CHECK(e.h_mode(HeisVector::c(), 0, E(Rational(3, 2), mu)) == E(Rational(3, 2), mu) * RatFunc(Rational(3, 2)));
  CHECK(e.h_mode(e.i(), 0, E(-1, mu)) == E(-1, mu) * mu);
  // j_{+nu} c_{-nu} e^{-j+lambda c} = prod nu_i prod m_i! e^{-j+lambda c}; repeated parts give the m_i!
  for (int n = 1; n <= 5; ++n) {
    for (const auto& nu : partitions_of(n)) {
      LatticeState v = key_state({}, nu.parts, -1, mu);
      Integer prod = 1;
      for (int p : nu.parts) prod *= p;
      prod *= multiplicity_factorial(nu.parts);
      CHECK(j_modes(e, nu.parts, v) == E(-1, mu) * RatFunc(Rational(prod)));
      for (int n2 = n; n2 <= 5; ++n2)
        for (const auto& nu2 : partitions_of(n2))
          if (nu2 != nu) CHECK(j_modes(e, nu2.parts, v).is_zero());
    }
  }
}

TEST_CASE("Schur functions") {
  const auto& e = eng();
  CHECK(e.schur(0) == LatticeState::vacuum());
  CHECK(e.schur(1) == key_state({}, {1}, 0, 0));
  CHECK(e.schur(2) == key_state({}, {2}, 0, 0, Rational(1, 2)) + key_state({}, {1, 1}, 0, 0, Rational(1, 2)));
  CHECK(e.schur(3) == key_state({}, {3}, 0, 0, Rational(1, 3)) + key_state({}, {2, 1}, 0, 0, Rational(1, 2)) +
                          key_state({}, {1, 1, 1}, 0, 0, Rational(1, 6)));
  for (int m = 0; m <= 7; ++m) CHECK(e.schur(m) == schur_oracle(m));
}

TEST_CASE("exponential modes") {
  const auto& e = eng();
  RatFunc mu = Lam();
  CHECK(e.exp_mode(1, 0, E(-1, mu)) == E(-1, mu + 1));
  for (int n = 1; n <= 4; ++n) CHECK(e.exp_mode(1, n, E(-1, mu)).is_zero());
  for (int n = -2; n <= 2; ++n) {
    for (int m = -3; m <= 5; ++m) {
      // e^c_(-m-1) e^{nc} = S_m(c) e^{(n+1)c}, zero for m < 0
      LatticeState lhs = e.exp_mode(1, -m - 1, E(0, n));
      LatticeState rhs, sm = m >= 0 ? e.schur(m) : LatticeState();
      for (const auto& [k, c] : sm.terms()) rhs.add_term({ExpLabel{0, RatFunc(n + 1)}, k.fock}, c);
      CHECK(lhs == rhs);
      // e^c_{-m} e^{-j+(lambda+n)c} = S_m(c) e^{-j+(lambda+n+1)c}
      LatticeState lhs2 = e.exp_mode(1, -m, E(-1, mu + n));
      LatticeState rhs2;
      for (const auto& [k, c] : sm.terms()) rhs2.add_term({ExpLabel{-1, mu + n + 1}, k.fock}, c);
      CHECK(lhs2 == rhs2);
    }
  }
  CHECK_THROWS_AS(e.exp_mode(1, 0, E(Rational(1, 2), 0)), Unsupported);
}

TEST_CASE("lemma: exponential positive modes against j creation modes") {
  const auto& e = eng();
  RatFunc mu = Lam();
  std::vector<Partition> parts = partitions_up_to(5);
  for (const auto& m : parts) {
    for (const auto& nu : parts) {
      if (m.size() + nu.size() > 6) continue;
      LatticeState v = j_modes(e, neg(m.parts), key_state({}, nu.parts, -1, mu));
      LatticeState expect = key_state({}, nu.parts, -1, mu + m.length()) *
                            RatFunc(Rational(multiplicity_factorial(m.parts)) * (m.length() % 2 ? -1 : 1));
      CHECK(ec_modes(e, m.parts, v) == expect);
      for (const auto& m2 : parts) {
        if (m2 == m) continue;
        bool vanish = m2.length() > m.length() || (m2.length() == m.length() && m2.size() >= m.size());
        if (vanish && m2.length() > 0) CHECK(ec_modes(e, m2.parts, v).is_zero());
      }
    }
  }
}

TEST_CASE("conformal vector") {
  const auto& e = eng();
  LatticeState t = e.conformal_vector();
  CHECK(e.conformal_weight(E(0, 3)) == 3);
  CHECK(e.conformal_weight(E(0, -2)) == -2);
  CHECK(e.conformal_weight(E(-1, Lam())) == e.kappa_prime());
  CHECK(e.conformal_weight(LatticeState::vacuum()) == 0);
  // Virasoro central term
  CHECK(e.act(t, 3, t) == LatticeState::vacuum() * (lattice_central_charge(K()) / RatFunc(2)));
  CHECK(e.act(t, 1, t) == t * RatFunc(2));
  for (const auto& x : vacuum_samples(e)) {
    CHECK(e.act(t, 1, x) == x * e.conformal_weight(x));
    CHECK(e.act(t, 0, x) == e.derivative(x));
    CHECK(e.act(x, -2, LatticeState::vacuum()) == e.derivative(x));
    CHECK(e.act(x, -1, LatticeState::vacuum()) == x);
  }
  for (const auto& x : module_samples()) CHECK(e.act(t, 1, x) == x * e.conformal_weight(x));
  CHECK_THROWS(e.conformal_weight(E(0, 1) + E(0, 2)));
}

TEST_CASE("commutator formula on Pi and its modules") {
  const auto& e = eng();
  auto u = vacuum_samples(e);
  auto xs = module_samples();
  xs.push_back(E(0, 0));
  xs.push_back(key_state({1}, {}, 0, 2));
  for (std::size_t a = 0; a < u.size(); ++a) {
    for (std::size_t b = 0; b < u.size(); ++b) {
      if ((a + b) % 2) continue;
      for (const auto& x : xs) {
        if (x.terms().begin()->first.label.r == 0 && a % 3) continue;
        for (int m = 0; m <= 1; ++m) {
          for (int n = -1; n <= 1; ++n) {
            LatticeState lhs = e.act(u[a], m, e.act(u[b], n, x)) - e.act(u[b], n, e.act(u[a], m, x));
            LatticeState rhs;
            for (int j = 0; j <= m; ++j) rhs += e.act(e.act(u[a], j, u[b]), m + n - j, x) * RatFunc(Rational(binomial(m, j)));
            CHECK(lhs == rhs);
          }
        }
      }
    }
  }
}

TEST_CASE("exponential-mode basis") {
  const auto& e = eng();
  // e^c_(-2) e^{nc} = c_(-1) e^{(n+1)c}
  CHECK(e.from_exp_basis(ExpBasisKey{{}, {1}, 4}) == key_state({}, {1}, 0, 5));
  // e^c_(-3) e^c_(-2) e^{nc} = S_2 S_1 e^{(n+2)c}
  LatticeState s21 = key_state({}, {2, 1}, 0, 2, Rational(1, 2)) + key_state({}, {1, 1, 1}, 0, 2, Rational(1, 2));
  CHECK(e.from_exp_basis(ExpBasisKey{{}, {2, 1}, 0}) == s21);
  CHECK(e.from_exp_basis(ExpBasisKey{{}, {2, 1}, 0}) == ec_modes(e, {-3, -2}, E(0, 0)));
  // round trips for all basis vectors of Fock degree <= 4
  for (int w = 0; w <= 4; ++w) {
    for (int a = 0; a <= w; ++a) {
      for (const auto& mu : partitions_of(a)) {
        for (const auto& nu : partitions_of(w - a)) {
          for (long n : {-1L, 0L, 2L}) {
            ExpBasisKey key{mu.parts, nu.parts, n};
            ExpBasisState back = e.to_exp_basis(e.from_exp_basis(key));
            CHECK(back == ExpBasisState{{key, RatFunc(1)}});
            LatticeState cb = key_state(mu.parts, nu.parts, 0, RatFunc(n));
            CHECK(e.from_exp_basis(e.to_exp_basis(cb)) == cb);
          }
        }
      }
    }
  }
}

TEST_CASE("top space and character") {
  const auto& e = eng();
  auto top = e.top_space(-1, Lam(), -2, 2);
  CHECK(top.size() == 5);
  CHECK(top[2] == E(-1, Lam()));
  CHECK_THROWS_AS(e.top_space(0, 0, 0, 1), NotPositiveEnergy);
  // Pi_{-1}(lambda) and Pi_{-1}(lambda+5) share i_0-spectra modulo Z
  auto top5 = e.top_space(-1, Lam() + 5, -7, -3);
  CHECK(top5 == top);
  auto ch = e.character_pi(Lam(), 20);
  CHECK(ch.y_exp == -1);
  CHECK(ch.z_exp == Lam());
  CHECK(ch.delta);
  CHECK(ch.series.offset == Rational(-1, 12));
  std::vector<long> expect{1, 2, 5, 10, 20};
  for (int n = 0; n < 5; ++n) CHECK(ch.series.coeffs[n] == expect[n]);
}

TEST_CASE("spectral flow") {
  const auto& e = eng();
  RatFunc kp = e.kappa_prime();
  CHECK(spectral_flow_field(e, 1, "a").scalar_shift == -(K() + 3) / RatFunc(3));
  CHECK(spectral_flow_field(e, 1, "b").scalar_shift == -K() / RatFunc(3));
  CHECK(spectral_flow_field(e, 1, "c").scalar_shift == -1);
  CHECK(spectral_flow_field(e, 2, "e^-c").z_power == 2);
  CHECK(spectral_flow_field(e, 0, "j").scalar_shift == 0);
  CHECK(flow_module(-1, Lam(), 1).first == 0);

  LatticeState t = e.conformal_vector(), jv = key_state({1}, {}, 0, 0);
  auto xs = module_samples();
  for (int ell = -2; ell <= 2; ++ell) {
    for (const auto& x : xs) {
      for (int n = -1; n <= 2; ++n) {
        // flowed t = t - ell z^{-1} j + kappa' ell(ell+1)/2 z^{-2}
        LatticeState expect = e.act(t, n, x) - e.act(jv, n - 1, x) * RatFunc(ell);
        if (n == 1) expect += x * (kp * RatFunc(ell * (ell + 1)) / RatFunc(2));
        CHECK(e.act(t, n, x, ell) == expect);
      }
    }
    // flowed generating fields obey the same commutators
    std::vector<LatticeState> gens{jv, key_state({}, {1}, 0, 0), E(0, 1), E(0, -1), t};
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = 0; b < gens.size(); ++b)
        for (int m = 0; m <= 2; ++m) {
          int n = 1 - m;
          const auto& x = xs[(a + b) % xs.size()];
          LatticeState lhs = e.act(gens[a], m, e.act(gens[b], n, x, ell), ell) - e.act(gens[b], n, e.act(gens[a], m, x, ell), ell);
          LatticeState rhs;
          for (int j = 0; j <= m + 3; ++j)
            rhs += e.act(e.act(gens[a], j, gens[b]), m + n - j, x, ell) * RatFunc(Rational(binomial(m, j)));
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("rendering") {
  const auto& e = eng();
  LatticeState s = key_state({2}, {1, 1}, -1, Lam() + 3) + key_state({}, {}, 0, -1, Rational(1, 2)) + E(0, 0);
  std::string text = e.render(s);
  CHECK(e.parse(text) == s);
  CHECK(e.render(key_state({2}, {1, 1}, -1, Lam() + 3)) == "j(-2)c(-1)^2 e[-j+(λ+3)c]");
  CHECK(e.parse("(2)*j(-1)^2 e[c] + e[0]") == key_state({1, 1}, {}, 0, 1, 2) + LatticeState::vacuum());
  CHECK_THROWS_AS(e.parse("x(-1) e[0]"), ParseError);
}

TEST_CASE("lattice lemma suite") {
  const auto& e = eng();
  LatticeCheckReport r = verify_lattice_lemmas(e, 3);
  CHECK(r.ok());
  for (const auto& f : r.failures) MESSAGE(f);
  LatticeCheckReport b = verify_exp_basis_round_trip(e, 3);
  CHECK(b.ok());
  for (int ell = -2; ell <= 2; ++ell) CHECK(verify_lattice_flow(e, ell).ok());
  // the suite notices a wrong Schur function
  CHECK_FALSE(e.schur(2) == e.schur(1));
}
