#include <doctest.h>

#include <chrono>

#include "voa/error.hpp"
#include "voa/presentations.hpp"
#include "voa/realisation.hpp"

using namespace voa;

namespace {

RatFunc K() { return RatFunc::var(Var::k); }

const Realisation& generic() {
  static const Realisation r;
  return r;
}

TensorState one_tensor(const LatticeState& v) { return TensorState::product(State::vacuum(), v); }

}  // namespace

TEST_CASE("tensor products of generator images") {
  using namespace bp;
  const Realisation& r = generic();
  const TensorEngine& te = r.target();
  RatFunc k = K(), kp = (k * 2 + 3) / RatFunc(3);
  CHECK(te.act(r.generator_image(Gp), 2, r.generator_image(Gm)) == TensorState::vacuum() * ((k + 1) * (k * 2 + 3)));
  CHECK(te.act(r.generator_image(J), 1, r.generator_image(J)) == TensorState::vacuum() * kp);
  // disjoint factors have a regular OPE
  TensorState T = TensorState::product(State::monomial({{zam::T, -1}}), LatticeState::vacuum());
  for (int n = 0; n <= 3; ++n) CHECK(te.act(T, n, r.generator_image(J)).is_zero());
  // the vacuum field acts as the identity
  for (int g = 0; g < 4; ++g) CHECK(te.act(TensorState::vacuum(), -1, r.generator_image(g)) == r.generator_image(g));
}

TEST_CASE("images of simple states") {
  using namespace bp;
  const Realisation& r = generic();
  const LatticeEngine& pi = r.target().right();
  CHECK(r.phi(State::vacuum()) == TensorState::vacuum());
  CHECK(r.phi(State::monomial({{J, -1}})) == one_tensor(pi.create(pi.j(), {1}, LatticeState::vacuum())));
  Monomial m;
  for (int n = 1; n <= 4; ++n) {
    m.push_back({Gp, -1});
    CHECK(r.phi(State::monomial(m)) == one_tensor(LatticeState::exponential({0, n})));
  }
  // L_(1) acts by the conformal weight on the images of the generators
  for (int g = 0; g < 4; ++g) {
    const auto& img = r.generator_image(g);
    CHECK(r.target().act(r.generator_image(L), 1, img) == img * RatFunc(Rational(r.source().generator(g).twice_weight, 2)));
  }
}

TEST_CASE("homomorphism, symbolic level") {
  auto t0 = std::chrono::steady_clock::now();
  auto checks = verify_homomorphism(generic());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("homomorphism checks: " << checks.size() << " in " << secs << " s");
  CHECK(checks.size() >= 30);
  for (const auto& c : checks) {
    CAPTURE(c.left);
    CAPTURE(c.right);
    CAPTURE(c.order);
    CHECK(c.pass);
  }
  // spot check of one table entry: G+_(1) G- = 3(k+1) J
  const auto& r = generic();
  CHECK(r.target().act(r.generator_image(bp::Gp), 1, r.generator_image(bp::Gm)) == r.generator_image(bp::J) * ((K() + 1) * 3));
}

TEST_CASE("homomorphism, critical level") {
  const Realisation r{RatFunc(-3)};
  CHECK(r.critical());
  for (const auto& c : verify_homomorphism(r)) {
    CAPTURE(c.left);
    CAPTURE(c.right);
    CAPTURE(c.order);
    CHECK(c.pass);
  }
  using namespace crit;
  const TensorEngine& te = r.target();
  CHECK(te.act(r.generator_image(Gp), 2, r.generator_image(Gm)) == TensorState::vacuum() * RatFunc(6));
  CHECK(te.act(r.generator_image(J), 1, r.generator_image(J)) == TensorState::vacuum() * RatFunc(-1));
  for (int g : {J, Gp, S, Gm})
    for (int n = 0; n <= 3; ++n) CHECK(te.act(r.generator_image(S), n, r.generator_image(g)).is_zero());
}

TEST_CASE("a wrong image is caught") {
  // at a specialised level the check is sensitive to the coefficients of phi(G-)
  const Realisation good{RatFunc(Rational(1, 7))};
  const TensorEngine& te = good.target();
  TensorState bad = good.generator_image(bp::Gm) +
                    TensorState::product(State::monomial({{zam::T, -2}}), LatticeState::exponential({0, -1}));
  CHECK(te.act(good.generator_image(bp::Gp), 1, good.generator_image(bp::Gm)) == good.phi(good.source().product(bp::Gp, 1, bp::Gm)));
  CHECK(te.act(good.generator_image(bp::J), 0, good.generator_image(bp::Gm)) == good.phi(good.source().product(bp::J, 0, bp::Gm)));
  CHECK_FALSE(te.act(good.generator_image(bp::J), 0, bad) == good.phi(good.source().product(bp::J, 0, bp::Gm)));
  CHECK_FALSE(te.act(good.generator_image(bp::L), 2, bad) == good.phi(good.source().product(bp::L, 2, bp::Gm)));
}

TEST_CASE("matrix rank") {
  std::vector<std::map<std::size_t, Rational>> rows{{{0, 1}, {1, 2}}, {{0, 2}, {1, 4}}, {{1, 1}, {2, Rational(1, 3)}}};
  CHECK(matrix_rank(rows) == 2);
  rows.push_back({{2, 5}});
  CHECK(matrix_rank(rows) == 3);
  CHECK(matrix_rank({}) == 0);
}

TEST_CASE("injectivity at low weight") {
  CHECK(bp_expected_dimensions(4) == std::vector<std::size_t>{1, 2, 7, 16, 39});
  auto rows = verify_injectivity(2, {Rational(-9, 4), Rational(-5, 3), Rational(1, 7)});
  CHECK(rows.size() == 9);
  for (const auto& row : rows) {
    CAPTURE(row.weight);
    CHECK(row.pass());
  }
  CHECK(rows[2].rank == 7);
  CHECK_THROWS_AS(verify_injectivity(1, {Rational(-3)}), CriticalLevel);
}

TEST_CASE("spectral flow is compatible with the realisation") {
  for (int l = -2; l <= 2; ++l) {
    CAPTURE(l);
    auto checks = spectral_flow_compat(generic(), l);
    CHECK(!checks.empty());
    for (const auto& c : checks) {
      CAPTURE(c.generator);
      CAPTURE(c.mode);
      CAPTURE(c.vector);
      CHECK(c.pass);
    }
  }
}
