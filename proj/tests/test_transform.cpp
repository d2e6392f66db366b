#include <doctest.h>

#include "voa/presentations.hpp"
#include "voa/transform.hpp"

using namespace voa;

namespace {

RatFunc K() { return RatFunc::var(Var::k); }

const Engine& bp_engine() {
  static const Engine e(bp_table());
  return e;
}

std::vector<State> tests() {
  using namespace bp;
  return {
      State::vacuum(),
      State::monomial({{Gp, -1}}),
      State::monomial({{J, -1}}),
      State::monomial({{Gm, -1}}),
  };
}

}  // namespace

TEST_CASE("field transform composition") {
  using namespace bp;
  RatFunc k = K(), kp = (k * 2 + 3) / RatFunc(3);
  FieldTransform id = FieldTransform::identity(4);
  CHECK(bp_spectral_flow(k, 0) == id);
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) CHECK(bp_spectral_flow(k, a).compose(bp_spectral_flow(k, b)) == bp_spectral_flow(k, a + b));
  FieldTransform c = bp_conjugation(k);
  FieldTransform c2 = c.power(2);
  CHECK(c2.image(J) == id.image(J));
  CHECK(c2.image(L) == id.image(L));
  CHECK(c2.image(Gp) == FieldImage{{-1, 0, 0, Gp}});
  CHECK(c2.image(Gm) == FieldImage{{-1, 0, 0, Gm}});
  CHECK(c.power(4) == id);
  // conjugation inverts the flow: c sigma c^{-1} = sigma^{-1}
  for (int l = -2; l <= 2; ++l) CHECK(c.compose(bp_spectral_flow(k, l)).compose(c.power(3)) == bp_spectral_flow(k, -l));
  CHECK(c.image(J) == FieldImage{{kp, 1, 0, -1}, {-1, 0, 0, J}});
}

TEST_CASE("transformed modes") {
  using namespace bp;
  const Engine& e = bp_engine();
  TransformedAction sf(e, bp_spectral_flow(K(), 1));
  State v = State::vacuum();
  // sigma(G+)_(m) = G+_(m-1)
  CHECK(sf.apply(Gp, 0, v) == e.apply(Gp, -1, v));
  // sigma(J)_(0) = J_(0) - kappa'
  CHECK(sf.apply(J, 0, v) == v * (-(K() * 2 + 3) / RatFunc(3)));
  TransformedAction cj(e, bp_conjugation(K()));
  // weight-shifted modes: L_n -> L_n + n J_n, G+_n -> G-_n, J_0 -> -J_0 + kappa'
  State j = State::monomial({{J, -1}});
  for (int n = -1; n <= 2; ++n) CHECK(cj.apply(L, n + 1, j) == e.apply(L, n + 1, j) + e.apply(J, n, j) * RatFunc(n));
  CHECK(cj.apply(Gp, 0, v) == e.apply(Gm, 1, v));
  CHECK(cj.apply(J, 0, j) == -e.apply(J, 0, j) + j * ((K() * 2 + 3) / RatFunc(3)));
}

TEST_CASE("spectral flow preserves the OPEs") {
  const Engine& e = bp_engine();
  for (int l = -2; l <= 2; ++l) {
    CAPTURE(l);
    auto r = check_transform(e, bp_spectral_flow(K(), l), tests(), -2, 2);
    CHECK(r.checks > 0);
    CHECK(r.ok());
    if (!r.ok()) MESSAGE(r.failures.front());
  }
}

TEST_CASE("conjugation preserves the OPEs") {
  const Engine& e = bp_engine();
  auto r = check_transform(e, bp_conjugation(K()), tests(), -2, 2);
  CHECK(r.ok());
  if (!r.ok()) MESSAGE(r.failures.front());
}

TEST_CASE("conjugation with J -> -J - kappa z^-1 breaks the OPEs") {
  using namespace bp;
  RatFunc kp = (K() * 2 + 3) / RatFunc(3);
  // taken literally on fields, and with only the J shift flipped
  std::vector<FieldImage> literal{{{-1, 0, 0, J}, {-kp, 1, 0, -1}}, {{1, 0, 0, Gm}}, {{1, 0, 0, L}, {-1, 0, 1, J}, {-1, 1, 0, J}}, {{-1, 0, 0, Gp}}};
  CHECK_FALSE(check_transform(bp_engine(), FieldTransform(literal), tests(), -1, 1).ok());
  std::vector<FieldImage> flipped{{{-1, 0, 0, J}, {-kp, 1, 0, -1}}, {{1, -1, 0, Gm}}, {{1, 0, 0, L}, {-1, 0, 1, J}, {-1, 1, 0, J}}, {{-1, 1, 0, Gp}}};
  CHECK_FALSE(check_transform(bp_engine(), FieldTransform(flipped), tests(), -1, 1).ok());
}

TEST_CASE("a wrong transform is detected") {
  using namespace bp;
  const Engine& e = bp_engine();
  // the linear L shift without the matching J shift breaks [L, G+]
  std::vector<FieldImage> im{{{1, 0, 0, J}}, {{1, 0, 0, Gp}}, {{1, 0, 0, L}, {-1, 1, 0, J}}, {{1, 0, 0, Gm}}};
  CHECK_FALSE(check_transform(e, FieldTransform(im), tests(), -1, 1).ok());
  // J -> J - (1/2) kappa' z^{-1}: half the flow shift
  RatFunc kp = (K() * 2 + 3) / RatFunc(3);
  std::vector<FieldImage> im2{{{1, 0, 0, J}, {-kp / RatFunc(2), 1, 0, -1}}, {{1, 1, 0, Gp}}, {{1, 0, 0, L}, {-1, 1, 0, J}, {kp, 2, 0, -1}}, {{1, -1, 0, Gm}}};
  CHECK_FALSE(check_transform(e, FieldTransform(im2), tests(), -1, 1).ok());
}
