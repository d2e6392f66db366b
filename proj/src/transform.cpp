#include "voa/transform.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "voa/error.hpp"
#include "voa/presentations.hpp"

namespace voa {

FieldImage canonical(FieldImage terms) {
  std::map<std::tuple<int, int, int>, RatFunc> acc;
  for (const auto& t : terms) acc[{t.generator, t.z_power, t.derivs}] += t.coeff;
  FieldImage out;
  for (const auto& [key, c] : acc) {
    if (c.is_zero()) continue;
    auto [g, e, d] = key;
    out.push_back({c, e, d, g});
  }
  return out;
}

FieldTransform::FieldTransform(std::vector<FieldImage> images) {
  for (auto& im : images) {
    for (const auto& t : im)
      if (t.generator < 0 && t.derivs != 0) throw Error("identity terms carry no derivatives");
    images_.push_back(canonical(std::move(im)));
  }
}

FieldTransform FieldTransform::identity(int generators) {
  std::vector<FieldImage> images;
  for (int g = 0; g < generators; ++g) images.push_back({{1, 0, 0, g}});
  return FieldTransform(std::move(images));
}

namespace {

// d^d (z^{-e} F) = sum_i C(d,i) ff(-e,i) z^{-e-i} d^{d-i} F, F a transformed generator image
void push_derivative(FieldImage& out, const RatFunc& c, int e, int d, const FieldImage& inner) {
  for (const auto& t : inner) {
    if (t.generator < 0) {
      // z^{-e} d^d z^{-e'} = ff(-e', d) z^{-e-e'-d}
      Integer f = falling_factorial(-t.z_power, d);
      if (f != 0) out.push_back({c * t.coeff * RatFunc(Rational(f)), e + t.z_power + d, 0, -1});
      continue;
    }
    for (int i = 0; i <= d; ++i) {
      Integer f = binomial(d, i) * falling_factorial(-t.z_power, i);
      if (f == 0) continue;
      out.push_back({c * t.coeff * RatFunc(Rational(f)), e + t.z_power + i, t.derivs + d - i, t.generator});
    }
  }
}

}  // namespace

FieldTransform FieldTransform::compose(const FieldTransform& other) const {
  if (other.size() != size()) throw Error("transforms act on different generator sets");
  std::vector<FieldImage> images;
  for (const auto& im : other.images_) {
    FieldImage out;
    for (const auto& t : im) {
      if (t.generator < 0) {
        out.push_back(t);
        continue;
      }
      push_derivative(out, t.coeff, t.z_power, t.derivs, images_.at(t.generator));
    }
    images.push_back(std::move(out));
  }
  return FieldTransform(std::move(images));
}

FieldTransform FieldTransform::power(int n) const {
  if (n < 0) throw Error("negative power of a field transform");
  FieldTransform out = identity(size());
  for (int i = 0; i < n; ++i) out = compose(out);
  return out;
}

std::string FieldTransform::render(const OpeTable& t) const {
  std::ostringstream os;
  for (int g = 0; g < size(); ++g) {
    os << t.generator(g).name << "(z) -> ";
    if (images_[g].empty()) os << "0";
    bool first = true;
    for (const auto& term : images_[g]) {
      if (!first) os << " + ";
      first = false;
      os << "(" << term.coeff.to_string() << ")";
      if (term.z_power) os << "*z^" << -term.z_power;
      if (term.generator >= 0) {
        os << "*";
        for (int i = 0; i < term.derivs; ++i) os << "d";
        os << t.generator(term.generator).name << "(z)";
      }
    }
    os << "\n";
  }
  return os.str();
}

TransformedAction::TransformedAction(const Engine& engine, FieldTransform transform)
    : engine_(engine), transform_(std::move(transform)) {
  if (transform_.size() != engine.table().size()) throw Error("transform does not match the table");
  for (int g = 0; g < transform_.size(); ++g) {
    const int twx = engine.generator(g).twice_weight;
    int shift = 0;
    for (const auto& t : transform_.image(g)) {
      // weights are doubled to stay integral
      int s = t.generator < 0 ? 2 * t.z_power - twx
                              : engine.generator(t.generator).twice_weight - twx + 2 * (t.derivs + t.z_power);
      shift = std::max(shift, (s + 1) / 2);
    }
    shifts_.push_back(shift);
  }
}

State TransformedAction::apply(int generator, int index, const State& x) const {
  State out(x.ground_ptr());
  for (const auto& t : transform_.image(generator)) {
    if (t.generator < 0) {
      if (index == t.z_power - 1) out += x * t.coeff;
      continue;
    }
    // z^{-e} d^d Y(z) contributes ff(-n-1, d) Y_(n) at n = m - d - e
    const int n = index - t.derivs - t.z_power;
    Integer f = falling_factorial(-n - 1, t.derivs);
    if (f == 0) continue;
    out += engine_.apply(t.generator, n, x) * (t.coeff * RatFunc(Rational(f)));
  }
  return out;
}

TransformCheck check_transform(const Engine& engine, const FieldTransform& t, const std::vector<State>& tests, int lo,
                               int hi) {
  TransformedAction act(engine, t);
  const OpeTable& table = engine.table();
  TransformCheck report;
  for (int a = 0; a < table.size(); ++a) {
    for (int b = 0; b < table.size(); ++b) {
      const int bound = engine.pole_bound(a, b);
      std::vector<State> products;
      for (int j = 0; j <= bound; ++j) products.push_back(engine.product(a, j, b));
      for (int m = lo; m <= hi; ++m) {
        for (int n = lo; n <= hi; ++n) {
          for (std::size_t xi = 0; xi < tests.size(); ++xi) {
            const State& x = tests[xi];
            State lhs = act.apply(a, m, act.apply(b, n, x)) - act.apply(b, n, act.apply(a, m, x));
            State rhs(x.ground_ptr());
            for (int j = 0; j <= bound; ++j) {
              Integer c = binomial(m, j);
              if (c == 0 || products[j].is_zero()) continue;
              rhs += engine.act(products[j], m + n - j, x, &act) * RatFunc(Rational(c));
            }
            ++report.checks;
            if (!(lhs == rhs)) {
              std::ostringstream os;
              os << "[" << table.generator(a).name << "_(" << m << "), " << table.generator(b).name << "_(" << n
                 << ")] on test vector " << xi;
              report.failures.push_back(os.str());
            }
          }
        }
      }
    }
  }
  return report;
}

FieldTransform bp_spectral_flow(const RatFunc& k, int ell) {
  using namespace bp;
  const RatFunc kp = (k * 2 + 3) / RatFunc(3);
  const RatFunc l(ell);
  std::vector<FieldImage> images(4);
  images[J] = {{1, 0, 0, J}, {-kp * l, 1, 0, -1}};
  images[Gp] = {{1, ell, 0, Gp}};
  images[L] = {{1, 0, 0, L}, {-l, 1, 0, J}, {kp * RatFunc(ell * (ell + 1)) / RatFunc(2), 2, 0, -1}};
  images[Gm] = {{1, -ell, 0, Gm}};
  return FieldTransform(std::move(images));
}

FieldTransform bp_conjugation(const RatFunc& k) {
  using namespace bp;
  const RatFunc kp = (k * 2 + 3) / RatFunc(3);
  // on weight-shifted modes: G+_n -> G-_n, G-_n -> -G+_n, J_n -> -J_n + kappa' delta_{n,0}, L_n -> L_n + n J_n
  std::vector<FieldImage> images(4);
  images[J] = {{-1, 0, 0, J}, {kp, 1, 0, -1}};
  images[Gp] = {{1, -1, 0, Gm}};
  images[L] = {{1, 0, 0, L}, {-1, 0, 1, J}, {-1, 1, 0, J}};
  images[Gm] = {{-1, 1, 0, Gp}};
  return FieldTransform(std::move(images));
}

}  // namespace voa
