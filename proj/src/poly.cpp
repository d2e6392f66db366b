#include "voa/exact/poly.hpp"

#include <sstream>
#include <utility>

#include "voa/error.hpp"

namespace voa {

namespace {

constexpr std::array<std::string_view, kVarCount> kNames = {
    "k", "λ", "Δ", "w", "x", "t", "r", "r′", "s", "s′"};

Var var_at(std::size_t i) { return static_cast<Var>(i); }

}  // namespace

std::string_view var_name(Var v) { return kNames[static_cast<std::size_t>(v)]; }

std::optional<Var> var_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kVarCount; ++i)
    if (kNames[i] == name) return var_at(i);
  if (name == "lambda" || name == "l") return Var::lambda;
  if (name == "Delta" || name == "D") return Var::Delta;
  if (name == "rp" || name == "r'") return Var::r_prime;
  if (name == "sp" || name == "s'") return Var::s_prime;
  return std::nullopt;
}

unsigned Exponents::total() const {
  unsigned t = 0;
  for (auto x : e) t += x;
  return t;
}

bool Exponents::divides(const Exponents& o) const {
  for (std::size_t i = 0; i < kVarCount; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  unsigned ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb;
  return a.e < b.e;
}

Poly::Poly(long c) {
  if (c != 0) terms_.emplace(Exponents{}, Rational(c));
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Exponents{}, c);
}

Poly Poly::variable(Var v, unsigned power) {
  Exponents e;
  e[v] = static_cast<std::uint16_t>(power);
  return monomial(e, 1);
}

Poly Poly::monomial(const Exponents& e, const Rational& c) {
  Poly p;
  if (c != 0) p.terms_.emplace(e, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0);
}

Rational Poly::constant_value() const {
  auto it = terms_.find(Exponents{});
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Poly::contains(Var v) const { return degree(v) > 0; }

unsigned Poly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[v]);
  return d;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e;
      for (std::size_t i = 0; i < kVarCount; ++i) e.e[i] = ea.e[i] + eb.e[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

int Poly::compare(const Poly& o) const {
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  GrlexLess less;
  for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
    if (less(a->first, b->first)) return -1;
    if (less(b->first, a->first)) return 1;
    int c = cmp(a->second, b->second);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a != terms_.end()) return 1;
  if (b != o.terms_.end()) return -1;
  return 0;
}

std::map<unsigned, Poly> Poly::coefficients_in(Var v) const {
  std::map<unsigned, Poly> out;
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    unsigned d = rest[v];
    rest[v] = 0;
    out[d].add_term(rest, c);
  }
  return out;
}

Poly Poly::leading_coefficient_in(Var v) const {
  unsigned d = degree(v);
  Poly out;
  for (const auto& [e, c] : terms_) {
    if (e[v] != d) continue;
    Exponents rest = e;
    rest[v] = 0;
    out.add_term(rest, c);
  }
  return out;
}

Poly Poly::substitute(const Bindings& b) const {
  if (b.empty()) return *this;
  Poly out;
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    Rational coeff = c;
    for (const auto& [v, val] : b) {
      unsigned d = rest[v];
      if (d == 0) continue;
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), val.get_num_mpz_t(), d);
      mpz_pow_ui(p.get_den_mpz_t(), val.get_den_mpz_t(), d);
      coeff *= p;
      rest[v] = 0;
    }
    out.add_term(rest, coeff);
  }
  return out;
}

std::optional<Rational> Poly::evaluate(const Bindings& b) const {
  Poly p = substitute(b);
  if (!p.is_constant()) return std::nullopt;
  return p.constant_value();
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < kVarCount; ++i) {
      if (e.e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += kNames[i];
      if (e.e[i] > 1) mono += '^' + std::to_string(e.e[i]);
    }
    std::string coeff;
    if (mono.empty()) {
      coeff = c.get_str();
    } else if (c == 1) {
      coeff = mono;
    } else if (c == -1) {
      coeff = "-" + mono;
    } else {
      coeff = c.get_str() + "*" + mono;
    }
    if (!first && coeff.front() != '-') os << '+';
    os << coeff;
    first = false;
  }
  return os.str();
}

Rational content(const Poly& p) {
  if (p.is_zero()) return 1;
  Integer g = 0, l = 1;
  for (const auto& [e, c] : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r(g, l);
  r.canonicalize();
  if (p.leading_coefficient() < 0) r = -r;
  return r;
}

Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  Rational c = content(p);
  if (c == 1) return p;
  return p * Rational(1 / c);
}

Poly divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (b.is_constant()) return a * Rational(1 / b.constant_value());
  Poly q, r = a;
  const Exponents& lb = b.leading_exponents();
  const Rational& cb = b.leading_coefficient();
  while (!r.is_zero()) {
    const Exponents& lr = r.leading_exponents();
    if (!lb.divides(lr)) throw Error("inexact polynomial division");
    Exponents e;
    for (std::size_t i = 0; i < kVarCount; ++i) e.e[i] = lr.e[i] - lb.e[i];
    Poly t = Poly::monomial(e, r.leading_coefficient() / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

namespace {

std::optional<Var> first_variable(const Poly& a, const Poly& b) {
  for (std::size_t i = 0; i < kVarCount; ++i) {
    Var v = var_at(i);
    if (a.contains(v) || b.contains(v)) return v;
  }
  return std::nullopt;
}

Poly content_in(const Poly& p, Var v) {
  Poly g;
  for (auto& [d, c] : p.coefficients_in(v)) {
    g = gcd(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

Poly pseudo_remainder(Poly r, const Poly& g, Var v) {
  unsigned dg = g.degree(v);
  Poly lg = g.leading_coefficient_in(v);
  while (!r.is_zero() && r.degree(v) >= dg) {
    unsigned dr = r.degree(v);
    Poly lr = r.leading_coefficient_in(v);
    r = lg * r - lr * Poly::variable(v, dr - dg) * g;
    r = primitive_part(r);
  }
  return r;
}

Poly primitive_in(const Poly& p, Var v) { return primitive_part(divide_exact(p, content_in(p, v))); }

// gcd of two polynomials that are primitive with respect to v
Poly prs_gcd(Poly f, Poly g, Var v) {
  if (f.degree(v) < g.degree(v)) std::swap(f, g);
  for (;;) {
    Poly r = pseudo_remainder(f, g, v);
    if (r.is_zero()) return primitive_in(g, v);
    if (r.degree(v) == 0) return Poly(1);
    f = std::move(g);
    g = primitive_in(r, v);
  }
}

// Specialises every variable except v at small integers where the leading
// coefficients in v survive. If the univariate images are coprime for each
// shared variable, so are a and b: a common factor of positive degree in v
// would survive the specialisation with its degree intact.
bool certified_coprime(const Poly& a, const Poly& b) {
  for (std::size_t i = 0; i < kVarCount; ++i) {
    Var v = var_at(i);
    if (!a.contains(v) || !b.contains(v)) continue;
    Poly la = a.leading_coefficient_in(v), lb = b.leading_coefficient_in(v);
    bool found = false;
    for (long seed = 0; seed < 16 && !found; ++seed) {
      Bindings at;
      for (std::size_t j = 0; j < kVarCount; ++j)
        if (j != i) at[var_at(j)] = Rational(2 + static_cast<long>(j) * 3 + seed * 7, 1 + seed % 3);
      if (la.substitute(at).is_zero() || lb.substitute(at).is_zero()) continue;
      found = true;
      if (prs_gcd(a.substitute(at), b.substitute(at), v).degree(v) > 0) return false;
    }
    if (!found) return false;
  }
  return true;
}

Var cheapest_shared_variable(const Poly& a, const Poly& b) {
  std::optional<Var> best;
  unsigned best_deg = 0;
  for (std::size_t i = 0; i < kVarCount; ++i) {
    Var v = var_at(i);
    if (!a.contains(v) || !b.contains(v)) continue;
    unsigned d = std::max(a.degree(v), b.degree(v));
    if (!best || d < best_deg) best = v, best_deg = d;
  }
  return *best;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  if (a.is_constant() || b.is_constant()) return Poly(1);
  Var v = *first_variable(a, b);
  if (!a.contains(v)) return gcd(a, content_in(b, v));
  if (!b.contains(v)) return gcd(content_in(a, v), b);
  if (certified_coprime(a, b)) return Poly(1);
  v = cheapest_shared_variable(a, b);
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly g = prs_gcd(divide_exact(a, ca), divide_exact(b, cb), v);
  return primitive_part(gcd(ca, cb) * g);
}

}  // namespace voa
