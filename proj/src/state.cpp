#include "voa/core/state.hpp"

#include "voa/error.hpp"

namespace voa {

bool is_normal(const Monomial& m) {
  for (std::size_t i = 1; i < m.size(); ++i)
    if (m[i] < m[i - 1]) return false;
  return true;
}

GroundPtr vacuum_ground() {
  static const GroundPtr g = std::make_shared<GroundVector>();
  return g;
}

GroundPtr highest_weight_ground(std::map<int, RatFunc> eigenvalues) {
  auto g = std::make_shared<GroundVector>();
  g->kind = GroundVector::Kind::highest_weight;
  g->eigenvalues = std::move(eigenvalues);
  return g;
}

GroundPtr one_dimensional_ground(std::map<int, RatFunc> eigenvalues) {
  auto g = std::make_shared<GroundVector>();
  g->kind = GroundVector::Kind::one_dimensional;
  g->eigenvalues = std::move(eigenvalues);
  return g;
}

bool same_ground(const GroundPtr& a, const GroundPtr& b) { return a == b || *a == *b; }

State State::ground(GroundPtr g) {
  State s(std::move(g));
  s.terms_.emplace(Monomial{}, RatFunc(1));
  return s;
}

State State::monomial(Monomial m, GroundPtr g, RatFunc c) {
  if (!is_normal(m)) throw Error("monomial is not in PBW normal form");
  State s(std::move(g));
  if (!c.is_zero()) s.terms_.emplace(std::move(m), std::move(c));
  return s;
}

void State::add_term(const Monomial& m, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

RatFunc State::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? RatFunc() : it->second;
}

void State::adopt_ground(const State& o) {
  if (o.terms_.empty() || ground_ == o.ground_) return;
  if (terms_.empty()) {
    ground_ = o.ground_;
    return;
  }
  if (!same_ground(ground_, o.ground_)) throw Error("adding states built on different ground vectors");
}

State& State::operator+=(const State& o) {
  adopt_ground(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

State& State::operator-=(const State& o) {
  adopt_ground(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

State& State::operator*=(const RatFunc& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c == RatFunc(1)) return *this;
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

State State::operator-() const {
  State r = *this;
  for (auto& [m, x] : r.terms_) x = -x;
  return r;
}

bool State::operator==(const State& o) const {
  if (terms_ != o.terms_) return false;
  return terms_.empty() || same_ground(ground_, o.ground_);
}

State State::specialize(const Bindings& b) const {
  GroundPtr g = ground_;
  if (!ground_->eigenvalues.empty()) {
    auto ng = std::make_shared<GroundVector>(*ground_);
    for (auto& [gen, v] : ng->eigenvalues) v = v.specialize(b);
    g = ng;
  }
  State s(g);
  for (const auto& [m, c] : terms_) s.add_term(m, c.specialize(b));
  return s;
}

}  // namespace voa
