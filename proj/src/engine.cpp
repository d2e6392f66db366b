#include "voa/core/engine.hpp"

#include <functional>

#include "voa/error.hpp"

namespace voa {

namespace {

int floor_half(int twice) { return twice >= 0 ? twice / 2 : -((-twice + 1) / 2); }

RatFunc signed_binomial(long n, unsigned long i, bool negate) {
  Integer b = binomial(n, i);
  if (negate) b = -b;
  return RatFunc(Rational(b));
}

}  // namespace

Engine::Engine(OpeTable table) : table_(std::move(table)) {}

int Engine::twice_depth(const Monomial& m, const GroundVector& g) const {
  if (g.kind == GroundVector::Kind::one_dimensional) return 0;
  return table_.twice_weight(m);
}

int Engine::max_twice_depth(const State& s) const {
  int d = 0;
  for (const auto& [m, c] : s.terms()) d = std::max(d, twice_depth(m, s.ground()));
  return d;
}

bool Engine::creates(const Mode& a, const GroundVector& g) const {
  switch (g.kind) {
    case GroundVector::Kind::vacuum:
      return a.index < 0;
    case GroundVector::Kind::highest_weight:
      return 2 * a.index - generator(a.generator).twice_weight + 2 < 0;
    case GroundVector::Kind::one_dimensional:
      return false;
  }
  return false;
}

State Engine::on_ground(const Mode& a, const GroundPtr& g) const {
  State out(g);
  if (g->kind == GroundVector::Kind::vacuum) {
    if (a.index < 0) out.add_term({a}, 1);
    return out;
  }
  int shifted2 = 2 * a.index - generator(a.generator).twice_weight + 2;
  if (shifted2 < 0) {
    if (g->kind == GroundVector::Kind::highest_weight) out.add_term({a}, 1);
    return out;
  }
  if (shifted2 > 0) return out;
  auto it = g->eigenvalues.find(a.generator);
  if (it != g->eigenvalues.end()) {
    out.add_term({}, it->second);
  } else if (g->kind == GroundVector::Kind::highest_weight) {
    throw Error("no zero-mode eigenvalue given for " + generator(a.generator).name);
  }
  return out;
}

State Engine::apply(int gen, int index, const State& x) const {
  if (gen < 0 || gen >= table_.size()) throw Error("generator index out of range");
  Mode a{gen, index};
  State out(x.ground_ptr());
  for (const auto& [m, c] : x.terms()) {
    State r = apply_monomial(a, m, x.ground_ptr());
    r *= c;
    out += r;
  }
  return out;
}

State Engine::apply_monomial(const Mode& a, const Monomial& m, const GroundPtr& g) const {
  if (m.empty()) return on_ground(a, g);
  if (creates(a, *g) && !(m.front() < a)) {
    Monomial r;
    r.reserve(m.size() + 1);
    r.push_back(a);
    r.insert(r.end(), m.begin(), m.end());
    return State::monomial(std::move(r), g);
  }
  ApplyKey key{a, m, g};
  {
    std::lock_guard lock(mutex_);
    auto it = apply_cache_.find(key);
    if (it != apply_cache_.end()) return it->second;
  }
  const Mode& b = m.front();
  Monomial rest(m.begin() + 1, m.end());
  // a b R = b (a R) + [a, b] R
  State out = apply(b, apply_monomial(a, rest, g));
  State r = State::monomial(rest, g);
  for (const auto& t : mode_commutator(a, b)) {
    State v = act(t.field, t.index, r);
    v *= RatFunc(Rational(t.binomial));
    out += v;
  }
  std::lock_guard lock(mutex_);
  apply_cache_.emplace(std::move(key), out);
  return out;
}

State Engine::normal_order(const Monomial& raw, const GroundPtr& g) const {
  State s = State::ground(g);
  for (auto it = raw.rbegin(); it != raw.rend(); ++it) s = apply(*it, s);
  return s;
}

int Engine::pole_bound(int a, int b) const {
  return floor_half(generator(a).twice_weight + generator(b).twice_weight) - 1;
}

State Engine::product(int a, int j, int b) const {
  if (j < 0) throw Error("product() handles the singular part j >= 0 only");
  std::tuple<int, int, int> key{a, j, b};
  {
    std::lock_guard lock(mutex_);
    auto it = product_cache_.find(key);
    if (it != product_cache_.end()) return it->second;
  }
  State out;
  if (const auto* row = table_.entries(a, b)) {
    auto it = row->find(j);
    if (it != row->end()) out = it->second;
  } else if (const auto* rev = table_.entries(b, a)) {
    // a_(j) b = sum_i (-1)^{j+i+1} d^i/i! (b_(j+i) a)
    for (const auto& [jj, s] : *rev) {
      int i = jj - j;
      if (i < 0) continue;
      State d = s;
      for (int r = 0; r < i; ++r) d = derivative(d);
      RatFunc c(Rational(((j + i + 1) % 2 == 0 ? 1 : -1), factorial(i)));
      out += d * c;
    }
  } else {
    throw TableIncomplete("no OPE declared between " + generator(a).name + " and " + generator(b).name);
  }
  std::lock_guard lock(mutex_);
  product_cache_.emplace(key, out);
  return out;
}

std::vector<CommutatorTerm> Engine::mode_commutator(const Mode& a, const Mode& b) const {
  std::vector<CommutatorTerm> out;
  for (int j = 0; j <= pole_bound(a.generator, b.generator); ++j) {
    State f = product(a.generator, j, b.generator);
    if (f.is_zero()) continue;
    Integer c = binomial(a.index, j);
    if (c == 0) continue;
    out.push_back({c, std::move(f), a.index + b.index - j});
  }
  return out;
}

ModeExpression Engine::mode_expression(const std::vector<CommutatorTerm>& terms) const {
  ModeExpression out;
  auto add = [&out](Monomial m, int idx, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = out.try_emplace({std::move(m), idx}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  for (const auto& t : terms) {
    for (const auto& [m, c] : t.field.terms()) {
      RatFunc coeff = c * RatFunc(Rational(t.binomial));
      if (m.empty()) {
        if (t.index == -1) add({}, -1, coeff);
      } else if (m.size() == 1) {
        // (a_(-s-1) 1)_(p) = (-1)^s C(p, s) a_(p-s)
        int s = -m[0].index - 1;
        Integer b = binomial(t.index, s);
        if (s % 2) b = -b;
        add({Mode{m[0].generator, -1}}, t.index - s, coeff * RatFunc(Rational(b)));
      } else {
        add(m, t.index, coeff);
      }
    }
  }
  return out;
}

State Engine::apply_with(const ModeAction* action, int gen, int index, const State& x) const {
  return action ? action->apply(gen, index, x) : apply(gen, index, x);
}

State Engine::act(const State& u, int n, const State& x, const ModeAction* action) const {
  if (u.ground().kind != GroundVector::Kind::vacuum) throw Error("field state must lie in the vacuum module");
  State out(x.ground_ptr());
  for (const auto& [um, uc] : u.terms()) {
    for (const auto& [xm, xc] : x.terms()) {
      State r = act_monomial(um, n, xm, x.ground_ptr(), action);
      if (r.is_zero()) continue;
      r *= uc * xc;
      out += r;
    }
  }
  return out;
}

State Engine::act_state(const Monomial& u, int p, const State& x, const ModeAction* action) const {
  State out(x.ground_ptr());
  for (const auto& [xm, xc] : x.terms()) {
    State r = act_monomial(u, p, xm, x.ground_ptr(), action);
    r *= xc;
    out += r;
  }
  return out;
}

State Engine::act_monomial(const Monomial& u, int p, const Monomial& xm, const GroundPtr& g,
                           const ModeAction* action) const {
  if (u.empty()) {
    State out(g);
    if (p == -1) out.add_term(xm, 1);
    return out;
  }
  const Mode a = u.front();
  State x = State::monomial(xm, g);
  if (u.size() == 1) {
    // (a_(-s-1) 1)_(p) = (-1)^s C(p, s) a_(p-s)
    int s = -a.index - 1;
    Integer c = binomial(p, s);
    if (c == 0) return State(g);
    if (s % 2) c = -c;
    return apply_with(action, a.generator, p - s, x) * RatFunc(Rational(c));
  }
  ActKey key{u, p, xm, g};
  if (!action) {
    std::lock_guard lock(mutex_);
    auto it = act_cache_.find(key);
    if (it != act_cache_.end()) return it->second;
  }
  Monomial w(u.begin() + 1, u.end());
  const int n = a.index;
  const int dx = twice_depth(xm, *g);
  int shift_w = 0;
  if (action)
    for (const auto& md : w) shift_w += action->index_shift(md.generator);
  const int qmax_w = floor_half(table_.twice_weight(w) + dx - 2) + shift_w;
  const int imax_a = floor_half(generator(a.generator).twice_weight + dx - 2) + (action ? action->index_shift(a.generator) : 0);

  State out(g);
  // (a_(n) w)_(p) x = sum_i (-1)^i C(n,i) [ a_(n-i) w_(p+i) x - (-1)^n w_(n+p-i) a_(i) x ]
  for (int i = 0; p + i <= qmax_w; ++i) {
    State y = act_monomial(w, p + i, xm, g, action);
    if (y.is_zero()) continue;
    out += apply_with(action, a.generator, n - i, y) * signed_binomial(n, i, i % 2);
  }
  for (int i = 0; i <= imax_a; ++i) {
    State y = apply_with(action, a.generator, i, x);
    if (y.is_zero()) continue;
    bool negate = ((n % 2 != 0) + i) % 2 == 0;
    out += act_state(w, n + p - i, y, action) * signed_binomial(n, i, negate);
  }
  if (!action) {
    std::lock_guard lock(mutex_);
    act_cache_.emplace(std::move(key), out);
  }
  return out;
}

State Engine::derivative(const State& s) const {
  if (s.ground().kind != GroundVector::Kind::vacuum) throw Error("translation is defined on the vacuum module");
  State out;
  for (const auto& [m, c] : s.terms()) out += derivative_monomial(m) * c;
  return out;
}

State Engine::derivative_monomial(const Monomial& m) const {
  if (m.empty()) return State();
  const Mode& a = m.front();
  Monomial rest(m.begin() + 1, m.end());
  // [d, a_(n)] = -n a_(n-1)
  State out = apply(a.generator, a.index - 1, State::monomial(rest)) * RatFunc(-a.index);
  out += apply(a, derivative_monomial(rest));
  return out;
}

std::vector<Monomial> Engine::pbw_basis(int weight) const {
  std::vector<Monomial> out;
  Monomial cur;
  // modes are chosen generator by generator, each generator's modes with
  // non-increasing depth, so the result is already in normal form
  std::function<void(int, int, int)> rec = [&](int gen, int remaining2, int min_index) {
    if (remaining2 == 0) {
      out.push_back(cur);
      return;
    }
    if (gen >= table_.size()) return;
    int tw = generator(gen).twice_weight;
    for (int idx = min_index; idx <= -1; ++idx) {
      int cost = tw - 2 * idx - 2;
      if (cost > remaining2) continue;
      cur.push_back({gen, idx});
      rec(gen, remaining2 - cost, idx);
      cur.pop_back();
    }
    rec(gen + 1, remaining2, -(remaining2 + 2));
  };
  rec(0, 2 * weight, -(2 * weight + 2));
  return out;
}

std::vector<std::size_t> Engine::graded_dimension(int max_weight) const {
  std::vector<std::size_t> out;
  for (int n = 0; n <= max_weight; ++n) out.push_back(pbw_basis(n).size());
  return out;
}

}  // namespace voa
