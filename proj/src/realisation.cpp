#include "voa/realisation.hpp"

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>

#include "voa/error.hpp"
#include "voa/presentations.hpp"
#include "voa/qseries.hpp"

namespace voa {

// ---- TensorState ----

TensorState TensorState::product(const State& left, const LatticeState& right) {
  TensorState out(left.ground_ptr());
  for (const auto& [m, a] : left.terms())
    for (const auto& [k, b] : right.terms()) out.add_term({m, k}, a * b);
  return out;
}

void TensorState::add_term(const TensorKey& key, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

RatFunc TensorState::coefficient(const TensorKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? RatFunc(0) : it->second;
}

void TensorState::adopt_ground(const TensorState& o) {
  if (o.terms_.empty() || ground_ == o.ground_) return;
  if (terms_.empty()) {
    ground_ = o.ground_;
    return;
  }
  if (!same_ground(ground_, o.ground_)) throw Error("adding tensor states built on different ground vectors");
}

TensorState& TensorState::operator+=(const TensorState& o) {
  adopt_ground(o);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TensorState& TensorState::operator-=(const TensorState& o) {
  adopt_ground(o);
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

TensorState& TensorState::operator*=(const RatFunc& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

bool TensorState::operator==(const TensorState& o) const {
  if (terms_ != o.terms_) return false;
  return terms_.empty() || same_ground(ground_, o.ground_);
}

TensorState TensorState::specialize(const Bindings& b) const {
  State g = State::ground(ground_).specialize(b);
  TensorState out(g.ground_ptr());
  for (const auto& [k, c] : terms_) {
    LatticeState r = LatticeState::term(k.right).specialize(b);
    for (const auto& [rk, rc] : r.terms()) out.add_term({k.left, rk}, c.specialize(b) * rc);
  }
  return out;
}

// ---- TensorEngine ----

TensorEngine::TensorEngine(OpeTable left, RatFunc k) : left_(std::move(left)), right_(std::move(k)) {}

TensorState TensorEngine::act(const TensorState& u, int n, const TensorState& x, int ell) const {
  TensorState out(x.ground_ptr());
  // group the field by its left factor so each left product is computed once per p
  std::map<Monomial, LatticeState> ufields;
  for (const auto& [k, c] : u.terms()) {
    if (u.ground().kind != GroundVector::Kind::vacuum) throw Error("field state must lie in the vacuum module");
    ufields[k.left].add_term(k.right, c);
  }
  std::map<Monomial, LatticeState> xvecs;
  for (const auto& [k, c] : x.terms()) xvecs[k.left].add_term(k.right, c);

  for (const auto& [ul, ur] : ufields) {
    const State uleft = State::monomial(ul);
    const int tw_u = left_.table().twice_weight(ul);
    for (const auto& [xl, xr] : xvecs) {
      const State xleft = State::monomial(xl, x.ground_ptr());
      // u_(p) x = 0 once p exceeds wt(u) + depth(x) - 1
      const int twice = tw_u + left_.twice_depth(xl, x.ground()) - 2;
      const int pmax = twice >= 0 ? twice / 2 : -((-twice + 1) / 2);
      const long qmax = right_.mode_bound(ur, xr, ell);
      for (long p = n - 1 - qmax; p <= pmax; ++p) {
        State l = left_.act(uleft, static_cast<int>(p), xleft);
        if (l.is_zero()) continue;
        LatticeState r = right_.act(ur, static_cast<int>(n - 1 - p), xr, ell);
        if (r.is_zero()) continue;
        out += TensorState::product(l, r);
      }
    }
  }
  return out;
}

TensorState TensorEngine::derivative(const TensorState& s) const {
  TensorState out(s.ground_ptr());
  for (const auto& [k, c] : s.terms()) {
    State l = State::monomial(k.left, s.ground_ptr());
    LatticeState r = LatticeState::term(k.right);
    out += TensorState::product(left_.derivative(l), r) * c;
    out += TensorState::product(l, right_.derivative(r)) * c;
  }
  return out;
}

std::string TensorEngine::render(const TensorState& s) const {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    if (!(c == RatFunc(1))) out += "(" + c.to_string() + ")*";
    out += left_.table().render(State::monomial(k.left, s.ground_ptr())) + " (x) " +
           right_.render(LatticeState::term(k.right));
  }
  return out;
}

// ---- Realisation ----

Realisation::Realisation(const RatFunc& k)
    : critical_(is_critical(k)),
      k_(k),
      source_(critical_ ? bp_critical_table() : bp_table(k)),
      target_(critical_ ? center_table() : zam_table(k), k) {
  const LatticeEngine& pi = target_.right();
  const Engine& left = target_.left();
  const HeisVector i = pi.i();
  const LatticeState em = LatticeState::exponential({0, -1});
  const State one = State::vacuum();
  // i_(-1)^3, i_(-2) i_(-1), i_(-3) on e^{-c}
  const LatticeState i111 = pi.create(i, {1, 1, 1}, em), i21 = pi.create(i, {2, 1}, em), i3 = pi.create(i, {3}, em);
  const LatticeState i1 = pi.create(i, {1}, em);

  images_.resize(4);
  images_[bp::Gp] = TensorState::product(one, LatticeState::exponential({0, 1}));
  images_[bp::J] = TensorState::product(one, pi.create(pi.j(), {1}, LatticeState::vacuum()));
  if (critical_) {
    const State s2 = State::monomial({{center::S2, -1}}), s3 = State::monomial({{center::S3, -1}});
    images_[crit::S] = TensorState::product(s2, LatticeState::vacuum());
    images_[crit::Gm] = TensorState::product(s3 - left.derivative(s2) * RatFunc(Rational(1, 2)), em) +
                        TensorState::product(s2, i1) -
                        TensorState::product(one, i111 - i21 * RatFunc(3) + i3 * RatFunc(2));
  } else {
    const State T = State::monomial({{zam::T, -1}}), W = State::monomial({{zam::W, -1}});
    images_[bp::L] = TensorState::product(T, LatticeState::vacuum()) + TensorState::product(one, pi.conformal_vector());
    const RatFunc k2 = k + 2, k3 = k + 3;
    images_[bp::Gm] = TensorState::product(W + left.derivative(T) * (k2 * k3 / RatFunc(2)), em) +
                      TensorState::product(T * k3, i1) -
                      TensorState::product(one, i111 + i21 * (k2 * 3) + i3 * (k2 * k2 * 2));
  }
}

TensorState Realisation::phi(const State& s) const {
  if (s.ground().kind != GroundVector::Kind::vacuum) throw Error("phi is defined on the vacuum module");
  TensorState out;
  for (const auto& [m, c] : s.terms()) {
    TensorState img;
    {
      std::lock_guard lock(mutex_);
      auto it = cache_.find(m);
      if (it != cache_.end()) img = it->second;
    }
    if (img.is_zero() && !m.empty()) {
      img = TensorState::vacuum();
      for (auto it = m.rbegin(); it != m.rend(); ++it) img = target_.act(images_.at(it->generator), it->index, img);
      std::lock_guard lock(mutex_);
      cache_.emplace(m, img);
    } else if (m.empty()) {
      img = TensorState::vacuum();
    }
    out += img * c;
  }
  return out;
}

// ---- verification ----

int default_threads() {
  if (const char* env = std::getenv("VOA_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

namespace {

// Runs task(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& task) {
  if (threads <= 0) threads = default_threads();
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(threads));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<ProductCheck> verify_homomorphism(const Realisation& r, int threads) {
  const Engine& src = r.source();
  const OpeTable& t = src.table();
  struct Task {
    int a, b, j;
  };
  std::vector<Task> tasks;
  for (int a = 0; a < t.size(); ++a)
    for (int b = 0; b < t.size(); ++b) {
      // a_(j) b has weight wt(a) + wt(b) - j - 1, so j < wt(a) + wt(b)
      const int jmax = (t.generator(a).twice_weight + t.generator(b).twice_weight) / 2 - 1;
      for (int j = 0; j <= jmax; ++j) tasks.push_back({a, b, j});
    }
  std::vector<ProductCheck> out(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t idx) {
    const auto [a, b, j] = tasks[idx];
    State prod = j <= src.pole_bound(a, b) ? src.product(a, j, b) : State();
    TensorState expected = r.phi(prod);
    TensorState computed = r.target().act(r.generator_image(a), j, r.generator_image(b));
    ProductCheck& c = out[idx];
    c.left = t.generator(a).name;
    c.right = t.generator(b).name;
    c.order = j;
    c.pass = expected == computed;
    c.expected = r.target().render(expected);
    c.computed = r.target().render(computed);
  });
  return out;
}

std::size_t matrix_rank(std::vector<std::map<std::size_t, Rational>> rows) {
  std::map<std::size_t, std::map<std::size_t, Rational>> pivots;  // leading column -> row with leading 1
  for (auto& row : rows) {
    while (!row.empty()) {
      auto [col, lead] = *row.begin();
      auto it = pivots.find(col);
      if (it == pivots.end()) {
        const Rational inv = 1 / lead;
        for (auto& [c, v] : row) v *= inv;
        pivots.emplace(col, std::move(row));
        break;
      }
      const Rational f = lead;
      for (const auto& [c, v] : it->second) {
        Rational nv = row[c] - f * v;
        if (nv == 0) row.erase(c);
        else row[c] = nv;
      }
    }
  }
  return pivots.size();
}

std::vector<std::size_t> bp_expected_dimensions(int max_weight) {
  const std::vector<Rational>& g = QSeries::eta_power(-4, max_weight).coeffs;
  std::vector<std::size_t> out;
  for (int n = 0; n <= max_weight; ++n) {
    // L and G- have no creating mode of weight one, hence the (1-q)^2
    Rational h = g[n] - (n >= 1 ? 2 * g[n - 1] : Rational(0)) + (n >= 2 ? g[n - 2] : Rational(0));
    out.push_back(h.get_num().get_ui());
  }
  return out;
}

std::vector<InjectivityRow> verify_injectivity(int max_weight, const std::vector<Rational>& levels, int threads) {
  const std::vector<std::size_t> expected = bp_expected_dimensions(max_weight);
  std::vector<InjectivityRow> out;
  for (const Rational& k : levels) {
    if (is_critical(RatFunc(k))) throw CriticalLevel();
    const Realisation r{RatFunc(k)};
    for (int w = 0; w <= max_weight; ++w) {
      const std::vector<Monomial> basis = r.source().pbw_basis(w);
      std::vector<std::map<std::pair<Monomial, ExpBasisKey>, Rational>> images(basis.size());
      parallel_for(basis.size(), threads, [&](std::size_t i) {
        TensorState img = r.phi(State::monomial(basis[i]));
        // express the lattice factor in the exponential-mode basis
        std::map<Monomial, LatticeState> by_left;
        for (const auto& [key, c] : img.terms()) by_left[key.left].add_term(key.right, c);
        for (const auto& [left, right] : by_left)
          for (const auto& [ek, ec] : r.target().right().to_exp_basis(right)) {
            auto v = ec.constant_value();
            if (!v) throw Error("image coefficient is not a number at a rational level");
            images[i][{left, ek}] += *v;
          }
      });
      std::map<std::pair<Monomial, ExpBasisKey>, std::size_t> columns;
      std::vector<std::map<std::size_t, Rational>> rows;
      for (const auto& img : images) {
        std::map<std::size_t, Rational> row;
        for (const auto& [key, v] : img) {
          if (v == 0) continue;
          auto [it, inserted] = columns.try_emplace(key, columns.size());
          row[it->second] = v;
        }
        rows.push_back(std::move(row));
      }
      InjectivityRow row;
      row.level = k;
      row.weight = w;
      row.monomials = basis.size();
      row.rank = matrix_rank(std::move(rows));
      row.expected = expected[w];
      out.push_back(row);
    }
  }
  return out;
}

std::vector<FlowCompatCheck> spectral_flow_compat(const Realisation& r, int ell, int lo, int hi) {
  if (r.critical()) throw CriticalLevel();
  const TensorEngine& te = r.target();
  const LatticeEngine& pi = te.right();
  const FieldTransform sigma = bp_spectral_flow(r.level(), ell);
  const RatFunc lam = RatFunc::var(Var::lambda);
  const GroundPtr hw = highest_weight_ground({{zam::T, RatFunc::var(Var::Delta)}, {zam::W, RatFunc::var(Var::w)}});
  const LatticeState top = LatticeState::exponential({-1, lam});
  const std::vector<TensorState> tests{
      TensorState::vacuum(),
      TensorState::product(State::vacuum(), LatticeState::exponential({0, 1})),
      TensorState::product(State::ground(hw), top),
      TensorState::product(State::monomial({{zam::T, -1}}, hw), pi.create(pi.j(), {1}, top)),
  };
  std::vector<FlowCompatCheck> out;
  const OpeTable& t = r.source().table();
  for (int g = 0; g < t.size(); ++g) {
    for (int m = lo; m <= hi; ++m) {
      for (std::size_t v = 0; v < tests.size(); ++v) {
        const TensorState& x = tests[v];
        TensorState lhs(x.ground_ptr());
        for (const auto& term : sigma.image(g)) {
          if (term.generator < 0) {
            if (m == term.z_power - 1) lhs += x * term.coeff;
            continue;
          }
          const int n = m - term.derivs - term.z_power;
          Integer f = falling_factorial(-n - 1, term.derivs);
          if (f == 0) continue;
          lhs += te.act(r.generator_image(term.generator), n, x) * (term.coeff * RatFunc(Rational(f)));
        }
        TensorState rhs = te.act(r.generator_image(g), m, x, ell);
        out.push_back({t.generator(g).name, m, v, lhs == rhs});
      }
    }
  }
  return out;
}

}  // namespace voa
