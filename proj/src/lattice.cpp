#include "voa/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>

#include <sstream>

#include "voa/core/partition.hpp"
#include "voa/error.hpp"

namespace voa {

namespace {

void insert_part(std::vector<int>& parts, int n) {
  auto it = std::upper_bound(parts.begin(), parts.end(), n, std::greater<int>());
  parts.insert(it, n);
}

// Removes one copy of n; returns the multiplicity before removal.
int remove_part(std::vector<int>& parts, int n) {
  auto [lo, hi] = std::equal_range(parts.begin(), parts.end(), n, std::greater<int>());
  int mult = static_cast<int>(hi - lo);
  if (mult) parts.erase(lo);
  return mult;
}

std::vector<int> merge_parts(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), std::greater<int>());
  return out;
}

std::optional<long> integer_value(const RatFunc& f) {
  auto v = f.constant_value();
  if (!v || !is_integer(*v) || !v->get_num().fits_slong_p()) return std::nullopt;
  return v->get_num().get_si();
}

std::string render_parts(char name, const std::vector<int>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    out += name;
    out += "(" + std::to_string(-parts[i]) + ")";
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

}  // namespace

HeisVector HeisVector::j(const RatFunc& k) {
  RatFunc kappa = (k + 3) / RatFunc(3);
  return b() + c() * kappa;
}

HeisVector HeisVector::i(const RatFunc& k) {
  RatFunc kappa = (k + 3) / RatFunc(3);
  return a() + c() * (-kappa);
}

RatFunc pairing(const HeisVector& x, const HeisVector& y) { return x.alpha * y.alpha - x.beta * y.beta; }

int FockMonomial::degree() const {
  int d = 0;
  for (int p : j_parts) d += p;
  for (int p : c_parts) d += p;
  return d;
}

LatticeState LatticeState::exponential(ExpLabel label, RatFunc c) { return term({std::move(label), {}}, std::move(c)); }

LatticeState LatticeState::term(LatticeKey key, RatFunc c) {
  LatticeState s;
  s.add_term(key, c);
  return s;
}

void LatticeState::add_term(const LatticeKey& key, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

RatFunc LatticeState::coefficient(const LatticeKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? RatFunc(0) : it->second;
}

LatticeState& LatticeState::operator+=(const LatticeState& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

LatticeState& LatticeState::operator-=(const LatticeState& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

LatticeState& LatticeState::operator*=(const RatFunc& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

LatticeState LatticeState::specialize(const Bindings& b) const {
  LatticeState out;
  for (const auto& [k, c] : terms_) {
    LatticeKey key = k;
    key.label.mu = k.label.mu.specialize(b);
    out.add_term(key, c.specialize(b));
  }
  return out;
}

LatticeEngine::LatticeEngine(RatFunc k) : k_(std::move(k)), kp_((k_ * 2 + 3) / RatFunc(3)) {}

std::pair<RatFunc, RatFunc> LatticeEngine::jc_coordinates(const HeisVector& h) const {
  // a = j + (1 - kappa) c, b = j - kappa c
  RatFunc kappa = (k_ + 3) / RatFunc(3);
  return {h.alpha + h.beta, h.alpha * (RatFunc(1) - kappa) - h.beta * kappa};
}

LatticeState LatticeEngine::h_mode(const HeisVector& h, int n, const LatticeState& v, int ell) const {
  auto [x, y] = jc_coordinates(h);
  return h_mode_xy(x, y, n, v, ell);
}

LatticeState LatticeEngine::h_mode_xy(const RatFunc& x, const RatFunc& y, int n, const LatticeState& v, int ell) const {
  LatticeState out;
  if (n < 0) {
    for (const auto& [key, c] : v.terms()) {
      if (!x.is_zero()) {
        LatticeKey k2 = key;
        insert_part(k2.fock.j_parts, -n);
        out.add_term(k2, c * x);
      }
      if (!y.is_zero()) {
        LatticeKey k2 = key;
        insert_part(k2.fock.c_parts, -n);
        out.add_term(k2, c * y);
      }
    }
    return out;
  }
  if (n == 0) {
    // <h, r j + mu c> with h = x j + y c
    RatFunc flow = ell ? (x * kp_ + y) * RatFunc(ell) : RatFunc(0);
    for (const auto& [key, c] : v.terms()) {
      RatFunc r(key.label.r);
      RatFunc ev = x * (r * kp_ + key.label.mu) + y * r - flow;
      out.add_term(key, c * ev);
    }
    return out;
  }
  // n (<h,j> d/dj_{-n} + <h,c> d/dc_{-n})
  RatFunc hj = x * kp_ + y, hc = x;
  for (const auto& [key, c] : v.terms()) {
    if (!hj.is_zero()) {
      LatticeKey k2 = key;
      int mult = remove_part(k2.fock.j_parts, n);
      if (mult) out.add_term(k2, c * hj * RatFunc(n * mult));
    }
    if (!hc.is_zero()) {
      LatticeKey k2 = key;
      int mult = remove_part(k2.fock.c_parts, n);
      if (mult) out.add_term(k2, c * hc * RatFunc(n * mult));
    }
  }
  return out;
}

const std::map<std::vector<int>, Rational>& LatticeEngine::schur_terms(int m, int p) const {
  {
    std::lock_guard lock(mutex_);
    auto it = schur_cache_.find({m, p});
    if (it != schur_cache_.end()) return it->second;
  }
  std::map<std::vector<int>, Rational> out;
  if (p == 0) {
    out[{}] = 1;
  } else {
    // p S_p = sum_l m c_(-l) S_{p-l}
    for (int l = 1; l <= p; ++l) {
      for (const auto& [parts, c] : schur_terms(m, p - l)) {
        std::vector<int> np = parts;
        insert_part(np, l);
        out[np] += c * Rational(m, p);
      }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  }
  std::lock_guard lock(mutex_);
  return schur_cache_.emplace(std::make_pair(m, p), std::move(out)).first->second;
}

LatticeState LatticeEngine::schur(int m) const {
  if (m < 0) throw Error("Schur function index must be non-negative");
  LatticeState out;
  for (const auto& [parts, c] : schur_terms(1, m)) out.add_term({{0, 0}, {{}, parts}}, RatFunc(c));
  return out;
}

LatticeState LatticeEngine::exp_mode(int m, int q, const LatticeState& v, int ell) const {
  q -= ell * m;
  LatticeState out;
  if (m == 0) {
    if (q == -1) out = v;
    return out;
  }
  for (const auto& [key, coeff] : v.terms()) {
    Rational mr = key.label.r * m;
    if (!is_integer(mr)) throw Unsupported("exponential modes on a twisted sector");
    long shift = mr.get_num().get_si();
    // E+ replaces j_(-l) by j_(-l) - m z^{-l}; enumerate how many copies of each part are removed
    std::vector<std::pair<int, int>> mults;
    for (int p : key.fock.j_parts) {
      if (!mults.empty() && mults.back().first == p) ++mults.back().second;
      else mults.push_back({p, 1});
    }
    ExpLabel label{key.label.r, key.label.mu + RatFunc(m)};
    std::vector<int> kept;
    std::function<void(std::size_t, long, Rational)> rec = [&](std::size_t idx, long d, Rational c) {
      if (idx == mults.size()) {
        long p = d - q - 1 - shift;
        if (p < 0) return;
        for (const auto& [cparts, s] : schur_terms(m, static_cast<int>(p))) {
          LatticeKey k2{label, {kept, merge_parts(key.fock.c_parts, cparts)}};
          out.add_term(k2, coeff * RatFunc(c * s));
        }
        return;
      }
      auto [part, mult] = mults[idx];
      for (int t = 0; t <= mult; ++t) {
        for (int r = 0; r < mult - t; ++r) kept.push_back(part);
        Rational ct = c * Rational(binomial(mult, t));
        for (int r = 0; r < t; ++r) ct *= -m;
        rec(idx + 1, d + static_cast<long>(t) * part, ct);
        kept.resize(kept.size() - (mult - t));
      }
    };
    rec(0, 0, Rational(1));
  }
  return out;
}

LatticeState LatticeEngine::create(const HeisVector& h, std::vector<int> depths, const LatticeState& v) const {
  LatticeState out = v;
  for (auto it = depths.rbegin(); it != depths.rend(); ++it) out = h_mode(h, -*it, out);
  return out;
}

LatticeState LatticeEngine::act(const LatticeState& u, int n, const LatticeState& x, int ell) const {
  LatticeState out;
  for (const auto& [uk, uc] : u.terms()) {
    if (uk.label.r != 0 || !integer_value(uk.label.mu)) throw Error("field state must lie in the vacuum module");
    LatticeState r = act_state(uk, n, x, ell);
    r *= uc;
    out += r;
  }
  return out;
}

long LatticeEngine::mode_bound(const LatticeState& u, const LatticeState& x, int ell) const {
  long out = std::numeric_limits<long>::min();
  for (const auto& [uk, uc] : u.terms()) {
    auto m = integer_value(uk.label.mu);
    if (uk.label.r != 0 || !m) throw Error("field state must lie in the vacuum module");
    for (const auto& [xk, xc] : x.terms()) {
      Rational mr = xk.label.r * Rational(*m);
      if (!is_integer(mr)) throw Unsupported("exponential modes on a twisted sector");
      out = std::max(out, xk.fock.degree() + uk.fock.degree() - 1 - mr.get_num().get_si() + static_cast<long>(ell) * *m);
    }
  }
  return out;
}

LatticeState LatticeEngine::act_state(const LatticeKey& u, int p, const LatticeState& x, int ell) const {
  LatticeState out;
  for (const auto& [xk, xc] : x.terms()) {
    LatticeState r = act_monomial(u, p, xk, ell);
    r *= xc;
    out += r;
  }
  return out;
}

LatticeState LatticeEngine::act_monomial(const LatticeKey& u, int p, const LatticeKey& xk, int ell) const {
  const int m = static_cast<int>(*integer_value(u.label.mu));
  const LatticeState x = LatticeState::term(xk);
  if (u.fock.j_parts.empty() && u.fock.c_parts.empty()) return exp_mode(m, p, x, ell);

  // peel the leftmost Heisenberg mode: j modes first, then c modes
  RatFunc hx = 0, hy = 0;
  LatticeKey w = u;
  int s;
  if (!w.fock.j_parts.empty()) {
    hx = 1;
    s = w.fock.j_parts.front();
    w.fock.j_parts.erase(w.fock.j_parts.begin());
  } else {
    hy = 1;
    s = w.fock.c_parts.front();
    w.fock.c_parts.erase(w.fock.c_parts.begin());
  }
  const bool single = m == 0 && w.fock.j_parts.empty() && w.fock.c_parts.empty();
  if (single) {
    // (h_(-s) 1)_(p) = (-1)^{s-1} C(p, s-1) h_(p-s+1)
    Integer c = binomial(p, s - 1);
    if (c == 0) return {};
    if ((s - 1) % 2) c = -c;
    return h_mode_xy(hx, hy, p - s + 1, x, ell) * RatFunc(Rational(c));
  }

  auto key = std::make_tuple(u, p, xk);
  if (!ell) {
    std::lock_guard lock(mutex_);
    auto it = act_cache_.find(key);
    if (it != act_cache_.end()) return it->second;
  }
  const int n = -s;
  const int dx = xk.fock.degree();
  Rational mr = xk.label.r * m;
  if (!is_integer(mr)) throw Unsupported("exponential modes on a twisted sector");
  // w_(q) x vanishes unless the output Fock degree dx + N_w - q - 1 - m r is non-negative
  const long qmax = dx + w.fock.degree() - 1 - mr.get_num().get_si() + static_cast<long>(ell) * m;
  int imax = 0;
  if (!xk.fock.j_parts.empty()) imax = std::max(imax, xk.fock.j_parts.front());
  if (!xk.fock.c_parts.empty()) imax = std::max(imax, xk.fock.c_parts.front());

  LatticeState out;
  // (h_(n) w)_(p) x = sum_i (-1)^i C(n,i) [ h_(n-i) w_(p+i) x - (-1)^n w_(n+p-i) h_(i) x ]
  for (int i = 0; p + i <= qmax; ++i) {
    LatticeState y = act_monomial(w, p + i, xk, ell);
    if (y.is_zero()) continue;
    Integer b = binomial(n, i);
    if (i % 2) b = -b;
    out += h_mode_xy(hx, hy, n - i, y, ell) * RatFunc(Rational(b));
  }
  for (int i = 0; i <= imax; ++i) {
    LatticeState y = h_mode_xy(hx, hy, i, x, ell);
    if (y.is_zero()) continue;
    Integer b = binomial(n, i);
    if (((n % 2 != 0) + i) % 2 == 0) b = -b;
    out += act_state(w, n + p - i, y, ell) * RatFunc(Rational(b));
  }
  if (!ell) {
    std::lock_guard lock(mutex_);
    act_cache_.emplace(std::move(key), out);
  }
  return out;
}

LatticeState LatticeEngine::derivative(const LatticeState& s) const {
  LatticeState out;
  for (const auto& [key, c] : s.terms()) {
    if (key.label.r != 0) throw Error("translation is defined on the vacuum module");
    // Leibniz over the creation modes: h_(-n) -> n h_(-n-1)
    for (std::size_t i = 0; i < key.fock.j_parts.size(); ++i) {
      if (i > 0 && key.fock.j_parts[i] == key.fock.j_parts[i - 1]) continue;
      LatticeKey k2 = key;
      int part = key.fock.j_parts[i];
      int mult = remove_part(k2.fock.j_parts, part);
      insert_part(k2.fock.j_parts, part + 1);
      out.add_term(k2, c * RatFunc(part * mult));
    }
    for (std::size_t i = 0; i < key.fock.c_parts.size(); ++i) {
      if (i > 0 && key.fock.c_parts[i] == key.fock.c_parts[i - 1]) continue;
      LatticeKey k2 = key;
      int part = key.fock.c_parts[i];
      int mult = remove_part(k2.fock.c_parts, part);
      insert_part(k2.fock.c_parts, part + 1);
      out.add_term(k2, c * RatFunc(part * mult));
    }
    // d e^{mc} = m c_(-1) e^{mc}
    if (!key.label.mu.is_zero()) {
      LatticeKey k2 = key;
      insert_part(k2.fock.c_parts, 1);
      out.add_term(k2, c * key.label.mu);
    }
  }
  return out;
}

LatticeState LatticeEngine::conformal_vector() const {
  // t = 1/2 c_(-1) d_(-1) + (2k+3)/3 c_(-2) - 1/2 d_(-2), written in j and c modes
  LatticeState t;
  ExpLabel zero{0, 0};
  t.add_term({zero, {{1}, {1}}}, 1);
  t.add_term({zero, {{}, {1, 1}}}, -kp_ / RatFunc(2));
  t.add_term({zero, {{2}, {}}}, -1);
  t.add_term({zero, {{}, {2}}}, kp_ * RatFunc(Rational(3, 2)));
  return t;
}

RatFunc LatticeEngine::exponent_weight(const ExpLabel& label) const {
  RatFunc r(label.r);
  return kp_ * r * (r - 1) / RatFunc(2) + label.mu * (r + 1);
}

RatFunc LatticeEngine::conformal_weight(const LatticeState& v) const {
  std::optional<RatFunc> w;
  for (const auto& [key, c] : v.terms()) {
    RatFunc x = exponent_weight(key.label) + RatFunc(key.fock.degree());
    if (w && !(*w == x)) throw Error("state is not homogeneous");
    w = x;
  }
  if (!w) throw Error("the zero state has no weight");
  return *w;
}

LatticeState LatticeEngine::from_exp_basis(const ExpBasisKey& key) const {
  LatticeState s = LatticeState::term({{0, RatFunc(key.n + static_cast<long>(key.nu.size()))}, {key.j_parts, {}}});
  for (int part : key.nu) {
    if (part < 1) throw Error("exponential-basis parts must be positive");
    LatticeState next;
    for (const auto& [k, c] : s.terms()) {
      for (const auto& [cparts, sc] : schur_terms(1, part)) {
        LatticeKey k2 = k;
        k2.fock.c_parts = merge_parts(k.fock.c_parts, cparts);
        next.add_term(k2, c * RatFunc(sc));
      }
    }
    s = std::move(next);
  }
  return s;
}

LatticeState LatticeEngine::from_exp_basis(const ExpBasisState& s) const {
  LatticeState out;
  for (const auto& [k, c] : s) out += from_exp_basis(k) * c;
  return out;
}

ExpBasisState LatticeEngine::to_exp_basis(const LatticeState& s) const {
  // Triangular inversion: the c-mode term of smallest length determines the next basis element.
  ExpBasisState out;
  LatticeState rest = s;
  while (!rest.is_zero()) {
    auto best = rest.terms().begin();
    for (auto it = rest.terms().begin(); it != rest.terms().end(); ++it)
      if (it->first.fock.c_parts.size() < best->first.fock.c_parts.size()) best = it;
    const LatticeKey key = best->first;
    const RatFunc coeff = best->second;
    if (key.label.r != 0) throw Error("basis conversion is defined on the vacuum module");
    auto n = integer_value(key.label.mu);
    if (!n) throw Error("basis conversion needs integral exponents");
    Integer prod = 1;
    for (int p : key.fock.c_parts) prod *= p;
    ExpBasisKey bk{key.fock.j_parts, key.fock.c_parts, *n - static_cast<long>(key.fock.c_parts.size())};
    RatFunc c = coeff * RatFunc(Rational(prod));
    RatFunc& slot = out[bk];
    slot += c;
    if (slot.is_zero()) out.erase(bk);
    rest -= from_exp_basis(bk) * c;
  }
  return out;
}

std::vector<LatticeState> LatticeEngine::top_space(const Rational& r, const RatFunc& lambda, int n_min, int n_max) const {
  if (r != -1) throw NotPositiveEnergy("Pi_r(lambda) is positive-energy only for r = -1");
  std::vector<LatticeState> out;
  for (int n = n_min; n <= n_max; ++n) out.push_back(LatticeState::exponential({-1, lambda + RatFunc(n)}));
  return out;
}

PiCharacter LatticeEngine::character_pi(const RatFunc& lambda, int order) const {
  return {Rational(-1), lambda, QSeries::eta_power(-2, order), true};
}

std::string LatticeEngine::render(const LatticeState& s) const {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    if (!(c == RatFunc(1))) out += "(" + c.to_string() + ")*";
    std::string modes = render_parts('j', key.fock.j_parts) + render_parts('c', key.fock.c_parts);
    if (!modes.empty()) out += modes + " ";
    std::string label;
    const Rational& r = key.label.r;
    if (r == 1) label = "j";
    else if (r == -1) label = "-j";
    else if (r != 0) label = "(" + to_string(r) + ")j";
    const RatFunc& mu = key.label.mu;
    if (!mu.is_zero()) {
      std::string m;
      auto iv = integer_value(mu);
      if (iv && *iv == 1) m = "c";
      else if (iv && *iv == -1) m = "-c";
      else if (iv) m = std::to_string(*iv) + "c";
      else m = "(" + mu.to_string() + ")c";
      if (!label.empty() && m.front() != '-') label += "+";
      label += m;
    }
    out += "e[" + (label.empty() ? std::string("0") : label) + "]";
  }
  return out;
}

LatticeState LatticeEngine::parse(std::string_view text) const {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  LatticeState out;
  if (text == "0") return out;
  // split on " + " outside brackets
  std::vector<std::string_view> terms;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '(' || ch == '[') ++depth;
    else if (ch == ')' || ch == ']') --depth;
    else if (depth == 0 && text.substr(i, 3) == " + ") {
      terms.push_back(text.substr(start, i - start));
      start = i + 3;
      i += 2;
    }
  }
  terms.push_back(text.substr(start));

  for (auto term : terms) {
    term = trim(term);
    RatFunc coeff(1);
    if (!term.empty() && term.front() == '(') {
      int d = 0;
      std::size_t i = 0;
      for (; i < term.size(); ++i) {
        if (term[i] == '(') ++d;
        else if (term[i] == ')' && --d == 0) break;
      }
      if (i + 1 >= term.size() || term[i + 1] != '*') throw ParseError("expected '(coeff)*'");
      coeff = RatFunc::parse(term.substr(1, i - 1));
      term.remove_prefix(i + 2);
    }
    auto e = term.find("e[");
    if (e == std::string_view::npos || term.back() != ']') throw ParseError("missing exponential in '" + std::string(term) + "'");
    LatticeKey key;
    std::string_view modes = trim(term.substr(0, e));
    while (!modes.empty()) {
      char name = modes.front();
      if (name != 'j' && name != 'c') throw ParseError("unknown Heisenberg mode in '" + std::string(term) + "'");
      auto close = modes.find(')');
      if (modes.size() < 2 || modes[1] != '(' || close == std::string_view::npos) throw ParseError("malformed mode");
      int idx = std::stoi(std::string(modes.substr(2, close - 2)));
      if (idx >= 0) throw ParseError("only creation modes appear in a canonical state");
      modes.remove_prefix(close + 1);
      int power = 1;
      if (!modes.empty() && modes.front() == '^') {
        std::size_t used = 0;
        power = std::stoi(std::string(modes.substr(1)), &used);
        modes.remove_prefix(1 + used);
      }
      for (int r = 0; r < power; ++r) insert_part(name == 'j' ? key.fock.j_parts : key.fock.c_parts, -idx);
    }
    std::string_view lab = term.substr(e + 2, term.size() - e - 3);
    key.label = {0, 0};
    if (lab != "0") {
      std::size_t i = 0;
      while (i < lab.size()) {
        bool neg = false;
        if (lab[i] == '+' || lab[i] == '-') neg = lab[i++] == '-';
        RatFunc c(1);
        if (i < lab.size() && lab[i] == '(') {
          int d = 0;
          std::size_t j = i;
          for (; j < lab.size(); ++j) {
            if (lab[j] == '(') ++d;
            else if (lab[j] == ')' && --d == 0) break;
          }
          c = RatFunc::parse(lab.substr(i + 1, j - i - 1));
          i = j + 1;
        } else if (i < lab.size() && std::isdigit(static_cast<unsigned char>(lab[i]))) {
          std::size_t j = i;
          while (j < lab.size() && std::isdigit(static_cast<unsigned char>(lab[j]))) ++j;
          c = RatFunc(parse_rational(lab.substr(i, j - i)));
          i = j;
        }
        if (neg) c = -c;
        if (i >= lab.size()) throw ParseError("malformed exponent '" + std::string(lab) + "'");
        if (lab[i] == 'j') {
          auto v = c.constant_value();
          if (!v) throw ParseError("the j-coefficient must be rational");
          key.label.r += *v;
        } else if (lab[i] == 'c') {
          key.label.mu += c;
        } else {
          throw ParseError("malformed exponent '" + std::string(lab) + "'");
        }
        ++i;
      }
    }
    out.add_term(key, coeff);
  }
  return out;
}

LatticeFlowField spectral_flow_field(const LatticeEngine& e, int ell, std::string_view generator) {
  LatticeFlowField out{std::string(generator), 0, 0};
  auto heis = [&](const HeisVector& h) { out.scalar_shift = -pairing(h, e.j()) * RatFunc(ell); };
  if (generator == "a") heis(HeisVector::a());
  else if (generator == "b") heis(HeisVector::b());
  else if (generator == "c") heis(HeisVector::c());
  else if (generator == "d") heis(HeisVector::d());
  else if (generator == "j") heis(e.j());
  else if (generator == "i") heis(e.i());
  else if (generator.starts_with("e^") && generator.ends_with("c")) {
    auto mid = generator.substr(2, generator.size() - 3);
    long m = mid.empty() ? 1 : mid == "-" ? -1 : std::stol(std::string(mid));
    out.z_power = -ell * static_cast<int>(m);
  } else {
    throw UnknownGenerator(std::string(generator));
  }
  return out;
}

std::pair<Rational, RatFunc> flow_module(const Rational& r, const RatFunc& lambda, int ell) { return {r + ell, lambda}; }

void LatticeCheckReport::record(bool pass, const std::string& what) {
  ++checks;
  if (!pass) failures.push_back(what);
}

namespace {

std::string parts_str(const std::vector<int>& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

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

LatticeState fock_state(const std::vector<int>& j, const std::vector<int>& c, const Rational& r, const RatFunc& mu) {
  return LatticeState::term({{r, mu}, {j, c}});
}

// e^c_{p_1} ... e^c_{p_l} v, rightmost first
LatticeState ec_modes(const LatticeEngine& e, const std::vector<int>& idx, LatticeState v) {
  for (auto it = idx.rbegin(); it != idx.rend(); ++it) v = e.exp_mode(1, *it, v);
  return v;
}

LatticeState j_modes(const LatticeEngine& e, const std::vector<int>& idx, LatticeState v) {
  for (auto it = idx.rbegin(); it != idx.rend(); ++it) v = e.h_mode(e.j(), *it, v);
  return v;
}

// S_m(c) acting on the Fock part of v
LatticeState schur_times(const LatticeEngine& e, int m, const LatticeState& v) {
  LatticeState out;
  const LatticeState sm = e.schur(m);
  for (const auto& [k, c] : sm.terms()) out += e.create(HeisVector::c(), k.fock.c_parts, v) * c;
  return out;
}

LatticeState relabel(const LatticeState& s, const ExpLabel& label) {
  LatticeState out;
  for (const auto& [k, c] : s.terms()) out.add_term({label, k.fock}, c);
  return out;
}

}  // namespace

LatticeCheckReport verify_lattice_lemmas(const LatticeEngine& e, int max_weight) {
  LatticeCheckReport rep;
  const RatFunc lam = RatFunc::var(Var::lambda);
  const std::vector<Partition> parts = partitions_up_to(max_weight);

  for (const auto& mu : parts) {
    for (const auto& nu : parts) {
      LatticeState v = j_modes(e, [&] {
        std::vector<int> m = mu.parts;
        for (int& x : m) x = -x;
        return m;
      }(), fock_state({}, nu.parts, -1, lam));
      const Rational sign = mu.length() % 2 ? -1 : 1;
      LatticeState expect = fock_state({}, nu.parts, -1, lam + mu.length()) *
                            RatFunc(sign * Rational(multiplicity_factorial(mu.parts)));
      rep.record(ec_modes(e, mu.parts, v) == expect, "e^c_{+mu} j_{-mu} c_{-nu}: mu=" + parts_str(mu.parts) +
                                                         " nu=" + parts_str(nu.parts));
      for (const auto& m2 : parts) {
        if (m2 == mu || m2.length() == 0) continue;
        bool vanish = m2.length() > mu.length() || (m2.length() == mu.length() && m2.size() >= mu.size());
        if (vanish)
          rep.record(ec_modes(e, m2.parts, v).is_zero(), "e^c_{+mu'} vanishing: mu'=" + parts_str(m2.parts) +
                                                              " mu=" + parts_str(mu.parts) + " nu=" + parts_str(nu.parts));
      }
    }
  }

  for (const auto& nu : parts) {
    LatticeState v = fock_state({}, nu.parts, -1, lam);
    Integer prod = multiplicity_factorial(nu.parts);
    for (int p : nu.parts) prod *= p;
    rep.record(j_modes(e, nu.parts, v) == LatticeState::exponential({-1, lam}) * RatFunc(Rational(prod)),
               "j_{+nu} c_{-nu}: nu=" + parts_str(nu.parts));
    for (const auto& n2 : parts)
      if (n2 != nu && n2.size() >= nu.size() && n2.length() > 0)
        rep.record(j_modes(e, n2.parts, v).is_zero(), "j_{+nu'} vanishing: nu'=" + parts_str(n2.parts) +
                                                          " nu=" + parts_str(nu.parts));
  }

  for (long n = -2; n <= 2; ++n) {
    for (int m = -3; m <= max_weight; ++m) {
      LatticeState sm = m >= 0 ? e.schur(m) : LatticeState();
      rep.record(e.exp_mode(1, -m - 1, LatticeState::exponential({0, RatFunc(n)})) == relabel(sm, {0, RatFunc(n + 1)}),
                 "e^c_(-m-1) e^{nc}: m=" + std::to_string(m) + " n=" + std::to_string(n));
      rep.record(e.exp_mode(1, -m, LatticeState::exponential({-1, lam + n})) == relabel(sm, {-1, lam + n + 1}),
                 "e^c_{-m} e^{-j+(lambda+n)c}: m=" + std::to_string(m) + " n=" + std::to_string(n));
    }
    for (int w = 1; w <= max_weight; ++w) {
      for (const auto& nu : partitions_of(w)) {
        std::vector<int> idx = nu.parts;
        for (int& x : idx) x = -x - 1;
        LatticeState lhs = ec_modes(e, idx, LatticeState::exponential({0, RatFunc(n)}));
        const ExpLabel target{0, RatFunc(n + nu.length())};
        LatticeState prod = LatticeState::exponential(target);
        for (int p : nu.parts) prod = schur_times(e, p, prod);
        rep.record(lhs == prod, "e^c_(-nu-1) e^{nc} as Schur product: nu=" + parts_str(nu.parts));
        // leading term c_(-nu) / prod nu_i, all other terms of higher c-degree
        Integer den = 1;
        for (int p : nu.parts) den *= p;
        bool lead = lhs.coefficient({target, {{}, nu.parts}}) == RatFunc(Rational(1) / Rational(den));
        for (const auto& [k, c] : lhs.terms())
          if (k.fock.c_parts != nu.parts && static_cast<int>(k.fock.c_parts.size()) <= nu.length()) lead = false;
        rep.record(lead, "triangularity: nu=" + parts_str(nu.parts));
      }
    }
  }

  const LatticeState top = LatticeState::exponential({-1, lam});
  for (int n = 0; n <= max_weight; ++n)
    rep.record(e.exp_mode(1, n, top) == (n == 0 ? LatticeState::exponential({-1, lam + 1}) : LatticeState()),
               "e^c_n e^{-j+lambda c}: n=" + std::to_string(n));
  return rep;
}

LatticeCheckReport verify_exp_basis_round_trip(const LatticeEngine& e, int max_weight) {
  LatticeCheckReport rep;
  for (int w = 0; w <= max_weight; ++w)
    for (int a = 0; a <= w; ++a)
      for (const auto& mu : partitions_of(a))
        for (const auto& nu : partitions_of(w - a))
          for (long n : {-2L, 0L, 1L, 3L}) {
            ExpBasisKey key{mu.parts, nu.parts, n};
            rep.record(e.to_exp_basis(e.from_exp_basis(key)) == ExpBasisState{{key, RatFunc(1)}},
                       "exp basis -> Fock -> exp basis: mu=" + parts_str(mu.parts) + " nu=" + parts_str(nu.parts));
            LatticeState cb = fock_state(mu.parts, nu.parts, 0, RatFunc(n));
            rep.record(e.from_exp_basis(e.to_exp_basis(cb)) == cb,
                       "Fock -> exp basis -> Fock: mu=" + parts_str(mu.parts) + " nu=" + parts_str(nu.parts));
          }
  return rep;
}

LatticeCheckReport verify_lattice_flow(const LatticeEngine& e, int ell) {
  LatticeCheckReport rep;
  const RatFunc lam = RatFunc::var(Var::lambda);
  const std::vector<LatticeState> xs{
      LatticeState::exponential({-1, lam}),
      fock_state({1}, {}, -1, lam + 2),
      fock_state({}, {2}, -1, lam - 1),
      fock_state({1}, {1}, -1, lam),
  };
  const LatticeState t = e.conformal_vector(), jv = fock_state({1}, {}, 0, 0);
  const RatFunc shift = e.kappa_prime() * RatFunc(ell * (ell + 1)) / RatFunc(2);
  for (std::size_t xi = 0; xi < xs.size(); ++xi)
    for (int n = -1; n <= 2; ++n) {
      LatticeState expect = e.act(t, n, xs[xi]) - e.act(jv, n - 1, xs[xi]) * RatFunc(ell);
      if (n == 1) expect += xs[xi] * shift;
      rep.record(e.act(t, n, xs[xi], ell) == expect,
                 "flowed t_(" + std::to_string(n) + ") on sample " + std::to_string(xi));
    }
  const std::vector<LatticeState> gens{jv, fock_state({}, {1}, 0, 0), LatticeState::exponential({0, 1}),
                                       LatticeState::exponential({0, -1}), t};
  const char* names[] = {"j", "c", "e^c", "e^-c", "t"};
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b)
      for (const auto& x : xs)
        for (int m = 0; m <= 2; ++m)
          for (int n = -1; n <= 1; ++n) {
            LatticeState lhs = e.act(gens[a], m, e.act(gens[b], n, x, ell), ell) -
                               e.act(gens[b], n, e.act(gens[a], m, x, ell), ell);
            LatticeState rhs;
            for (int j = 0; j <= m; ++j)
              rhs += e.act(e.act(gens[a], j, gens[b]), m + n - j, x, ell) * RatFunc(Rational(binomial(m, j)));
            rep.record(lhs == rhs, std::string("flowed [") + names[a] + "_(" + std::to_string(m) + "), " + names[b] +
                                       "_(" + std::to_string(n) + ")]");
          }
  return rep;
}

}  // namespace voa
