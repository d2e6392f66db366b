#include "voa/core/ope_table.hpp"

#include <cctype>
#include <sstream>

#include "voa/error.hpp"

namespace voa {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on " + " outside parentheses.
std::vector<std::string_view> split_terms(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (depth == 0 && s.substr(i, 3) == " + ") {
      out.push_back(s.substr(start, i - start));
      start = i + 3;
      i += 2;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

int parse_int(std::string_view s) {
  s = trim(s);
  try {
    std::size_t used = 0;
    int v = std::stoi(std::string(s), &used);
    if (used != s.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer: '" + std::string(s) + "'");
  }
}

}  // namespace

OpeTable::OpeTable(std::string name, std::vector<Generator> generators)
    : name_(std::move(name)), generators_(std::move(generators)) {}

int OpeTable::find(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (generators_[i].name == name) return i;
  throw UnknownGenerator(std::string(name));
}

void OpeTable::declare(int a, int b) { entries_[{a, b}]; }

int OpeTable::twice_weight(const Monomial& m) const {
  int w = 0;
  for (const auto& md : m) w += generators_.at(md.generator).twice_weight - 2 * md.index - 2;
  return w;
}

void OpeTable::set(int a, int j, int b, const State& s) {
  if (j < 0) throw Error("only singular products a_(j) b with j >= 0 are stored");
  if (s.ground().kind != GroundVector::Kind::vacuum) throw Error("table entries live on the vacuum");
  int expect = generators_.at(a).twice_weight + generators_.at(b).twice_weight - 2 * j - 2;
  for (const auto& [m, c] : s.terms()) {
    if (twice_weight(m) != expect)
      throw Error("entry " + generators_[a].name + "(" + std::to_string(j) + ")" + generators_[b].name +
                  " is not homogeneous of the expected weight");
  }
  auto& e = entries_[{a, b}];
  if (s.is_zero()) e.erase(j);
  else e[j] = s;
}

const std::map<int, State>* OpeTable::entries(int a, int b) const {
  auto it = entries_.find({a, b});
  return it == entries_.end() ? nullptr : &it->second;
}

OpeTable OpeTable::specialize(const Bindings& b) const {
  OpeTable t(name_, generators_);
  if (central_charge_) t.central_charge_ = central_charge_->specialize(b);
  for (const auto& [key, row] : entries_) {
    auto& out = t.entries_[key];
    for (const auto& [j, s] : row) {
      State v = s.specialize(b);
      if (!v.is_zero()) out[j] = v;
    }
  }
  return t;
}

std::string OpeTable::render_monomial(const Monomial& m) const {
  std::string out;
  for (const auto& md : m) out += generators_.at(md.generator).name + "(" + std::to_string(md.index) + ")";
  return out;
}

std::string OpeTable::render(const State& s) const {
  if (s.is_zero()) return "0";
  std::string ground;
  const auto& g = s.ground();
  if (g.kind == GroundVector::Kind::vacuum) {
    ground = "|0>";
  } else {
    ground = g.kind == GroundVector::Kind::highest_weight ? "|hw" : "|chi";
    for (const auto& [gen, v] : g.eigenvalues) ground += " " + generators_.at(gen).name + "=" + v.to_string();
    ground += ">";
  }
  std::string out;
  for (const auto& [m, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    if (!(c == RatFunc(1))) out += "(" + c.to_string() + ")*";
    out += render_monomial(m) + ground;
  }
  return out;
}

State OpeTable::parse_state(std::string_view text) const {
  text = trim(text);
  if (text == "0") return State();
  State out;
  bool first = true;
  for (auto term : split_terms(text)) {
    term = trim(term);
    RatFunc coeff(1);
    if (!term.empty() && term.front() == '(') {
      int depth = 0;
      std::size_t i = 0;
      for (; i < term.size(); ++i) {
        if (term[i] == '(') ++depth;
        else if (term[i] == ')' && --depth == 0) break;
      }
      if (i + 1 >= term.size() || term[i + 1] != '*') throw ParseError("expected '(coeff)*' in '" + std::string(term) + "'");
      coeff = RatFunc::parse(term.substr(1, i - 1));
      term.remove_prefix(i + 2);
    }
    auto bar = term.find('|');
    if (bar == std::string_view::npos || term.back() != '>') throw ParseError("missing ground vector in '" + std::string(term) + "'");
    Monomial m;
    std::string_view modes = term.substr(0, bar);
    while (!modes.empty()) {
      auto open = modes.find('(');
      auto close = modes.find(')');
      if (open == std::string_view::npos || close == std::string_view::npos || close < open)
        throw ParseError("malformed mode in '" + std::string(term) + "'");
      m.push_back(Mode{find(modes.substr(0, open)), parse_int(modes.substr(open + 1, close - open - 1))});
      modes.remove_prefix(close + 1);
    }
    std::string_view g = term.substr(bar + 1, term.size() - bar - 2);
    GroundPtr ground;
    if (g == "0") {
      ground = vacuum_ground();
    } else {
      std::istringstream is{std::string(g)};
      std::string kind, item;
      is >> kind;
      std::map<int, RatFunc> ev;
      while (is >> item) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("malformed eigenvalue '" + item + "'");
        ev[find(item.substr(0, eq))] = RatFunc::parse(item.substr(eq + 1));
      }
      if (kind == "hw") ground = highest_weight_ground(ev);
      else if (kind == "chi") ground = one_dimensional_ground(ev);
      else throw ParseError("unknown ground vector '" + std::string(g) + "'");
    }
    if (first) {
      out = State(ground);
      first = false;
    } else if (!same_ground(ground, out.ground_ptr())) {
      throw ParseError("terms on different ground vectors");
    }
    if (!is_normal(m)) throw ParseError("monomial not in normal form: '" + std::string(term) + "'");
    out.add_term(m, coeff);
  }
  return out;
}

std::string OpeTable::dump() const {
  std::ostringstream os;
  os << "algebra " << name_ << "\n";
  if (central_charge_) os << "central_charge " << central_charge_->to_string() << "\n";
  for (const auto& g : generators_) os << "generator " << g.name << " weight " << g.weight().get_str() << "\n";
  for (const auto& [key, row] : entries_) {
    const auto& a = generators_[key.first].name;
    const auto& b = generators_[key.second].name;
    if (row.empty()) {
      os << "regular " << a << " " << b << "\n";
      continue;
    }
    for (auto it = row.rbegin(); it != row.rend(); ++it)
      os << a << "(" << it->first << ")" << b << " = " << render(it->second) << "\n";
  }
  return os.str();
}

OpeTable OpeTable::parse(std::string_view text) {
  OpeTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  try {
    while (std::getline(in, line)) {
      ++lineno;
      auto s = trim(line);
      if (s.empty() || s.front() == '#') continue;
      auto sp = s.find(' ');
      auto head = s.substr(0, sp);
      auto rest = sp == std::string_view::npos ? std::string_view{} : trim(s.substr(sp + 1));
      if (head == "algebra") {
        t.name_ = std::string(rest);
      } else if (head == "central_charge") {
        t.central_charge_ = RatFunc::parse(rest);
      } else if (head == "generator") {
        std::istringstream is{std::string(rest)};
        std::string name, kw, w;
        is >> name >> kw >> w;
        if (kw != "weight") throw ParseError("expected 'generator NAME weight W'");
        Rational wt = parse_rational(w);
        Rational twice = wt * 2;
        if (!is_integer(twice) || twice <= 0) throw ParseError("weight must be a positive (half-)integer");
        t.generators_.push_back(Generator{name, static_cast<int>(twice.get_num().get_si())});
      } else if (head == "regular") {
        std::istringstream is{std::string(rest)};
        std::string a, b;
        is >> a >> b;
        t.declare(t.find(a), t.find(b));
      } else {
        auto eq = s.find(" = ");
        if (eq == std::string_view::npos) throw ParseError("unrecognised line");
        auto lhs = trim(s.substr(0, eq));
        auto open = lhs.find('('), close = lhs.find(')');
        if (open == std::string_view::npos || close == std::string_view::npos) throw ParseError("malformed product");
        int a = t.find(lhs.substr(0, open));
        int j = parse_int(lhs.substr(open + 1, close - open - 1));
        int b = t.find(lhs.substr(close + 1));
        t.set(a, j, b, t.parse_state(s.substr(eq + 3)));
      }
    }
  } catch (const ParseError& e) {
    throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
  } catch (const UnknownGenerator& e) {
    throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
  }
  return t;
}

bool OpeTable::operator==(const OpeTable& o) const {
  if (name_ != o.name_ || central_charge_ != o.central_charge_ || entries_ != o.entries_) return false;
  if (generators_.size() != o.generators_.size()) return false;
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name != o.generators_[i].name || generators_[i].twice_weight != o.generators_[i].twice_weight)
      return false;
  return true;
}

}  // namespace voa
