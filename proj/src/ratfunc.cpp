#include "voa/exact/ratfunc.hpp"

#include <cctype>
#include <utility>

#include "voa/error.hpp"

namespace voa {

RatFunc::RatFunc(const Rational& c) : num_(Poly(Rational(c.get_num()))), den_(Poly(Rational(c.get_den()))) {}

RatFunc::RatFunc(Poly p) : num_(std::move(p)), den_(1) { canonicalize(); }

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

void RatFunc::canonicalize() {
  if (den_.is_zero()) throw DivisionByZero();
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!num_.is_constant() && !den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }
  Rational cn = content(num_), cd = content(den_);
  Rational s = cn / cd;
  num_ *= Rational(s.get_num() / cn);
  den_ *= Rational(s.get_den() / cd);
}

std::optional<Rational> RatFunc::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  canonicalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RatFunc();
  num_ *= o.num_;
  den_ *= o.den_;
  canonicalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw DivisionByZero();
  if (is_zero()) return *this;
  num_ *= o.den_;
  den_ *= o.num_;
  canonicalize();
  return *this;
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return RatFunc(1) / pow(-e);
  RatFunc r(1), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

int RatFunc::compare(const RatFunc& o) const {
  int c = num_.compare(o.num_);
  return c != 0 ? c : den_.compare(o.den_);
}

RatFunc RatFunc::specialize(const Bindings& b) const {
  Poly d = den_.substitute(b);
  if (d.is_zero()) throw CriticalSpecialization("specialisation hits a pole of " + to_string());
  return RatFunc(num_.substitute(b), std::move(d));
}

std::string RatFunc::to_string() const {
  if (den_ == Poly(1)) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  if (!den_.is_constant()) d = "(" + d + ")";
  return n + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (eat('+')) r += term();
      else if (eat('-')) r -= term();
      else return r;
    }
  }

  RatFunc term() {
    RatFunc r = unary();
    for (;;) {
      if (eat('*')) r *= unary();
      else if (eat('/')) r /= unary();
      else return r;
    }
  }

  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    RatFunc b = primary();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      return b.pow(neg ? -e : e);
    }
    return b;
  }

  RatFunc primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      RatFunc r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    if (std::isdigit(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(c) || c >= 0x80) {
      std::size_t start = pos_;
      while (pos_ < s_.size()) {
        unsigned char d = static_cast<unsigned char>(s_[pos_]);
        if (!(std::isalpha(d) || d >= 0x80)) break;
        ++pos_;
      }
      if (pos_ < s_.size() && s_[pos_] == '\'') ++pos_;
      auto name = s_.substr(start, pos_ - start);
      auto v = var_from_name(name);
      if (!v) fail("unknown variable '" + std::string(name) + "'");
      return RatFunc::var(*v);
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc RatFunc::parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace voa
