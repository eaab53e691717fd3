#include "bvforge/poly_io.hpp"

#include <cctype>
#include <map>

namespace bvforge {

std::string to_text(const Monomial& m, const Universe& u) {
  std::string s;
  for (const auto& [v, e] : m.factors()) {
    if (!s.empty()) s += '*';
    s += display_name(u.var(v));
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

std::string to_text(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool neg = sgn(t.coef) < 0;
    Rational mag = neg ? Rational(-t.coef) : t.coef;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (t.mono.is_one()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += to_text(t.mono, *p.universe());
    }
  }
  return out;
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  Parser(std::string_view text, const UniversePtr& u) : s_(text), u_(u) {
    for (VarId id = 0; id < u->size(); ++id) {
      const auto& v = u->var(id);
      names_[display_name(v)] = id;
      bases_.emplace(v.name, id);
    }
  }

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw PolyParseError(msg, pos_ + 1); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_factor(std::size_t i) const {
    while (i < s_.size() && std::isspace(static_cast<unsigned char>(s_[i]))) ++i;
    return i < s_.size() && (is_ident_char(s_[i]) || s_[i] == '(');
  }
  bool dagger_at(std::size_t i) const { return s_.substr(i, 3) == "\xE2\x80\xA0"; }

  Poly expr() {
    Poly acc(u_);
    bool first = true;
    for (;;) {
      skip_ws();
      int sign = 1;
      if (at('+')) {
        ++pos_;
      } else if (at('-')) {
        ++pos_;
        sign = -1;
      } else if (!first) {
        break;
      }
      Poly t = term();
      if (sign < 0) t = -t;
      acc += t;
      first = false;
    }
    return acc;
  }

  Poly term() {
    Poly acc = power();
    for (;;) {
      if (at('*')) {
        ++pos_;
        acc = acc * power();
      } else if (at('/')) {
        ++pos_;
        skip_ws();
        Rational d = integer();
        if (is_zero(d)) fail("division by zero");
        acc = acc.scaled(1 / d);
      } else {
        return acc;
      }
    }
  }

  Poly power() {
    Poly base = atom();
    if (at('^')) {
      ++pos_;
      skip_ws();
      Rational e = integer();
      if (e > 64) fail("exponent too large");
      Poly r = Poly::constant(u_, 1);
      for (long k = 0; k < e.get_num().get_si(); ++k) r = r * base;
      return r;
    }
    return base;
  }

  Rational integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Rational(Integer(std::string(s_.substr(start, pos_ - start))));
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!at(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational q = integer();
      if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        ++pos_;
        Rational d = integer();
        if (is_zero(d)) fail("division by zero");
        q /= d;
      }
      return Poly::constant(u_, q);
    }
    if (is_ident_start(c)) return variable();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Poly variable() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    std::string key = name;
    if (dagger_at(pos_)) {
      pos_ += 3;
      key += '*';
    } else if (pos_ < s_.size() && s_[pos_] == '*' && !starts_factor(pos_ + 1)) {
      ++pos_;
      key += '*';
    }
    if (pos_ < s_.size() && s_[pos_] == '[') {
      ++pos_;
      MultiIndex jet;
      for (;;) {
        skip_ws();
        jet.push_back(static_cast<int>(integer().get_num().get_si()));
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          break;
        }
        fail("malformed jet index");
      }
      if (static_cast<int>(jet.size()) != u_->base_dim()) {
        pos_ = start;
        fail("jet index of " + name + " needs " + std::to_string(u_->base_dim()) + " entries");
      }
      if (order_of(jet) > 0) {
        key += '[';
        for (std::size_t i = 0; i < jet.size(); ++i) key += (i ? "," : "") + std::to_string(jet[i]);
        key += ']';
      }
    }
    auto it = names_.find(key);
    if (it == names_.end()) {
      pos_ = start;
      if (bases_.count(name)) fail("variable " + key + " is outside the jet window");
      fail("unknown variable " + name);
    }
    return Poly::variable(u_, it->second);
  }

  std::string_view s_;
  UniversePtr u_;
  std::size_t pos_ = 0;
  std::map<std::string, VarId> names_;
  std::multimap<std::string, VarId> bases_;
};

}  // namespace

Poly parse_poly(std::string_view text, const UniversePtr& u) { return Parser(text, u).parse(); }

}  // namespace bvforge
