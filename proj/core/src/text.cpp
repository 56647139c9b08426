#include "toricfol/text.hpp"

#include <cctype>

#include "toricfol/error.hpp"

namespace toricfol {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars) : s_(text), n_(nvars) {}

  DiffForm run() {
    DiffForm w = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("column " + std::to_string(pos_ + 1), what);
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

  bool at_digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }

  std::string digits() {
    skip();
    if (!at_digit()) fail("expected an integer");
    std::size_t b = pos_;
    while (at_digit()) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }

  std::size_t index() {
    skip();
    const std::size_t begin = pos_;
    std::string d = digits();
    std::size_t k = d.size() > 6 ? 0 : std::stoul(d);
    if (k == 0 || k > n_) {
      pos_ = begin;
      fail("variable index " + d + " outside 1.." + std::to_string(n_));
    }
    return k - 1;
  }

  DiffForm constant(const Rational& c) const { return DiffForm::function(Polynomial::constant(n_, c)); }

  DiffForm add(DiffForm a, const DiffForm& b) {
    if (a.q() != b.q()) fail("sum of forms of different degree");
    return a + b;
  }

  DiffForm expr() {
    DiffForm w = term();
    for (;;) {
      if (eat('+')) w = add(std::move(w), term());
      else if (eat('-')) w = add(std::move(w), -term());
      else return w;
    }
  }

  DiffForm term() {
    DiffForm w = unary();
    for (;;) {
      if (eat('*')) {
        w = wedge(w, unary());
      } else if (eat('/')) {
        std::size_t at = pos_;
        DiffForm d = unary();
        std::optional<Rational> c;
        if (d.q() == 0) c = d.coefficient({}).as_constant();
        if (!c || *c == 0) {
          pos_ = at;
          fail("division only by nonzero constants");
        }
        w = Rational(1 / *c) * w;
      } else {
        return w;
      }
    }
  }

  DiffForm unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  DiffForm power() {
    DiffForm base = atom();
    if (!eat('^')) return base;
    std::string d = digits();
    if (d.size() > 4) fail("exponent too large");
    unsigned k = static_cast<unsigned>(std::stoul(d));
    if (base.q() != 0) {
      if (k == 1) return base;
      if (k == 0) return constant(1);
      return DiffForm(n_, base.q() * k);  // dx ^ dx = 0
    }
    return DiffForm::function(base.coefficient({}).pow(k));
  }

  DiffForm atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      DiffForm w = expr();
      if (!eat(')')) fail("expected ')'");
      return w;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(Rational(mpz_class(digits())));
    if (s_.substr(pos_, 3) == "dx[") {
      pos_ += 3;
      Indices idx{index()};
      while (eat(',')) idx.push_back(index());
      if (!eat(']')) fail("expected ']'");
      Indices sorted = idx;
      if (sort_indices(sorted) == 0) return DiffForm(n_, idx.size());
      return DiffForm::basis(n_, idx, Polynomial::constant(n_, 1));
    }
    if (s_.substr(pos_, 2) == "dx") {
      pos_ += 2;
      return DiffForm::basis(n_, {index()}, Polynomial::constant(n_, 1));
    }
    if (c == 'x') {
      ++pos_;
      return DiffForm::function(Polynomial::variable(n_, index()));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

std::string monomial_string(const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i + 1);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

std::string indices_string(const Indices& J) {
  if (J.size() == 1) return "dx" + std::to_string(J[0] + 1);
  std::string out = "dx[";
  for (std::size_t k = 0; k < J.size(); ++k) out += (k ? "," : "") + std::to_string(J[k] + 1);
  return out + "]";
}

}  // namespace

DiffForm parse_form(std::string_view text, std::size_t nvars) { return Parser(text, nvars).run(); }

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  DiffForm w = parse_form(text, nvars);
  if (w.q() != 0) throw ParseError("column 1", "expected a polynomial, found a " + std::to_string(w.q()) + "-form");
  return w.coefficient({});
}

std::string to_string(const Rational& c) { return c.get_str(); }

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    std::string m = monomial_string(e);
    if (m.empty()) out += to_string(a);
    else if (a == 1) out += m;
    else out += to_string(a) + "*" + m;
  }
  return out;
}

std::string to_string(const DiffForm& w) {
  if (w.is_zero()) return "0";
  if (w.q() == 0) return to_string(w.coefficient({}));
  std::string out;
  bool first = true;
  for (const auto& [J, f] : w.terms()) {
    std::string basis = indices_string(J);
    if (f.num_terms() == 1) {
      const auto& [e, c] = *f.terms().begin();
      bool neg = c < 0;
      Rational a = neg ? Rational(-c) : c;
      out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      std::string m = monomial_string(e);
      std::string coef = a == 1 ? m : (m.empty() ? to_string(a) : to_string(a) + "*" + m);
      out += coef.empty() ? basis : coef + "*" + basis;
    } else {
      out += first ? "" : " + ";
      out += "(" + to_string(f) + ")*" + basis;
    }
    first = false;
  }
  return out;
}

}  // namespace toricfol
