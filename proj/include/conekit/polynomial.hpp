#pragma once

#include <cctype>
#include <cmath>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "conekit/errors.hpp"
#include "conekit/multi_index.hpp"
#include "conekit/rational.hpp"

namespace conekit {

using Point = std::vector<double>;

// Sparse multivariate polynomial over the rationals. Terms are stored in a
// graded-lex ordered map with no zero coefficients, so equal polynomials
// compare equal structurally and printing is canonical.
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, Rational, GradedLexLess>;

  explicit Polynomial(int nvars = 1) : nvars_(check_nvars(nvars)) {}

  static Polynomial constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(MultiIndex(static_cast<std::size_t>(nvars), 0), c);
    return p;
  }

  // 0-based variable index.
  static Polynomial variable(int nvars, int index) {
    if (index < 0 || index >= nvars) throw std::invalid_argument("variable index out of range");
    Polynomial p(nvars);
    MultiIndex m(static_cast<std::size_t>(nvars), 0);
    m[static_cast<std::size_t>(index)] = 1;
    p.add_term(m, Rational(1));
    return p;
  }

  static Polynomial parse(std::string_view text, int nvars);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  int degree() const {
    // terms_ is graded-lex ascending, so the last key has maximal degree
    return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
  }

  Rational coeff(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const MultiIndex& m, const Rational& c) {
    if (static_cast<int>(m.size()) != nvars_)
      throw std::invalid_argument("multi-index dimension mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  // -- ring operations (exact) ------------------------------------------

  Polynomial& operator+=(const Polynomial& o) {
    require_same_nvars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    require_same_nvars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, Rational(-c));
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, Rational(-c));
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_same_nvars(b);
    Polynomial r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(add(ma, mb), ca * cb);
    return r;
  }

  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    Polynomial r(p.nvars_);
    if (s == 0) return r;
    for (const auto& [m, c] : p.terms_) r.terms_.emplace(m, s * c);
    return r;
  }
  friend Polynomial operator*(const Polynomial& p, const Rational& s) { return s * p; }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(nvars_, Rational(1));
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1u) r = r * base;
      base = base * base;
      e >>= 1u;
    }
    return r;
  }

  bool operator==(const Polynomial& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // Strict weak order so polynomials can key maps/dedup sets. Compares the
  // term maps graded-lex termwise.
  bool operator<(const Polynomial& o) const {
    if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
    auto it = terms_.begin(), jt = o.terms_.begin();
    GradedLexLess less;
    for (; it != terms_.end() && jt != o.terms_.end(); ++it, ++jt) {
      if (less(it->first, jt->first)) return true;
      if (less(jt->first, it->first)) return false;
      if (it->second != jt->second) return it->second < jt->second;
    }
    return it == terms_.end() && jt != o.terms_.end();
  }

  // -- evaluation --------------------------------------------------------

  // Floating evaluation; rational coefficients are converted last, with a
  // long double accumulator to keep cancellation noise near machine level.
  double eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != nvars_)
      throw std::invalid_argument("evaluation point dimension mismatch");
    long double acc = 0;
    for (const auto& [m, c] : terms_) {
      long double mono = 1;
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (int k = 0; k < m[i]; ++k) mono *= static_cast<long double>(x[i]);
      }
      acc += static_cast<long double>(to_double(c)) * mono;
    }
    return static_cast<double>(acc);
  }
  double eval(const Point& x) const { return eval(std::span<const double>(x)); }

  // Exact evaluation at a rational point.
  Rational eval_exact(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != nvars_)
      throw std::invalid_argument("evaluation point dimension mismatch");
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
      Rational mono(1);
      for (std::size_t i = 0; i < m.size(); ++i)
        for (int k = 0; k < m[i]; ++k) mono *= x[i];
      acc += c * mono;
    }
    return acc;
  }

  // Exact evaluation at a floating point, treated as the dyadic rational it is.
  Rational eval_exact(const Point& x) const {
    std::vector<Rational> rx;
    rx.reserve(x.size());
    for (double v : x) rx.push_back(rational_from_double(v));
    return eval_exact(rx);
  }

  // -- coefficient norms ---------------------------------------------------

  Rational l1_exact() const {
    Rational s(0);
    for (const auto& [m, c] : terms_) s += rational_abs(c);
    return s;
  }
  double l1() const { return to_double(l1_exact()); }

  // Canonical printing: graded-lex descending with explicit signs.
  std::string str() const;

 private:
  static int check_nvars(int n) {
    if (n <= 0) throw std::invalid_argument("nvars must be positive");
    return n;
  }
  void require_same_nvars(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial dimension mismatch");
  }

  int nvars_;
  TermMap terms_;
};

// ---------------------------------------------------------------------------
// Grammar: variables x1..xN (aliases x,y,z when nvars <= 3), integer or
// rational "p/q" coefficients, operators + - * ^ and parentheses. Implicit
// multiplication is rejected. Whitespace is insignificant.
// ---------------------------------------------------------------------------

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, int nvars) : text_(text), nvars_(nvars) {}

  Polynomial run() {
    Polynomial p = expression();
    skip_ws();
    if (pos_ != text_.size()) throw parse_error("unexpected trailing input", pos_);
    return p;
  }

 private:
  std::string_view text_;
  int nvars_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool consume(char c) {
    if (peek_is(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    skip_ws();
    bool negate = false;
    if (consume('-'))
      negate = true;
    else
      consume('+');
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (consume('+'))
        acc += term();
      else if (consume('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (consume('*')) acc = acc * factor();
    skip_ws();
    if (pos_ < text_.size()) {
      char c = text_[pos_];
      // catches "2x" and "x y": the grammar has no implicit multiplication
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '(')
        throw parse_error("expected operator (implicit multiplication is not allowed)", pos_);
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (consume('^')) {
      long e = integer("exponent");
      if (e < 0) throw parse_error("exponent must be non-negative", pos_);
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw parse_error("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!consume(')')) throw parse_error("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return variable_ref();
    throw parse_error(std::string("unexpected character '") + c + "'", pos_);
  }

  long integer(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw parse_error(std::string("expected ") + what, pos_);
    if (pos_ - start > 9) throw parse_error(std::string(what) + " too large", start);
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  std::string digits(const char* what) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw parse_error(std::string("expected ") + what, pos_);
    if (pos_ < text_.size() && text_[pos_] == '.')
      throw parse_error("decimal literals are not supported; use p/q", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial number() {
    BigInt num(digits("number"));
    BigInt den(1);
    if (peek_is('/')) {
      ++pos_;
      skip_ws();
      std::size_t dstart = pos_;
      den = BigInt(digits("denominator"));
      if (den == 0) throw parse_error("zero denominator", dstart);
    }
    return Polynomial::constant(nvars_, Rational(num, den));
  }

  Polynomial variable_ref() {
    std::size_t start = pos_;
    char c = text_[pos_];
    ++pos_;
    if (c == 'x' && pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      long idx = integer("variable index");
      if (idx < 1 || idx > nvars_)
        throw parse_error("variable x" + std::to_string(idx) + " out of range for " +
                              std::to_string(nvars_) + " variable(s)",
                          start);
      return Polynomial::variable(nvars_, static_cast<int>(idx - 1));
    }
    int alias = (c == 'x') ? 0 : (c == 'y') ? 1 : (c == 'z') ? 2 : -1;
    if (alias < 0) throw parse_error(std::string("unknown symbol '") + c + "'", start);
    if (nvars_ > 3)
      throw parse_error("aliases x,y,z are only available for nvars <= 3", start);
    if (alias >= nvars_)
      throw parse_error(std::string("variable '") + c + "' out of range for " +
                            std::to_string(nvars_) + " variable(s)",
                        start);
    return Polynomial::variable(nvars_, alias);
  }
};

}  // namespace detail

inline Polynomial Polynomial::parse(std::string_view text, int nvars) {
  check_nvars(nvars);
  return detail::PolyParser(text, nvars).run();
}

inline std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // descending graded-lex
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Rational c = it->second;
    const MultiIndex& m = it->first;
    const bool negative = c < 0;
    Rational mag = rational_abs(c);
    if (first) {
      if (negative) os << '-';
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    const bool is_const = total_degree(m) == 0;
    if (mag != 1 || is_const) {
      os << numerator(mag);
      if (denominator(mag) != 1) os << '/' << denominator(mag);
      if (!is_const) os << '*';
    }
    bool first_var = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!first_var) os << '*';
      first_var = false;
      os << 'x' << (i + 1);
      if (m[i] > 1) os << '^' << m[i];
    }
  }
  return os.str();
}

// nvars inference for CLI inputs: scan variable mentions across input texts.
// "x"/"y"/"z" imply indices 1..3, "xK" implies K. Returns at least 1.
inline int infer_nvars(const std::vector<std::string>& texts) {
  int n = 1;
  for (const auto& t : texts) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      char c = t[i];
      if (c == 'x' && i + 1 < t.size() && std::isdigit(static_cast<unsigned char>(t[i + 1]))) {
        std::size_t j = i + 1;
        long idx = 0;
        while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) {
          idx = idx * 10 + (t[j] - '0');
          ++j;
        }
        n = std::max(n, static_cast<int>(idx));
        i = j - 1;
      } else if (c == 'y') {
        n = std::max(n, 2);
      } else if (c == 'z') {
        n = std::max(n, 3);
      }
    }
  }
  return n;
}

}  // namespace conekit
