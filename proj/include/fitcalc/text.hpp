#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "fitcalc/polynomial.hpp"

namespace fitcalc {

namespace detail {

inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

// Recursive-descent reader for polynomial text over a known ring. Variable
// names are matched longest-first, which is what makes the compact style
// (`16X5Y2`, `y5-xy`) unambiguous.
class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text) : ring_(ring), s_(text) {}

  Polynomial parse() {
    skip_ws();
    if (pos_ == s_.size()) fail("empty polynomial");
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg, pos_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool first = true;
    while (true) {
      skip_ws();
      bool neg = false;
      if (peek('+') || peek('-')) {
        neg = s_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
      if (!(peek('+') || peek('-'))) break;
    }
    return acc;
  }

  bool factor_starts() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '_';
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (factor_starts()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  unsigned read_uint() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer");
    if (pos_ - start > 5) fail("exponent too large");
    return unsigned(std::stoul(std::string(s_.substr(start, pos_ - start))));
  }

  Polynomial factor() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    Polynomial base(ring_);
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Rational q(std::string(s_.substr(start, pos_ - start)));
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::size_t ds = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (ds == pos_) fail("expected denominator");
        Integer den(std::string(s_.substr(ds, pos_ - ds)));
        if (den == 0) fail("zero denominator");
        q /= Rational(den);
      }
      base = Polynomial::constant(ring_, q);
    } else {
      std::size_t best = 0, best_len = 0;
      for (std::size_t i = 0; i < ring_->nvars(); ++i) {
        const auto& v = ring_->var(i);
        if (v.size() > best_len && s_.substr(pos_, v.size()) == v) {
          best = i;
          best_len = v.size();
        }
      }
      if (best_len == 0) {
        std::size_t e = pos_;
        while (e < s_.size() && ident_char(s_[e])) ++e;
        fail("unknown variable '" + std::string(s_.substr(pos_, std::max<std::size_t>(e - pos_, 1))) + "'");
      }
      pos_ += best_len;
      Monomial m = ring_->variable(best);
      // compact exponent: digits glued to the name
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        unsigned e = read_uint();
        m[best] = Exponent(e);
      }
      base = Polynomial::monomial(ring_, m);
    }
    if (peek('^')) {
      ++pos_;
      base = pow(base, read_uint());
    }
    return base;
  }

  RingPtr ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

inline std::string coeff_string(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

}  // namespace detail

inline Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) {
  return detail::PolyParser(ring, text).parse();
}

enum class PolyStyle {
  Caret,    // 16*X^5*Y^2+Y^6-...
  Compact,  // 16X5Y2+Y6-...  (only unambiguous for single-letter names)
};

inline std::string to_string(const Polynomial& p, PolyStyle style = PolyStyle::Caret) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const PolyRing& R = *p.ring();
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    if (c < 0) {
      os << '-';
      c = -c;
    } else if (!first) {
      os << '+';
    }
    first = false;
    bool one = t.mono.is_one();
    bool wrote = false;
    if (c != 1 || one) {
      os << detail::coeff_string(c);
      wrote = true;
    }
    for (std::size_t i = 0; i < R.nvars(); ++i) {
      Exponent e = t.mono[i];
      if (!e) continue;
      if (wrote && style == PolyStyle::Caret) os << '*';
      os << R.var(i);
      if (e != 1) os << (style == PolyStyle::Caret ? "^" : "") << e;
      wrote = true;
    }
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_string(p); }

}  // namespace fitcalc
