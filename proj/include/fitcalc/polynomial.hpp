#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fitcalc/ring.hpp"

namespace fitcalc {

using Rational = mpq_class;
using Integer = mpz_class;

struct Term {
  Monomial mono;
  Rational coeff;
};

// Sparse polynomial with exact rational coefficients. Terms are kept sorted in
// decreasing term order of the ring with no zero coefficients, so two equal
// polynomials always have identical term lists.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Rational& c) {
    Polynomial p(std::move(ring));
    if (c != 0) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Rational& c = 1) {
    Polynomial p(std::move(ring));
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }
  static Polynomial variable(RingPtr ring, std::size_t i) {
    Monomial m = ring->variable(i);
    return monomial(std::move(ring), m);
  }
  static Polynomial variable(RingPtr ring, std::string_view name) {
    std::size_t i = ring->index_of(name);
    return variable(std::move(ring), i);
  }
  // Canonicalizes arbitrary (unsorted, repeated, zero) terms.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  Rational constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return 0;
  }

  bool involves(std::size_t var) const {
    return std::any_of(terms_.begin(), terms_.end(), [var](const Term& t) { return t.mono[var] != 0; });
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_ring(a.ring_, b.ring_, "multiply");
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coeff * t.coeff;
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) terms.push_back({m, std::move(c)});
    Polynomial r(a.ring_);
    r.terms_ = std::move(terms);
    r.sort_terms();
    return r;
  }

  friend Polynomial operator*(const Rational& c, const Polynomial& p) {
    if (c == 0) return Polynomial(p.ring_);
    Polynomial r = p;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial mul_term(const Monomial& m, const Rational& c) const {
    Polynomial r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    return r;  // multiplication by a monomial preserves the order
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!same_ring(a.ring_, b.ring_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

 private:
  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    require_same_ring(a.ring_, b.ring_, subtract ? "subtract" : "add");
    const PolyRing& R = *a.ring_;
    Polynomial r(a.ring_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size() ? -1 : j == b.size() ? 1 : R.compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        const Term& t = b.terms_[j++];
        r.terms_.push_back({t.mono, subtract ? Rational(-t.coeff) : t.coeff});
      } else {
        Rational s = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                              : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
        if (s != 0) r.terms_.push_back({a.terms_[i].mono, std::move(s)});
        ++i, ++j;
      }
    }
    return r;
  }

  void sort_terms() {
    const PolyRing& R = *ring_;
    std::sort(terms_.begin(), terms_.end(),
              [&R](const Term& x, const Term& y) { return R.greater(x.mono, y.mono); });
  }

  void canonicalize() {
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    for (auto& t : terms_) {
      for (std::size_t i = ring_->nvars(); i < kMaxVars; ++i)
        if (t.mono[i] != 0) throw RingMismatch("exponent vector longer than the ring");
      acc[t.mono] += t.coeff;
    }
    terms_.clear();
    for (auto& [m, c] : acc)
      if (c != 0) terms_.push_back({m, std::move(c)});
    sort_terms();
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

inline Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial r = Polynomial::constant(p.ring(), 1);
  Polynomial base = p;
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

inline Polynomial derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.ring()->nvars()) throw RingMismatch("derivative: unknown variable index");
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    if (t.mono[var] == 0) continue;
    Term d{t.mono, t.coeff * t.mono[var]};
    d.mono[var] -= 1;
    out.push_back(std::move(d));
  }
  return Polynomial::from_terms(p.ring(), std::move(out));
}

inline Polynomial derivative(const Polynomial& p, std::string_view var) {
  return derivative(p, p.ring()->index_of(var));
}

// Common weighted degree of all terms; nullopt when the terms disagree.
inline std::optional<long> weighted_degree(const Polynomial& p) {
  if (p.is_zero()) throw ComputationError("weighted degree of the zero polynomial");
  long d = p.ring()->weighted_degree(p.terms().front().mono);
  for (const auto& t : p.terms())
    if (p.ring()->weighted_degree(t.mono) != d) return std::nullopt;
  return d;
}

inline bool is_homogeneous(const Polynomial& p) { return p.is_zero() || weighted_degree(p).has_value(); }

// Integer-primitive form: denominators cleared, content removed, leading
// coefficient positive.
inline Polynomial normalized(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den = 1, num = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  Rational scale(den, num);
  scale.canonicalize();
  if (p.leading_coeff() < 0) scale = -scale;
  return scale * p;
}

// Moves p into another ring whose variables are a superset of (or rename)
// p's: variable i of p's ring becomes variable index_map[i] of `to`.
inline Polynomial embed(const Polynomial& p, const RingPtr& to, const std::vector<std::size_t>& index_map) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Term u{Monomial{}, t.coeff};
    for (std::size_t i = 0; i < p.ring()->nvars(); ++i)
      if (t.mono[i]) u.mono.exp.at(index_map.at(i)) = t.mono[i];
    out.push_back(std::move(u));
  }
  return Polynomial::from_terms(to, std::move(out));
}

// Embeds by variable name: every variable of p's ring must exist in `to`.
inline Polynomial embed_by_name(const Polynomial& p, const RingPtr& to) {
  std::vector<std::size_t> idx;
  for (const auto& v : p.ring()->vars()) idx.push_back(to->index_of(v));
  return embed(p, to, idx);
}

// Sets the listed variables to zero and drops them: the result lives in `to`,
// whose variables are those of p's ring minus `zeroed`, matched by name.
inline Polynomial specialize_to_zero(const Polynomial& p, const std::vector<std::size_t>& zeroed,
                                     const RingPtr& to) {
  std::vector<Term> kept;
  for (const auto& t : p.terms()) {
    bool vanishes = std::any_of(zeroed.begin(), zeroed.end(), [&](std::size_t v) { return t.mono[v] != 0; });
    if (!vanishes) kept.push_back(t);
  }
  Polynomial q = Polynomial::from_terms(p.ring(), std::move(kept));
  std::vector<std::size_t> idx(p.ring()->nvars(), 0);
  for (std::size_t i = 0; i < p.ring()->nvars(); ++i) {
    bool z = std::find(zeroed.begin(), zeroed.end(), i) != zeroed.end();
    idx[i] = z ? 0 : to->index_of(p.ring()->var(i));
  }
  return embed(q, to, idx);
}

// Ring homomorphism given by the images of the source ring's variables.
class RingMap {
 public:
  RingMap(RingPtr source, RingPtr dest, std::vector<Polynomial> images)
      : source_(std::move(source)), dest_(std::move(dest)), images_(std::move(images)) {
    if (images_.size() != source_->nvars())
      throw RingMismatch("ring map needs one image per source variable");
    for (const auto& im : images_) require_same_ring(im.ring(), dest_, "ring map image");
  }

  static RingMap identity(const RingPtr& ring) {
    std::vector<Polynomial> ims;
    for (std::size_t i = 0; i < ring->nvars(); ++i) ims.push_back(Polynomial::variable(ring, i));
    return RingMap(ring, ring, std::move(ims));
  }

  const RingPtr& source() const { return source_; }
  const RingPtr& dest() const { return dest_; }
  const std::vector<Polynomial>& images() const { return images_; }

  Polynomial operator()(const Polynomial& p) const {
    require_same_ring(p.ring(), source_, "apply_map");
    std::vector<std::vector<Polynomial>> powers(source_->nvars());
    auto power = [&](std::size_t v, unsigned e) -> const Polynomial& {
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(Polynomial::constant(dest_, 1));
      while (cache.size() <= e) cache.push_back(cache.back() * images_[v]);
      return cache[e];
    };
    Polynomial acc(dest_);
    for (const auto& t : p.terms()) {
      Polynomial term = Polynomial::constant(dest_, t.coeff);
      for (std::size_t v = 0; v < source_->nvars(); ++v)
        if (t.mono[v]) term = term * power(v, t.mono[v]);
      acc += term;
    }
    return acc;
  }

 private:
  RingPtr source_;
  RingPtr dest_;
  std::vector<Polynomial> images_;
};

inline Polynomial apply_map(const RingMap& m, const Polynomial& p) { return m(p); }

// Exact quotient p / d; throws when d does not divide p.
inline Polynomial exact_divide(const Polynomial& p, const Polynomial& d) {
  require_same_ring(p.ring(), d.ring(), "exact_divide");
  if (d.is_zero()) throw ComputationError("division by the zero polynomial");
  Polynomial rest = p;
  std::vector<Term> q;
  while (!rest.is_zero()) {
    if (!divides(d.leading_monomial(), rest.leading_monomial()))
      throw ComputationError("exact_divide: divisor does not divide");
    Monomial m = quotient(rest.leading_monomial(), d.leading_monomial());
    Rational c = rest.leading_coeff() / d.leading_coeff();
    rest -= d.mul_term(m, c);
    q.push_back({m, c});
  }
  return Polynomial::from_terms(p.ring(), std::move(q));
}

}  // namespace fitcalc
