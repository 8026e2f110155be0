#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fitcalc/polynomial.hpp"

namespace fitcalc {

inline constexpr unsigned long long kDefaultStepBudget = 10'000'000ull;

namespace detail {
inline unsigned long long& step_budget_slot() {
  thread_local unsigned long long budget = kDefaultStepBudget;
  return budget;
}
}  // namespace detail

// Reduction-step budget applied to every Gröbner computation on this thread.
inline unsigned long long step_budget() { return detail::step_budget_slot(); }

// Overrides the step budget for the lifetime of the guard.
class ScopedStepBudget {
 public:
  explicit ScopedStepBudget(unsigned long long budget) : saved_(detail::step_budget_slot()) {
    detail::step_budget_slot() = budget;
  }
  ~ScopedStepBudget() { detail::step_budget_slot() = saved_; }
  ScopedStepBudget(const ScopedStepBudget&) = delete;
  ScopedStepBudget& operator=(const ScopedStepBudget&) = delete;

 private:
  unsigned long long saved_;
};

namespace gb {

struct ITerm {
  Monomial mono;
  Integer coeff;
};

// Integer polynomial used inside the kernel; terms sorted decreasingly.
struct IPoly {
  std::vector<ITerm> terms;
  long sugar = 0;
  std::uint32_t lead_mask = 0;

  bool zero() const { return terms.empty(); }
  const Monomial& lm() const { return terms.front().mono; }
  const Integer& lc() const { return terms.front().coeff; }
};

inline std::uint32_t support_mask(const Monomial& m) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (m.exp[i]) mask |= (1u << i);
  return mask;
}

class StepCounter {
 public:
  explicit StepCounter(unsigned long long budget) : budget_(budget) {}
  void tick() {
    if (++steps_ > budget_)
      throw BudgetExceeded("Groebner basis computation exceeded the step budget of " + std::to_string(budget_) +
                               " reduction steps",
                           steps_);
  }
  unsigned long long steps() const { return steps_; }

 private:
  unsigned long long budget_;
  unsigned long long steps_ = 0;
};

inline Integer content(const IPoly& p) {
  Integer g = 0;
  for (const auto& t : p.terms) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// Divides by the content and makes the leading coefficient positive. Returns
// the signed factor that was divided out.
inline Integer make_primitive(IPoly& p) {
  if (p.zero()) return 1;
  Integer g = content(p);
  if (p.lc() < 0) g = -g;
  if (g != 1)
    for (auto& t : p.terms) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
  p.lead_mask = support_mask(p.lm());
  return g;
}

// Integer-primitive image of p and the rational factor k with p = k * result.
inline IPoly to_ipoly(const Polynomial& p, Rational* factor = nullptr) {
  Polynomial n = normalized(p);
  IPoly r;
  r.terms.reserve(n.size());
  for (const auto& t : n.terms()) r.terms.push_back({t.mono, t.coeff.get_num()});
  if (!r.zero()) {
    r.lead_mask = support_mask(r.lm());
    r.sugar = 0;
    for (const auto& t : r.terms) r.sugar = std::max(r.sugar, p.ring()->weighted_degree(t.mono));
    if (factor) *factor = p.leading_coeff() / n.leading_coeff();
  } else if (factor) {
    *factor = 1;
  }
  return r;
}

inline Polynomial from_ipoly(const IPoly& p, const RingPtr& ring) {
  std::vector<Term> terms;
  terms.reserve(p.terms.size());
  for (const auto& t : p.terms) terms.push_back({t.mono, Rational(t.coeff)});
  Polynomial out(ring);
  // already in canonical order; rebuild without a re-sort
  out = Polynomial::from_terms(ring, std::move(terms));
  return out;
}

// p <- a*p - b*m*q where the term of p at position `pos` cancels.
inline void axpy(IPoly& p, const Integer& a, const Integer& b, const Monomial& m, const IPoly& q,
                 std::size_t pos, const PolyRing& R) {
  std::vector<ITerm> out;
  out.reserve(p.terms.size() + q.terms.size());
  for (std::size_t i = 0; i < pos; ++i) {
    out.push_back(std::move(p.terms[i]));
    if (a != 1) out.back().coeff *= a;
  }
  std::size_t i = pos + 1, j = 1;
  Integer tmp;
  while (i < p.terms.size() || j < q.terms.size()) {
    int c;
    Monomial qm;
    if (j < q.terms.size()) qm = q.terms[j].mono * m;
    if (i == p.terms.size()) c = -1;
    else if (j == q.terms.size()) c = 1;
    else c = R.compare(p.terms[i].mono, qm);
    if (c > 0) {
      out.push_back(std::move(p.terms[i++]));
      if (a != 1) out.back().coeff *= a;
    } else if (c < 0) {
      tmp = q.terms[j++].coeff * b;
      out.push_back({qm, -tmp});
    } else {
      tmp = p.terms[i].coeff * a;
      tmp -= q.terms[j].coeff * b;
      if (tmp != 0) out.push_back({qm, tmp});
      ++i, ++j;
    }
  }
  p.terms = std::move(out);
}

// Reduces p modulo the reducers. With `full`, every term is reduced, otherwise
// only the leading term. Tracks `scale` with (original p) * scale == result
// modulo the ideal.
inline void reduce(IPoly& p, const std::vector<const IPoly*>& reducers, bool full, StepCounter& steps,
                   const PolyRing& R, Rational* scale = nullptr) {
  std::size_t pos = 0;
  unsigned since_content = 0;
  while (pos < p.terms.size()) {
    const Monomial& t = p.terms[pos].mono;
    std::uint32_t tmask = support_mask(t);
    const IPoly* div = nullptr;
    for (const IPoly* g : reducers) {
      if ((g->lead_mask & ~tmask) == 0 && divides(g->lm(), t)) {
        div = g;
        break;
      }
    }
    if (!div) {
      if (!full) return;
      ++pos;
      continue;
    }
    steps.tick();
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.terms[pos].coeff.get_mpz_t(), div->lc().get_mpz_t());
    Integer a = div->lc() / g;
    Integer b = p.terms[pos].coeff / g;
    Monomial m = quotient(t, div->lm());
    long deg = R.weighted_degree(m) + div->sugar;
    p.sugar = std::max(p.sugar, deg);
    axpy(p, a, b, m, *div, pos, R);
    if (scale && a != 1) *scale *= Rational(a);
    if (++since_content >= 8 && !p.zero()) {
      since_content = 0;
      Integer c = content(p);
      if (c != 1) {
        for (auto& term : p.terms) mpz_divexact(term.coeff.get_mpz_t(), term.coeff.get_mpz_t(), c.get_mpz_t());
        if (scale) *scale /= Rational(c);
      }
    }
  }
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  long sugar;
  long lcm_degree;
};

}  // namespace gb

// Reduced Gröbner basis with respect to the order of `ring`. Elements are
// integer-primitive with positive leading coefficient, sorted by increasing
// leading monomial.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(RingPtr ring, std::vector<gb::IPoly> elems) : ring_(std::move(ring)), ipolys_(std::move(elems)) {
    for (const auto& e : ipolys_) elements_.push_back(gb::from_ipoly(e, ring_));
    for (const auto& e : ipolys_) reducers_.push_back(&e);
  }
  GroebnerBasis(const GroebnerBasis& o) : GroebnerBasis(o.ring_, o.ipolys_) {}
  GroebnerBasis& operator=(const GroebnerBasis& o) {
    if (this != &o) *this = GroebnerBasis(o);
    return *this;
  }
  GroebnerBasis(GroebnerBasis&&) = default;
  GroebnerBasis& operator=(GroebnerBasis&&) = default;

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool is_unit() const { return elements_.size() == 1 && elements_[0].is_constant() && !elements_[0].is_zero(); }
  bool is_zero_ideal() const { return elements_.empty(); }

  // Canonical remainder of p; zero iff p lies in the ideal.
  Polynomial normal_form(const Polynomial& p) const {
    require_same_ring(p.ring(), ring_, "normal_form");
    if (p.is_zero()) return p;
    Rational k;
    gb::IPoly ip = gb::to_ipoly(p, &k);
    Rational scale = 1;
    gb::StepCounter steps(step_budget());
    gb::reduce(ip, reducers_, true, steps, *ring_, &scale);
    return (k / scale) * gb::from_ipoly(ip, ring_);
  }

  bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (const auto& e : ipolys_) out.push_back(e.lm());
    return out;
  }

 private:
  RingPtr ring_;
  std::vector<gb::IPoly> ipolys_;
  std::vector<Polynomial> elements_;
  std::vector<const gb::IPoly*> reducers_;
};

// Multivariate division of p by an arbitrary list (not necessarily a Gröbner
// basis): reducers are tried in list order. The result has no term divisible
// by a leading term of the list and p - result lies in the generated ideal.
inline Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis) {
  std::vector<gb::IPoly> ips;
  for (const auto& b : basis) {
    require_same_ring(b.ring(), p.ring(), "normal_form");
    if (!b.is_zero()) ips.push_back(gb::to_ipoly(b));
  }
  if (p.is_zero()) return p;
  std::vector<const gb::IPoly*> reducers;
  for (const auto& e : ips) reducers.push_back(&e);
  Rational k;
  gb::IPoly ip = gb::to_ipoly(p, &k);
  Rational scale = 1;
  gb::StepCounter steps(step_budget());
  gb::reduce(ip, reducers, true, steps, *p.ring(), &scale);
  return (k / scale) * gb::from_ipoly(ip, p.ring());
}

namespace detail {

// Buchberger's algorithm with the normal/sugar selection strategy and the
// Gebauer-Möller installation of the product and chain criteria.
class Buchberger {
 public:
  Buchberger(const RingPtr& ring, unsigned long long budget) : ring_(ring), R_(*ring), steps_(budget) {}

  GroebnerBasis run(const std::vector<Polynomial>& gens) {
    homogeneous_ = true;
    std::vector<gb::IPoly> input;
    for (const auto& g : gens) {
      require_same_ring(g.ring(), ring_, "buchberger");
      if (g.is_zero()) continue;
      homogeneous_ = homogeneous_ && is_homogeneous(g);
      input.push_back(gb::to_ipoly(g));
    }
    // insert smallest first so early elements can reduce later ones
    std::sort(input.begin(), input.end(),
              [this](const gb::IPoly& a, const gb::IPoly& b) { return R_.compare(a.lm(), b.lm()) < 0; });
    for (auto& g : input) {
      reduce_against_basis(g);
      if (g.zero()) continue;
      if (insert(std::move(g))) return unit_basis();
    }
    while (!pairs_.empty()) {
      auto it = pairs_.begin();
      gb::Pair pr = *it;
      pairs_.erase(it);
      gb::IPoly s = spoly(pr);
      long expected = R_.weighted_degree(pr.lcm);
      reduce_against_basis(s);
      if (s.zero()) continue;
      if (homogeneous_) {
        for (const auto& t : s.terms)
          if (R_.weighted_degree(t.mono) != expected)
            throw std::logic_error("S-polynomial reduction broke weighted homogeneity");
      }
      s.sugar = std::max(s.sugar, pr.sugar);
      if (insert(std::move(s))) return unit_basis();
    }
    return finish();
  }

  unsigned long long steps() const { return steps_.steps(); }

 private:
  struct PairLess {
    const PolyRing* R;
    bool operator()(const gb::Pair& a, const gb::Pair& b) const {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      int c = R->compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    }
  };

  gb::IPoly spoly(const gb::Pair& pr) {
    const gb::IPoly& f = polys_[pr.i];
    const gb::IPoly& g = polys_[pr.j];
    Integer d;
    mpz_gcd(d.get_mpz_t(), f.lc().get_mpz_t(), g.lc().get_mpz_t());
    Integer a = g.lc() / d, b = f.lc() / d;
    gb::IPoly s;
    Monomial mf = quotient(pr.lcm, f.lm());
    Monomial mg = quotient(pr.lcm, g.lm());
    s.terms.reserve(f.terms.size() + g.terms.size());
    for (const auto& t : f.terms) s.terms.push_back({t.mono * mf, t.coeff * a});
    // s = a*mf*f - b*mg*g; leading terms cancel at position 0
    gb::axpy(s, 1, b, mg, g, 0, R_);
    s.sugar = pr.sugar;
    if (!s.zero()) gb::make_primitive(s);
    return s;
  }

  void reduce_against_basis(gb::IPoly& p) {
    std::vector<const gb::IPoly*> reducers;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) reducers.push_back(&polys_[k]);
    gb::reduce(p, reducers, true, steps_, R_);
    gb::make_primitive(p);
  }

  gb::Pair make_pair(std::size_t i, std::size_t j) const {
    gb::Pair p{i, j, lcm(polys_[i].lm(), polys_[j].lm()), 0, 0};
    p.lcm_degree = R_.weighted_degree(p.lcm);
    long si = polys_[i].sugar + R_.weighted_degree(quotient(p.lcm, polys_[i].lm()));
    long sj = polys_[j].sugar + R_.weighted_degree(quotient(p.lcm, polys_[j].lm()));
    p.sugar = std::max(si, sj);
    return p;
  }

  // Gebauer-Möller update; returns true when the ideal became the unit ideal.
  bool insert(gb::IPoly h) {
    if (h.terms.size() == 1 && h.lm().is_one()) return true;
    std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    active_.push_back(false);
    const Monomial& lh = polys_[hi].lm();

    std::vector<gb::Pair> C;
    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g]) C.push_back(make_pair(g, hi));

    std::vector<gb::Pair> D;
    for (std::size_t k = 0; k < C.size(); ++k) {
      const gb::Pair& p = C[k];
      bool keep = coprime(lh, polys_[p.i].lm());
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < C.size() && keep; ++l)
          if (divides(C[l].lcm, p.lcm)) keep = false;
        for (std::size_t l = 0; l < D.size() && keep; ++l)
          if (divides(D[l].lcm, p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    // chain criterion on old pairs
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      const gb::Pair& p = *it;
      if (divides(lh, p.lcm) && lcm(polys_[p.i].lm(), lh) != p.lcm && lcm(polys_[p.j].lm(), lh) != p.lcm)
        it = pairs_.erase(it);
      else
        ++it;
    }
    // product criterion on new pairs
    for (const auto& p : D)
      if (!coprime(lh, polys_[p.i].lm())) pairs_.insert(p);

    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g] && divides(lh, polys_[g].lm())) active_[g] = false;
    active_[hi] = true;
    return false;
  }

  GroebnerBasis unit_basis() {
    gb::IPoly one;
    one.terms.push_back({Monomial{}, 1});
    std::vector<gb::IPoly> v;
    v.push_back(std::move(one));
    return GroebnerBasis(ring_, std::move(v));
  }

  GroebnerBasis finish() {
    std::vector<gb::IPoly> basis;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) basis.push_back(polys_[k]);
    std::sort(basis.begin(), basis.end(),
              [this](const gb::IPoly& a, const gb::IPoly& b) { return R_.compare(a.lm(), b.lm()) < 0; });
    // tail-reduce every element by the others
    for (std::size_t k = 0; k < basis.size(); ++k) {
      std::vector<const gb::IPoly*> others;
      for (std::size_t l = 0; l < basis.size(); ++l)
        if (l != k) others.push_back(&basis[l]);
      gb::IPoly& p = basis[k];
      gb::IPoly head;
      head.terms.push_back(p.terms.front());
      gb::IPoly tail;
      tail.terms.assign(p.terms.begin() + 1, p.terms.end());
      Rational scale = 1;
      gb::reduce(tail, others, true, steps_, R_, &scale);
      // head*scale + reduced tail
      Integer num = scale.get_num(), den = scale.get_den();
      gb::IPoly merged;
      merged.terms.push_back({head.terms[0].mono, head.terms[0].coeff * num});
      for (auto& t : tail.terms) merged.terms.push_back({t.mono, t.coeff * den});
      merged.sugar = p.sugar;
      gb::make_primitive(merged);
      p = std::move(merged);
    }
    return GroebnerBasis(ring_, std::move(basis));
  }

  RingPtr ring_;
  const PolyRing& R_;
  gb::StepCounter steps_;
  bool homogeneous_ = true;
  std::vector<gb::IPoly> polys_;
  std::vector<bool> active_;
  std::set<gb::Pair, PairLess> pairs_{PairLess{&R_}};
};

}  // namespace detail

inline GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens) {
  detail::Buchberger b(ring, step_budget());
  return b.run(gens);
}

// Gröbner basis of the generators with respect to an explicit order; the
// generators are re-sorted into a ring that differs from theirs only in order.
inline GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const TermOrder& order) {
  if (gens.empty()) throw Error("buchberger: empty generator list");
  RingPtr src = gens.front().ring();
  RingPtr ring = src->order() == order ? src : src->with_order(order);
  std::vector<std::size_t> idx(ring->nvars());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<Polynomial> moved;
  for (const auto& g : gens) {
    require_same_ring(g.ring(), src, "buchberger");
    moved.push_back(ring == src ? g : embed(g, ring, idx));
  }
  return buchberger(ring, moved);
}

// True when every S-polynomial of the basis reduces to zero modulo it.
inline bool spairs_reduce_to_zero(const GroebnerBasis& G) {
  const auto& el = G.elements();
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = i + 1; j < el.size(); ++j) {
      const auto& f = el[i];
      const auto& g = el[j];
      Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
      Polynomial s = f.mul_term(quotient(l, f.leading_monomial()), 1 / f.leading_coeff()) -
                     g.mul_term(quotient(l, g.leading_monomial()), 1 / g.leading_coeff());
      if (!normal_form(s, el).is_zero()) return false;
    }
  return true;
}

// True when no term of any element is divisible by another element's leading term.
inline bool is_reduced(const GroebnerBasis& G) {
  const auto& el = G.elements();
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = 0; j < el.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : el[i].terms())
        if (divides(el[j].leading_monomial(), t.mono)) return false;
    }
  return true;
}

// Result of an elimination: generators of the elimination ideal over `ring`,
// which holds the retained variables in their original order.
struct Elimination {
  RingPtr ring;
  std::vector<Polynomial> gens;
};

// I ∩ k[retained variables], via a two-block order with the killed block first.
inline Elimination eliminate(const std::vector<Polynomial>& gens, const std::vector<std::size_t>& kill) {
  if (gens.empty()) throw Error("eliminate: empty generator list");
  const RingPtr& R = gens.front().ring();
  std::vector<bool> killed(R->nvars(), false);
  for (std::size_t k : kill) {
    if (k >= R->nvars()) throw RingMismatch("eliminate: unknown variable index");
    killed[k] = true;
  }
  std::vector<std::string> names, kept_names;
  std::vector<int> weights, kept_weights;
  std::vector<std::size_t> idx(R->nvars());
  for (std::size_t i = 0; i < R->nvars(); ++i)
    if (killed[i]) {
      idx[i] = names.size();
      names.push_back(R->var(i));
      weights.push_back(R->weights()[i]);
    }
  std::size_t split = names.size();
  for (std::size_t i = 0; i < R->nvars(); ++i)
    if (!killed[i]) {
      idx[i] = names.size();
      names.push_back(R->var(i));
      weights.push_back(R->weights()[i]);
      kept_names.push_back(R->var(i));
      kept_weights.push_back(R->weights()[i]);
    }
  if (kept_names.empty()) throw Error("eliminate: no variables retained");
  RingPtr kept = PolyRing::make(kept_names, kept_weights);
  if (split == 0) {
    Elimination e{kept, {}};
    for (const auto& g : gens) e.gens.push_back(embed_by_name(g, kept));
    return e;
  }
  RingPtr big = PolyRing::make(names, weights, TermOrder::block(split, names.size()));
  std::vector<Polynomial> moved;
  for (const auto& g : gens) {
    require_same_ring(g.ring(), R, "eliminate");
    moved.push_back(embed(g, big, idx));
  }
  GroebnerBasis G = buchberger(big, moved);
  Elimination e{kept, {}};
  std::vector<std::size_t> back(names.size(), 0);
  for (std::size_t i = split; i < names.size(); ++i) back[i] = i - split;
  for (const auto& g : G.elements()) {
    bool free = true;
    for (std::size_t v = 0; v < split && free; ++v) free = !g.involves(v);
    if (free) e.gens.push_back(embed(g, kept, back));
  }
  return e;
}

inline Elimination eliminate(const std::vector<Polynomial>& gens, const std::vector<std::string>& kill) {
  if (gens.empty()) throw Error("eliminate: empty generator list");
  std::vector<std::size_t> idx;
  for (const auto& k : kill) idx.push_back(gens.front().ring()->index_of(k));
  return eliminate(gens, idx);
}

// Standard monomials of a zero-dimensional ideal, increasing in term order.
// Throws when the staircase is infinite.
inline std::vector<Monomial> standard_monomials(const GroebnerBasis& G) {
  const PolyRing& R = *G.ring();
  std::size_t n = R.nvars();
  auto lms = G.leading_monomials();
  if (G.is_zero_ideal() && n > 0) throw ComputationError("staircase is infinite");
  std::vector<unsigned> bound(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    bool found = false;
    for (const auto& m : lms) {
      bool pure = true;
      for (std::size_t w = 0; w < n && pure; ++w)
        if (w != v && m[w]) pure = false;
      if (pure && m[v] > 0) {
        bound[v] = found ? std::min<unsigned>(bound[v], m[v]) : m[v];
        found = true;
      }
    }
    if (!found) throw ComputationError("staircase is infinite (no pure power of " + R.var(v) + ")");
  }
  std::vector<Monomial> out;
  if (G.is_unit()) return out;
  Monomial m;
  // odometer over the bounding box, keeping monomials outside the leading ideal
  while (true) {
    bool standard = std::none_of(lms.begin(), lms.end(), [&](const Monomial& l) { return divides(l, m); });
    if (standard) out.push_back(m);
    std::size_t v = 0;
    while (v < n) {
      if (++m[v] < bound[v]) break;
      m[v] = 0;
      ++v;
    }
    if (v == n) break;
  }
  std::sort(out.begin(), out.end(), [&R](const Monomial& a, const Monomial& b) { return R.compare(a, b) < 0; });
  return out;
}

}  // namespace fitcalc
