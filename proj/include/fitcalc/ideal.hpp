#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fitcalc/groebner.hpp"

namespace fitcalc {

// Finitely generated ideal. The reduced Gröbner basis is computed on first
// use and shared between copies.
class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(RingPtr ring) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {}
  Ideal(RingPtr ring, std::vector<Polynomial> gens) : Ideal(std::move(ring)) {
    for (auto& g : gens) {
      require_same_ring(g.ring(), ring_, "ideal generator");
      if (!g.is_zero()) gens_.push_back(std::move(g));
    }
  }

  static Ideal unit(const RingPtr& ring) { return Ideal(ring, {Polynomial::constant(ring, 1)}); }
  static Ideal zero(const RingPtr& ring) { return Ideal(ring); }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& gens() const { return gens_; }

  const GroebnerBasis& gb() const {
    std::call_once(cache_->once, [this] { cache_->basis = buchberger(ring_, gens_); });
    return cache_->basis;
  }

  bool contains(const Polynomial& p) const { return gb().contains(p); }
  bool contains(const Ideal& other) const {
    require_same_ring(ring_, other.ring_, "ideal containment");
    for (const auto& g : other.gens_)
      if (!contains(g)) return false;
    return true;
  }
  bool is_unit() const { return gb().is_unit(); }
  bool is_zero() const { return gens_.empty(); }

  // Reduced Gröbner basis in integer-primitive form; the canonical printed
  // form of the ideal.
  std::vector<Polynomial> normalized_generators() const { return gb().elements(); }

 private:
  struct Cache {
    std::once_flag once;
    GroebnerBasis basis;
  };

  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

namespace detail {
inline void push_unique(std::vector<Polynomial>& out, const Polynomial& p) {
  if (p.is_zero()) return;
  Polynomial n = normalized(p);
  for (const auto& q : out)
    if (q == n) return;
  out.push_back(std::move(n));
}
}  // namespace detail

inline bool ideal_equal(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring(), "ideal_equal");
  return a.contains(b) && b.contains(a);
}

inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring(), "ideal_sum");
  std::vector<Polynomial> g;
  for (const auto& p : a.gens()) detail::push_unique(g, p);
  for (const auto& p : b.gens()) detail::push_unique(g, p);
  return Ideal(a.ring(), std::move(g));
}

inline Ideal ideal_product(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring(), "ideal_product");
  std::vector<Polynomial> g;
  for (const auto& p : a.gens())
    for (const auto& q : b.gens()) detail::push_unique(g, p * q);
  return Ideal(a.ring(), std::move(g));
}

inline Ideal ideal_power(const Ideal& a, unsigned k) {
  if (k < 1) throw Error("ideal_power: exponent must be positive");
  Ideal r = a;
  for (unsigned i = 1; i < k; ++i) r = ideal_product(r, a);
  return r;
}

namespace detail {

// Ring with a fresh leading variable appended in front, plus the index map
// from the original ring.
struct Tagged {
  RingPtr ring;
  std::vector<std::size_t> index;
};

inline Tagged with_tag(const RingPtr& R) {
  std::string tag = "@t";
  while (R->find(tag)) tag += "'";
  std::vector<std::string> names{tag};
  std::vector<int> weights{1};
  for (std::size_t i = 0; i < R->nvars(); ++i) {
    names.push_back(R->var(i));
    weights.push_back(R->weights()[i]);
  }
  Tagged t;
  t.ring = PolyRing::make(names, weights, TermOrder::block(1, names.size()));
  for (std::size_t i = 0; i < R->nvars(); ++i) t.index.push_back(i + 1);
  return t;
}

}  // namespace detail

// I ∩ J by eliminating a tag variable t from t·I + (1 - t)·J.
inline Ideal ideal_intersect(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring(), "ideal_intersect");
  if (a.is_zero() || b.is_zero()) return Ideal::zero(a.ring());
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  auto tg = detail::with_tag(a.ring());
  Polynomial t = Polynomial::variable(tg.ring, std::size_t{0});
  Polynomial one_minus_t = Polynomial::constant(tg.ring, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : a.gens()) gens.push_back(t * embed(g, tg.ring, tg.index));
  for (const auto& g : b.gens()) gens.push_back(one_minus_t * embed(g, tg.ring, tg.index));
  GroebnerBasis G = buchberger(tg.ring, gens);
  std::vector<Polynomial> out;
  std::vector<std::size_t> back(tg.ring->nvars(), 0);
  for (std::size_t i = 1; i < back.size(); ++i) back[i] = i - 1;
  for (const auto& g : G.elements())
    if (!g.involves(0)) out.push_back(embed(g, a.ring(), back));
  return Ideal(a.ring(), std::move(out));
}

// (I : g) = (I ∩ (g)) / g
inline Ideal ideal_quotient(const Ideal& I, const Polynomial& g) {
  require_same_ring(I.ring(), g.ring(), "ideal_quotient");
  if (g.is_zero()) throw ComputationError("ideal_quotient: quotient by the zero ideal");
  if (I.contains(g)) return Ideal::unit(I.ring());
  if (g.is_constant()) return I;
  Ideal meet = ideal_intersect(I, Ideal(I.ring(), {g}));
  std::vector<Polynomial> out;
  for (const auto& m : meet.gens()) detail::push_unique(out, exact_divide(m, g));
  return Ideal(I.ring(), std::move(out));
}

// (I : J) as the intersection of (I : g) over the generators g of J. A
// generator g is skipped once the running intersection Q already has Q·g ⊆ I.
inline Ideal ideal_quotient(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring(), "ideal_quotient");
  if (J.is_zero()) throw ComputationError("ideal_quotient: quotient by the zero ideal");
  std::optional<Ideal> acc;
  for (const auto& g : J.gens()) {
    if (I.contains(g)) continue;
    if (acc) {
      bool absorbed = true;
      for (const auto& q : acc->gens())
        if (!(absorbed = I.contains(q * g))) break;
      if (absorbed) continue;
      acc = ideal_intersect(*acc, ideal_quotient(I, g));
    } else {
      acc = ideal_quotient(I, g);
    }
  }
  return acc ? *acc : Ideal::unit(I.ring());
}

// m⁻¹(J) = {p in m.source : m(p) ∈ J}, by eliminating the destination
// variables from J + (s - m(s)) in a joined ring. A source variable whose
// image is a bare destination variable is identified with it up front, which
// removes that variable from the elimination.
inline Ideal preimage(const RingMap& m, const Ideal& J) {
  require_same_ring(J.ring(), m.dest(), "preimage");
  const PolyRing& S = *m.source();
  const PolyRing& D = *m.dest();

  // dest variable -> source variable it is identified with
  std::vector<int> identified(D.nvars(), -1);
  std::vector<bool> source_done(S.nvars(), false);
  for (std::size_t i = 0; i < S.nvars(); ++i) {
    const Polynomial& im = m.images()[i];
    if (im.size() != 1 || im.leading_coeff() != 1) continue;
    const Monomial& mono = im.leading_monomial();
    int var = -1, deg = 0;
    for (std::size_t v = 0; v < D.nvars(); ++v)
      if (mono[v]) {
        deg += mono[v];
        var = int(v);
      }
    if (deg == 1 && identified[std::size_t(var)] < 0) {
      identified[std::size_t(var)] = int(i);
      source_done[i] = true;
    }
  }

  std::vector<std::string> names;
  std::vector<int> weights;
  std::vector<std::size_t> dest_slot(D.nvars(), 0);
  for (std::size_t v = 0; v < D.nvars(); ++v) {
    if (identified[v] >= 0) continue;
    std::string name = D.var(v);
    while (S.find(name) || std::find(names.begin(), names.end(), name) != names.end()) name += "#";
    dest_slot[v] = names.size();
    names.push_back(name);
    weights.push_back(D.weights()[v]);
  }
  std::size_t split = names.size();
  for (std::size_t i = 0; i < S.nvars(); ++i) {
    names.push_back(S.var(i));
    weights.push_back(S.weights()[i]);
  }
  std::optional<TermOrder> order;
  if (split > 0) order = TermOrder::block(split, names.size());
  RingPtr joined = PolyRing::make(names, weights, order);

  std::vector<Polynomial> dest_images;
  for (std::size_t v = 0; v < D.nvars(); ++v)
    dest_images.push_back(identified[v] >= 0 ? Polynomial::variable(joined, split + std::size_t(identified[v]))
                                             : Polynomial::variable(joined, dest_slot[v]));
  RingMap into(m.dest(), joined, dest_images);

  std::vector<Polynomial> gens;
  for (const auto& g : J.gens()) gens.push_back(into(g));
  for (std::size_t i = 0; i < S.nvars(); ++i)
    if (!source_done[i]) gens.push_back(Polynomial::variable(joined, split + i) - into(m.images()[i]));

  std::vector<std::size_t> back(names.size(), 0);
  for (std::size_t i = 0; i < S.nvars(); ++i) back[split + i] = i;
  std::vector<Polynomial> out;
  if (split == 0) {
    for (const auto& g : gens) detail::push_unique(out, embed(g, m.source(), back));
    return Ideal(m.source(), std::move(out));
  }
  if (gens.empty()) return Ideal::zero(m.source());
  GroebnerBasis G = buchberger(joined, gens);
  for (const auto& g : G.elements()) {
    bool free = true;
    for (std::size_t v = 0; v < split && free; ++v) free = !g.involves(v);
    if (free) out.push_back(embed(g, m.source(), back));
  }
  return Ideal(m.source(), std::move(out));
}

// Elimination at the ideal level; the result lives over `retained`, whose
// variables must be exactly the non-killed ones (matched by name).
inline Ideal eliminate(const Ideal& I, const std::vector<std::string>& kill, const RingPtr& retained) {
  if (I.is_zero()) return Ideal::zero(retained);
  Elimination e = eliminate(I.gens(), kill);
  if (e.ring->vars() != retained->vars()) throw RingMismatch("eliminate: retained ring does not match");
  std::vector<Polynomial> out;
  for (const auto& g : e.gens) out.push_back(embed_by_name(g, retained));
  return Ideal(retained, std::move(out));
}

// Ring obtained by dropping the listed variables (weights kept, weighted
// degrevlex order).
inline RingPtr drop_variables(const RingPtr& R, const std::vector<std::size_t>& drop) {
  std::vector<std::string> names;
  std::vector<int> weights;
  for (std::size_t i = 0; i < R->nvars(); ++i)
    if (std::find(drop.begin(), drop.end(), i) == drop.end()) {
      names.push_back(R->var(i));
      weights.push_back(R->weights()[i]);
    }
  if (names.empty()) throw Error("cannot drop every variable of a ring");
  return PolyRing::make(names, weights);
}

// Substitutes zero for the listed variables; the result lives over `to`
// (defaults to the ring with those variables dropped).
inline Ideal specialize(const Ideal& I, const std::vector<std::string>& vars_to_zero, RingPtr to = nullptr) {
  std::vector<std::size_t> idx;
  for (const auto& v : vars_to_zero) idx.push_back(I.ring()->index_of(v));
  if (idx.empty() && !to) return I;
  if (!to) to = drop_variables(I.ring(), idx);
  std::vector<Polynomial> out;
  for (const auto& g : I.gens()) detail::push_unique(out, specialize_to_zero(g, idx, to));
  return Ideal(to, std::move(out));
}

// True iff a is a nonzerodivisor modulo (h), i.e. ((h) : a) = (h).
inline bool is_nonzerodivisor_mod(const Polynomial& a, const Polynomial& h) {
  if (h.is_zero()) throw ComputationError("is_nonzerodivisor_mod: modulus is zero");
  require_same_ring(a.ring(), h.ring(), "is_nonzerodivisor_mod");
  if (a.is_zero()) return false;
  Ideal H(h.ring(), {h});
  return ideal_equal(ideal_quotient(H, a), H);
}

}  // namespace fitcalc
