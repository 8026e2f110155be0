#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fitcalc/map_germ.hpp"

namespace fitcalc {

// Standard-monomial basis g0 = 1, g1, ..., gr of a finite quotient of the
// source ring, in increasing term order.
struct MonomialBasis {
  RingPtr ring;
  std::vector<Monomial> monomials;

  std::size_t multiplicity() const { return monomials.size(); }
};

// Basis of Q(f) = O_source / (f_1, ..., f_{n+1}).
inline MonomialBasis qalgebra_basis(const MapGerm& f) {
  GroebnerBasis G = buchberger(f.source(), f.components());
  MonomialBasis b{f.source(), {}};
  try {
    b.monomials = standard_monomials(G);
  } catch (const ComputationError&) {
    throw ComputationError("map not finite: Q(f) is infinite-dimensional");
  }
  return b;
}

struct Presentation {
  PolyMatrix lambda;     // over the target ring, square of size basis.multiplicity()
  MonomialBasis basis;   // module generators of f_*O, constant first
  bool validated = false;
  std::string diagnostic;
};

// Multiplication-table presentation: the source ring is free over the first
// n target coordinates with the staircase basis {g_i}; multiplying by the
// last component gives f_{n+1} g_i = sum_j a_ij g_j and lambda = (a_ij) - Y_{n+1} Id.
// `image` (the image equation) is used to validate det(lambda); it is computed
// when absent.
inline Presentation presentation_matrix(const MapGerm& f, std::optional<Polynomial> image = std::nullopt) {
  const PolyRing& S = *f.source();
  const PolyRing& T = *f.target();
  std::size_t n = S.nvars();

  // joined ring: source block then target block
  std::vector<std::string> names;
  std::vector<int> weights;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(S.var(i));
    weights.push_back(S.weights()[i]);
  }
  for (std::size_t j = 0; j <= n; ++j) {
    std::string name = T.var(j);
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "#";
    names.push_back(name);
    weights.push_back(T.weights()[j]);
  }
  RingPtr joined = PolyRing::make(names, weights, TermOrder::block(n, names.size()));
  std::vector<std::size_t> src_idx(n);
  for (std::size_t i = 0; i < n; ++i) src_idx[i] = i;

  std::vector<Polynomial> graph;
  for (std::size_t j = 0; j < n; ++j)
    graph.push_back(Polynomial::variable(joined, n + j) - embed(f.components()[j], joined, src_idx));
  GroebnerBasis G = buchberger(joined, graph);

  // source-only leading monomials bound the staircase of module generators
  std::vector<Monomial> pure;
  for (const auto& lm : G.leading_monomials()) {
    bool src_only = true;
    for (std::size_t v = n; v < joined->nvars() && src_only; ++v) src_only = lm[v] == 0;
    if (src_only) pure.push_back(lm);
  }
  RingPtr src_ring = PolyRing::make(S.vars(), S.weights());
  std::vector<Polynomial> pure_polys;
  for (const auto& m : pure) pure_polys.push_back(Polynomial::monomial(src_ring, m));
  if (pure_polys.empty())
    throw ComputationError("presentation not obtained: source ring is not finite over the first coordinates");
  std::vector<Monomial> basis;
  try {
    basis = standard_monomials(buchberger(src_ring, pure_polys));
  } catch (const ComputationError&) {
    throw ComputationError("presentation not obtained: source ring is not finite over the first coordinates");
  }
  std::sort(basis.begin(), basis.end(), [&S](const Monomial& a, const Monomial& b) { return S.compare(a, b) < 0; });

  std::size_t r = basis.size();
  PolyMatrix lambda(f.target(), r, r);
  Polynomial last = embed(f.components()[n], joined, src_idx);
  std::vector<std::size_t> tgt_back(joined->nvars(), 0);
  for (std::size_t j = 0; j <= n; ++j) tgt_back[n + j] = j;
  for (std::size_t i = 0; i < r; ++i) {
    Polynomial prod = last * Polynomial::monomial(joined, basis[i]);
    Polynomial nf = G.normal_form(prod);
    std::vector<std::vector<Term>> row(r);
    for (const auto& t : nf.terms()) {
      Monomial src, tgt;
      for (std::size_t v = 0; v < n; ++v) src[v] = t.mono[v];
      for (std::size_t v = n; v < joined->nvars(); ++v) tgt[v - n] = t.mono[v];
      auto it = std::find(basis.begin(), basis.end(), src);
      if (it == basis.end())
        throw ComputationError("presentation not obtained: normal form leaves the span of the module basis");
      row[std::size_t(it - basis.begin())].push_back({tgt, t.coeff});
    }
    for (std::size_t j = 0; j < r; ++j) lambda(i, j) = Polynomial::from_terms(f.target(), std::move(row[j]));
    lambda(i, i) -= Polynomial::variable(f.target(), n);
  }

  Presentation P{lambda, MonomialBasis{f.source(), basis}, false, ""};
  Polynomial h = image ? *image : image_ideal(f);
  Polynomial d = determinant(lambda);
  if (d.is_zero()) {
    P.diagnostic = "det(lambda) vanishes";
  } else if (ideal_equal(Ideal(f.target(), {d}), Ideal(f.target(), {h}))) {
    P.validated = true;
  } else {
    P.diagnostic = "det(lambda) does not generate the image ideal";
  }
  return P;
}

// Fitt_k = ideal of (size - k) minors of lambda.
inline Ideal fitting_from_presentation(const Presentation& P, std::size_t k) {
  if (!P.validated)
    throw ComputationError("refusing Fitting ideal from an unvalidated presentation: " + P.diagnostic);
  std::size_t size = P.lambda.rows();
  if (k >= size) return Ideal::unit(P.lambda.ring());
  return minors_ideal(P.lambda, size - k);
}

}  // namespace fitcalc
