#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fitcalc/presentation.hpp"

namespace fitcalc {

// Fitt_1 as the conductor, via the Grauert-Remmert quotient ((a) : (aJ : J))
// in O/(h), with J the Jacobian ideal of the image and a the first partial of h
// that is a nonzerodivisor mod h. Quotients in O/(h) are lifted to O by
// adding (h) to the numerator.
inline Ideal fitting1_grauert_remmert(const MapGerm& f, std::optional<Polynomial> image = std::nullopt) {
  Polynomial h = image ? *image : image_ideal(f);
  Ideal H(f.target(), {h});
  Ideal J = hypersurface_jacobian(h);
  std::optional<Polynomial> a;
  for (const auto& g : J.gens())
    if (is_nonzerodivisor_mod(g, h)) {
      a = g;
      break;
    }
  if (!a) throw ComputationError("no partial derivative of the image equation is a nonzerodivisor");
  Ideal A(f.target(), {*a});
  Ideal aJ = ideal_sum(ideal_product(A, J), H);
  Ideal endo = ideal_quotient(aJ, J);
  return ideal_quotient(ideal_sum(A, H), endo);
}

// (J_H : (F*)^{-1}(R_F)); equals Fitt_1 for weighted-homogeneous stable F.
// Stability is the caller's claim and is not checked.
inline Ideal fitting1_theorem1(const MapGerm& F, std::optional<Polynomial> image = std::nullopt) {
  Polynomial H = image ? *image : image_ideal(F);
  Ideal JH = hypersurface_jacobian(H);
  Ideal pre = preimage(F.pullback(), ramification_ideal(F));
  return ideal_quotient(JH, pre);
}

// Checks that F with its unfolding parameters set to zero is f.
inline void check_unfolding_restricts(const MapGerm& f, const MapGerm& F) {
  if (F.params().empty()) throw Error("unfolding has no parameters");
  std::vector<std::size_t> src_params, tgt_params;
  for (const auto& p : F.params()) {
    src_params.push_back(p.source_var);
    tgt_params.push_back(p.target_var);
  }
  RingPtr base_src = drop_variables(F.source(), src_params);
  RingPtr base_tgt = drop_variables(F.target(), tgt_params);
  if (base_src->vars() != f.source()->vars() || base_tgt->vars() != f.target()->vars())
    throw Error("unfolding restriction mismatch: variable names differ from the base germ");
  for (std::size_t j = 0; j < F.target()->nvars(); ++j) {
    if (std::find(tgt_params.begin(), tgt_params.end(), j) != tgt_params.end()) continue;
    Polynomial restricted = specialize_to_zero(F.components()[j], src_params, f.source());
    const Polynomial& base = f.components()[f.target()->index_of(F.target()->var(j))];
    if (restricted != base)
      throw Error("unfolding restriction mismatch in component " + F.target()->var(j));
  }
}

// Fitt_1(f) by base change from Fitt_1 of an unfolding F (parameters -> 0).
inline Ideal fitting1_from_unfolding(const MapGerm& f, const MapGerm& F) {
  check_unfolding_restricts(f, F);
  Ideal big = fitting1_theorem1(F);
  std::vector<std::string> zero;
  for (const auto& p : F.params()) zero.push_back(F.target()->var(p.target_var));
  return specialize(big, zero, f.target());
}

struct Tower {
  std::vector<Ideal> fitt;  // Fitt_0, Fitt_1, ...
  std::vector<std::string> warnings;
};

// Fitt_0 = (h), Fitt_1 from the conductor, then Fitt_{k+2} = (Fitt_{k+1}^2 : Fitt_k)
// until the unit ideal or index multiplicity(Q(f)).
inline Tower fitting_tower_theorem2(const MapGerm& f, std::optional<Polynomial> image = std::nullopt,
                                    std::optional<Ideal> fitt1 = std::nullopt) {
  Tower t;
  Polynomial h = image ? *image : image_ideal(f);
  std::size_t mult = qalgebra_basis(f).multiplicity();
  std::size_t corank = f.corank();
  if (corank >= 2)
    t.warnings.push_back("corank " + std::to_string(corank) + ": quotient tower is experimental beyond corank 1");
  t.fitt.push_back(Ideal(f.target(), {h}));
  t.fitt.push_back(fitt1 ? *fitt1 : fitting1_grauert_remmert(f, h));
  while (!t.fitt.back().is_unit() && t.fitt.size() <= mult) {
    std::size_t k = t.fitt.size() - 2;
    Ideal sq = ideal_power(t.fitt[k + 1], 2);
    t.fitt.push_back(ideal_quotient(sq, t.fitt[k]));
  }
  if (!t.fitt.back().is_unit())
    t.warnings.push_back("tower did not reach the unit ideal by index " + std::to_string(mult));
  return t;
}

// Ring (x_1..x_n, x_1'..x_n') with weights duplicated.
inline RingPtr doubled_ring(const RingPtr& S) {
  std::vector<std::string> names = S->vars();
  std::vector<int> weights = S->weights();
  for (std::size_t i = 0; i < S->nvars(); ++i) {
    std::string primed = S->var(i) + "'";
    while (S->find(primed)) primed += "'";
    names.push_back(primed);
    weights.push_back(S->weights()[i]);
  }
  return PolyRing::make(names, weights);
}

// Divided differences: alpha over the doubled ring with
// f_j(x) - f_j(x') = sum_i alpha_ji (x_i - x_i'), via the telescoping scheme
// (slot i differenced with slots before i already primed).
inline PolyMatrix divided_difference_matrix(const MapGerm& f) {
  std::size_t n = f.n();
  RingPtr D = doubled_ring(f.source());
  std::vector<std::size_t> unprimed(n);
  for (std::size_t i = 0; i < n; ++i) unprimed[i] = i;
  PolyMatrix alpha(D, n + 1, n);
  for (std::size_t j = 0; j <= n; ++j) {
    Polynomial p = embed(f.components()[j], D, unprimed);
    for (std::size_t i = 0; i < n; ++i) {
      // p has slots < i primed, slots >= i unprimed
      std::vector<Term> quot;
      for (const auto& t : p.terms()) {
        unsigned a = t.mono[i];
        if (!a) continue;
        Monomial rest = t.mono;
        rest[i] = 0;
        for (unsigned k = 0; k < a; ++k) {
          Monomial m = rest;
          m[i] = Exponent(k);
          m[n + i] = Exponent(a - 1 - k);
          quot.push_back({m, t.coeff});
        }
      }
      alpha(j, i) = Polynomial::from_terms(D, std::move(quot));
      // prime slot i
      std::vector<Term> moved;
      for (const auto& t : p.terms()) {
        Monomial m = t.mono;
        m[n + i] = Exponent(m[n + i] + m[i]);
        m[i] = 0;
        moved.push_back({m, t.coeff});
      }
      p = Polynomial::from_terms(D, std::move(moved));
    }
  }
  return alpha;
}

// Double-point ideal on the doubled source: (f(x) - f(x')) + n x n minors of alpha.
inline Ideal double_point_ideal(const MapGerm& f) {
  PolyMatrix alpha = divided_difference_matrix(f);
  const RingPtr& D = alpha.ring();
  std::size_t n = f.n();
  std::vector<std::size_t> unprimed(n), primed(n);
  for (std::size_t i = 0; i < n; ++i) {
    unprimed[i] = i;
    primed[i] = n + i;
  }
  std::vector<Polynomial> gens;
  for (const auto& c : f.components()) detail::push_unique(gens, embed(c, D, unprimed) - embed(c, D, primed));
  Ideal minors = minors_ideal(alpha, n);
  for (const auto& m : minors.gens()) detail::push_unique(gens, m);
  return Ideal(D, std::move(gens));
}

enum class Method { Minors, GrauertRemmert, Theorem1, Theorem2Tower };

inline const char* method_label(Method m) {
  switch (m) {
    case Method::Minors: return "minors";
    case Method::GrauertRemmert: return "grauert_remmert";
    case Method::Theorem1: return "theorem1";
    case Method::Theorem2Tower: return "theorem2_tower";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
  for (Method m : {Method::Minors, Method::GrauertRemmert, Method::Theorem1, Method::Theorem2Tower})
    if (s == method_label(m)) return m;
  // documentation aliases: both compute the conductor
  if (s == "radical" || s == "normal_conductor") return Method::GrauertRemmert;
  return std::nullopt;
}

struct MethodResult {
  Method method;
  std::vector<Ideal> tower;  // Fitt_0, Fitt_1, ... as far as the method reaches
  std::optional<std::string> error;
};

struct FittingReport {
  Polynomial image;
  std::optional<Presentation> presentation;
  std::vector<MethodResult> results;  // in Method enum order
  // consistency[a][b]: nullopt when either side failed
  std::vector<std::vector<std::optional<bool>>> consistency;
  std::vector<std::string> warnings;
};

// Two towers agree when their common prefix is ideal-equal entry by entry.
inline bool towers_agree(const std::vector<Ideal>& a, const std::vector<Ideal>& b) {
  std::size_t common = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < common; ++k)
    if (!ideal_equal(a[k], b[k])) return false;
  // a missing tail counts as (1) only if the longer tower has already reached it
  const auto& longer = a.size() > b.size() ? a : b;
  const auto& shorter = a.size() > b.size() ? b : a;
  if (!shorter.empty() && shorter.back().is_unit())
    for (std::size_t k = common; k < longer.size(); ++k)
      if (!longer[k].is_unit()) return false;
  return true;
}

// Runs each requested method, then compares all pairs. `unfolding`, when
// given, is used by the theorem1 path through base change.
inline FittingReport consistency_report(const MapGerm& f, std::vector<Method> methods,
                                        const MapGerm* unfolding = nullptr) {
  if (methods.empty()) throw Error("consistency_report: no methods requested");
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
  FittingReport rep;
  rep.image = image_ideal(f);
  if (!f.is_weighted_homogeneous())
    rep.warnings.push_back("input is not weighted-homogeneous: global results may differ from the germ");
  std::size_t corank = f.corank();
  if (corank >= 2) rep.warnings.push_back("corank " + std::to_string(corank) + " germ");

  Ideal fitt0(f.target(), {rep.image});
  std::optional<Ideal> gr_fitt1;
  for (Method m : methods) {
    MethodResult res{m, {}, std::nullopt};
    try {
      switch (m) {
        case Method::Minors: {
          rep.presentation = presentation_matrix(f, rep.image);
          if (!rep.presentation->validated) {
            rep.warnings.push_back("presentation not validated: " + rep.presentation->diagnostic);
            throw ComputationError("unvalidated presentation");
          }
          for (std::size_t k = 0; k <= rep.presentation->lambda.rows(); ++k)
            res.tower.push_back(fitting_from_presentation(*rep.presentation, k));
          break;
        }
        case Method::GrauertRemmert:
          gr_fitt1 = fitting1_grauert_remmert(f, rep.image);
          res.tower = {fitt0, *gr_fitt1};
          break;
        case Method::Theorem1:
          if (unfolding) {
            res.tower = {fitt0, fitting1_from_unfolding(f, *unfolding)};
          } else {
            rep.warnings.push_back("theorem1 applied to the germ itself: correct only if it is stable");
            res.tower = {fitt0, fitting1_theorem1(f, rep.image)};
          }
          break;
        case Method::Theorem2Tower: {
          Tower t = fitting_tower_theorem2(f, rep.image, gr_fitt1);
          res.tower = std::move(t.fitt);
          for (auto& w : t.warnings) rep.warnings.push_back(std::move(w));
          break;
        }
      }
    } catch (const BudgetExceeded& e) {
      res.error = e.what();
      rep.warnings.push_back(std::string(method_label(m)) + ": step budget exceeded");
    } catch (const Error& e) {
      res.error = e.what();
    }
    rep.results.push_back(std::move(res));
  }
  bool any_ok = std::any_of(rep.results.begin(), rep.results.end(), [](const MethodResult& r) { return !r.error; });
  if (!any_ok) {
    std::string msg = "all methods failed:";
    for (const auto& r : rep.results) msg += std::string(" ") + method_label(r.method) + ": " + *r.error + ";";
    throw ComputationError(msg);
  }
  std::size_t k = rep.results.size();
  rep.consistency.assign(k, std::vector<std::optional<bool>>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      if (rep.results[a].error || rep.results[b].error) continue;
      bool eq = a == b || towers_agree(rep.results[a].tower, rep.results[b].tower);
      rep.consistency[a][b] = rep.consistency[b][a] = eq;
    }
  return rep;
}

}  // namespace fitcalc
