#pragma once

#include <string>
#include <vector>

#include "fitcalc/matrix.hpp"

namespace fitcalc {

// An unfolding parameter u: source variable `source_var` is sent identically
// to target variable `target_var`.
struct UnfoldingParam {
  std::size_t source_var;
  std::size_t target_var;
  friend bool operator==(const UnfoldingParam&, const UnfoldingParam&) = default;
};

// Polynomial map-germ (C^n,0) -> (C^{n+1},0).
class MapGerm {
 public:
  MapGerm(RingPtr source, RingPtr target, std::vector<Polynomial> components,
          std::vector<UnfoldingParam> params = {})
      : source_(std::move(source)),
        target_(std::move(target)),
        components_(std::move(components)),
        params_(std::move(params)) {
    if (components_.size() != target_->nvars())
      throw Error("map-germ needs one component per target variable");
    if (target_->nvars() != source_->nvars() + 1)
      throw Error("map-germ target must have exactly one more variable than the source");
    for (const auto& c : components_) {
      require_same_ring(c.ring(), source_, "map-germ component");
      if (c.constant_term() != 0) throw Error("map-germ components must vanish at the origin");
    }
    for (const auto& p : params_) {
      if (p.source_var >= source_->nvars() || p.target_var >= target_->nvars())
        throw Error("unfolding parameter index out of range");
      if (components_[p.target_var] != Polynomial::variable(source_, p.source_var))
        throw Error("unfolding parameter " + source_->var(p.source_var) + " must map identically to " +
                    target_->var(p.target_var));
    }
  }

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const std::vector<Polynomial>& components() const { return components_; }
  const std::vector<UnfoldingParam>& params() const { return params_; }
  std::size_t n() const { return source_->nvars(); }

  // The pullback f*: target ring -> source ring.
  RingMap pullback() const { return RingMap(target_, source_, components_); }

  // Every component weighted-homogeneous of degree equal to its target weight.
  bool is_weighted_homogeneous() const {
    for (std::size_t i = 0; i < components_.size(); ++i) {
      if (components_[i].is_zero()) continue;
      auto d = weighted_degree(components_[i]);
      if (!d || *d != target_->weights()[i]) return false;
    }
    return true;
  }

  PolyMatrix differential() const { return jacobian_matrix(components_); }

  // n minus the rank of the differential at the origin.
  std::size_t corank() const { return n() - constant_rank(differential()); }

 private:
  RingPtr source_;
  RingPtr target_;
  std::vector<Polynomial> components_;
  std::vector<UnfoldingParam> params_;
};

// Ideal of maximal (n x n) minors of the differential, over the source ring.
inline Ideal ramification_ideal(const MapGerm& f) { return minors_ideal(f.differential(), f.n()); }

// Generator h of the image: the kernel of the pullback, which must be
// principal. Integer-primitive with positive leading coefficient.
inline Polynomial image_ideal(const MapGerm& f) {
  Ideal k = preimage(f.pullback(), Ideal::zero(f.source()));
  const auto& g = k.gb().elements();
  if (g.size() != 1 || g.front().is_constant())
    throw ComputationError("image is not a hypersurface (" + std::to_string(g.size()) +
                           " generators): map not generically one-to-one or not finite");
  return normalized(g.front());
}

}  // namespace fitcalc
