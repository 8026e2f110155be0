#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "fitcalc/error.hpp"

namespace fitcalc {

// Largest variable count any ring may have. The biggest ring built in practice
// is the unfolding graph ring (17 variables) plus one intersection tag.
inline constexpr std::size_t kMaxVars = 32;

using Exponent = std::uint16_t;

// Exponent vector. Slots past the ring's variable count are always zero, so
// the arithmetic below can run over the full array without knowing the ring.
struct Monomial {
  std::array<Exponent, kMaxVars> exp{};

  Exponent operator[](std::size_t i) const { return exp[i]; }
  Exponent& operator[](std::size_t i) { return exp[i]; }

  bool is_one() const {
    return std::all_of(exp.begin(), exp.end(), [](Exponent e) { return e == 0; });
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(a.exp[i]) + unsigned(b.exp[i]);
    if (s > 0xFFFFu) throw ComputationError("exponent overflow");
    r.exp[i] = Exponent(s);
  }
  return r;
}

inline bool divides(const Monomial& d, const Monomial& m) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (d.exp[i] > m.exp[i]) return false;
  return true;
}

// m / d, assuming divides(d, m).
inline Monomial quotient(const Monomial& m, const Monomial& d) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = Exponent(m.exp[i] - d.exp[i]);
  return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = std::max(a.exp[i], b.exp[i]);
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] != 0 && b.exp[i] != 0) return false;
  return true;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Exponent e : m.exp) h = (h ^ e) * 1099511628211ull;
    return h;
  }
};

enum class BaseOrder { WeightedDegRevLex, WeightedLex };

// A term order is a sequence of contiguous variable blocks, compared
// lexicographically block by block; inside a block the weighted degree decides
// first and ties fall to reverse-lex or lex. A single block is a plain order.
struct TermOrder {
  struct Block {
    std::size_t begin;
    std::size_t end;
    BaseOrder kind;
    friend bool operator==(const Block&, const Block&) = default;
  };
  std::vector<Block> blocks;

  static TermOrder degrevlex(std::size_t nvars) {
    return TermOrder{{{0, nvars, BaseOrder::WeightedDegRevLex}}};
  }
  static TermOrder lex(std::size_t nvars) {
    return TermOrder{{{0, nvars, BaseOrder::WeightedLex}}};
  }
  // Eliminating order: the first `split` variables form a block that dominates
  // the remaining ones.
  static TermOrder block(std::size_t split, std::size_t nvars,
                         BaseOrder first = BaseOrder::WeightedDegRevLex,
                         BaseOrder second = BaseOrder::WeightedDegRevLex) {
    if (split == 0 || split >= nvars)
      throw Error("block split index must lie strictly inside the variable list");
    return TermOrder{{{0, split, first}, {split, nvars, second}}};
  }

  friend bool operator==(const TermOrder&, const TermOrder&) = default;
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
 public:
  PolyRing(std::vector<std::string> vars, std::vector<int> weights, TermOrder order)
      : vars_(std::move(vars)), weights_(std::move(weights)), order_(std::move(order)) {
    validate();
  }

  static RingPtr make(std::vector<std::string> vars, std::vector<int> weights = {},
                      std::optional<TermOrder> order = std::nullopt) {
    if (weights.empty()) weights.assign(vars.size(), 1);
    TermOrder o = order ? *order : TermOrder::degrevlex(vars.size());
    return std::make_shared<const PolyRing>(std::move(vars), std::move(weights), std::move(o));
  }

  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<int>& weights() const { return weights_; }
  const TermOrder& order() const { return order_; }
  const std::string& var(std::size_t i) const { return vars_.at(i); }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }
  std::size_t index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw RingMismatch("unknown variable '" + std::string(name) + "'");
  }

  long weighted_degree(const Monomial& m) const {
    return weighted_degree(m, 0, nvars());
  }
  long weighted_degree(const Monomial& m, std::size_t begin, std::size_t end) const {
    long d = 0;
    for (std::size_t i = begin; i < end; ++i) d += long(weights_[i]) * m.exp[i];
    return d;
  }

  // -1, 0, +1 as a is smaller, equal, larger than b.
  int compare(const Monomial& a, const Monomial& b) const {
    for (const auto& blk : order_.blocks) {
      long da = weighted_degree(a, blk.begin, blk.end);
      long db = weighted_degree(b, blk.begin, blk.end);
      if (da != db) return da > db ? 1 : -1;
      if (blk.kind == BaseOrder::WeightedDegRevLex) {
        for (std::size_t i = blk.end; i-- > blk.begin;)
          if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
      } else {
        for (std::size_t i = blk.begin; i < blk.end; ++i)
          if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
      }
    }
    return 0;
  }
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  // Same variables and weights, different term order.
  RingPtr with_order(TermOrder order) const {
    return std::make_shared<const PolyRing>(vars_, weights_, std::move(order));
  }

  Monomial variable(std::size_t i) const {
    Monomial m;
    m.exp.at(i) = 1;
    return m;
  }

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.vars_ == b.vars_ && a.weights_ == b.weights_ && a.order_ == b.order_;
  }

 private:
  void validate() const {
    if (vars_.size() > kMaxVars)
      throw Error("too many variables (max " + std::to_string(kMaxVars) + ")");
    if (weights_.size() != vars_.size()) throw Error("one weight per variable required");
    for (int w : weights_)
      if (w <= 0) throw Error("weights must be strictly positive");
    std::unordered_set<std::string> seen;
    for (const auto& v : vars_) {
      if (v.empty()) throw Error("empty variable name");
      if (!seen.insert(v).second) throw Error("duplicate variable name '" + v + "'");
    }
    std::size_t cursor = 0;
    if (order_.blocks.empty()) throw Error("term order has no blocks");
    for (const auto& blk : order_.blocks) {
      if (blk.begin != cursor || blk.end <= blk.begin)
        throw Error("term order blocks must tile the variable list");
      cursor = blk.end;
    }
    if (cursor != vars_.size()) throw Error("term order blocks must tile the variable list");
  }

  std::vector<std::string> vars_;
  std::vector<int> weights_;
  TermOrder order_;
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b, const char* what) {
  if (!same_ring(a, b)) throw RingMismatch(std::string(what) + ": operands over different rings");
}

}  // namespace fitcalc
