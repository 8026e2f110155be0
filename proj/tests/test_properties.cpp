// Randomized invariants. Every property runs on kInstances small instances
// drawn from a fixed seed so failures reproduce.

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace fitcalc;

namespace {

constexpr int kInstances = 1000;

class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Monomial monomial(const PolyRing& R, int max_total) {
    Monomial m;
    int budget = uniform(0, max_total);
    for (int k = 0; k < budget; ++k) m[std::size_t(uniform(0, int(R.nvars()) - 1))]++;
    return m;
  }

  Polynomial poly(const RingPtr& R, int max_terms, int max_deg, bool allow_constant = true) {
    std::vector<Term> t;
    int n = uniform(1, max_terms);
    for (int i = 0; i < n; ++i) {
      Monomial m = monomial(*R, max_deg);
      if (!allow_constant && m.is_one()) m[std::size_t(uniform(0, int(R->nvars()) - 1))] = 1;
      int c = uniform(-3, 3);
      if (c == 0) c = 1;
      t.push_back({m, c});
    }
    return Polynomial::from_terms(R, std::move(t));
  }

  // Weighted-homogeneous polynomial of the given degree (may come out zero).
  Polynomial homogeneous(const RingPtr& R, long degree, int max_terms) {
    std::vector<Term> t;
    for (int i = 0; i < max_terms * 4 && int(t.size()) < max_terms; ++i) {
      Monomial m;
      long d = 0;
      for (int guard = 0; guard < 64 && d < degree; ++guard) {
        std::size_t v = std::size_t(uniform(0, int(R->nvars()) - 1));
        if (d + R->weights()[v] <= degree) {
          m[v]++;
          d += R->weights()[v];
        }
      }
      if (d != degree) continue;
      int c = uniform(-3, 3);
      if (c == 0) c = 2;
      t.push_back({m, c});
    }
    return Polynomial::from_terms(R, std::move(t));
  }

  RingPtr ring(std::size_t nvars, bool weighted) {
    static const char* names[] = {"a", "b", "c", "d"};
    std::vector<std::string> v(names, names + nvars);
    std::vector<int> w(nvars, 1);
    if (weighted)
      for (auto& x : w) x = uniform(1, 3);
    int kind = uniform(0, 2);
    std::optional<TermOrder> order;
    if (kind == 1) order = TermOrder::lex(nvars);
    if (kind == 2 && nvars > 1) order = TermOrder::block(std::size_t(uniform(1, int(nvars) - 1)), nvars);
    return PolyRing::make(v, w, order);
  }

  Ideal ideal(const RingPtr& R, int max_gens, int max_terms, int max_deg) {
    std::vector<Polynomial> g;
    int n = uniform(1, max_gens);
    for (int i = 0; i < n; ++i) g.push_back(poly(R, max_terms, max_deg, false));
    return Ideal(R, std::move(g));
  }

  PolyMatrix matrix(const RingPtr& R, std::size_t rows, std::size_t cols) {
    PolyMatrix m(R, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (uniform(0, 3)) m(r, c) = poly(R, 2, 2);
    return m;
  }

 private:
  std::mt19937 rng_;
};

}  // namespace

// ---------------------------------------------------------------- polyring

TEST(Properties, ArithmeticIsExactAndDistributive) {
  Gen g(11);
  for (int i = 0; i < kInstances; ++i) {
    auto R = g.ring(std::size_t(g.uniform(1, 3)), true);
    auto a = g.poly(R, 4, 4), b = g.poly(R, 4, 4), c = g.poly(R, 4, 4);
    ASSERT_EQ((a + b) * c, a * c + b * c);
    ASSERT_EQ(a * b, b * a);
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST(Properties, TermOrderAxioms) {
  Gen g(12);
  for (int i = 0; i < kInstances; ++i) {
    auto R = g.ring(std::size_t(g.uniform(1, 4)), true);
    Monomial a = g.monomial(*R, 5), b = g.monomial(*R, 5), m = g.monomial(*R, 3);
    int ab = R->compare(a, b);
    ASSERT_EQ(ab, -R->compare(b, a));
    ASSERT_EQ(ab == 0, a == b);
    if (ab != 0) ASSERT_EQ(R->compare(m * a, m * b), ab);
    ASSERT_LE(R->compare(Monomial{}, a), 0);
  }
}

TEST(Properties, ApplyMapIsHomomorphism) {
  Gen g(13);
  for (int i = 0; i < kInstances; ++i) {
    auto S = g.ring(2, false);
    auto D = g.ring(std::size_t(g.uniform(1, 3)), false);
    std::vector<Polynomial> images;
    for (std::size_t k = 0; k < S->nvars(); ++k) images.push_back(g.poly(D, 2, 2));
    RingMap m(S, D, images);
    auto p = g.poly(S, 3, 3), q = g.poly(S, 3, 3);
    ASSERT_EQ(m(p * q), m(p) * m(q));
    ASSERT_EQ(m(p + q), m(p) + m(q));
  }
}

// ---------------------------------------------------------------- groebner

TEST(Properties, SPairsReduceToZero) {
  Gen g(21);
  for (int i = 0; i < kInstances; ++i) {
    auto R = g.ring(std::size_t(g.uniform(2, 3)), true);
    std::vector<Polynomial> gens;
    int n = g.uniform(1, 3);
    for (int k = 0; k < n; ++k) gens.push_back(g.poly(R, 3, 3, false));
    GroebnerBasis G = buchberger(R, gens);
    ASSERT_TRUE(spairs_reduce_to_zero(G)) << i;
    ASSERT_TRUE(is_reduced(G)) << i;
    for (const auto& p : gens) ASSERT_TRUE(G.contains(p)) << i;
    for (const auto& e : G.elements()) {
      // integer-primitive, positive leading coefficient
      ASSERT_EQ(e, normalized(e)) << i;
    }
  }
}

// ---------------------------------------------------------------- ideals

TEST(Properties, QuotientBracketsIdeal) {
  Gen g(31);
  for (int i = 0; i < kInstances; ++i) {
    auto R = g.ring(2, false);
    Ideal I = g.ideal(R, 3, 2, 3);
    Ideal J = g.ideal(R, 2, 2, 2);
    if (J.is_zero()) {
      EXPECT_THROW(ideal_quotient(I, J), ComputationError);
      continue;
    }
    Ideal Q = ideal_quotient(I, J);
    ASSERT_TRUE(Q.contains(I)) << i;
    for (const auto& q : Q.gens())
      for (const auto& j : J.gens()) ASSERT_TRUE(I.contains(q * j)) << i;
  }
}

TEST(Properties, ProductInsideIntersection) {
  Gen g(32);
  for (int i = 0; i < kInstances / 4; ++i) {
    auto R = g.ring(2, false);
    Ideal I = g.ideal(R, 2, 2, 2), J = g.ideal(R, 2, 2, 2);
    Ideal meet = ideal_intersect(I, J);
    ASSERT_TRUE(meet.contains(ideal_product(I, J)));
    ASSERT_TRUE(I.contains(meet));
    ASSERT_TRUE(J.contains(meet));
  }
}

TEST(Properties, PreimagePushesForward) {
  Gen g(33);
  for (int i = 0; i < kInstances / 4; ++i) {
    auto S = PolyRing::make({"X", "Y"});
    auto D = PolyRing::make({"s", "t"});
    RingMap m(S, D, {g.poly(D, 2, 2, false), g.poly(D, 2, 2, false)});
    Ideal J = g.ideal(D, 2, 2, 2);
    Ideal P = preimage(m, J);
    for (const auto& p : P.gens()) ASSERT_TRUE(J.contains(m(p))) << i;
  }
}

// ---------------------------------------------------------------- matrices

TEST(Properties, MinorsInvariantUnderRowOperations) {
  Gen g(41);
  for (int i = 0; i < kInstances; ++i) {
    auto R = PolyRing::make({"a", "b"});
    std::size_t rows = std::size_t(g.uniform(2, 3)), cols = std::size_t(g.uniform(2, 3));
    PolyMatrix M = g.matrix(R, rows, cols);
    PolyMatrix N = M;
    std::size_t r1 = std::size_t(g.uniform(0, int(rows) - 1));
    std::size_t r2 = (r1 + 1 + std::size_t(g.uniform(0, int(rows) - 2))) % rows;
    switch (g.uniform(0, 2)) {
      case 0:
        for (std::size_t c = 0; c < cols; ++c) std::swap(N(r1, c), N(r2, c));
        break;
      case 1: {
        Polynomial k = g.poly(R, 2, 1);
        for (std::size_t c = 0; c < cols; ++c) N(r1, c) += k * N(r2, c);
        break;
      }
      default: {
        std::size_t c1 = std::size_t(g.uniform(0, int(cols) - 1)), c2 = (c1 + 1) % cols;
        for (std::size_t r = 0; r < rows; ++r) std::swap(N(r, c1), N(r, c2));
      }
    }
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k)
      ASSERT_TRUE(ideal_equal(minors_ideal(M, k), minors_ideal(N, k))) << i << " k=" << k;
  }
}

TEST(Properties, BareissAgreesWithLaplace) {
  Gen g(42);
  for (int i = 0; i < kInstances; ++i) {
    auto R = PolyRing::make({"a", "b", "c"});
    std::size_t n = std::size_t(g.uniform(1, 4));
    PolyMatrix M = g.matrix(R, n, n);
    ASSERT_EQ(determinant(M), determinant_bareiss(M)) << i;
  }
}

// Fitt_k = I_{n-k}: each ideal sits inside the next, ending at (1).
TEST(Properties, FittingChainAscends) {
  Gen g(43);
  for (int i = 0; i < kInstances; ++i) {
    auto R = PolyRing::make({"a", "b"});
    std::size_t n = std::size_t(g.uniform(1, 3));
    PolyMatrix M = g.matrix(R, n, n);
    std::vector<Ideal> fitt;
    for (std::size_t k = 0; k <= n; ++k) fitt.push_back(minors_ideal(M, n - k));
    for (std::size_t k = 0; k < n; ++k) ASSERT_TRUE(fitt[k + 1].contains(fitt[k])) << i << " k=" << k;
    ASSERT_TRUE(fitt[n].is_unit());
  }
}

// Towers of random corank-1 germs (x, y^p + x q(y), y^s + x r(y)) ascend too.
TEST(Properties, GermTowersAscend) {
  Gen g(44);
  int done = 0;
  for (int i = 0; done < kInstances / 20 && i < kInstances; ++i) {
    auto S = PolyRing::make({"x", "y"});
    auto T = PolyRing::make({"X", "Y", "Z"});
    int p = g.uniform(2, 3);
    Polynomial y = Polynomial::variable(S, std::size_t{1}), x = Polynomial::variable(S, std::size_t{0});
    Polynomial f2 = pow(y, unsigned(p)) + x * y * Polynomial::constant(S, g.uniform(-2, 2));
    Polynomial f3 = pow(y, unsigned(p + 1)) + x * pow(y, unsigned(g.uniform(1, 2))) * Polynomial::constant(S, g.uniform(1, 2));
    MapGerm f(S, T, {x, f2, f3});
    Presentation P = [&] {
      try {
        return std::optional<Presentation>(presentation_matrix(f));
      } catch (const ComputationError&) {
        return std::optional<Presentation>();
      }
    }().value_or(Presentation{PolyMatrix(T, 0, 0), MonomialBasis{S, {}}, false, ""});
    if (!P.validated) continue;
    ++done;
    std::size_t n = P.lambda.rows();
    for (std::size_t k = 0; k < n; ++k)
      ASSERT_TRUE(fitting_from_presentation(P, k + 1).contains(fitting_from_presentation(P, k))) << i;
  }
  EXPECT_GT(done, 0);
}

// ---------------------------------------------------------------- homogeneity

TEST(Properties, HomogeneityPreserved) {
  Gen g(51);
  for (int i = 0; i < kInstances; ++i) {
    auto R = g.ring(std::size_t(g.uniform(2, 3)), true);
    std::vector<Polynomial> a, b;
    for (int k = 0; k < 2; ++k) {
      auto p = g.homogeneous(R, g.uniform(2, 5), 3);
      if (!p.is_zero()) a.push_back(p);
      auto q = g.homogeneous(R, g.uniform(1, 4), 2);
      if (!q.is_zero()) b.push_back(q);
    }
    if (a.empty() || b.empty()) continue;
    Ideal I(R, a), J(R, b);
    for (const auto& e : I.gb().elements()) ASSERT_TRUE(is_homogeneous(e)) << i;
    for (const auto& e : ideal_intersect(I, J).normalized_generators()) ASSERT_TRUE(is_homogeneous(e)) << i;
    for (const auto& e : ideal_quotient(I, J).normalized_generators()) ASSERT_TRUE(is_homogeneous(e)) << i;
  }
}
