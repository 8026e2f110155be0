#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "fitcalc/pipeline.hpp"

namespace fixtures {

using namespace fitcalc;

inline Ideal ideal_of(const RingPtr& R, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (const char* s : gens) g.push_back(parse_polynomial(R, s));
  return Ideal(R, std::move(g));
}

inline MapGerm germ(const RingPtr& S, const RingPtr& T, std::initializer_list<const char*> comps) {
  std::vector<Polynomial> c;
  for (const char* s : comps) c.push_back(parse_polynomial(S, s));
  return MapGerm(S, T, std::move(c));
}

// (x, y) -> (x, y^5 - xy, y^6 + xy^2), weights (4,1) / (4,5,6)
inline MapGerm main_germ() {
  return germ(PolyRing::make({"x", "y"}, {4, 1}), PolyRing::make({"X", "Y", "Z"}, {4, 5, 6}),
              {"x", "y5-xy", "y6+xy2"});
}

inline MapGerm cross_cap() {
  return germ(PolyRing::make({"x", "y"}, {1, 1}), PolyRing::make({"X", "Y", "Z"}, {1, 2, 2}), {"x", "y2", "xy"});
}

inline MapGerm corank2_germ() {
  return germ(PolyRing::make({"x", "y", "z"}), PolyRing::make({"X", "Y", "Z", "W"}, {1, 2, 2, 3}),
              {"x", "y2+xz", "z2+xy", "y3+y2z-yz2+z3"});
}

// x -> (x, 0)
inline MapGerm immersion() {
  auto S = PolyRing::make({"x"});
  auto T = PolyRing::make({"Y1", "Y2"});
  return MapGerm(S, T, {Polynomial::variable(S, std::size_t{0}), Polynomial(S)});
}

// The 6-parameter unfolding of the main germ.
inline MapGerm main_unfolding() {
  auto S = PolyRing::make({"x", "y", "a", "b", "c", "u", "v", "w"}, {4, 1, 2, 3, 4, 2, 3, 5});
  auto T = PolyRing::make({"X", "Y", "Z", "A", "B", "C", "U", "V", "W"}, {4, 5, 6, 2, 3, 4, 2, 3, 5});
  std::vector<Polynomial> c;
  for (const char* s : {"x", "y5-xy+ay3+by2+cy", "y6+xy2+uy4+vy3+wy", "a", "b", "c", "u", "v", "w"})
    c.push_back(parse_polynomial(S, s));
  std::vector<UnfoldingParam> p;
  for (std::size_t i = 0; i < 6; ++i) p.push_back({2 + i, 3 + i});
  return MapGerm(S, T, std::move(c), std::move(p));
}

// Cross-cap with one dummy parameter t -> T.
inline MapGerm cross_cap_trivial_unfolding() {
  auto S = PolyRing::make({"x", "y", "t"}, {1, 1, 1});
  auto T = PolyRing::make({"X", "Y", "Z", "T"}, {1, 2, 2, 1});
  std::vector<Polynomial> c;
  for (const char* s : {"x", "y2", "xy", "t"}) c.push_back(parse_polynomial(S, s));
  return MapGerm(S, T, std::move(c), {{2, 3}});
}

// Printed values for the main germ, over (X,Y,Z) weights (4,5,6).
inline const char* kImage = "16X5Y2+Y6-16X6Z+11XY4Z+28X2Y2Z2+8X3Z3-Z5";

inline std::vector<std::vector<const char*>> printed_tower() {
  return {
      {kImage},
      {"16X5-Y4-6XY2Z-4X2Z2", "16X4Y+Y3Z+4XYZ2", "8X3Y2+8X4Z-Y2Z2-2XZ3", "4X2Y3+12X3YZ+YZ3",
       "2XY4+10X2Y2Z+4X3Z2-Z4", "Y5+7XY3Z+8X2YZ2"},
      {"X3", "X2Y", "X2Z", "XY2", "XYZ", "Y3", "XZ2", "Y2Z", "YZ2", "Z3"},
      {"X2", "XY", "XZ", "Y2", "YZ", "Z2"},
      {"X", "Y", "Z"},
  };
}

inline Ideal printed_fitt(const RingPtr& T, std::size_t k) {
  std::vector<Polynomial> g;
  const auto tower = printed_tower();
  for (const char* s : tower.at(k)) g.push_back(parse_polynomial(T, s));
  return Ideal(T, std::move(g));
}

// The symmetrized matrix as printed.
inline PolyMatrix printed_lambda(const RingPtr& T) {
  const char* e[5][5] = {{"-Z", "0", "0", "2XY", "Y2+XZ"},
                         {"Y", "-Z", "0", "2X2", "2XY"},
                         {"2X", "Y", "-Z", "0", "0"},
                         {"0", "2X", "Y", "-Z", "0"},
                         {"0", "0", "2X", "Y", "-Z"}};
  PolyMatrix m(T, 5, 5);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 5; ++c) m(r, c) = parse_polynomial(T, e[r][c]);
  return m;
}

}  // namespace fixtures
