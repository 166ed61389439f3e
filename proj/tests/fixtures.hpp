#pragma once

#include <vector>

#include "deformae/cohomology.hpp"

namespace fx {

using namespace deformae;

// c * (wedge of factors), factors in file convention (j > 0: w^j, j < 0: wb^j).
inline Form<Scalar> mono(int n, const Scalar& c, std::vector<int> factors) {
  auto [m, s] = normalize_factors(n, factors);
  Form<Scalar> f(n);
  if (s != 0) f.add(m, s > 0 ? c : -c);
  return f;
}

inline Model iwasawa() {
  return Model::invariant("iwasawa", 3, {Form<Scalar>(3), Form<Scalar>(3), mono(3, -1, {1, 2})});
}

inline Model kodaira_thurston() {
  return Model::invariant("kodaira-thurston", 2, {Form<Scalar>(2), mono(2, 1, {1, -1})});
}

// Solvable model in the B classes at every bidegree.
inline Model solvable_b() {
  return Model::invariant("solvable-b", 3,
                          {mono(3, 1, {2, 3}) + mono(3, -1, {2, -3}) + mono(3, 1, {3, -3}),
                           mono(3, -1, {1, 3}) + mono(3, 1, {1, -3}), Form<Scalar>(3)});
}

inline Model torus(int n) { return Model::invariant("torus", n, std::vector<Form<Scalar>>(n, Form<Scalar>(n))); }

// Integrable Kuranishi family on the Iwasawa manifold.
inline BeltramiSeries iwasawa_family(const Scalar& a, const Scalar& b, bool second_order = true) {
  BeltramiSeries s;
  s.dim = 3;
  s.add_entry(1, 1, 1, a);
  s.add_entry(1, 2, 2, b);
  if (second_order) s.add_entry(2, 3, 3, -a * b);
  return s;
}

inline BeltramiSeries single(int n, int row, int conj_index, const Scalar& c = 1) {
  BeltramiSeries s;
  s.dim = n;
  s.add_entry(1, row, conj_index, c);
  return s;
}

}  // namespace fx
