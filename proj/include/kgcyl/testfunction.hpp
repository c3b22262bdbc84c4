#pragma once

// Smooth compactly supported test functions on the slab, with their support
// bounding box. Values must vanish within two nodes of the temporal slab
// boundary so that propagator solves can clear the support.

#include <cmath>

#include "kgcyl/perturbation.hpp"
#include "kgcyl/spacetime.hpp"

namespace kgcyl {

struct TestFunction {
  Field2D values;
  double t_lo = 0.0, t_hi = 0.0;  // support bounds in time
  double x_c = 0.0, x_half = 0.0;  // support arc around x_c (x_half >= L/2: all of the circle)

  TestFunction() = default;
  explicit TestFunction(const Grid& g) : values(g) {}

  void validate(const Grid& g) const {
    for (int n = 0; n < g.n_t; ++n) {
      if (n >= 2 && n < g.n_t - 2) continue;
      for (int i = 0; i < g.n_x; ++i)
        if (values(n, i) != 0.0)
          throw OutOfDomainError("test function touches the temporal slab boundary");
    }
  }
};

// product of mollifiers: compact in t and (periodically) in x
inline TestFunction bump_test_function(const Spacetime& st, double t_c, double x_c, double t_half,
                                       double x_half, double amplitude = 1.0) {
  const Grid& g = st.grid;
  TestFunction f(g);
  f.t_lo = t_c - t_half;
  f.t_hi = t_c + t_half;
  f.x_c = x_c;
  f.x_half = x_half;
  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i) {
      double bt = mollifier((g.t(n) - t_c) / t_half);
      double bx = mollifier(g.wrap_dist(g.x(i), x_c) / x_half);
      f.values(n, i) = amplitude * bt * bx;
    }
  f.validate(g);
  return f;
}

inline TestFunction test_function_from_field(Field2D vals, const Spacetime& st) {
  const Grid& g = st.grid;
  TestFunction f(g);
  f.values = std::move(vals);
  // measured bounding box
  int n_lo = g.n_t, n_hi = -1;
  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i)
      if (f.values(n, i) != 0.0) {
        n_lo = std::min(n_lo, n);
        n_hi = std::max(n_hi, n);
      }
  if (n_hi < 0) {
    f.t_lo = f.t_hi = g.t0;
    f.x_half = 0.0;
    return f;
  }
  f.t_lo = g.t(n_lo);
  f.t_hi = g.t(n_hi);
  f.x_c = 0.0;
  f.x_half = g.length;  // conservative: no arc bound measured
  f.validate(g);
  return f;
}

}  // namespace kgcyl
