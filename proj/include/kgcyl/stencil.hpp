#pragma once

// Second-order finite-difference stencils on slab fields: periodic in x,
// centered in the interior, one-sided 3-point at the temporal slab edges.

#include "kgcyl/grid.hpp"

namespace kgcyl {

inline double d_x(const Field2D& f, const Grid& g, int n, int i) {
  return (f.at_per(n, i + 1) - f.at_per(n, i - 1)) / (2.0 * g.dx());
}

inline double d_xx(const Field2D& f, const Grid& g, int n, int i) {
  return (f.at_per(n, i + 1) - 2.0 * f(n, i) + f.at_per(n, i - 1)) / (g.dx() * g.dx());
}

inline double d_t(const Field2D& f, const Grid& g, int n, int i) {
  if (n == 0) return (-3.0 * f(0, i) + 4.0 * f(1, i) - f(2, i)) / (2.0 * g.dt);
  if (n == g.n_t - 1) return (3.0 * f(n, i) - 4.0 * f(n - 1, i) + f(n - 2, i)) / (2.0 * g.dt);
  return (f(n + 1, i) - f(n - 1, i)) / (2.0 * g.dt);
}

inline double d_tt(const Field2D& f, const Grid& g, int n, int i) {
  if (n == 0) return (2.0 * f(0, i) - 5.0 * f(1, i) + 4.0 * f(2, i) - f(3, i)) / (g.dt * g.dt);
  if (n == g.n_t - 1)
    return (2.0 * f(n, i) - 5.0 * f(n - 1, i) + 4.0 * f(n - 2, i) - f(n - 3, i)) / (g.dt * g.dt);
  return (f(n + 1, i) - 2.0 * f(n, i) + f(n - 1, i)) / (g.dt * g.dt);
}

inline double d_tx(const Field2D& f, const Grid& g, int n, int i) {
  if (n == 0 || n == g.n_t - 1) {
    // one-sided in t applied to the x-derivative
    auto dx_at = [&](int m) { return (f.at_per(m, i + 1) - f.at_per(m, i - 1)) / (2.0 * g.dx()); };
    if (n == 0) return (-3.0 * dx_at(0) + 4.0 * dx_at(1) - dx_at(2)) / (2.0 * g.dt);
    return (3.0 * dx_at(n) - 4.0 * dx_at(n - 1) + dx_at(n - 2)) / (2.0 * g.dt);
  }
  return (f.at_per(n + 1, i + 1) - f.at_per(n + 1, i - 1) - f.at_per(n - 1, i + 1) + f.at_per(n - 1, i - 1)) /
         (4.0 * g.dt * g.dx());
}

}  // namespace kgcyl
