#pragma once

// Tensor-product 4-point Lagrange interpolation on slab fields: periodic in
// x, clamped stencils near the temporal edges. Fourth-order for smooth data;
// first derivatives come from differentiating the weights.

#include <array>
#include <cmath>

#include "kgcyl/grid.hpp"

namespace kgcyl {
namespace detail {

inline std::array<double, 4> lagrange4(double u) {
  // nodes at -1, 0, 1, 2; evaluation point u measured from node 0
  return {-u * (u - 1.0) * (u - 2.0) / 6.0, (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0,
          -(u + 1.0) * u * (u - 2.0) / 2.0, (u + 1.0) * u * (u - 1.0) / 6.0};
}

inline std::array<double, 4> lagrange4_prime(double u) {
  return {-(3.0 * u * u - 6.0 * u + 2.0) / 6.0, (3.0 * u * u - 4.0 * u - 1.0) / 2.0,
          -(3.0 * u * u - 2.0 * u - 2.0) / 2.0, (3.0 * u * u - 1.0) / 6.0};
}

}  // namespace detail

class BicubicSampler {
 public:
  BicubicSampler(const Field2D& f, const Grid& g) : f_(&f), g_(&g) {}

  double value(double t, double x) const { return sample(t, x, false, false); }
  double d_t(double t, double x) const { return sample(t, x, true, false) / g_->dt; }
  double d_x(double t, double x) const { return sample(t, x, false, true) / g_->dx(); }

 private:
  double sample(double t, double x, bool dt_weights, bool dx_weights) const {
    const Grid& g = *g_;
    double ut = (t - g.t0) / g.dt;
    int n0 = static_cast<int>(std::floor(ut));
    // clamp the 4-point stencil {n0-1..n0+2} into the slab
    int base = n0 - 1;
    if (base < 0) base = 0;
    if (base > g.n_t - 4) base = g.n_t - 4;
    double wu = ut - (base + 1);
    if (ut < -0.5 || ut > g.n_t - 0.5) throw OutOfDomainError("interpolation time outside slab");

    double ux = x / g.dx();
    int i0 = static_cast<int>(std::floor(ux));
    double wv = ux - i0;

    auto wt = dt_weights ? detail::lagrange4_prime(wu) : detail::lagrange4(wu);
    auto wx = dx_weights ? detail::lagrange4_prime(wv) : detail::lagrange4(wv);

    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
      double row = 0.0;
      for (int b = 0; b < 4; ++b) row += wx[b] * f_->at_per(base + a, i0 - 1 + b);
      acc += wt[a] * row;
    }
    return acc;
  }

  const Field2D* f_;
  const Grid* g_;
};

}  // namespace kgcyl
