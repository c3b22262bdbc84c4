#pragma once

// The symplectic form in its two guises:
//   volume form   sigma(Ef, Eh) = int_M f (Eh) dmu_g
//   surface form  sigma(d1, d2) = int_S gamma [g^tt (phi1 pi2 - phi2 pi1)
//                                   + g^tx (phi1 d_x phi2 - phi2 d_x phi1)] dx
// The surface sign is calibrated once against the volume form on a flat test
// pair (cross-validation test) and frozen as written here.

#include "kgcyl/propagators.hpp"

namespace kgcyl {

// quadrature: trapezoid in t (half weights on boundary levels), periodic in x
inline double integrate_slab(const Field2D& f, const Grid& g, const Field2D* weight = nullptr) {
  double acc = 0.0;
  for (int n = 0; n < g.n_t; ++n) {
    double wt = (n == 0 || n == g.n_t - 1) ? 0.5 : 1.0;
    for (int i = 0; i < g.n_x; ++i) {
      double v = f(n, i);
      if (weight) v *= (*weight)(n, i);
      acc += wt * v;
    }
  }
  return acc * g.dt * g.dx();
}

inline double symplectic_volume(const Spacetime& st, const TestFunction& f, const TestFunction& h) {
  Propagators P(st);
  SolutionField Eh = P.e_causal(h);
  Field2D vol = volume_element(st.metric, st.grid);
  Field2D integrand(st.grid);
  for (int n = 0; n < st.grid.n_t; ++n)
    for (int i = 0; i < st.grid.n_x; ++i) integrand(n, i) = f.values(n, i) * Eh.values(n, i) * vol(n, i);
  return integrate_slab(integrand, st.grid);
}

inline double symplectic_surface(const CauchyData& d1, const CauchyData& d2, const Spacetime& st,
                                 double slice_time) {
  const Grid& g = st.grid;
  if (std::abs(d1.slice_time - slice_time) > 0.5 * g.dt || std::abs(d2.slice_time - slice_time) > 0.5 * g.dt)
    throw PreconditionError("symplectic_surface: data not on the requested slice");
  int n = g.level_of(slice_time);
  const Metric& m = st.metric;
  double acc = 0.0;
  for (int i = 0; i < g.n_x; ++i) {
    int ip = (i + 1) % g.n_x, im = (i + g.n_x - 1) % g.n_x;
    double dx1 = (d1.phi[ip] - d1.phi[im]) / (2.0 * g.dx());
    double dx2 = (d2.phi[ip] - d2.phi[im]) / (2.0 * g.dx());
    double ga = m.sqrt_neg_det(n, i);
    acc += ga * (m.up_tt(n, i) * (d1.phi[i] * d2.pi[i] - d2.phi[i] * d1.pi[i]) +
                 m.up_tx(n, i) * (d1.phi[i] * dx2 - d2.phi[i] * dx1));
  }
  return acc * g.dx();
}

}  // namespace kgcyl
