#pragma once

// Scalar curvature from centered finite differences of the Christoffel
// symbols. Conventions: R^r_{s mu nu} = d_mu G^r_{nu s} - d_nu G^r_{mu s}
// + G^r_{mu l} G^l_{nu s} - G^r_{nu l} G^l_{mu s}, Ricci R_{s nu} = R^r_{s r nu},
// R = g^{s nu} R_{s nu}. With signature (+,-) this gives
// R = -2 e^{-2w} (d_t^2 - d_x^2) w for g = e^{2w} diag(1,-1).

#include <array>

#include "kgcyl/metric.hpp"
#include "kgcyl/stencil.hpp"

namespace kgcyl {

inline Field2D scalar_curvature(const Metric& m, const Grid& g) {
  validate_metric(m, g);

  std::array<std::array<const Field2D*, 2>, 2> low{{{&m.tt, &m.tx}, {&m.tx, &m.xx}}};

  // Christoffel fields gamma[r][mu][nu], symmetric in (mu,nu)
  std::array<std::array<std::array<Field2D, 2>, 2>, 2> gamma;
  for (auto& a : gamma)
    for (auto& b : a)
      for (auto& c : b) c = Field2D(g);

  auto d_mu = [&](const Field2D& f, int mu, int n, int i) { return mu == 0 ? d_t(f, g, n, i) : d_x(f, g, n, i); };

  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i) {
      double up[2][2] = {{m.up_tt(n, i), m.up_tx(n, i)}, {m.up_tx(n, i), m.up_xx(n, i)}};
      for (int r = 0; r < 2; ++r)
        for (int mu = 0; mu < 2; ++mu)
          for (int nu = mu; nu < 2; ++nu) {
            double s = 0.0;
            for (int l = 0; l < 2; ++l)
              s += up[r][l] * (d_mu(*low[l][mu], nu, n, i) + d_mu(*low[l][nu], mu, n, i) -
                               d_mu(*low[mu][nu], l, n, i));
            gamma[r][mu][nu](n, i) = 0.5 * s;
            gamma[r][nu][mu](n, i) = 0.5 * s;
          }
    }

  Field2D R(g);
  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i) {
      double up[2][2] = {{m.up_tt(n, i), m.up_tx(n, i)}, {m.up_tx(n, i), m.up_xx(n, i)}};
      double acc = 0.0;
      for (int s = 0; s < 2; ++s)
        for (int nu = 0; nu < 2; ++nu) {
          double ric = 0.0;
          for (int r = 0; r < 2; ++r) {
            ric += d_mu(gamma[r][nu][s], r, n, i) - d_mu(gamma[r][r][s], nu, n, i);
            for (int l = 0; l < 2; ++l)
              ric += gamma[r][r][l](n, i) * gamma[l][nu][s](n, i) -
                     gamma[r][nu][l](n, i) * gamma[l][r][s](n, i);
          }
          acc += up[s][nu] * ric;
        }
      R(n, i) = acc;
    }
  return R;
}

}  // namespace kgcyl
