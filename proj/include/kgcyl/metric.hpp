#pragma once

// Lorentzian metrics on the cylinder slab, signature (+,-). Constant-t slices
// must stay Cauchy surfaces, so g^{tt} > 0 is enforced together with
// det g < 0 at every node.

#include <cmath>
#include <functional>
#include <string>

#include "kgcyl/errors.hpp"
#include "kgcyl/grid.hpp"

namespace kgcyl {

enum class MetricProvenance { background, perturbed, pulled_back };

struct Metric {
  Field2D tt, tx, xx;
  MetricProvenance provenance = MetricProvenance::background;

  Metric() = default;
  Metric(const Grid& g, MetricProvenance p = MetricProvenance::background)
      : tt(g), tx(g), xx(g), provenance(p) {}

  double det(int n, int i) const { return tt(n, i) * xx(n, i) - tx(n, i) * tx(n, i); }
  double sqrt_neg_det(int n, int i) const { return std::sqrt(-det(n, i)); }
  // inverse components
  double up_tt(int n, int i) const { return xx(n, i) / det(n, i); }
  double up_tx(int n, int i) const { return -tx(n, i) / det(n, i); }
  double up_xx(int n, int i) const { return tt(n, i) / det(n, i); }
};

inline void validate_metric(const Metric& m, const Grid& g) {
  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i) {
      double d = m.det(n, i);
      if (!(d < 0.0))
        throw InvalidMetricError("metric signature violated at node (" + std::to_string(n) + "," +
                                 std::to_string(i) + "), det = " + std::to_string(d));
      if (!(m.up_tt(n, i) > 0.0))
        throw InvalidMetricError("g^tt <= 0 at node (" + std::to_string(n) + "," + std::to_string(i) +
                                 "): constant-t slices are no longer Cauchy surfaces");
    }
}

// sqrt(-det g) per node
inline Field2D volume_element(const Metric& m, const Grid& g) {
  Field2D vol(g);
  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i) {
      double d = m.det(n, i);
      if (!(d < 0.0)) throw InvalidMetricError("volume_element: non-Lorentzian node");
      vol(n, i) = std::sqrt(-d);
    }
  return vol;
}

// characteristic (null) slopes dx/dt; the larger magnitude bounds causal cones
inline double char_speed_max(const Metric& m, int n, int i) {
  double disc = std::sqrt(m.tx(n, i) * m.tx(n, i) - m.tt(n, i) * m.xx(n, i));
  double v1 = (-m.tx(n, i) + disc) / m.xx(n, i);
  double v2 = (-m.tx(n, i) - disc) / m.xx(n, i);
  return std::max(std::abs(v1), std::abs(v2));
}

inline double char_speed_max(const Metric& m, const Grid& g) {
  double c = 0.0;
  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i) c = std::max(c, char_speed_max(m, n, i));
  return c;
}

// --- named analytic families (also the config-file vocabulary) ---

inline Metric flat_metric(const Grid& g) {
  Metric m(g, MetricProvenance::background);
  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i) {
      m.tt(n, i) = 1.0;
      m.tx(n, i) = 0.0;
      m.xx(n, i) = -1.0;
    }
  return m;
}

// smooth periodic profile in x, Gaussian in t
inline double gauss_cos_profile(double t, double x, double t_c, double x_c, double sigma_t, double sigma_x) {
  double ut = (t - t_c) / sigma_t;
  return std::exp(-0.5 * ut * ut) * std::exp((std::cos(x - x_c) - 1.0) / (sigma_x * sigma_x));
}

// g = e^{2 w} diag(1,-1) with w = eps * gauss_cos_profile
inline Metric conformal_bump_metric(const Grid& g, double eps, double t_c, double x_c, double sigma_t,
                                    double sigma_x) {
  Metric m(g, MetricProvenance::background);
  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i) {
      double w = eps * gauss_cos_profile(g.t(n), g.x(i), t_c, x_c, sigma_t, sigma_x);
      double e2w = std::exp(2.0 * w);
      m.tt(n, i) = e2w;
      m.tx(n, i) = 0.0;
      m.xx(n, i) = -e2w;
    }
  validate_metric(m, g);
  return m;
}

}  // namespace kgcyl
