#pragma once

// Compact metric perturbations, compactly supported vector fields, the metric
// Lie derivative, and pullback of metrics along vector-field flows.

#include <cmath>

#include "kgcyl/interp.hpp"
#include "kgcyl/metric.hpp"
#include "kgcyl/regions.hpp"
#include "kgcyl/stencil.hpp"

namespace kgcyl {

// C-infinity bump: 1 at u = 0, support |u| < 1
inline double mollifier(double u) {
  double u2 = u * u;
  if (u2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u2));
}

struct Perturbation {
  Field2D tt, tx, xx;
  double t_minus = 0.0, t_plus = 0.0;  // temporal support bounds
  double scale = 1.0;                  // amplitude scale s in [0,1]

  Perturbation() = default;
  explicit Perturbation(const Grid& g) : tt(g), tx(g), xx(g) {}

  double support_max_abs_outside(const Grid& g) const {
    double m = 0.0;
    for (int n = 0; n < g.n_t; ++n) {
      double t = g.t(n);
      if (t > t_minus && t < t_plus) continue;
      for (int i = 0; i < g.n_x; ++i)
        m = std::max({m, std::abs(tt(n, i)), std::abs(tx(n, i)), std::abs(xx(n, i))});
    }
    return m;
  }
};

struct VectorFieldX {
  Field2D vt, vx;  // contravariant components X^t, X^x
  double t_minus = 0.0, t_plus = 0.0;

  VectorFieldX() = default;
  explicit VectorFieldX(const Grid& g) : vt(g), vx(g) {}
};

// g + s * h, tagged perturbed; validates the Lorentzian signature
inline Metric apply_perturbation(const Metric& g0, const Perturbation& h, const Grid& g, double s = 1.0) {
  Metric m = g0;
  double a = s * h.scale;
  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i) {
      m.tt(n, i) += a * h.tt(n, i);
      m.tx(n, i) += a * h.tx(n, i);
      m.xx(n, i) += a * h.xx(n, i);
    }
  m.provenance = MetricProvenance::perturbed;
  validate_metric(m, g);
  return m;
}

// (L_X g)_{mu nu} = X^r d_r g_{mu nu} + g_{r nu} d_mu X^r + g_{mu r} d_nu X^r
inline Perturbation lie_derivative_metric(const VectorFieldX& X, const Metric& m, const Grid& g) {
  Perturbation out(g);
  out.t_minus = X.t_minus;
  out.t_plus = X.t_plus;
  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i) {
      double glow[2][2] = {{m.tt(n, i), m.tx(n, i)}, {m.tx(n, i), m.xx(n, i)}};
      double dg[2][2][2];  // dg[r][mu][nu] = d_r g_{mu nu}
      dg[0][0][0] = d_t(m.tt, g, n, i);
      dg[0][0][1] = dg[0][1][0] = d_t(m.tx, g, n, i);
      dg[0][1][1] = d_t(m.xx, g, n, i);
      dg[1][0][0] = d_x(m.tt, g, n, i);
      dg[1][0][1] = dg[1][1][0] = d_x(m.tx, g, n, i);
      dg[1][1][1] = d_x(m.xx, g, n, i);
      double Xc[2] = {X.vt(n, i), X.vx(n, i)};
      double dX[2][2];  // dX[mu][r] = d_mu X^r
      dX[0][0] = d_t(X.vt, g, n, i);
      dX[0][1] = d_t(X.vx, g, n, i);
      dX[1][0] = d_x(X.vt, g, n, i);
      dX[1][1] = d_x(X.vx, g, n, i);
      double lie[2][2];
      for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) {
          double v = 0.0;
          for (int r = 0; r < 2; ++r)
            v += Xc[r] * dg[r][mu][nu] + glow[r][nu] * dX[mu][r] + glow[mu][r] * dX[nu][r];
          lie[mu][nu] = v;
        }
      out.tt(n, i) = lie[0][0];
      out.tx(n, i) = 0.5 * (lie[0][1] + lie[1][0]);
      out.xx(n, i) = lie[1][1];
    }
  return out;
}

// Pullback (phi_s)^* g along the time-s flow of X, so that
// d/ds|_{s=0} pullback_metric(X, s, g) = + L_X g. The flow ODE and its
// variational equation run together under classic RK4 with step <= dt.
inline Metric pullback_metric(const VectorFieldX& X, double s, const Metric& m, const Grid& g) {
  if (s == 0.0) {
    Metric out = m;
    out.provenance = MetricProvenance::pulled_back;
    return out;
  }

  BicubicSampler vt(X.vt, g), vx(X.vx, g);
  BicubicSampler gtt(m.tt, g), gtx(m.tx, g), gxx(m.xx, g);

  struct State {
    double t, x;
    double J[2][2];
  };
  auto rhs = [&](const State& q, State& d) {
    d.t = vt.value(q.t, q.x);
    d.x = vx.value(q.t, q.x);
    double DX[2][2] = {{vt.d_t(q.t, q.x), vt.d_x(q.t, q.x)}, {vx.d_t(q.t, q.x), vx.d_x(q.t, q.x)}};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) d.J[a][b] = DX[a][0] * q.J[0][b] + DX[a][1] * q.J[1][b];
  };

  int n_steps = std::max(1, static_cast<int>(std::ceil(std::abs(s) / g.dt)));
  double hstep = s / n_steps;

  Metric out(g, MetricProvenance::pulled_back);
  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i) {
      State q{g.t(n), g.x(i), {{1.0, 0.0}, {0.0, 1.0}}};
      for (int step = 0; step < n_steps; ++step) {
        State k1, k2, k3, k4, tmp;
        rhs(q, k1);
        auto advance = [&](const State& base, const State& k, double f, State& dst) {
          dst.t = base.t + f * k.t;
          dst.x = base.x + f * k.x;
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) dst.J[a][b] = base.J[a][b] + f * k.J[a][b];
        };
        advance(q, k1, 0.5 * hstep, tmp);
        rhs(tmp, k2);
        advance(q, k2, 0.5 * hstep, tmp);
        rhs(tmp, k3);
        advance(q, k3, hstep, tmp);
        rhs(tmp, k4);
        State next;
        next.t = q.t + hstep / 6.0 * (k1.t + 2.0 * k2.t + 2.0 * k3.t + k4.t);
        next.x = q.x + hstep / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            next.J[a][b] = q.J[a][b] + hstep / 6.0 * (k1.J[a][b] + 2.0 * k2.J[a][b] + 2.0 * k3.J[a][b] + k4.J[a][b]);
        q = next;
        if (q.t < g.t0 - 0.5 * g.dt || q.t > g.t_end() + 0.5 * g.dt)
          throw OutOfDomainError("flow escapes the slab");
      }
      double gy[2][2] = {{gtt.value(q.t, q.x), gtx.value(q.t, q.x)},
                         {gtx.value(q.t, q.x), gxx.value(q.t, q.x)}};
      double res[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
      for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu)
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) res[mu][nu] += q.J[a][mu] * q.J[b][nu] * gy[a][b];
      out.tt(n, i) = res[0][0];
      out.tx(n, i) = 0.5 * (res[0][1] + res[1][0]);
      out.xx(n, i) = res[1][1];
    }
  validate_metric(out, g);
  return out;
}

// --- named analytic families ---

inline Perturbation tensor_bump_perturbation(const Grid& g, double amp_tt, double amp_tx, double amp_xx,
                                             double t_c, double t_half, double x_c, double sigma_x) {
  Perturbation h(g);
  h.t_minus = t_c - t_half;
  h.t_plus = t_c + t_half;
  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i) {
      double b = mollifier((g.t(n) - t_c) / t_half) *
                 std::exp((std::cos(g.x(i) - x_c) - 1.0) / (sigma_x * sigma_x));
      h.tt(n, i) = amp_tt * b;
      h.tx(n, i) = amp_tx * b;
      h.xx(n, i) = amp_xx * b;
    }
  return h;
}

inline VectorFieldX vector_field_bump(const Grid& g, double amp_t, double amp_x, double t_c, double t_half,
                                      double x_c, double sigma_x) {
  VectorFieldX X(g);
  X.t_minus = t_c - t_half;
  X.t_plus = t_c + t_half;
  for (int n = 0; n < g.n_t; ++n)
    for (int i = 0; i < g.n_x; ++i) {
      double b = mollifier((g.t(n) - t_c) / t_half) *
                 std::exp((std::cos(g.x(i) - x_c) - 1.0) / (sigma_x * sigma_x));
      X.vt(n, i) = amp_t * b;
      X.vx(n, i) = amp_x * std::sin(g.x(i) - x_c) * b;
    }
  return X;
}

}  // namespace kgcyl
