#pragma once

// Discrete Klein-Gordon operator and time-stepping core.
//   K phi = |g|^{-1/2} d_mu(|g|^{1/2} g^{mu nu} d_nu phi) + (m^2 + xi R) phi
// Two distinct discretisations are kept on purpose:
//   * KgEvolver marches the flux-form three-level centred equation, solving
//     for the unknown level; the g^{tx} cross terms are resolved by fixed-point
//     corrector passes seeded with a linear-in-time extrapolation.
//   * KgOperator is an expanded-form centred analysis operator. Residuals of
//     solver output measured with it are genuine second-order truncation
//     errors, and so are all reconstruction identities built from K and E.

#include <cmath>
#include <vector>

#include "kgcyl/curvature.hpp"
#include "kgcyl/stencil.hpp"
#include "kgcyl/testfunction.hpp"

namespace kgcyl {

struct CauchyData {
  std::vector<double> phi, pi;
  double slice_time = 0.0;

  CauchyData() = default;
  CauchyData(int n_x, double t) : phi(n_x, 0.0), pi(n_x, 0.0), slice_time(t) {}
};

struct SolutionField {
  Field2D values;
  double residual = 0.0;  // max |K phi - j| over interior nodes, via KgOperator
};

enum class TimeDirection { forward, backward };

class KgOperator {
 public:
  explicit KgOperator(const Spacetime& st) : grid_(st.grid) {
    const Grid& g = st.grid;
    const Metric& m = st.metric;
    up_tt_ = Field2D(g);
    up_tx_ = Field2D(g);
    up_xx_ = Field2D(g);
    c_t_ = Field2D(g);
    c_x_ = Field2D(g);
    pot_ = Field2D(g);
    Field2D att(g), atx(g), axx(g), gam(g);
    for (int n = 0; n < g.n_t; ++n)
      for (int i = 0; i < g.n_x; ++i) {
        double ga = m.sqrt_neg_det(n, i);
        gam(n, i) = ga;
        up_tt_(n, i) = m.up_tt(n, i);
        up_tx_(n, i) = m.up_tx(n, i);
        up_xx_(n, i) = m.up_xx(n, i);
        att(n, i) = ga * m.up_tt(n, i);
        atx(n, i) = ga * m.up_tx(n, i);
        axx(n, i) = ga * m.up_xx(n, i);
      }
    Field2D R;
    if (st.xi != 0.0) R = scalar_curvature(m, g);
    for (int n = 0; n < g.n_t; ++n)
      for (int i = 0; i < g.n_x; ++i) {
        double inv_gam = 1.0 / gam(n, i);
        c_t_(n, i) = inv_gam * (d_t(att, g, n, i) + d_x(atx, g, n, i));
        c_x_(n, i) = inv_gam * (d_t(atx, g, n, i) + d_x(axx, g, n, i));
        pot_(n, i) = st.mass * st.mass + (st.xi != 0.0 ? st.xi * R(n, i) : 0.0);
      }
  }

  double apply_at(const Field2D& phi, int n, int i) const {
    const Grid& g = grid_;
    return up_tt_(n, i) * d_tt(phi, g, n, i) + 2.0 * up_tx_(n, i) * d_tx(phi, g, n, i) +
           up_xx_(n, i) * d_xx(phi, g, n, i) + c_t_(n, i) * d_t(phi, g, n, i) +
           c_x_(n, i) * d_x(phi, g, n, i) + pot_(n, i) * phi(n, i);
  }

  // boundary time levels are excluded (left zero)
  Field2D apply(const Field2D& phi) const {
    const Grid& g = grid_;
    Field2D out(g);
    for (int n = 1; n < g.n_t - 1; ++n)
      for (int i = 0; i < g.n_x; ++i) out(n, i) = apply_at(phi, n, i);
    return out;
  }

  // [K, chi] phi: vanishes identically wherever chi is constant across the
  // stencil, so the output is supported in the cutoff's transition layer.
  Field2D cutoff_commutator(const Field2D& chi, const Field2D& phi) const {
    const Grid& g = grid_;
    Field2D prod(g);
    for (int n = 0; n < g.n_t; ++n)
      for (int i = 0; i < g.n_x; ++i) prod(n, i) = chi(n, i) * phi(n, i);
    Field2D out(g);
    for (int n = 1; n < g.n_t - 1; ++n)
      for (int i = 0; i < g.n_x; ++i) {
        double c0 = chi(n, i);
        bool locally_const = true;
        for (int dn = -1; dn <= 1 && locally_const; ++dn)
          for (int di = -1; di <= 1; ++di)
            if (chi.at_per(n + dn, i + di) != c0) {
              locally_const = false;
              break;
            }
        if (!locally_const) out(n, i) = apply_at(prod, n, i) - c0 * apply_at(phi, n, i);
      }
    return out;
  }

  double max_interior_residual(const Field2D& phi, const Field2D* source) const {
    const Grid& g = grid_;
    double r = 0.0;
    for (int n = 1; n < g.n_t - 1; ++n)
      for (int i = 0; i < g.n_x; ++i) {
        double j = source ? (*source)(n, i) : 0.0;
        r = std::max(r, std::abs(apply_at(phi, n, i) - j));
      }
    return r;
  }

  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
  Field2D up_tt_, up_tx_, up_xx_, c_t_, c_x_, pot_;
};

inline Field2D apply_kg(const Spacetime& st, const Field2D& phi) { return KgOperator(st).apply(phi); }

class KgEvolver {
 public:
  explicit KgEvolver(const Spacetime& st) : st_(&st), grid_(st.grid) {
    const Grid& g = st.grid;
    const Metric& m = st.metric;
    a_ = Field2D(g);
    b_ = Field2D(g);
    c_ = Field2D(g);
    e_ = Field2D(g);
    gam_ = Field2D(g);
    Field2D R;
    if (st.xi != 0.0) R = scalar_curvature(m, g);
    for (int n = 0; n < g.n_t; ++n)
      for (int i = 0; i < g.n_x; ++i) {
        double ga = m.sqrt_neg_det(n, i);
        gam_(n, i) = ga;
        a_(n, i) = ga * m.up_tt(n, i);
        b_(n, i) = ga * m.up_tx(n, i);
        c_(n, i) = ga * m.up_xx(n, i);
        e_(n, i) = ga * (st.mass * st.mass + (st.xi != 0.0 ? st.xi * R(n, i) : 0.0));
      }
    has_cross_ = b_.max_abs() > 0.0;
  }

  Field2D evolve(const CauchyData& data, const Field2D* source, TimeDirection dir) const {
    const Grid& g = grid_;
    Field2D phi(g);
    const int n0 = (dir == TimeDirection::forward) ? 0 : g.n_t - 1;
    const double tau = (dir == TimeDirection::forward) ? g.dt : -g.dt;
    const int n1 = n0 + ((dir == TimeDirection::forward) ? 1 : -1);

    for (int i = 0; i < g.n_x; ++i) phi(n0, i) = data.phi[i];
    for (int i = 0; i < g.n_x; ++i) {
      double phi_tt = second_time_derivative(data, source, n0, i);
      phi(n1, i) = data.phi[i] + tau * data.pi[i] + 0.5 * tau * tau * phi_tt;
    }

    if (dir == TimeDirection::forward) {
      for (int mid = 1; mid < g.n_t - 1; ++mid) step(phi, source, mid, mid + 1);
    } else {
      for (int mid = g.n_t - 2; mid > 0; --mid) step(phi, source, mid, mid - 1);
    }
    return phi;
  }

  // second-order Taylor start: solve K phi = j for d_t^2 phi on one slice
  double second_time_derivative(const CauchyData& data, const Field2D* source, int n, int i) const {
    const Grid& g = grid_;
    const Metric& m = st_->metric;
    const int nx = g.n_x;
    const int ip = (i + 1) % nx, im = (i + nx - 1) % nx;
    const double dx = g.dx();
    double phi_x = (data.phi[ip] - data.phi[im]) / (2.0 * dx);
    double phi_xx = (data.phi[ip] - 2.0 * data.phi[i] + data.phi[im]) / (dx * dx);
    double pi_x = (data.pi[ip] - data.pi[im]) / (2.0 * dx);
    double ga = gam_(n, i);
    double ct = (d_t(a_, g, n, i) + d_x(b_, g, n, i)) / ga;
    double cx = (d_t(b_, g, n, i) + d_x(c_, g, n, i)) / ga;
    double j = source ? (*source)(n, i) : 0.0;
    return (j - 2.0 * m.up_tx(n, i) * pi_x - m.up_xx(n, i) * phi_xx - ct * data.pi[i] - cx * phi_x -
            (e_(n, i) / ga) * data.phi[i]) /
           m.up_tt(n, i);
  }

 private:
  // Solve the centred three-level equation at level `mid`,
  //   A + B + C + D + E = gamma j,
  //   A = [a_+ (phi^{mid+1} - phi^mid) - a_- (phi^mid - phi^{mid-1})]/dt^2
  //   B = [b^{mid+1} Dx phi^{mid+1} - b^{mid-1} Dx phi^{mid-1}]/(2 dt)
  //   C = Dx(b^{mid} (phi^{mid+1} - phi^{mid-1}))/(2 dt)
  //   D = flux form of d_x(c d_x phi) at mid, E = e phi^mid,
  // for the unknown level `unk` (mid+1 forward, mid-1 backward).
  void step(Field2D& phi, const Field2D* source, int mid, int unk) const {
    const Grid& g = grid_;
    const int nx = g.n_x;
    const double dt2 = g.dt * g.dt, inv2dt = 1.0 / (2.0 * g.dt), invdx2 = 1.0 / (g.dx() * g.dx());
    const int np1 = mid + 1, nm1 = mid - 1;
    const int oth = (unk == np1) ? nm1 : np1;

    std::vector<double> guess(nx), rhs_fixed(nx), a_unk(nx);
    for (int i = 0; i < nx; ++i) guess[i] = 2.0 * phi(mid, i) - phi(oth, i);

    for (int i = 0; i < nx; ++i) {
      double a_p = 0.5 * (a_(mid, i) + a_(np1, i));
      double a_m = 0.5 * (a_(mid, i) + a_(nm1, i));
      double A_fixed;
      if (unk == np1) {
        a_unk[i] = a_p / dt2;
        A_fixed = (-a_p * phi(mid, i) - a_m * (phi(mid, i) - phi(nm1, i))) / dt2;
      } else {
        a_unk[i] = a_m / dt2;
        A_fixed = (a_p * (phi(np1, i) - phi(mid, i)) - a_m * phi(mid, i)) / dt2;
      }
      int ip = (i + 1) % nx, im = (i + nx - 1) % nx;
      double D = (0.5 * (c_(mid, i) + c_(mid, ip)) * (phi(mid, ip) - phi(mid, i)) -
                  0.5 * (c_(mid, i) + c_(mid, im)) * (phi(mid, i) - phi(mid, im))) *
                 invdx2;
      double E = e_(mid, i) * phi(mid, i);
      double src = source ? gam_(mid, i) * (*source)(mid, i) : 0.0;
      rhs_fixed[i] = src - A_fixed - D - E;
    }

    if (!has_cross_) {
      for (int i = 0; i < nx; ++i) phi(unk, i) = rhs_fixed[i] / a_unk[i];
      return;
    }

    auto level_val = [&](int lvl, int j, const std::vector<double>& u) {
      return (lvl == unk) ? u[static_cast<size_t>(j)] : phi(lvl, j);
    };
    std::vector<double> next(nx);
    for (int pass = 0; pass < 3; ++pass) {
      for (int i = 0; i < nx; ++i) {
        int ip = (i + 1) % nx, im = (i + nx - 1) % nx;
        double dx_np1 = (level_val(np1, ip, guess) - level_val(np1, im, guess)) / (2.0 * g.dx());
        double dx_nm1 = (level_val(nm1, ip, guess) - level_val(nm1, im, guess)) / (2.0 * g.dx());
        double B = (b_(np1, i) * dx_np1 - b_(nm1, i) * dx_nm1) * inv2dt;
        double C = (b_(mid, ip) * (level_val(np1, ip, guess) - level_val(nm1, ip, guess)) -
                    b_(mid, im) * (level_val(np1, im, guess) - level_val(nm1, im, guess))) *
                   inv2dt / (2.0 * g.dx());
        next[i] = (rhs_fixed[i] - B - C) / a_unk[i];
      }
      guess.swap(next);
    }
    for (int i = 0; i < nx; ++i) phi(unk, i) = guess[i];
  }

  const Spacetime* st_;
  Grid grid_;
  Field2D a_, b_, c_, e_, gam_;
  bool has_cross_ = false;
};

}  // namespace kgcyl
