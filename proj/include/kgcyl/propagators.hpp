#pragma once

// Cauchy solves, global solutions from data on an interior slice, and the
// retarded/advanced fundamental solutions with their causal propagator
// E = E_adv - E_ret. Support bookkeeping: e_ret(f) vanishes before supp f,
// e_adv(f) after it, which the march guarantees level by level.

#include "kgcyl/regions.hpp"
#include "kgcyl/solver.hpp"

namespace kgcyl {

class Propagators {
 public:
  explicit Propagators(const Spacetime& st) : st_(&st), ev_(st), op_(st) {}

  const Spacetime& spacetime() const { return *st_; }
  const KgOperator& op() const { return op_; }
  const KgEvolver& evolver() const { return ev_; }

  SolutionField solve_cauchy(const CauchyData& data, const Field2D* source, TimeDirection dir) const {
    const Grid& g = st_->grid;
    double want = (dir == TimeDirection::forward) ? g.t0 : g.t_end();
    if (std::abs(data.slice_time - want) > 0.5 * g.dt)
      throw OutOfDomainError("solve_cauchy: data slice must sit on the slab boundary for this direction");
    SolutionField s;
    s.values = ev_.evolve(data, source, dir);
    s.residual = op_.max_interior_residual(s.values, source);
    return s;
  }

  // data on any interior slice: march both ways and stitch at the data level
  SolutionField solve_global(const CauchyData& data, const Field2D* source = nullptr) const {
    const Grid& g = st_->grid;
    int n_data = g.level_of(data.slice_time);
    SolutionField s;
    if (n_data == 0) return solve_cauchy(data, source, TimeDirection::forward);
    if (n_data == g.n_t - 1) return solve_cauchy(data, source, TimeDirection::backward);

    Grid up(g.n_t - n_data, g.n_x, data.slice_time, g.dt, g.length);
    Grid down(n_data + 1, g.n_x, g.t0, g.dt, g.length);
    s.values = Field2D(g);

    Field2D up_src, down_src;
    if (source) {
      up_src = Field2D(up);
      down_src = Field2D(down);
      for (int n = 0; n < up.n_t; ++n)
        for (int i = 0; i < g.n_x; ++i) up_src(n, i) = (*source)(n_data + n, i);
      for (int n = 0; n < down.n_t; ++n)
        for (int i = 0; i < g.n_x; ++i) down_src(n, i) = (*source)(n, i);
    }

    Spacetime st_up = sub_slab(n_data, g.n_t - 1);
    Spacetime st_down = sub_slab(0, n_data);
    CauchyData d_up = data;
    Field2D f_up = KgEvolver(st_up).evolve(d_up, source ? &up_src : nullptr, TimeDirection::forward);
    Field2D f_down = KgEvolver(st_down).evolve(data, source ? &down_src : nullptr, TimeDirection::backward);

    for (int n = 0; n < g.n_t; ++n)
      for (int i = 0; i < g.n_x; ++i)
        s.values(n, i) = (n >= n_data) ? f_up(n - n_data, i) : f_down(n, i);
    s.residual = op_.max_interior_residual(s.values, source);
    return s;
  }

  SolutionField e_ret(const TestFunction& f) const {
    require_clearance(f);
    CauchyData zero(st_->grid.n_x, st_->grid.t0);
    return solve_cauchy(zero, &f.values, TimeDirection::forward);
  }

  SolutionField e_adv(const TestFunction& f) const {
    require_clearance(f);
    CauchyData zero(st_->grid.n_x, st_->grid.t_end());
    return solve_cauchy(zero, &f.values, TimeDirection::backward);
  }

  SolutionField e_causal(const TestFunction& f) const {
    SolutionField adv = e_adv(f);
    SolutionField ret = e_ret(f);
    SolutionField s;
    s.values = adv.values - ret.values;
    s.residual = std::max(adv.residual, ret.residual);
    return s;
  }

  CauchyData restrict_to_data(const Field2D& field, double slice_time) const {
    const Grid& g = st_->grid;
    int n = g.level_of(slice_time);
    if (n < 1 || n > g.n_t - 2)
      throw OutOfDomainError("restrict_to_data: centred time derivative needs an interior level");
    CauchyData d(g.n_x, g.t(n));
    for (int i = 0; i < g.n_x; ++i) {
      d.phi[i] = field(n, i);
      d.pi[i] = (field(n + 1, i) - field(n - 1, i)) / (2.0 * g.dt);
    }
    return d;
  }

  // spacetime restricted to time levels [n_lo, n_hi] (same circle)
  Spacetime sub_slab(int n_lo, int n_hi) const {
    const Grid& g = st_->grid;
    if (n_lo < 0 || n_hi >= g.n_t || n_hi - n_lo + 1 < 2) throw OutOfDomainError("sub_slab: bad level range");
    Grid sg(n_hi - n_lo + 1, g.n_x, g.t(n_lo), g.dt, g.length);
    Metric sm(sg, st_->metric.provenance);
    for (int n = 0; n < sg.n_t; ++n)
      for (int i = 0; i < g.n_x; ++i) {
        sm.tt(n, i) = st_->metric.tt(n_lo + n, i);
        sm.tx(n, i) = st_->metric.tx(n_lo + n, i);
        sm.xx(n, i) = st_->metric.xx(n_lo + n, i);
      }
    return Spacetime(sg, sm, st_->mass, st_->xi);
  }

 private:
  void require_clearance(const TestFunction& f) const {
    const Grid& g = st_->grid;
    f.validate(g);
    if (f.t_lo < g.t0 + 1.5 * g.dt || f.t_hi > g.t_end() - 1.5 * g.dt)
      throw OutOfDomainError("test-function support touches the slab boundary");
  }

  const Spacetime* st_;
  KgEvolver ev_;
  KgOperator op_;
};

inline SolutionField solve_cauchy(const Spacetime& st, const CauchyData& data, const TestFunction* src,
                                  TimeDirection dir) {
  return Propagators(st).solve_cauchy(data, src ? &src->values : nullptr, dir);
}

inline SolutionField e_ret(const Spacetime& st, const TestFunction& f) { return Propagators(st).e_ret(f); }
inline SolutionField e_adv(const Spacetime& st, const TestFunction& f) { return Propagators(st).e_adv(f); }
inline SolutionField e_causal(const Spacetime& st, const TestFunction& f) { return Propagators(st).e_causal(f); }

inline CauchyData restrict_to_data(const Spacetime& st, const Field2D& field, double slice_time) {
  return Propagators(st).restrict_to_data(field, slice_time);
}

}  // namespace kgcyl
