#pragma once

// Causally convex regions (diamonds, time strips), causal-hull bounds, and
// causal separation on the cylinder. Hulls are stored as a per-level arc
// half-width around a centre; a half-width >= L/2 means the whole circle,
// a negative half-width means empty at that level. Cone slopes come from the
// maximal characteristic speed, so hulls are covering bounds, exact on the
// flat background where the speed is 1.

#include <algorithm>
#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "kgcyl/spacetime.hpp"

namespace kgcyl {

struct Diamond {
  double t_c = 0.0, x_c = 0.0, radius = 0.0;  // |t - t_c| + d(x, x_c) <= radius
};

struct Strip {
  double t_a = 0.0, t_b = 0.0;  // t_a <= t <= t_b, full circle
};

struct Whole {};

struct Region {
  std::variant<Diamond, Strip, Whole> kind;

  static Region diamond(double t_c, double x_c, double r) { return Region{Diamond{t_c, x_c, r}}; }
  static Region strip(double t_a, double t_b) { return Region{Strip{t_a, t_b}}; }
  static Region whole() { return Region{Whole{}}; }

  bool is_strip() const { return std::holds_alternative<Strip>(kind); }
  bool is_diamond() const { return std::holds_alternative<Diamond>(kind); }
  const Strip& as_strip() const { return std::get<Strip>(kind); }
  const Diamond& as_diamond() const { return std::get<Diamond>(kind); }

  void validate(const Grid& g) const {
    if (auto* d = std::get_if<Diamond>(&kind)) {
      if (d->radius <= 0.0 || d->radius >= 0.5 * g.length)
        throw OutOfDomainError("diamond radius must lie in (0, L/2)");
      if (d->t_c - d->radius < g.t0 - 1e-12 || d->t_c + d->radius > g.t_end() + 1e-12)
        throw OutOfDomainError("diamond sticks out of the slab");
    } else if (auto* s = std::get_if<Strip>(&kind)) {
      if (!(s->t_a < s->t_b)) throw OutOfDomainError("strip needs t_a < t_b");
      if (s->t_a < g.t0 - 1e-12 || s->t_b > g.t_end() + 1e-12)
        throw OutOfDomainError("strip sticks out of the slab");
    }
  }

  bool contains(double t, double x, const Grid& g) const {
    if (std::holds_alternative<Whole>(kind)) return true;
    if (auto* s = std::get_if<Strip>(&kind)) return t >= s->t_a - 1e-12 && t <= s->t_b + 1e-12;
    const auto& d = std::get<Diamond>(kind);
    return std::abs(t - d.t_c) + g.wrap_dist(x, d.x_c) <= d.radius + 1e-12;
  }

  // arc half-width of the region itself at time t (nullopt: empty there)
  std::optional<double> arc_half_width(double t, const Grid& g) const {
    if (std::holds_alternative<Whole>(kind)) return g.length;
    if (auto* s = std::get_if<Strip>(&kind)) {
      if (t < s->t_a - 1e-12 || t > s->t_b + 1e-12) return std::nullopt;
      return g.length;
    }
    const auto& d = std::get<Diamond>(kind);
    double w = d.radius - std::abs(t - d.t_c);
    if (w < 0.0) return std::nullopt;
    return w;
  }

  double centre_x() const {
    if (auto* d = std::get_if<Diamond>(&kind)) return d->x_c;
    return 0.0;
  }
};

enum class CausalDirection { future, past, both };

struct CausalHull {
  double x_c = 0.0;
  std::vector<double> half_width;  // per time level; < 0 empty, >= L/2 whole circle

  bool covers(int n, double x, const Grid& g) const {
    double w = half_width[n];
    if (w < 0.0) return false;
    if (w >= 0.5 * g.length) return true;
    return g.wrap_dist(x, x_c) <= w + 1e-12;
  }
  bool empty_at(int n) const { return half_width[n] < 0.0; }
};

namespace detail {

inline double diamond_future_width(const Diamond& d, double t, double c) {
  if (t < d.t_c - d.radius - 1e-14) return -1.0;
  double w = c * (t - (d.t_c - d.radius));             // emission from the bottom vertex
  if (t >= d.t_c) w = std::max(w, d.radius + c * (t - d.t_c));
  if (t <= d.t_c) w = std::max(w, d.radius - (d.t_c - t));  // the diamond's own slice
  return w;
}

inline double diamond_past_width(const Diamond& d, double t, double c) {
  if (t > d.t_c + d.radius + 1e-14) return -1.0;
  double w = c * ((d.t_c + d.radius) - t);
  if (t <= d.t_c) w = std::max(w, d.radius + c * (d.t_c - t));
  if (t >= d.t_c) w = std::max(w, d.radius - (t - d.t_c));
  return w;
}

}  // namespace detail

inline CausalHull causal_hull(const Region& region, const Spacetime& st, CausalDirection dir) {
  const Grid& g = st.grid;
  region.validate(g);
  double c = std::max(1.0, char_speed_max(st.metric, g));

  CausalHull hull;
  hull.x_c = region.centre_x();
  hull.half_width.assign(g.n_t, -1.0);

  if (region.is_diamond()) {
    const Diamond& d = region.as_diamond();
    for (int n = 0; n < g.n_t; ++n) {
      double t = g.t(n);
      double w = -1.0;
      if (dir == CausalDirection::future || dir == CausalDirection::both)
        w = std::max(w, detail::diamond_future_width(d, t, c));
      if (dir == CausalDirection::past || dir == CausalDirection::both)
        w = std::max(w, detail::diamond_past_width(d, t, c));
      hull.half_width[n] = w;
    }
    return hull;
  }

  // strips and the whole slab: full circle over their causal shadow
  double t_a = g.t0, t_b = g.t_end();
  if (region.is_strip()) {
    t_a = region.as_strip().t_a;
    t_b = region.as_strip().t_b;
  }
  for (int n = 0; n < g.n_t; ++n) {
    double t = g.t(n);
    bool in = false;
    if (dir == CausalDirection::future || dir == CausalDirection::both) in = in || t >= t_a - 1e-12;
    if (dir == CausalDirection::past || dir == CausalDirection::both) in = in || t <= t_b + 1e-12;
    hull.half_width[n] = in ? g.length : -1.0;
  }
  return hull;
}

// hull of a support bounding box (used for test-function supports)
inline CausalHull causal_hull_box(double t_lo, double t_hi, double x_c, double w0, const Spacetime& st,
                                  CausalDirection dir) {
  const Grid& g = st.grid;
  double c = std::max(1.0, char_speed_max(st.metric, g));
  CausalHull hull;
  hull.x_c = x_c;
  hull.half_width.assign(g.n_t, -1.0);
  for (int n = 0; n < g.n_t; ++n) {
    double t = g.t(n);
    double w = -1.0;
    if ((dir == CausalDirection::future || dir == CausalDirection::both) && t >= t_lo - 1e-14)
      w = std::max(w, w0 + c * (t - t_lo));
    if ((dir == CausalDirection::past || dir == CausalDirection::both) && t <= t_hi + 1e-14)
      w = std::max(w, w0 + c * (t_hi - t));
    hull.half_width[n] = w;
  }
  return hull;
}

namespace detail {

inline bool arcs_disjoint(double x1, double w1, double x2, double w2, double L) {
  if (w1 < 0.0 || w2 < 0.0) return true;
  if (w1 >= 0.5 * L || w2 >= 0.5 * L) return false;
  double d = std::fmod(std::abs(x1 - x2), L);
  return d - (w1 + w2) > 0.0 && (L - d) - (w1 + w2) > 0.0;
}

}  // namespace detail

inline bool hulls_disjoint(const CausalHull& a, const CausalHull& b, const Grid& g) {
  for (int n = 0; n < g.n_t; ++n)
    if (!detail::arcs_disjoint(a.x_c, a.half_width[n], b.x_c, b.half_width[n], g.length)) return false;
  return true;
}

// true iff no causal curve can join the two regions (conservative: verified
// through the characteristic-cone hull bound)
inline bool causally_separated(const Region& a, const Region& b, const Spacetime& st) {
  const Grid& g = st.grid;
  CausalHull ha = causal_hull(a, st, CausalDirection::both);
  for (int n = 0; n < g.n_t; ++n) {
    auto wb = b.arc_half_width(g.t(n), g);
    if (!wb) continue;
    if (!detail::arcs_disjoint(ha.x_c, ha.half_width[n], b.centre_x(), *wb, g.length)) return false;
  }
  return true;
}

// Whole slabs and time strips contain every causal curve between their points.
// A diamond has unit-slope sides, so it is causally convex exactly when the
// characteristic speed over its causal neighbourhood stays <= 1.
inline bool is_causally_convex(const Region& region, const Spacetime& st) {
  region.validate(st.grid);
  if (!region.is_diamond()) return true;
  const Grid& g = st.grid;
  const Diamond& d = region.as_diamond();
  double c_local = 0.0;
  for (int n = 0; n < g.n_t; ++n) {
    if (std::abs(g.t(n) - d.t_c) > d.radius + 2.0 * g.dt) continue;
    for (int i = 0; i < g.n_x; ++i) {
      if (g.wrap_dist(g.x(i), d.x_c) > d.radius + 2.0 * g.dx()) continue;
      c_local = std::max(c_local, char_speed_max(st.metric, n, i));
    }
  }
  return c_local <= 1.0 + 1e-9;
}

}  // namespace kgcyl
