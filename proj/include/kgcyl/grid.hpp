#pragma once

// Uniform grid on a temporal slab of the spatial circle, and dense scalar
// fields over it. Time levels n = 0 .. n_t-1 live at t = t0 + n*dt; spatial
// nodes i = 0 .. n_x-1 at x = i*dx with dx = length/n_x, periodic in x.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

#include "kgcyl/errors.hpp"

namespace kgcyl {

struct Grid {
  int n_t = 0;
  int n_x = 0;
  double t0 = 0.0;
  double dt = 0.0;
  double length = 0.0;  // circumference L

  Grid() = default;
  Grid(int nt, int nx, double t_start, double dt_, double L) : n_t(nt), n_x(nx), t0(t_start), dt(dt_), length(L) {
    if (n_x < 8 || n_t < 2) throw ConfigError("grid: need n_x >= 8 and n_t >= 2");
    if (dt <= 0.0 || length <= 0.0) throw ConfigError("grid: dt and circumference must be positive");
  }

  double dx() const { return length / n_x; }
  double t(int n) const { return t0 + n * dt; }
  double x(int i) const { return i * dx(); }
  double t_end() const { return t0 + (n_t - 1) * dt; }

  int wrap_x(int i) const {
    int m = i % n_x;
    return m < 0 ? m + n_x : m;
  }

  // nearest time level; throws if t is off the slab by more than half a step
  int level_of(double t_query) const {
    double u = (t_query - t0) / dt;
    int n = static_cast<int>(std::lround(u));
    if (n < 0 || n >= n_t || std::abs(u - n) > 0.5 + 1e-9)
      throw OutOfDomainError("time " + std::to_string(t_query) + " is not a slab level");
    return n;
  }

  bool contains_time(double t_query) const { return t_query >= t0 - 1e-12 && t_query <= t_end() + 1e-12; }

  // shortest signed / unsigned distance on the circle
  double wrap_dist(double x1, double x2) const {
    double d = std::fmod(std::abs(x1 - x2), length);
    return std::min(d, length - d);
  }

  bool same_layout(const Grid& o) const {
    return n_t == o.n_t && n_x == o.n_x && std::abs(dt - o.dt) < 1e-14 && std::abs(length - o.length) < 1e-14;
  }
};

class Field2D {
 public:
  Field2D() = default;
  Field2D(int n_t, int n_x, double fill = 0.0) : n_t_(n_t), n_x_(n_x), v_(static_cast<size_t>(n_t) * n_x, fill) {}
  explicit Field2D(const Grid& g, double fill = 0.0) : Field2D(g.n_t, g.n_x, fill) {}

  int n_t() const { return n_t_; }
  int n_x() const { return n_x_; }
  double& operator()(int n, int i) { return v_[static_cast<size_t>(n) * n_x_ + i]; }
  double operator()(int n, int i) const { return v_[static_cast<size_t>(n) * n_x_ + i]; }

  // periodic access in x
  double at_per(int n, int i) const {
    int m = i % n_x_;
    if (m < 0) m += n_x_;
    return v_[static_cast<size_t>(n) * n_x_ + m];
  }

  std::vector<double>& data() { return v_; }
  const std::vector<double>& data() const { return v_; }
  bool empty() const { return v_.empty(); }

  Field2D& operator+=(const Field2D& o) {
    assert(v_.size() == o.v_.size());
    for (size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
    return *this;
  }
  Field2D& operator-=(const Field2D& o) {
    assert(v_.size() == o.v_.size());
    for (size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
    return *this;
  }
  Field2D& operator*=(double s) {
    for (double& a : v_) a *= s;
    return *this;
  }

  friend Field2D operator+(Field2D a, const Field2D& b) { return a += b; }
  friend Field2D operator-(Field2D a, const Field2D& b) { return a -= b; }
  friend Field2D operator*(double s, Field2D a) { return a *= s; }

  double max_abs() const {
    double m = 0.0;
    for (double a : v_) m = std::max(m, std::abs(a));
    return m;
  }

 private:
  int n_t_ = 0, n_x_ = 0;
  std::vector<double> v_;
};

inline double max_abs_diff(const Field2D& a, const Field2D& b) {
  assert(a.data().size() == b.data().size());
  double m = 0.0;
  for (size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

// discrete L2 norm over the slab, weighted by the cell measure dt*dx
inline double l2_norm(const Field2D& f, const Grid& g) {
  double s = 0.0;
  for (double a : f.data()) s += a * a;
  return std::sqrt(s * g.dt * g.dx());
}

// spatial vectors (length n_x) used for Cauchy data
inline double l2_norm(const std::vector<double>& v, double dx) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return std::sqrt(s * dx);
}

}  // namespace kgcyl
