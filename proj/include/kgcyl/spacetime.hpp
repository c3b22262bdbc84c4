#pragma once

#include "kgcyl/errors.hpp"
#include "kgcyl/grid.hpp"
#include "kgcyl/metric.hpp"

namespace kgcyl {

inline constexpr double kCflFactor = 0.5;

// A cylinder slab with its metric and the Klein-Gordon parameters (m, xi).
// The parameters are fixed theory-wide: every morphism constructor checks
// that source and target carry identical (m, xi).
struct Spacetime {
  Grid grid;
  Metric metric;
  double mass = 1.0;
  double xi = 0.0;

  Spacetime() = default;
  Spacetime(Grid g, Metric m, double mass_, double xi_ = 0.0)
      : grid(std::move(g)), metric(std::move(m)), mass(mass_), xi(xi_) {
    if (mass < 0.0 || xi < 0.0) throw ConfigError("spacetime: need m >= 0 and xi >= 0");
    validate_metric(metric, grid);
    double c = char_speed_max(metric, grid);
    if (grid.dt > kCflFactor * grid.dx() / c)
      throw StabilityError("CFL violated: dt = " + std::to_string(grid.dt) + " exceeds " +
                           std::to_string(kCflFactor * grid.dx() / c));
  }

  bool same_parameters(const Spacetime& o) const { return mass == o.mass && xi == o.xi; }
};

inline Spacetime flat_cylinder(int n_t, int n_x, double t0, double length, double mass, double xi = 0.0) {
  double dx = length / n_x;
  Grid g(n_t, n_x, t0, kCflFactor * dx, length);
  return Spacetime(g, flat_metric(g), mass, xi);
}

}  // namespace kgcyl
