#pragma once
#include <cstddef>

#include "trcomm/errors.hpp"

namespace trcomm {

// Space-time discretization: nx*ny cells, nt samples covering [0, T],
// T = (nt-1)*dt.
struct Grid {
  int nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;
  double dt = 0.0;
  int nt = 0;

  Grid() = default;
  Grid(int nx_, int ny_, double dx_, double dy_, double dt_, int nt_)
      : nx(nx_), ny(ny_), dx(dx_), dy(dy_), dt(dt_), nt(nt_) {
    validate();
  }

  void validate() const {
    if (nx < 4 || ny < 4) throw ConfigError("Grid: nx, ny must be >= 4");
    if (nt < 2) throw ConfigError("Grid: nt must be >= 2");
    if (dx <= 0.0 || dy <= 0.0 || dt <= 0.0)
      throw ConfigError("Grid: dx, dy, dt must be positive");
  }

  double T() const { return (nt - 1) * dt; }
  std::size_t cells() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  }
  std::size_t cell(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(ny) +
           static_cast<std::size_t>(j);
  }
  bool interior(int i, int j) const {
    return i >= 1 && i < nx - 1 && j >= 1 && j < ny - 1;
  }
  // Trapezoidal quadrature weight for time sample i (end samples halved).
  double time_weight(int i) const {
    return (i == 0 || i == nt - 1) ? 0.5 * dt : dt;
  }

  bool operator==(const Grid&) const = default;
};

}  // namespace trcomm
