#pragma once
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trcomm/errors.hpp"
#include "trcomm/grid.hpp"

namespace trcomm {

// One antenna: a small support cell set V_k with weights gamma_k(x) that
// integrate to 1 (an L2 approximation of the Dirac delta at the center).
struct Antenna {
  int ci = 0, cj = 0;                          // center cell
  std::vector<std::pair<int, int>> cells;      // support V_k
  std::vector<double> weights;                 // gamma_k on support, units 1/m^2
};

class AntennaArray {
 public:
  AntennaArray() = default;

  // Single-cell delta approximation: weight 1/(dx*dy) at each center.
  static AntennaArray delta(const Grid& g,
                            const std::vector<std::pair<int, int>>& centers) {
    AntennaArray arr;
    for (auto [i, j] : centers) {
      Antenna a;
      a.ci = i;
      a.cj = j;
      a.cells = {{i, j}};
      a.weights = {1.0 / (g.dx * g.dy)};
      arr.antennas_.push_back(std::move(a));
    }
    arr.validate(g);
    return arr;
  }

  // 3x3 Gaussian bump, normalized so the weights integrate to 1.
  static AntennaArray gaussian3x3(
      const Grid& g, const std::vector<std::pair<int, int>>& centers) {
    AntennaArray arr;
    for (auto [i, j] : centers) {
      Antenna a;
      a.ci = i;
      a.cj = j;
      double total = 0.0;
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          double w = std::exp(-0.5 * (di * di + dj * dj));
          a.cells.emplace_back(i + di, j + dj);
          a.weights.push_back(w);
          total += w;
        }
      for (auto& w : a.weights) w /= total * g.dx * g.dy;
      arr.antennas_.push_back(std::move(a));
    }
    arr.validate(g);
    return arr;
  }

  // Caller-assembled antennas (generalized layouts); still validated.
  // allow_overlap permits coincident supports (e.g. deliberately duplicated
  // antennas for null-space studies) and is remembered for later
  // re-validation.
  static AntennaArray custom(const Grid& g, std::vector<Antenna> antennas,
                             bool allow_overlap = false) {
    AntennaArray arr;
    arr.antennas_ = std::move(antennas);
    arr.allow_overlap_ = allow_overlap;
    arr.validate(g);
    return arr;
  }

  int count() const { return static_cast<int>(antennas_.size()); }
  const Antenna& operator[](int k) const {
    return antennas_[static_cast<std::size_t>(k)];
  }

  void validate(const Grid& g) const {
    const bool allow_overlap = allow_overlap_;
    if (antennas_.empty()) throw LayoutError("AntennaArray: no antennas");
    std::set<std::pair<int, int>> seen;
    for (std::size_t k = 0; k < antennas_.size(); ++k) {
      const Antenna& a = antennas_[k];
      if (a.cells.size() != a.weights.size() || a.cells.empty())
        throw LayoutError("AntennaArray: malformed antenna support");
      double total = 0.0;
      for (std::size_t n = 0; n < a.cells.size(); ++n) {
        auto [i, j] = a.cells[n];
        if (!g.interior(i, j))
          throw LayoutError("AntennaArray: antenna " + std::to_string(k) +
                            " touches the boundary ring at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
        if (!allow_overlap && !seen.insert({i, j}).second)
          throw LayoutError("AntennaArray: overlapping supports at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
        total += a.weights[n] * g.dx * g.dy;
      }
      if (std::abs(total - 1.0) > 1e-12)
        throw LayoutError("AntennaArray: antenna " + std::to_string(k) +
                          " weights do not integrate to 1");
    }
  }

  bool operator==(const AntennaArray& o) const {
    if (antennas_.size() != o.antennas_.size()) return false;
    for (std::size_t k = 0; k < antennas_.size(); ++k) {
      const auto& a = antennas_[k];
      const auto& b = o.antennas_[k];
      if (a.ci != b.ci || a.cj != b.cj || a.cells != b.cells ||
          a.weights != b.weights)
        return false;
    }
    return true;
  }

 private:
  std::vector<Antenna> antennas_;
  bool allow_overlap_ = false;
};

}  // namespace trcomm
