#pragma once
#include <array>
#include <cmath>
#include <vector>

#include "trcomm/errors.hpp"
#include "trcomm/grid.hpp"
#include "trcomm/physics.hpp"

namespace trcomm {

// One time frame of the N-component state: N channel arrays of size nx*ny,
// row-major (index i*ny + j).
struct FieldState {
  std::array<std::vector<double>, kChannels> ch;

  FieldState() = default;
  explicit FieldState(const Grid& g) {
    for (auto& c : ch) c.assign(g.cells(), 0.0);
  }

  std::size_t cells() const { return ch[0].size(); }

  double& at(int c, std::size_t cell) { return ch[c][cell]; }
  double at(int c, std::size_t cell) const { return ch[c][cell]; }

  bool finite() const {
    for (const auto& c : ch)
      for (double v : c)
        if (!std::isfinite(v)) return false;
    return true;
  }

  bool operator==(const FieldState&) const = default;
};

enum class MovieKind { State, Source };

// Full space-time record u(x,t) or q(x,t): nt frames.
struct FieldMovie {
  std::vector<FieldState> frames;
  MovieKind kind = MovieKind::State;

  FieldMovie() = default;
  FieldMovie(const Grid& g, MovieKind k) : kind(k) {
    frames.assign(static_cast<std::size_t>(g.nt), FieldState(g));
  }

  int nt() const { return static_cast<int>(frames.size()); }
  FieldState& operator[](int i) { return frames[static_cast<std::size_t>(i)]; }
  const FieldState& operator[](int i) const {
    return frames[static_cast<std::size_t>(i)];
  }

  bool operator==(const FieldMovie&) const = default;
};

}  // namespace trcomm
