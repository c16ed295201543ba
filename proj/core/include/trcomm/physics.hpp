#pragma once
#include <array>
#include <string>

#include "trcomm/errors.hpp"

namespace trcomm {

enum class PhysicsTag { Acoustic2D, MaxwellTM2D };

inline constexpr int kChannels = 3;

// 2D reductions, N=3 channels each:
//   Acoustic2D : (v_x, v_y, p)
//   MaxwellTM2D: (H_x, H_y, E_z)
// sign_mask is the per-channel sign of the time-reversal operator S.
struct Physics {
  PhysicsTag tag = PhysicsTag::Acoustic2D;
  std::array<int, kChannels> sign_mask{-1, -1, +1};

  static Physics acoustic() {
    return Physics{PhysicsTag::Acoustic2D, {-1, -1, +1}};
  }
  // Default convention flips E and keeps H; flip_h selects the alternative
  // mirror (H flipped, E kept), which works equally well.
  static Physics maxwell_tm(bool flip_h = false) {
    if (flip_h) return Physics{PhysicsTag::MaxwellTM2D, {-1, -1, +1}};
    return Physics{PhysicsTag::MaxwellTM2D, {+1, +1, -1}};
  }

  std::string name() const {
    return tag == PhysicsTag::Acoustic2D ? "acoustic" : "maxwell_tm";
  }

  bool operator==(const Physics&) const = default;
};

}  // namespace trcomm
