#pragma once
#include <vector>

#include "trcomm/antenna.hpp"
#include "trcomm/errors.hpp"
#include "trcomm/grid.hpp"
#include "trcomm/medium.hpp"
#include "trcomm/physics.hpp"

namespace trcomm {

enum class MeasureMode { Full, Partial, Generalized };

// User-defined linear measurement per antenna. The field samples on an
// antenna support are stacked channel-major: entry e = c*ncells + n is
// channel c at support cell n. forward maps those samples to C signal
// channels; adjoint is the declared source map (the formal adjoint
// Q = Gamma M*, which here means adjoint[e][c] = forward[c][e]/(dx*dy)).
// mirror_sign gives each output channel a parity under time reversal so
// the T mirrors stay defined; maps must not mix parities if the mirror
// identity A* = T B T-hat is to hold.
struct GeneralizedMap {
  int C = 1;
  std::vector<std::vector<std::vector<double>>> forward;  // [k][c][e]
  std::vector<std::vector<std::vector<double>>> adjoint;  // [k][e][c]
  std::vector<int> mirror_sign;                           // [c], +-1
};

struct MeasurementSpec {
  MeasureMode mode = MeasureMode::Full;
  int channel = kChannels - 1;  // Partial mode: the measured field channel
  GeneralizedMap gen;           // Generalized mode only

  static MeasurementSpec full() { return {}; }
  static MeasurementSpec partial(int nu) {
    if (nu < 0 || nu >= kChannels)
      throw ConfigError("MeasurementSpec: bad partial channel");
    MeasurementSpec s;
    s.mode = MeasureMode::Partial;
    s.channel = nu;
    return s;
  }
  static MeasurementSpec generalized(GeneralizedMap g) {
    MeasurementSpec s;
    s.mode = MeasureMode::Generalized;
    s.gen = std::move(g);
    return s;
  }

  int channels() const {
    switch (mode) {
      case MeasureMode::Full: return kChannels;
      case MeasureMode::Partial: return 1;
      case MeasureMode::Generalized: return gen.C;
    }
    return kChannels;
  }
  // Field channel backing signal channel c; -1 for generalized.
  int field_channel(int c) const {
    switch (mode) {
      case MeasureMode::Full: return c;
      case MeasureMode::Partial: return channel;
      case MeasureMode::Generalized: return -1;
    }
    return c;
  }
};

// Gate for generalized specs: verifies <M u, r>_Z = <u, Gamma^-1 Q r>_U on
// random inputs to 1e-12 relative; throws ConfigError on failure. No-op for
// full/partial modes (their adjoints are exact by construction).
void validate_measurement(const MeasurementSpec& spec, const AntennaArray& arr,
                          const Medium& m, const Grid& g,
                          std::uint64_t seed = 0x5eedf00d);

}  // namespace trcomm
