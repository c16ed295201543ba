#pragma once
#include <cmath>
#include <cstddef>
#include <vector>

#include "trcomm/errors.hpp"
#include "trcomm/physics.hpp"

namespace trcomm {

enum class SignalSide { Base, Users };

// Per-antenna, per-channel time series: elements of the signal spaces
// Z (base) and Z-hat (users), or their partial counterparts Y, Y-hat.
// C = kChannels for full measurements, C = 1 for partial; for partial
// signals `channel_of(0)` reports the parent field channel so the mirror
// knows its sign.
class SignalSet {
 public:
  SignalSet() = default;
  SignalSet(int K, int C, int nt, double dt, SignalSide side,
            int partial_channel = -1)
      : K_(K), C_(C), nt_(nt), dt_(dt), side_(side),
        partial_channel_(partial_channel) {
    if (K < 1) throw DimensionError("SignalSet: K must be >= 1");
    if (C < 1 || C > kChannels) throw DimensionError("SignalSet: bad C");
    if (nt < 2) throw DimensionError("SignalSet: nt must be >= 2");
    if (dt <= 0.0) throw DimensionError("SignalSet: dt must be positive");
    if (partial_channel >= kChannels)
      throw DimensionError("SignalSet: bad partial channel");
    samples_.assign(static_cast<std::size_t>(K) * C * nt, 0.0);
  }

  int antennas() const { return K_; }
  int channels() const { return C_; }
  int nt() const { return nt_; }
  double dt() const { return dt_; }
  SignalSide side() const { return side_; }

  // The field channel that signal channel c measures/drives; -1 when the
  // mapping is unknown (generalized measurements).
  int channel_of(int c) const { return C_ == kChannels ? c : partial_channel_; }

  double& at(int k, int c, int i) {
    return samples_[(static_cast<std::size_t>(k) * C_ + c) * nt_ + i];
  }
  double at(int k, int c, int i) const {
    return samples_[(static_cast<std::size_t>(k) * C_ + c) * nt_ + i];
  }

  const std::vector<double>& data() const { return samples_; }
  std::vector<double>& data() { return samples_; }
  std::size_t size() const { return samples_.size(); }

  bool same_shape(const SignalSet& o) const {
    return K_ == o.K_ && C_ == o.C_ && nt_ == o.nt_ && dt_ == o.dt_ &&
           side_ == o.side_ && partial_channel_ == o.partial_channel_;
  }

  SignalSet zeros_like() const {
    SignalSet z = *this;
    z.samples_.assign(samples_.size(), 0.0);
    return z;
  }

  void axpy(double a, const SignalSet& x) {
    if (!same_shape(x)) throw DimensionError("SignalSet::axpy: shape mismatch");
    for (std::size_t i = 0; i < samples_.size(); ++i)
      samples_[i] += a * x.samples_[i];
  }
  void scale(double a) {
    for (auto& v : samples_) v *= a;
  }

  bool finite() const {
    for (double v : samples_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  bool operator==(const SignalSet&) const = default;

 private:
  int K_ = 0, C_ = 0, nt_ = 0;
  double dt_ = 0.0;
  SignalSide side_ = SignalSide::Base;
  int partial_channel_ = -1;
  std::vector<double> samples_;
};

}  // namespace trcomm
