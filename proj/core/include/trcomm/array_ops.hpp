#pragma once
#include "trcomm/antenna.hpp"
#include "trcomm/field.hpp"
#include "trcomm/grid.hpp"
#include "trcomm/measurement.hpp"
#include "trcomm/medium.hpp"
#include "trcomm/mirrors.hpp"
#include "trcomm/signal.hpp"
#include "trcomm/stepper.hpp"

namespace trcomm {

// Everything needed to apply the communication operators A = M-hat F Q and
// B = M F Q-hat.
struct Scene {
  Grid grid;
  Medium medium;
  AntennaArray base;
  AntennaArray users;
  StepperConfig stepper;
  MeasurementSpec mspec;

  const Physics& physics() const { return medium.physics(); }
  // Runs the generalized-measurement gate and basic shape checks; throws
  // before any scheme can run on an inconsistent scene.
  void validate() const;
};

// Source operator Q (or Q-hat): q(x,t) = sum_k gamma_k(x) r_k(t) on the
// channels selected by spec.
FieldMovie apply_Q(const SignalSet& r, const AntennaArray& arr, const Medium& m,
                   const Grid& g, const MeasurementSpec& spec);

// Measurement operator M (or M-hat): s_k(t) = integral of gamma_k u dx on
// the channels selected by spec; `side` tags the resulting SignalSet.
SignalSet apply_M(const FieldMovie& u, const AntennaArray& arr,
                  const MeasurementSpec& spec, const Grid& g, SignalSide side);

// Mirror honoring the measurement spec (generalized channels carry their
// declared parity).
SignalSet mirror_signals(const SignalSet& s, const Physics& phys,
                         const MeasurementSpec& spec);

// A r = M-hat F Q r : base emission received at the users.
SignalSet apply_A(const SignalSet& r, const Scene& scene);
// B s = M F Q-hat s : user emission received at the base.
SignalSet apply_B(const SignalSet& s, const Scene& scene);
// A* s = T B T-hat s.
SignalSet apply_A_star(const SignalSet& s, const Scene& scene);

SignalSet zero_base_signal(const Scene& scene);
SignalSet zero_user_signal(const Scene& scene);

// The interface schemes run against: they see A and A* and signal shapes,
// never the medium (the channel operator is "unknown" to the schemes).
class CommOperator {
 public:
  virtual ~CommOperator() = default;
  virtual SignalSet apply_A(const SignalSet& r) const = 0;
  virtual SignalSet apply_A_star(const SignalSet& s) const = 0;
  virtual SignalSet zero_base() const = 0;
  virtual SignalSet zero_users() const = 0;
};

class SceneOperator final : public CommOperator {
 public:
  explicit SceneOperator(Scene scene) : scene_(std::move(scene)) {
    scene_.validate();
  }
  SignalSet apply_A(const SignalSet& r) const override {
    return trcomm::apply_A(r, scene_);
  }
  SignalSet apply_A_star(const SignalSet& s) const override {
    return trcomm::apply_A_star(s, scene_);
  }
  SignalSet zero_base() const override { return zero_base_signal(scene_); }
  SignalSet zero_users() const override { return zero_user_signal(scene_); }
  const Scene& scene() const { return scene_; }

 private:
  Scene scene_;
};

}  // namespace trcomm
