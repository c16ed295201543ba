#pragma once
#include <functional>

#include "trcomm/field.hpp"
#include "trcomm/grid.hpp"
#include "trcomm/medium.hpp"

namespace trcomm {

// Leapfrog stepper configuration. Zero-Dirichlet boundary is fixed.
struct StepperConfig {
  double cfl = 0.5;          // in (0, 1/sqrt(2)]
  int progress_every = 0;    // if > 0, report "step i/nt" on stderr
};

// Throws ConfigError unless cfl is admissible and dt satisfies
// dt <= cfl * min(dx,dy) / c_max.
void check_cfl(const Grid& g, const Medium& m, const StepperConfig& cfg);

// Largest admissible dt for this grid/medium/cfl.
double max_stable_dt(const Grid& g, const Medium& m, double cfl);

using FrameObserver = std::function<void(int step, const FieldState&)>;

// Forward map F: sources q to states u, solving
//   Gamma du/dt + Lambda u + Phi u = q,  u(x,0) = 0,  u = 0 on the boundary.
// Three-level leapfrog, centered differences, trapezoid-weighted source
// injection, semi-implicit dissipation.
FieldMovie run_forward(const FieldMovie& q, const Medium& m, const Grid& g,
                       const StepperConfig& cfg,
                       const FrameObserver& observer = {});

// Adjoint map F*: backward-in-time sweep that is the exact transpose of
// run_forward in the Gamma-weighted space-time inner product.
FieldMovie run_adjoint_direct(const FieldMovie& v, const Medium& m,
                              const Grid& g, const StepperConfig& cfg);

// F* by literal composition Gamma^-1 S F S Gamma (the time-reversal
// experiment).
FieldMovie run_adjoint_via_tr(const FieldMovie& v, const Medium& m,
                              const Grid& g, const StepperConfig& cfg);

// Source-free evolution from two given consecutive frames; returns
// nsteps+2 frames starting with (prev, cur). Used for energy and
// reversibility experiments.
std::vector<FieldState> evolve_free(const FieldState& prev,
                                    const FieldState& cur, int nsteps,
                                    const Medium& m, const Grid& g,
                                    const StepperConfig& cfg);

}  // namespace trcomm
