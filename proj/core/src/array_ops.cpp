#include "trcomm/array_ops.hpp"

#include <cmath>
#include <string>

#include "trcomm/products.hpp"
#include "trcomm/rng.hpp"

namespace trcomm {

namespace {

void check_signal_shape(const SignalSet& r, const AntennaArray& arr,
                        const MeasurementSpec& spec, const Grid& g,
                        const char* who) {
  if (r.antennas() != arr.count())
    throw DimensionError(std::string(who) + ": antenna count mismatch");
  if (r.channels() != spec.channels())
    throw DimensionError(std::string(who) + ": channel count mismatch");
  if (r.nt() != g.nt || r.dt() != g.dt)
    throw DimensionError(std::string(who) + ": time sampling mismatch");
}

void check_generalized_shape(const GeneralizedMap& gen, const AntennaArray& arr) {
  if (gen.C < 1) throw ConfigError("GeneralizedMap: C must be >= 1");
  if (gen.forward.size() != static_cast<std::size_t>(arr.count()) ||
      gen.adjoint.size() != static_cast<std::size_t>(arr.count()))
    throw ConfigError("GeneralizedMap: per-antenna map count mismatch");
  if (gen.mirror_sign.size() != static_cast<std::size_t>(gen.C))
    throw ConfigError("GeneralizedMap: mirror_sign length mismatch");
  for (int v : gen.mirror_sign)
    if (v != 1 && v != -1) throw ConfigError("GeneralizedMap: signs must be +-1");
  for (int k = 0; k < arr.count(); ++k) {
    const std::size_t ne = kChannels * arr[k].cells.size();
    const auto& fw = gen.forward[static_cast<std::size_t>(k)];
    const auto& ad = gen.adjoint[static_cast<std::size_t>(k)];
    if (fw.size() != static_cast<std::size_t>(gen.C) || ad.size() != ne)
      throw ConfigError("GeneralizedMap: map shape mismatch");
    for (const auto& row : fw)
      if (row.size() != ne) throw ConfigError("GeneralizedMap: forward row size");
    for (const auto& row : ad)
      if (row.size() != static_cast<std::size_t>(gen.C))
        throw ConfigError("GeneralizedMap: adjoint row size");
  }
}

}  // namespace

FieldMovie apply_Q(const SignalSet& r, const AntennaArray& arr, const Medium& m,
                   const Grid& g, const MeasurementSpec& spec) {
  check_signal_shape(r, arr, spec, g, "apply_Q");
  (void)m;
  FieldMovie q(g, MovieKind::Source);
  for (int k = 0; k < arr.count(); ++k) {
    const Antenna& a = arr[k];
    const std::size_t ncells = a.cells.size();
    for (std::size_t n = 0; n < ncells; ++n) {
      auto [ci, cj] = a.cells[n];
      const std::size_t cell = g.cell(ci, cj);
      switch (spec.mode) {
        case MeasureMode::Full:
          for (int c = 0; c < kChannels; ++c)
            for (int t = 0; t < g.nt; ++t)
              q[t].ch[static_cast<std::size_t>(c)][cell] +=
                  a.weights[n] * r.at(k, c, t);
          break;
        case MeasureMode::Partial:
          for (int t = 0; t < g.nt; ++t)
            q[t].ch[static_cast<std::size_t>(spec.channel)][cell] +=
                a.weights[n] * r.at(k, 0, t);
          break;
        case MeasureMode::Generalized:
          for (int cf = 0; cf < kChannels; ++cf) {
            const std::size_t e = static_cast<std::size_t>(cf) * ncells + n;
            const auto& row = spec.gen.adjoint[static_cast<std::size_t>(k)][e];
            for (int c = 0; c < spec.gen.C; ++c) {
              const double w = row[static_cast<std::size_t>(c)];
              if (w == 0.0) continue;
              for (int t = 0; t < g.nt; ++t)
                q[t].ch[static_cast<std::size_t>(cf)][cell] += w * r.at(k, c, t);
            }
          }
          break;
      }
    }
  }
  return q;
}

SignalSet apply_M(const FieldMovie& u, const AntennaArray& arr,
                  const MeasurementSpec& spec, const Grid& g, SignalSide side) {
  if (u.nt() != g.nt || u[0].cells() != g.cells())
    throw DimensionError("apply_M: grid mismatch");
  const int pc = spec.mode == MeasureMode::Partial ? spec.channel : -1;
  SignalSet s(arr.count(), spec.channels(), g.nt, g.dt, side, pc);
  const double da = g.dx * g.dy;
  for (int k = 0; k < arr.count(); ++k) {
    const Antenna& a = arr[k];
    const std::size_t ncells = a.cells.size();
    for (std::size_t n = 0; n < ncells; ++n) {
      auto [ci, cj] = a.cells[n];
      const std::size_t cell = g.cell(ci, cj);
      switch (spec.mode) {
        case MeasureMode::Full:
          for (int c = 0; c < kChannels; ++c)
            for (int t = 0; t < g.nt; ++t)
              s.at(k, c, t) +=
                  a.weights[n] * da * u[t].ch[static_cast<std::size_t>(c)][cell];
          break;
        case MeasureMode::Partial:
          for (int t = 0; t < g.nt; ++t)
            s.at(k, 0, t) += a.weights[n] * da *
                             u[t].ch[static_cast<std::size_t>(spec.channel)][cell];
          break;
        case MeasureMode::Generalized:
          for (int cf = 0; cf < kChannels; ++cf) {
            const std::size_t e = static_cast<std::size_t>(cf) * ncells + n;
            for (int c = 0; c < spec.gen.C; ++c) {
              const double w =
                  spec.gen.forward[static_cast<std::size_t>(k)]
                                  [static_cast<std::size_t>(c)][e];
              if (w == 0.0) continue;
              for (int t = 0; t < g.nt; ++t)
                s.at(k, c, t) += w * u[t].ch[static_cast<std::size_t>(cf)][cell];
            }
          }
          break;
      }
    }
  }
  return s;
}

SignalSet mirror_signals(const SignalSet& s, const Physics& phys,
                         const MeasurementSpec& spec) {
  if (spec.mode != MeasureMode::Generalized)
    return time_reverse_signals(s, phys);
  SignalSet out = s;
  const int nt = s.nt();
  for (int k = 0; k < s.antennas(); ++k)
    for (int c = 0; c < s.channels(); ++c) {
      const double sgn = spec.gen.mirror_sign[static_cast<std::size_t>(c)];
      for (int i = 0; i < nt; ++i) out.at(k, c, i) = sgn * s.at(k, c, nt - 1 - i);
    }
  return out;
}

void validate_measurement(const MeasurementSpec& spec, const AntennaArray& arr,
                          const Medium& m, const Grid& g, std::uint64_t seed) {
  if (spec.mode != MeasureMode::Generalized) return;
  check_generalized_shape(spec.gen, arr);
  Rng rng(seed);
  FieldMovie u(g, MovieKind::State);
  for (auto& frame : u.frames)
    for (auto& c : frame.ch)
      for (int i = 1; i < g.nx - 1; ++i)
        for (int j = 1; j < g.ny - 1; ++j)
          c[g.cell(i, j)] = rng.uniform(-1.0, 1.0);
  const int pc = -1;
  SignalSet r(arr.count(), spec.channels(), g.nt, g.dt, SignalSide::Base, pc);
  for (auto& v : r.data()) v = rng.uniform(-1.0, 1.0);

  const SignalSet mu = apply_M(u, arr, spec, g, SignalSide::Base);
  const double lhs = inner_product_signals(mu, r);
  FieldMovie qr = apply_Q(r, arr, m, g, spec);
  for (auto& frame : qr.frames)
    for (int c = 0; c < kChannels; ++c) {
      const auto& gam = m.gamma(c);
      auto& qc = frame.ch[static_cast<std::size_t>(c)];
      for (std::size_t x = 0; x < qc.size(); ++x) qc[x] /= gam[x];
    }
  const double rhs = inner_product_fields(u, qr, m, g);
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  if (std::abs(lhs - rhs) > 1e-12 * scale)
    throw ConfigError(
        "validate_measurement: declared generalized adjoint fails the "
        "dot-product test (rel err " +
        std::to_string(std::abs(lhs - rhs) / scale) + ")");
}

void Scene::validate() const {
  grid.validate();
  base.validate(grid);
  users.validate(grid);
  check_cfl(grid, medium, stepper);
  validate_measurement(mspec, base, medium, grid);
  validate_measurement(mspec, users, medium, grid);
}

SignalSet zero_base_signal(const Scene& scene) {
  const int pc =
      scene.mspec.mode == MeasureMode::Partial ? scene.mspec.channel : -1;
  return SignalSet(scene.base.count(), scene.mspec.channels(), scene.grid.nt,
                   scene.grid.dt, SignalSide::Base, pc);
}

SignalSet zero_user_signal(const Scene& scene) {
  const int pc =
      scene.mspec.mode == MeasureMode::Partial ? scene.mspec.channel : -1;
  return SignalSet(scene.users.count(), scene.mspec.channels(), scene.grid.nt,
                   scene.grid.dt, SignalSide::Users, pc);
}

SignalSet apply_A(const SignalSet& r, const Scene& scene) {
  if (r.side() != SignalSide::Base)
    throw DimensionError("apply_A: expected a base-side signal");
  FieldMovie q = apply_Q(r, scene.base, scene.medium, scene.grid, scene.mspec);
  FieldMovie u = run_forward(q, scene.medium, scene.grid, scene.stepper);
  return apply_M(u, scene.users, scene.mspec, scene.grid, SignalSide::Users);
}

SignalSet apply_B(const SignalSet& s, const Scene& scene) {
  if (s.side() != SignalSide::Users)
    throw DimensionError("apply_B: expected a users-side signal");
  FieldMovie q = apply_Q(s, scene.users, scene.medium, scene.grid, scene.mspec);
  FieldMovie u = run_forward(q, scene.medium, scene.grid, scene.stepper);
  return apply_M(u, scene.base, scene.mspec, scene.grid, SignalSide::Base);
}

SignalSet apply_A_star(const SignalSet& s, const Scene& scene) {
  SignalSet rev = mirror_signals(s, scene.physics(), scene.mspec);
  SignalSet back = apply_B(rev, scene);
  return mirror_signals(back, scene.physics(), scene.mspec);
}

}  // namespace trcomm
