#include "trcomm/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "trcomm/errors.hpp"
#include "trcomm/mirrors.hpp"

namespace trcomm {

namespace {

constexpr double kCflLimit = 0.70710678118654752440;  // 1/sqrt(2)

// Per-cell update coefficients shared by forward and adjoint sweeps.
struct Coeffs {
  std::array<std::vector<double>, kChannels> inv_gamma;  // 1/gamma
  std::array<std::vector<double>, kChannels> ap_inv;     // 1/(1 + dt*phi/gamma)
  std::array<std::vector<double>, kChannels> am;         // 1 - dt*phi/gamma

  Coeffs(const Medium& m, const Grid& g) {
    for (int c = 0; c < kChannels; ++c) {
      const auto& gam = m.gamma(c);
      const auto& phi = m.phi(c);
      auto& ig = inv_gamma[static_cast<std::size_t>(c)];
      auto& ap = ap_inv[static_cast<std::size_t>(c)];
      auto& a = am[static_cast<std::size_t>(c)];
      ig.resize(gam.size());
      ap.resize(gam.size());
      a.resize(gam.size());
      for (std::size_t x = 0; x < gam.size(); ++x) {
        ig[x] = 1.0 / gam[x];
        const double d = g.dt * phi[x] / gam[x];
        ap[x] = 1.0 / (1.0 + d);
        a[x] = 1.0 - d;
      }
    }
  }
};

// out = Lambda u on interior cells (centered differences, zero-Dirichlet
// ring); boundary cells of out are zero.
void apply_lambda(FieldState& out, const FieldState& u, const Physics& phys,
                  const Grid& g) {
  const double rx = 1.0 / (2.0 * g.dx);
  const double ry = 1.0 / (2.0 * g.dy);
  const int ny = g.ny;
  const double* c0 = u.ch[0].data();
  const double* c1 = u.ch[1].data();
  const double* c2 = u.ch[2].data();
  double* o0 = out.ch[0].data();
  double* o1 = out.ch[1].data();
  double* o2 = out.ch[2].data();
  std::fill(out.ch[0].begin(), out.ch[0].end(), 0.0);
  std::fill(out.ch[1].begin(), out.ch[1].end(), 0.0);
  std::fill(out.ch[2].begin(), out.ch[2].end(), 0.0);
  if (phys.tag == PhysicsTag::Acoustic2D) {
    // (Lu)_vx = dp/dx, (Lu)_vy = dp/dy, (Lu)_p = dvx/dx + dvy/dy
    for (int i = 1; i < g.nx - 1; ++i) {
      const std::size_t row = static_cast<std::size_t>(i) * ny;
      for (int j = 1; j < ny - 1; ++j) {
        const std::size_t x = row + static_cast<std::size_t>(j);
        o0[x] = rx * (c2[x + ny] - c2[x - ny]);
        o1[x] = ry * (c2[x + 1] - c2[x - 1]);
        o2[x] = rx * (c0[x + ny] - c0[x - ny]) + ry * (c1[x + 1] - c1[x - 1]);
      }
    }
  } else {
    // (Lu)_Hx = dEz/dy, (Lu)_Hy = -dEz/dx, (Lu)_Ez = dHx/dy - dHy/dx
    for (int i = 1; i < g.nx - 1; ++i) {
      const std::size_t row = static_cast<std::size_t>(i) * ny;
      for (int j = 1; j < ny - 1; ++j) {
        const std::size_t x = row + static_cast<std::size_t>(j);
        o0[x] = ry * (c2[x + 1] - c2[x - 1]);
        o1[x] = -rx * (c2[x + ny] - c2[x - ny]);
        o2[x] = ry * (c0[x + 1] - c0[x - 1]) - rx * (c1[x + ny] - c1[x - ny]);
      }
    }
  }
}

void check_frame_finite(const FieldState& u, int step, const char* who) {
  double acc = 0.0;
  for (const auto& c : u.ch)
    for (double v : c) acc += v;
  if (!std::isfinite(acc) && !u.finite())
    throw NumericalError(std::string(who) +
                         ": non-finite values first detected at step " +
                         std::to_string(step));
}

void require_interior_support(const FieldMovie& q, const Grid& g,
                              const char* who) {
  for (int n = 0; n < q.nt(); ++n)
    for (const auto& c : q[n].ch) {
      for (int j = 0; j < g.ny; ++j)
        if (c[g.cell(0, j)] != 0.0 || c[g.cell(g.nx - 1, j)] != 0.0)
          throw ConfigError(std::string(who) +
                            ": source not zero on boundary ring");
      for (int i = 0; i < g.nx; ++i)
        if (c[g.cell(i, 0)] != 0.0 || c[g.cell(i, g.ny - 1)] != 0.0)
          throw ConfigError(std::string(who) +
                            ": source not zero on boundary ring");
    }
}

// Zero the boundary ring of every channel.
void mask_interior(FieldState& u, const Grid& g) {
  for (auto& c : u.ch) {
    for (int j = 0; j < g.ny; ++j) {
      c[g.cell(0, j)] = 0.0;
      c[g.cell(g.nx - 1, j)] = 0.0;
    }
    for (int i = 0; i < g.nx; ++i) {
      c[g.cell(i, 0)] = 0.0;
      c[g.cell(i, g.ny - 1)] = 0.0;
    }
  }
}

FieldMovie scaled_by_gamma(const FieldMovie& u, const Medium& m, bool inverse) {
  FieldMovie out = u;
  for (auto& frame : out.frames)
    for (int c = 0; c < kChannels; ++c) {
      const auto& gam = m.gamma(c);
      auto& uc = frame.ch[static_cast<std::size_t>(c)];
      if (inverse)
        for (std::size_t x = 0; x < uc.size(); ++x) uc[x] /= gam[x];
      else
        for (std::size_t x = 0; x < uc.size(); ++x) uc[x] *= gam[x];
    }
  return out;
}

}  // namespace

double max_stable_dt(const Grid& g, const Medium& m, double cfl) {
  return cfl * std::min(g.dx, g.dy) / m.c_max();
}

void check_cfl(const Grid& g, const Medium& m, const StepperConfig& cfg) {
  if (!(cfg.cfl > 0.0) || cfg.cfl > kCflLimit * (1.0 + 1e-12))
    throw ConfigError("StepperConfig: cfl must lie in (0, 1/sqrt(2)]");
  if (g.dt > max_stable_dt(g, m, cfg.cfl) * (1.0 + 1e-12))
    throw ConfigError("CFL violation: dt = " + std::to_string(g.dt) +
                      " exceeds cfl*min(dx,dy)/c_max = " +
                      std::to_string(max_stable_dt(g, m, cfg.cfl)));
}

FieldMovie run_forward(const FieldMovie& q, const Medium& m, const Grid& g,
                       const StepperConfig& cfg, const FrameObserver& observer) {
  if (q.nt() != g.nt || q[0].cells() != g.cells())
    throw DimensionError("run_forward: source/grid mismatch");
  check_cfl(g, m, cfg);
  require_interior_support(q, g, "run_forward");

  const Coeffs co(m, g);
  FieldMovie u(g, MovieKind::State);
  FieldState lam(g);
  if (observer) observer(0, u[0]);
  for (int n = 0; n + 1 < g.nt; ++n) {
    apply_lambda(lam, u[n], m.physics(), g);
    const double wn = g.time_weight(n);
    const FieldState& prev = (n == 0) ? u[0] : u[n - 1];
    FieldState& next = u[n + 1];
    for (int c = 0; c < kChannels; ++c) {
      const auto& ig = co.inv_gamma[static_cast<std::size_t>(c)];
      const auto& ap = co.ap_inv[static_cast<std::size_t>(c)];
      const auto& am = co.am[static_cast<std::size_t>(c)];
      const auto& lc = lam.ch[static_cast<std::size_t>(c)];
      const auto& qc = q[n].ch[static_cast<std::size_t>(c)];
      const auto& pc = prev.ch[static_cast<std::size_t>(c)];
      auto& nc = next.ch[static_cast<std::size_t>(c)];
      for (int i = 1; i < g.nx - 1; ++i) {
        const std::size_t row = static_cast<std::size_t>(i) *
                                static_cast<std::size_t>(g.ny);
        for (int j = 1; j < g.ny - 1; ++j) {
          const std::size_t x = row + static_cast<std::size_t>(j);
          nc[x] = ap[x] * (-2.0 * g.dt * ig[x] * lc[x] + am[x] * pc[x] +
                           2.0 * wn * ig[x] * qc[x]);
        }
      }
    }
    check_frame_finite(next, n + 1, "run_forward");
    if (observer) observer(n + 1, next);
    if (cfg.progress_every > 0 && (n + 1) % cfg.progress_every == 0)
      std::fprintf(stderr, "step %d/%d\n", n + 1, g.nt);
  }
  return u;
}

FieldMovie run_adjoint_direct(const FieldMovie& v, const Medium& m,
                              const Grid& g, const StepperConfig& cfg) {
  if (v.nt() != g.nt || v[0].cells() != g.cells())
    throw DimensionError("run_adjoint_direct: input/grid mismatch");
  check_cfl(g, m, cfg);

  const Coeffs co(m, g);
  FieldMovie out(g, MovieKind::State);
  // Backward sweep: the exact transpose of the forward recursion.
  //   mu^k = w_k v^k + 2 dt G^-1 L (Ap^-1 mu^{k+1}) + Am (Ap^-1 mu^{k+2}),
  // final values mu^{nt} = mu^{nt+1} = 0; output frame k = 2 G^-1 Ap^-1 mu^{k+1}.
  FieldState m1(g), m2(g), t(g), lam(g);
  for (int k = g.nt - 1; k >= 0; --k) {
    // t = Ap^-1 mu^{k+1}
    for (int c = 0; c < kChannels; ++c) {
      const auto& ap = co.ap_inv[static_cast<std::size_t>(c)];
      const auto& m1c = m1.ch[static_cast<std::size_t>(c)];
      auto& tc = t.ch[static_cast<std::size_t>(c)];
      for (std::size_t x = 0; x < tc.size(); ++x) tc[x] = ap[x] * m1c[x];
    }
    // output frame k = 2 G^-1 t
    for (int c = 0; c < kChannels; ++c) {
      const auto& ig = co.inv_gamma[static_cast<std::size_t>(c)];
      const auto& tc = t.ch[static_cast<std::size_t>(c)];
      auto& oc = out[k].ch[static_cast<std::size_t>(c)];
      for (std::size_t x = 0; x < oc.size(); ++x) oc[x] = 2.0 * ig[x] * tc[x];
    }
    apply_lambda(lam, t, m.physics(), g);
    const double wk = g.time_weight(k);
    FieldState mk(g);
    for (int c = 0; c < kChannels; ++c) {
      const auto& ig = co.inv_gamma[static_cast<std::size_t>(c)];
      const auto& ap = co.ap_inv[static_cast<std::size_t>(c)];
      const auto& am = co.am[static_cast<std::size_t>(c)];
      const auto& lc = lam.ch[static_cast<std::size_t>(c)];
      const auto& vc = v[k].ch[static_cast<std::size_t>(c)];
      const auto& m2c = m2.ch[static_cast<std::size_t>(c)];
      auto& mc = mk.ch[static_cast<std::size_t>(c)];
      for (int i = 1; i < g.nx - 1; ++i) {
        const std::size_t row = static_cast<std::size_t>(i) *
                                static_cast<std::size_t>(g.ny);
        for (int j = 1; j < g.ny - 1; ++j) {
          const std::size_t x = row + static_cast<std::size_t>(j);
          mc[x] = wk * vc[x] + 2.0 * g.dt * ig[x] * lc[x] +
                  am[x] * ap[x] * m2c[x];
        }
      }
    }
    check_frame_finite(mk, k, "run_adjoint_direct");
    m2 = std::move(m1);
    m1 = std::move(mk);
  }
  return out;
}

FieldMovie run_adjoint_via_tr(const FieldMovie& v, const Medium& m,
                              const Grid& g, const StepperConfig& cfg) {
  // Gamma^-1 S F S Gamma v, with the input restricted to the interior
  // (the adjoint ignores boundary-ring samples, as does the transpose).
  FieldMovie w = scaled_by_gamma(v, m, /*inverse=*/false);
  for (auto& frame : w.frames) mask_interior(frame, g);
  w.kind = MovieKind::Source;
  FieldMovie rev = time_reverse_field(w, m.physics());
  FieldMovie u = run_forward(rev, m, g, cfg);
  FieldMovie back = time_reverse_field(u, m.physics());
  FieldMovie out = scaled_by_gamma(back, m, /*inverse=*/true);
  out.kind = MovieKind::State;
  return out;
}

std::vector<FieldState> evolve_free(const FieldState& prev,
                                    const FieldState& cur, int nsteps,
                                    const Medium& m, const Grid& g,
                                    const StepperConfig& cfg) {
  check_cfl(g, m, cfg);
  const Coeffs co(m, g);
  std::vector<FieldState> seq;
  seq.reserve(static_cast<std::size_t>(nsteps) + 2);
  seq.push_back(prev);
  seq.push_back(cur);
  FieldState lam(g);
  for (int n = 0; n < nsteps; ++n) {
    const FieldState& up = seq[seq.size() - 1];
    const FieldState& upp = seq[seq.size() - 2];
    apply_lambda(lam, up, m.physics(), g);
    FieldState next(g);
    for (int c = 0; c < kChannels; ++c) {
      const auto& ig = co.inv_gamma[static_cast<std::size_t>(c)];
      const auto& ap = co.ap_inv[static_cast<std::size_t>(c)];
      const auto& am = co.am[static_cast<std::size_t>(c)];
      const auto& lc = lam.ch[static_cast<std::size_t>(c)];
      const auto& pc = upp.ch[static_cast<std::size_t>(c)];
      auto& nc = next.ch[static_cast<std::size_t>(c)];
      for (int i = 1; i < g.nx - 1; ++i) {
        const std::size_t row = static_cast<std::size_t>(i) *
                                static_cast<std::size_t>(g.ny);
        for (int j = 1; j < g.ny - 1; ++j) {
          const std::size_t x = row + static_cast<std::size_t>(j);
          nc[x] = ap[x] * (-2.0 * g.dt * ig[x] * lc[x] + am[x] * pc[x]);
        }
      }
    }
    check_frame_finite(next, n, "evolve_free");
    seq.push_back(std::move(next));
  }
  return seq;
}

}  // namespace trcomm
