#include "trcomm/verify.hpp"

#include <cmath>

#include "trcomm/array_ops.hpp"
#include "trcomm/products.hpp"
#include "trcomm/rng.hpp"
#include "trcomm/scenario.hpp"
#include "trcomm/stepper.hpp"

namespace trcomm {

namespace {

struct Setup {
  Grid g;
  Medium medium;
  AntennaArray base, users;
  StepperConfig cfg;
};

Setup make_setup(PhysicsTag tag, int n, int nt, bool lossy, Rng& rng) {
  const double dx = 0.9, dy = 1.1;
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  std::vector<double> gt(cells), gs(cells), sig(cells, 0.0);
  for (std::size_t x = 0; x < cells; ++x) {
    gt[x] = 1.0 + 0.5 * rng.uniform();
    gs[x] = 1.0 + 0.5 * rng.uniform();
    if (lossy) sig[x] = 0.4 * rng.uniform();
  }
  double c_max = 0.0;
  for (std::size_t x = 0; x < cells; ++x)
    c_max = std::max(c_max, 1.0 / std::sqrt(gt[x] * gs[x]));
  const double dt = 0.5 * std::min(dx, dy) / c_max;
  Grid g(n, n, dx, dy, dt, nt);
  Medium m = tag == PhysicsTag::Acoustic2D
                 ? Medium::acoustic(g, gt, gs)
                 : Medium::maxwell_tm(g, gs, gt, sig);
  AntennaArray base = AntennaArray::delta(g, {{2, 2}, {2, n - 3}});
  AntennaArray users = AntennaArray::delta(g, {{n - 3, n / 2}});
  return {g, std::move(m), std::move(base), std::move(users),
          StepperConfig{0.5, 0}};
}

FieldMovie random_movie(const Grid& g, Rng& rng, bool interior_only) {
  FieldMovie u(g, MovieKind::Source);
  for (auto& frame : u.frames)
    for (auto& c : frame.ch)
      for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
          if (!interior_only || g.interior(i, j))
            c[g.cell(i, j)] = rng.uniform(-1.0, 1.0);
  return u;
}

SignalSet random_signal(const SignalSet& shape, Rng& rng) {
  SignalSet s = shape;
  for (auto& v : s.data()) v = rng.uniform(-1.0, 1.0);
  return s;
}

double movie_rel_err(const FieldMovie& a, const FieldMovie& b) {
  double maxerr = 0.0, maxval = 0.0;
  for (int n = 0; n < a.nt(); ++n)
    for (int c = 0; c < kChannels; ++c) {
      const auto& ac = a[n].ch[static_cast<std::size_t>(c)];
      const auto& bc = b[n].ch[static_cast<std::size_t>(c)];
      for (std::size_t x = 0; x < ac.size(); ++x) {
        maxerr = std::max(maxerr, std::abs(ac[x] - bc[x]));
        maxval = std::max(maxval, std::abs(ac[x]));
      }
    }
  return maxval > 0.0 ? maxerr / maxval : maxerr;
}

double signal_rel_err(const SignalSet& a, const SignalSet& b) {
  double maxerr = 0.0, maxval = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    maxerr = std::max(maxerr, std::abs(a.data()[i] - b.data()[i]));
    maxval = std::max(maxval, std::abs(a.data()[i]));
  }
  return maxval > 0.0 ? maxerr / maxval : maxerr;
}

}  // namespace

std::vector<CheckResult> run_verify(VerifyTier tier, bool corrupt_sign_mask) {
  const int n = tier == VerifyTier::Tiny ? 12 : 24;
  const int nt = tier == VerifyTier::Tiny ? 12 : 24;
  Rng rng(20260824);
  std::vector<CheckResult> out;
  auto record = [&](const std::string& name, double err, double tol) {
    out.push_back({name, err, tol, err <= tol});
  };

  // --- Adjoint pairs M* = Gamma^-1 Q, full and partial (Theorem Adj.1 / Pm.1)
  {
    Setup s = make_setup(PhysicsTag::Acoustic2D, n, nt, false, rng);
    for (MeasurementSpec spec :
         {MeasurementSpec::full(), MeasurementSpec::partial(kChannels - 1)}) {
      FieldMovie u = random_movie(s.g, rng, false);
      SignalSet r = random_signal(
          SignalSet(s.base.count(), spec.channels(), s.g.nt, s.g.dt,
                    SignalSide::Base,
                    spec.mode == MeasureMode::Partial ? spec.channel : -1),
          rng);
      const SignalSet mu = apply_M(u, s.base, spec, s.g, SignalSide::Base);
      const double lhs = inner_product_signals(mu, r);
      FieldMovie qr = apply_Q(r, s.base, s.medium, s.g, spec);
      for (auto& frame : qr.frames)
        for (int c = 0; c < kChannels; ++c) {
          const auto& gam = s.medium.gamma(c);
          auto& qc = frame.ch[static_cast<std::size_t>(c)];
          for (std::size_t x = 0; x < qc.size(); ++x) qc[x] /= gam[x];
        }
      const double rhs = inner_product_fields(u, qr, s.medium, s.g);
      const double scale = std::max(std::abs(lhs), std::abs(rhs));
      record(spec.mode == MeasureMode::Full ? "adjoint_pair_M_Q_full"
                                            : "adjoint_pair_M_Q_partial",
             std::abs(lhs - rhs) / std::max(scale, 1e-300), 1e-12);
    }
  }

  // --- F/F* dot-product test (Theorem Adj.2) and F* = Gamma^-1 S F S Gamma
  for (auto [tag, lossy, label] :
       {std::tuple{PhysicsTag::Acoustic2D, false, std::string("acoustic")},
        std::tuple{PhysicsTag::MaxwellTM2D, false, std::string("maxwell")},
        std::tuple{PhysicsTag::MaxwellTM2D, true,
                   std::string("maxwell_lossy")}}) {
    Setup s = make_setup(tag, n, nt, lossy, rng);
    FieldMovie q = random_movie(s.g, rng, true);
    FieldMovie v = random_movie(s.g, rng, false);
    FieldMovie fq = run_forward(q, s.medium, s.g, s.cfg);
    FieldMovie fsv = run_adjoint_direct(v, s.medium, s.g, s.cfg);
    const double lhs = inner_product_fields(fq, v, s.medium, s.g);
    const double rhs = inner_product_fields(q, fsv, s.medium, s.g);
    const double scale =
        std::sqrt(inner_product_fields(q, q, s.medium, s.g)) *
        std::sqrt(inner_product_fields(v, v, s.medium, s.g));
    record("dot_product_F_" + label, std::abs(lhs - rhs) / scale, 1e-12);

    FieldMovie via_tr = run_adjoint_via_tr(v, s.medium, s.g, s.cfg);
    record("time_reversal_identity_" + label, movie_rel_err(fsv, via_tr),
           1e-12);
  }

  // --- Mirror commutations (Lemma Tra.1)
  {
    Setup s = make_setup(PhysicsTag::Acoustic2D, n, nt, false, rng);
    const MeasurementSpec spec = MeasurementSpec::full();
    const Physics& phys = s.medium.physics();
    FieldMovie u = random_movie(s.g, rng, false);
    // M S u = T M u  (base) and the hatted version (users)
    {
      SignalSet lhs = apply_M(time_reverse_field(u, phys), s.base, spec, s.g,
                              SignalSide::Base);
      SignalSet rhs = time_reverse_signals(
          apply_M(u, s.base, spec, s.g, SignalSide::Base), phys);
      record("commutation_MS_TM", signal_rel_err(lhs, rhs), 1e-13);
    }
    {
      SignalSet lhs = apply_M(time_reverse_field(u, phys), s.users, spec, s.g,
                              SignalSide::Users);
      SignalSet rhs = time_reverse_signals(
          apply_M(u, s.users, spec, s.g, SignalSide::Users), phys);
      record("commutation_MhatS_ThatMhat", signal_rel_err(lhs, rhs), 1e-13);
    }
    // S Q r = Q T r and the hatted version
    {
      SignalSet r = random_signal(
          SignalSet(s.base.count(), kChannels, s.g.nt, s.g.dt,
                    SignalSide::Base),
          rng);
      FieldMovie lhs =
          time_reverse_field(apply_Q(r, s.base, s.medium, s.g, spec), phys);
      FieldMovie rhs = apply_Q(time_reverse_signals(r, phys), s.base, s.medium,
                               s.g, spec);
      record("commutation_SQ_QT", movie_rel_err(lhs, rhs), 1e-13);
    }
    {
      SignalSet sh = random_signal(
          SignalSet(s.users.count(), kChannels, s.g.nt, s.g.dt,
                    SignalSide::Users),
          rng);
      FieldMovie lhs =
          time_reverse_field(apply_Q(sh, s.users, s.medium, s.g, spec), phys);
      FieldMovie rhs = apply_Q(time_reverse_signals(sh, phys), s.users,
                               s.medium, s.g, spec);
      record("commutation_SQhat_QhatThat", movie_rel_err(lhs, rhs), 1e-13);
    }
  }

  // --- A* = T B T-hat (Theorem Tra.2) and the partial variant (Theorem Pm.2)
  for (auto [tag, label] :
       {std::pair{PhysicsTag::Acoustic2D, std::string("acoustic")},
        std::pair{PhysicsTag::MaxwellTM2D, std::string("maxwell")}}) {
    for (MeasurementSpec spec :
         {MeasurementSpec::full(), MeasurementSpec::partial(kChannels - 1)}) {
      Setup s = make_setup(tag, n, nt, tag == PhysicsTag::MaxwellTM2D, rng);
      Scene scene{s.g, s.medium, s.base, s.users, s.cfg, spec};
      SignalSet r = random_signal(zero_base_signal(scene), rng);
      SignalSet sh = random_signal(zero_user_signal(scene), rng);
      const double lhs = inner_product_signals(apply_A(r, scene), sh);
      Physics mirror_phys = scene.physics();
      if (corrupt_sign_mask) mirror_phys.sign_mask[0] = -mirror_phys.sign_mask[0];
      SignalSet tbts = mirror_signals(
          apply_B(mirror_signals(sh, mirror_phys, spec), scene), mirror_phys,
          spec);
      const double rhs = inner_product_signals(r, tbts);
      const double scale = norm_signals(r) * norm_signals(sh);
      const std::string suffix =
          spec.mode == MeasureMode::Full ? "_full" : "_partial";
      record("mirror_identity_Astar_TBThat_" + label + suffix,
             std::abs(lhs - rhs) / std::max(scale, 1e-300), 1e-12);
    }
  }

  return out;
}

}  // namespace trcomm
