#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"
#include "trcomm/mirrors.hpp"
#include "trcomm/products.hpp"

using namespace trcomm;
using namespace testutil;

namespace {

// Gamma^-1 Q r: the source operator mapped back to state scaling, used to
// express the adjoint pair <M u, r>_Z = <u, Gamma^-1 Q r>_U.
FieldMovie inv_gamma_Q(const SignalSet& r, const Scene& sc) {
  FieldMovie q = apply_Q(r, r.side() == SignalSide::Base ? sc.base : sc.users,
                         sc.medium, sc.grid, sc.mspec);
  for (auto& f : q.frames)
    for (int c = 0; c < kChannels; ++c)
      for (std::size_t x = 0; x < f.ch[0].size(); ++x)
        f.ch[static_cast<std::size_t>(c)][x] /= sc.medium.gamma(c)[x];
  q.kind = MovieKind::State;
  return q;
}

GeneralizedMap parity_pure_map(const Scene& sc, Rng& rng) {
  // Two output channels for single-cell antennas: channel 0 mixes the two
  // transverse field components (shared mirror sign), channel 1 reads the
  // scalar one. adjoint = forward^T / (dx*dy) is the exact adjoint of the
  // delta-profile measurement.
  const auto& mask = sc.physics().sign_mask;
  GeneralizedMap gm;
  gm.C = 2;
  gm.mirror_sign = {mask[0], mask[2]};
  const double area = sc.grid.dx * sc.grid.dy;
  for (int k = 0; k < sc.users.count(); ++k) {
    std::vector<std::vector<double>> fwd(2, std::vector<double>(kChannels, 0.0));
    fwd[0][0] = rng.uniform(0.5, 1.5);
    fwd[0][1] = rng.uniform(-1.5, -0.5);
    fwd[1][2] = rng.uniform(0.5, 1.5);
    std::vector<std::vector<double>> adj(kChannels, std::vector<double>(2, 0.0));
    for (int c = 0; c < 2; ++c)
      for (int e = 0; e < kChannels; ++e)
        adj[static_cast<std::size_t>(e)][static_cast<std::size_t>(c)] =
            fwd[static_cast<std::size_t>(c)][static_cast<std::size_t>(e)] / area;
    gm.forward.push_back(std::move(fwd));
    gm.adjoint.push_back(std::move(adj));
  }
  return gm;
}

}  // namespace

TEST_CASE("Q and M examples on a single-cell antenna") {
  Scene sc = make_scene(PhysicsTag::Acoustic2D, 10, 8, 1, 1,
                        MeasurementSpec::full(), false, 31);
  const Grid& g = sc.grid;
  Rng rng(5);
  SignalSet r = random_signal(zero_base_signal(sc), rng);
  FieldMovie q = apply_Q(r, sc.base, sc.medium, g, sc.mspec);
  const std::size_t cell = g.cell(sc.base[0].ci, sc.base[0].cj);
  double err = 0.0;
  for (int t = 0; t < g.nt; ++t)
    for (int c = 0; c < kChannels; ++c) {
      err = std::max(err, std::abs(q[t].ch[static_cast<std::size_t>(c)][cell] -
                                   r.at(0, c, t) / (g.dx * g.dy)));
      for (std::size_t x = 0; x < g.cells(); ++x)
        if (x != cell)
          CHECK(q[t].ch[static_cast<std::size_t>(c)][x] == 0.0);
    }
  CHECK(err <= 1e-14);

  // M(Q r) = r * integral gamma^2 dx = r / (dx*dy) for a delta antenna.
  SignalSet mq = apply_M(q, sc.base, sc.mspec, g, SignalSide::Base);
  double err2 = 0.0;
  for (int t = 0; t < g.nt; ++t)
    for (int c = 0; c < kChannels; ++c)
      err2 = std::max(err2,
                      std::abs(mq.at(0, c, t) - r.at(0, c, t) / (g.dx * g.dy)));
  CHECK(err2 <= 1e-13);
}

TEST_CASE("partial measurement reads only its channel") {
  Scene sc = make_scene(PhysicsTag::MaxwellTM2D, 10, 8, 1, 1,
                        MeasurementSpec::partial(2), true, 32);
  Rng rng(6);
  FieldMovie u = random_movie(sc.grid, rng, false, MovieKind::State);
  SignalSet s = apply_M(u, sc.users, sc.mspec, sc.grid, SignalSide::Users);
  CHECK(s.channels() == 1);
  CHECK(s.channel_of(0) == 2);
  const std::size_t cell = sc.grid.cell(sc.users[0].ci, sc.users[0].cj);
  for (int t = 0; t < sc.grid.nt; ++t)
    CHECK(s.at(0, 0, t) ==
          doctest::Approx(u[t].ch[2][cell]).epsilon(1e-13));
}

TEST_CASE("commutation of mirrors with sources and measurements") {
  for (auto mspec : {MeasurementSpec::full(), MeasurementSpec::partial(1)}) {
    Scene sc = make_scene(PhysicsTag::Acoustic2D, 12, 10, 2, 3, mspec, false, 7);
    Rng rng(8);
    // M-hat S u = T-hat M-hat u
    FieldMovie u = random_movie(sc.grid, rng, false, MovieKind::State);
    SignalSet lhs = apply_M(time_reverse_field(u, sc.physics()), sc.users,
                            sc.mspec, sc.grid, SignalSide::Users);
    SignalSet rhs = mirror_signals(
        apply_M(u, sc.users, sc.mspec, sc.grid, SignalSide::Users),
        sc.physics(), sc.mspec);
    CHECK(signal_max_abs_diff(lhs, rhs) <= 1e-13);
    // S Q r = Q T r
    SignalSet r = random_signal(zero_base_signal(sc), rng);
    FieldMovie l2 = time_reverse_field(
        apply_Q(r, sc.base, sc.medium, sc.grid, sc.mspec), sc.physics());
    FieldMovie r2 = apply_Q(mirror_signals(r, sc.physics(), sc.mspec), sc.base,
                            sc.medium, sc.grid, sc.mspec);
    CHECK(movie_max_abs_diff(l2, r2) <= 1e-13);
  }
}

TEST_CASE("adjoint pair: <M u, r>_Z = <u, Gamma^-1 Q r>_U") {
  for (auto mspec : {MeasurementSpec::full(), MeasurementSpec::partial(0)}) {
    Scene sc = make_scene(PhysicsTag::Acoustic2D, 12, 9, 2, 2, mspec, false, 9);
    Rng rng(10);
    FieldMovie u = random_movie(sc.grid, rng, false, MovieKind::State);
    SignalSet r(sc.base.count(), sc.mspec.channels(), sc.grid.nt, sc.grid.dt,
                SignalSide::Base,
                sc.mspec.mode == MeasureMode::Partial ? sc.mspec.channel : -1);
    r = random_signal(std::move(r), rng);
    const double lhs = inner_product_signals(
        apply_M(u, sc.base, sc.mspec, sc.grid, SignalSide::Base), r);
    const double rhs =
        inner_product_fields(u, inv_gamma_Q(r, sc), sc.medium, sc.grid);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + std::abs(rhs) + 1.0));
  }
}

TEST_CASE("A and A* = T B T-hat are adjoint in the weighted products") {
  for (auto tag : {PhysicsTag::Acoustic2D, PhysicsTag::MaxwellTM2D})
    for (auto mspec : {MeasurementSpec::full(), MeasurementSpec::partial(2)}) {
      Scene sc = make_scene(tag, 12, 14, 2, 2, mspec,
                            tag == PhysicsTag::MaxwellTM2D, 11);
      Rng rng(12);
      SignalSet r = random_signal(zero_base_signal(sc), rng);
      SignalSet s = random_signal(zero_user_signal(sc), rng);
      const double lhs = inner_product_signals(apply_A(r, sc), s);
      const double rhs = inner_product_signals(r, apply_A_star(s, sc));
      const double scale = std::sqrt(inner_product_signals(r, r) *
                                     inner_product_signals(s, s));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
    }
}

TEST_CASE("explicit matrix oracle for A and A*") {
  for (auto mspec : {MeasurementSpec::full(), MeasurementSpec::partial(2)}) {
    // n = 11 keeps base and user cells on the same spatial sublattice, so the
    // scalar-channel partial operator is not identically zero at this size.
    Scene sc = make_scene(PhysicsTag::Acoustic2D, 11, 12, 1, 2, mspec, false, 13);
    Eigen::MatrixXd A = assemble_A(sc);
    SignalSet zb = zero_base_signal(sc);
    SignalSet zu = zero_user_signal(sc);
    const auto wz = quad_weights(zb);
    const auto wu = quad_weights(zu);
    Eigen::MatrixXd Astar(A.cols(), A.rows());
    for (long j = 0; j < A.rows(); ++j) {
      SignalSet e = zu;
      e.data()[static_cast<std::size_t>(j)] = 1.0;
      SignalSet col = apply_A_star(e, sc);
      for (long i = 0; i < A.cols(); ++i)
        Astar(i, j) = col.data()[static_cast<std::size_t>(i)];
    }
    const double amax = A.cwiseAbs().maxCoeff();
    double err = 0.0;
    for (long i = 0; i < A.rows(); ++i)
      for (long j = 0; j < A.cols(); ++j)
        err = std::max(err, std::abs(Astar(j, i) -
                                     A(i, j) * wu[static_cast<std::size_t>(i)] /
                                         wz[static_cast<std::size_t>(j)]));
    CHECK(err <= 1e-12 * amax);
    CHECK(amax > 0.0);  // the oracle actually sees signal
  }
}

TEST_CASE("A is linear") {
  Scene sc = make_scene(PhysicsTag::Acoustic2D, 10, 10, 2, 1,
                        MeasurementSpec::full(), false, 14);
  Rng rng(15);
  SignalSet r1 = random_signal(zero_base_signal(sc), rng);
  SignalSet r2 = random_signal(zero_base_signal(sc), rng);
  SignalSet rc = r1;
  rc.scale(0.3);
  rc.axpy(-1.7, r2);
  SignalSet lhs = apply_A(rc, sc);
  SignalSet rhs = apply_A(r1, sc);
  rhs.scale(0.3);
  rhs.axpy(-1.7, apply_A(r2, sc));
  double scale = 0.0;
  for (double v : lhs.data()) scale = std::max(scale, std::abs(v));
  CHECK(signal_max_abs_diff(lhs, rhs) <= 1e-13 * (scale + 1.0));
}

TEST_CASE("side tags are enforced") {
  Scene sc = make_scene(PhysicsTag::Acoustic2D, 10, 8, 2, 2,
                        MeasurementSpec::full(), false, 16);
  SignalSet r = zero_base_signal(sc);
  SignalSet s = zero_user_signal(sc);
  CHECK_THROWS_AS(apply_A(s, sc), DimensionError);
  CHECK_THROWS_AS(apply_B(r, sc), DimensionError);
  CHECK_THROWS_AS(apply_A_star(r, sc), DimensionError);
}

TEST_CASE("generalized measurement gate") {
  // Base and user arrays share the measurement spec, so the per-antenna map
  // needs equal counts on both sides.
  Scene sc = make_scene(PhysicsTag::Acoustic2D, 12, 12, 2, 2,
                        MeasurementSpec::full(), false, 17);
  Rng rng(18);
  GeneralizedMap gm = parity_pure_map(sc, rng);

  SUBCASE("consistent map passes the gate and stays adjoint") {
    Scene gsc{sc.grid, sc.medium, sc.base, sc.users, sc.stepper,
              MeasurementSpec::generalized(gm)};
    gsc.validate();
    // Measurement side of the pair on random data.
    FieldMovie u = random_movie(gsc.grid, rng, false, MovieKind::State);
    SignalSet r(gsc.users.count(), 2, gsc.grid.nt, gsc.grid.dt,
                SignalSide::Users);
    r = random_signal(std::move(r), rng);
    const double lhs = inner_product_signals(
        apply_M(u, gsc.users, gsc.mspec, gsc.grid, SignalSide::Users), r);
    FieldMovie q = apply_Q(r, gsc.users, gsc.medium, gsc.grid, gsc.mspec);
    for (auto& f : q.frames)
      for (int c = 0; c < kChannels; ++c)
        for (std::size_t x = 0; x < f.ch[0].size(); ++x)
          f.ch[static_cast<std::size_t>(c)][x] /= gsc.medium.gamma(c)[x];
    const double rhs = inner_product_fields(u, q, gsc.medium, gsc.grid);
    CHECK(std::abs(lhs - rhs) <=
          1e-12 * (std::abs(lhs) + std::abs(rhs) + 1.0));
  }

  SUBCASE("inconsistent adjoint is rejected") {
    gm.adjoint[0][0][0] += 0.05;
    Scene bad{sc.grid, sc.medium, sc.base, sc.users, sc.stepper,
              MeasurementSpec::generalized(gm)};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
  }

  SUBCASE("parity-pure generalized A* passes the weighted adjoint identity") {
    Scene gsc{sc.grid, sc.medium, sc.base, sc.users, sc.stepper,
              MeasurementSpec::generalized(gm)};
    gsc.validate();
    SignalSet r(gsc.base.count(), 2, gsc.grid.nt, gsc.grid.dt, SignalSide::Base);
    SignalSet s(gsc.users.count(), 2, gsc.grid.nt, gsc.grid.dt,
                SignalSide::Users);
    r = random_signal(std::move(r), rng);
    s = random_signal(std::move(s), rng);
    const double lhs = inner_product_signals(apply_A(r, gsc), s);
    const double rhs = inner_product_signals(r, apply_A_star(s, gsc));
    const double scale = std::sqrt(inner_product_signals(r, r) *
                                   inner_product_signals(s, s));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
  }
}
