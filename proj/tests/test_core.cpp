#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "test_helpers.hpp"
#include "trcomm/io.hpp"
#include "trcomm/mirrors.hpp"
#include "trcomm/products.hpp"

using namespace trcomm;
using namespace testutil;

TEST_CASE("Grid invariants and helpers") {
  CHECK_THROWS_AS(Grid(3, 8, 0.1, 0.1, 0.01, 10), ConfigError);
  CHECK_THROWS_AS(Grid(8, 8, 0.1, 0.1, 0.01, 1), ConfigError);
  CHECK_THROWS_AS(Grid(8, 8, -0.1, 0.1, 0.01, 10), ConfigError);
  Grid g(8, 6, 0.1, 0.2, 0.01, 11);
  CHECK(g.T() == doctest::Approx(0.1));
  CHECK(g.cells() == 48);
  CHECK(g.interior(1, 1));
  CHECK_FALSE(g.interior(0, 3));
  CHECK_FALSE(g.interior(7, 3));
  CHECK(g.time_weight(0) == 0.005);
  CHECK(g.time_weight(5) == 0.01);
  CHECK(g.time_weight(10) == 0.005);
}

TEST_CASE("Physics sign masks") {
  CHECK(Physics::acoustic().sign_mask == std::array<int, 3>{-1, -1, +1});
  CHECK(Physics::maxwell_tm().sign_mask == std::array<int, 3>{+1, +1, -1});
  CHECK(Physics::maxwell_tm(true).sign_mask == std::array<int, 3>{-1, -1, +1});
}

TEST_CASE("Medium validation") {
  Grid g(6, 6, 1.0, 1.0, 0.1, 4);
  std::vector<double> ones(g.cells(), 1.0);
  SUBCASE("positive definiteness enforced") {
    std::vector<double> bad = ones;
    bad[7] = 0.0;
    CHECK_THROWS_AS(Medium::acoustic(g, bad, ones), ConfigError);
    CHECK_THROWS_AS(Medium::acoustic(g, ones, bad), ConfigError);
  }
  SUBCASE("Phi must be nonnegative") {
    std::vector<double> sig(g.cells(), 0.0);
    sig[3] = -1e-3;
    CHECK_THROWS_AS(Medium::maxwell_tm(g, ones, ones, sig), ConfigError);
  }
  SUBCASE("c_max") {
    std::vector<double> kap(g.cells(), 1.0);
    kap[5] = 0.25;  // c = 1/sqrt(rho*kappa) = 2 there
    Medium m = Medium::acoustic(g, ones, kap);
    CHECK(m.c_max() == doctest::Approx(2.0));
  }
}

TEST_CASE("AntennaArray invariants") {
  Grid g(10, 10, 0.5, 0.5, 0.05, 4);
  SUBCASE("delta weight normalization") {
    AntennaArray a = AntennaArray::delta(g, {{3, 3}});
    CHECK(a[0].weights[0] == doctest::Approx(1.0 / 0.25));
  }
  SUBCASE("gaussian3x3 integrates to one") {
    AntennaArray a = AntennaArray::gaussian3x3(g, {{4, 4}});
    double total = 0.0;
    for (double w : a[0].weights) total += w * g.dx * g.dy;
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
  SUBCASE("boundary ring rejected") {
    CHECK_THROWS_AS(AntennaArray::delta(g, {{0, 5}}), LayoutError);
    CHECK_THROWS_AS(AntennaArray::gaussian3x3(g, {{1, 5}}), LayoutError);
  }
  SUBCASE("overlap rejected") {
    CHECK_THROWS_AS(AntennaArray::delta(g, {{3, 3}, {3, 3}}), LayoutError);
    CHECK_THROWS_AS(AntennaArray::gaussian3x3(g, {{4, 4}, {5, 5}}), LayoutError);
  }
}

TEST_CASE("inner_product_signals") {
  const int nt = 16;
  const double dt = 0.125;
  SUBCASE("zero element") {
    SignalSet a(2, 3, nt, dt, SignalSide::Base);
    CHECK(inner_product_signals(a, a) == 0.0);
  }
  SUBCASE("constant 1 integrates to T") {
    SignalSet a(1, 1, nt, dt, SignalSide::Base, 2);
    for (int i = 0; i < nt; ++i) a.at(0, 0, i) = 1.0;
    CHECK(inner_product_signals(a, a) == doctest::Approx((nt - 1) * dt));
  }
  SUBCASE("matches extended-precision summation oracle") {
    Rng rng(7);
    SignalSet a = random_signal(SignalSet(2, 3, nt, dt, SignalSide::Base), rng);
    SignalSet b = random_signal(SignalSet(2, 3, nt, dt, SignalSide::Base), rng);
    long double acc = 0.0L;
    for (int k = 0; k < 2; ++k)
      for (int c = 0; c < 3; ++c)
        for (int i = 0; i < nt; ++i) {
          const long double w = (i == 0 || i == nt - 1) ? 0.5L : 1.0L;
          acc += w * static_cast<long double>(a.at(k, c, i)) * b.at(k, c, i) * dt;
        }
    const double got = inner_product_signals(a, b);
    CHECK(std::abs(got - static_cast<double>(acc)) <=
          1e-14 * std::abs(static_cast<double>(acc)));
  }
  SUBCASE("shape mismatch") {
    SignalSet a(2, 3, nt, dt, SignalSide::Base);
    SignalSet b(1, 3, nt, dt, SignalSide::Base);
    SignalSet c(2, 3, nt, dt, SignalSide::Users);
    CHECK_THROWS_AS(inner_product_signals(a, b), DimensionError);
    CHECK_THROWS_AS(inner_product_signals(a, c), DimensionError);
  }
  SUBCASE("user weights") {
    SignalSet a(2, 1, nt, dt, SignalSide::Users, 2);
    for (int i = 0; i < nt; ++i) {
      a.at(0, 0, i) = 1.0;
      a.at(1, 0, i) = 1.0;
    }
    const double unweighted = inner_product_signals(a, a);
    const double weighted = inner_product_signals(a, a, {2.0, 0.0});
    CHECK(weighted == doctest::Approx(unweighted));
  }
}

TEST_CASE("inner_product_fields") {
  TinySetup s = make_tiny(PhysicsTag::Acoustic2D, 6, 5, false, 11);
  SUBCASE("zero") {
    FieldMovie u(s.g, MovieKind::State);
    CHECK(inner_product_fields(u, u, s.medium, s.g) == 0.0);
  }
  SUBCASE("single-cell indicator") {
    Grid g(6, 6, 0.3, 0.4, 0.05, 9);
    std::vector<double> rho(g.cells(), 1.0), kap(g.cells(), 2.0);
    Medium m = Medium::acoustic(g, rho, kap);
    FieldMovie u(g, MovieKind::State);
    for (auto& f : u.frames) f.ch[2][g.cell(2, 3)] = 1.0;
    CHECK(inner_product_fields(u, u, m, g) ==
          doctest::Approx(2.0 * g.dx * g.dy * g.T()));
  }
  SUBCASE("flatten-and-dot oracle") {
    Rng rng(3);
    FieldMovie u = random_movie(s.g, rng, false);
    FieldMovie v = random_movie(s.g, rng, false);
    long double acc = 0.0L;
    for (int n = 0; n < s.g.nt; ++n) {
      const long double w = (n == 0 || n == s.g.nt - 1) ? 0.5L : 1.0L;
      for (int c = 0; c < kChannels; ++c)
        for (std::size_t x = 0; x < s.g.cells(); ++x)
          acc += w * static_cast<long double>(s.medium.gamma(c)[x]) *
                 u[n].ch[static_cast<std::size_t>(c)][x] *
                 v[n].ch[static_cast<std::size_t>(c)][x];
    }
    acc *= static_cast<long double>(s.g.dx) * s.g.dy * s.g.dt;
    const double got = inner_product_fields(u, v, s.medium, s.g);
    CHECK(std::abs(got - static_cast<double>(acc)) <=
          1e-13 * std::abs(static_cast<double>(acc)));
  }
}

TEST_CASE("inner products symmetric and bilinear") {
  Rng rng(5);
  const int nt = 12;
  SignalSet a = random_signal(SignalSet(2, 3, nt, 0.1, SignalSide::Base), rng);
  SignalSet b = random_signal(SignalSet(2, 3, nt, 0.1, SignalSide::Base), rng);
  SignalSet c = random_signal(SignalSet(2, 3, nt, 0.1, SignalSide::Base), rng);
  const double sym1 = inner_product_signals(a, b);
  const double sym2 = inner_product_signals(b, a);
  CHECK(std::abs(sym1 - sym2) <= 1e-14 * std::abs(sym1));
  SignalSet lin = b;
  lin.axpy(2.5, c);
  const double lhs = inner_product_signals(a, lin);
  const double rhs = inner_product_signals(a, b) + 2.5 * inner_product_signals(a, c);
  CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(std::abs(lhs), 1.0));
}

TEST_CASE("energy and flux") {
  Grid g(6, 6, 0.3, 0.4, 0.05, 4);
  std::vector<double> ones(g.cells(), 1.0);
  SUBCASE("energy_total examples") {
    Medium m = Medium::acoustic(g, ones, ones);
    FieldState u(g);
    CHECK(energy_total(u, m, g) == 0.0);
    u.ch[2][g.cell(3, 3)] = 1.0;
    CHECK(energy_total(u, m, g) == doctest::Approx(0.5 * g.dx * g.dy));
    Rng rng(1);
    for (auto& c : u.ch)
      for (double& v : c) v = rng.uniform(-1.0, 1.0);
    auto dens = energy_density(u, m, g);
    long double sum = 0.0L;
    for (double d : dens) sum += d;
    CHECK(energy_total(u, m, g) ==
          doctest::Approx(static_cast<double>(sum) * g.dx * g.dy));
    CHECK(energy_total(u, m, g) >= 0.0);
  }
  SUBCASE("acoustic flux p*v") {
    Medium m = Medium::acoustic(g, ones, ones);
    FieldState u(g);
    u.ch[0][g.cell(2, 2)] = 3.0;  // v_x
    u.ch[2][g.cell(2, 2)] = 2.0;  // p
    auto f = flux(u, m, g);
    CHECK(f[0][g.cell(2, 2)] == 6.0);
    CHECK(f[1][g.cell(2, 2)] == 0.0);
  }
  SUBCASE("EM flux equals 3D Poynting cross product reduced to 2D") {
    Medium m = Medium::maxwell_tm(g, ones, ones, std::vector<double>(g.cells(), 0.0));
    FieldState u(g);
    const std::size_t x = g.cell(2, 2);
    u.ch[0][x] = 0.0;  // Hx
    u.ch[1][x] = 1.0;  // Hy
    u.ch[2][x] = 1.0;  // Ez
    // Oracle: S = E x H with E = (0,0,Ez), H = (Hx,Hy,0):
    //   S_x = -Ez*Hy, S_y = +Ez*Hx.
    const double ez = 1.0, hx = 0.0, hy = 1.0;
    const double sx = -ez * hy, sy = ez * hx;
    auto f = flux(u, m, g);
    CHECK(f[0][x] == sx);
    CHECK(f[0][x] == -1.0);
    CHECK(f[1][x] == sy);
  }
}

TEST_CASE("signal mirrors") {
  const Physics ac = Physics::acoustic();
  SUBCASE("zero and spike") {
    SignalSet s(1, 3, 8, 0.1, SignalSide::Base);
    CHECK(time_reverse_signals(s, ac) == s);
    s.at(0, 2, 2) = 1.0;  // pressure channel
    SignalSet r = time_reverse_signals(s, ac);
    CHECK(r.at(0, 2, 5) == 1.0);
    s.at(0, 0, 2) = 1.0;  // velocity channel flips
    r = time_reverse_signals(s, ac);
    CHECK(r.at(0, 0, 5) == -1.0);
  }
  SUBCASE("involution") {
    Rng rng(9);
    SignalSet s = random_signal(SignalSet(2, 3, 10, 0.1, SignalSide::Users), rng);
    CHECK(time_reverse_signals(time_reverse_signals(s, ac), ac) == s);
    const Physics em = Physics::maxwell_tm();
    CHECK(time_reverse_signals(time_reverse_signals(s, em), em) == s);
  }
  SUBCASE("partial channel sign from parent channel") {
    SignalSet s(1, 1, 8, 0.1, SignalSide::Base, 0);
    s.at(0, 0, 1) = 2.0;
    SignalSet r = time_reverse_signals(s, ac);
    CHECK(r.at(0, 0, 6) == -2.0);
  }
  SUBCASE("unknown channel mapping rejected") {
    SignalSet s(1, 1, 8, 0.1, SignalSide::Base, -1);
    CHECK_THROWS_AS(time_reverse_signals(s, ac), DimensionError);
  }
}

TEST_CASE("field mirror S") {
  TinySetup s = make_tiny(PhysicsTag::Acoustic2D, 6, 5, false, 21);
  const Physics& phys = s.medium.physics();
  SUBCASE("spike example") {
    FieldMovie q(s.g, MovieKind::Source);
    q[1].ch[0][s.g.cell(2, 2)] = 1.0;  // v_x spike at t-index 1
    FieldMovie r = time_reverse_field(q, phys);
    CHECK(r[3].ch[0][s.g.cell(2, 2)] == -1.0);
  }
  SUBCASE("involution bit-exact, both physics") {
    Rng rng(2);
    FieldMovie u = random_movie(s.g, rng, false);
    CHECK(time_reverse_field(time_reverse_field(u, phys), phys) == u);
    const Physics em = Physics::maxwell_tm();
    CHECK(time_reverse_field(time_reverse_field(u, em), em) == u);
  }
  SUBCASE("S preserves the field inner product") {
    Rng rng(4);
    FieldMovie u = random_movie(s.g, rng, false);
    FieldMovie v = random_movie(s.g, rng, false);
    const double a = inner_product_fields(u, v, s.medium, s.g);
    const double b = inner_product_fields(time_reverse_field(u, phys),
                                          time_reverse_field(v, phys),
                                          s.medium, s.g);
    CHECK(std::abs(a - b) <= 1e-14 * std::abs(a));
  }
}

TEST_CASE("io round trips") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "trcomm_io_test";
  fs::create_directories(dir);
  SUBCASE("field movie") {
    TinySetup s = make_tiny(PhysicsTag::Acoustic2D, 6, 4, false, 31);
    Rng rng(1);
    FieldMovie u = random_movie(s.g, rng, false);
    const std::string path = (dir / "movie.bin").string();
    write_field_movie(path, u, s.g);
    Grid g2;
    FieldMovie v = read_field_movie(path, g2);
    CHECK(g2.nx == s.g.nx);
    CHECK(g2.ny == s.g.ny);
    CHECK(g2.nt == s.g.nt);
    CHECK(movie_max_abs_diff(u, v) == 0.0);
  }
  SUBCASE("signal csv header and determinism") {
    SignalSet s(1, 1, 4, 0.25, SignalSide::Base, 2);
    s.at(0, 0, 1) = 1.0 / 3.0;
    const std::string path = (dir / "sig.csv").string();
    write_signal_csv(path, s);
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);
    CHECK(line == "antenna,channel,t,value");
    std::getline(f, line);
    CHECK(line.rfind("0,2,0,", 0) == 0);
  }
  fs::remove_all(dir);
}

TEST_CASE("format_double round trip") {
  for (double v : {1.0 / 3.0, 1e-300, -2.5e17, 0.1}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}
