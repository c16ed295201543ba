#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "run_config.hpp"
#include "trcomm/array_ops.hpp"
#include "trcomm/io.hpp"
#include "trcomm/products.hpp"
#include "trcomm/verify.hpp"

namespace fs = std::filesystem;
using namespace trcomm;

namespace {

// Max |u| over cells adjacent to the zero-Dirichlet ring, tracked during a
// run to warn when energy reaches the boundary.
struct BoundaryWatch {
  const Grid& g;
  double peak = 0.0;
  double boundary_peak = 0.0;

  void observe(const FieldState& u) {
    for (int c = 0; c < kChannels; ++c) {
      const auto& uc = u.ch[static_cast<std::size_t>(c)];
      for (std::size_t x = 0; x < uc.size(); ++x)
        peak = std::max(peak, std::abs(uc[x]));
      for (int j = 1; j < g.ny - 1; ++j) {
        boundary_peak = std::max(boundary_peak, std::abs(uc[g.cell(1, j)]));
        boundary_peak =
            std::max(boundary_peak, std::abs(uc[g.cell(g.nx - 2, j)]));
      }
      for (int i = 1; i < g.nx - 1; ++i) {
        boundary_peak = std::max(boundary_peak, std::abs(uc[g.cell(i, 1)]));
        boundary_peak =
            std::max(boundary_peak, std::abs(uc[g.cell(i, g.ny - 2)]));
      }
    }
  }
};

int cmd_run(const std::string& config_path, const std::string& out_dir,
            bool seed_given, std::uint64_t seed) {
  cli::RunConfig rc = cli::parse_run_config(config_path);
  if (seed_given) {
    rc.scene.seed = seed;
    rc.scheme.noise_seed = seed + 1;
  }
  BuiltScene built = build_scene(rc.scene);
  SceneOperator op(built.scene);

  SchemeConfig cfg = rc.scheme;
  const bool needs_lambda = cfg.scheme == SchemeKind::GradientReg ||
                            cfg.scheme == SchemeKind::MinNormReg ||
                            cfg.scheme == SchemeKind::Rls;
  if (needs_lambda && !rc.lambda_given)
    cfg.lambda = 1e-2 * estimate_op_norm2(op);

  SchemeResult res = run_scheme(built.pilot, op, cfg);

  fs::create_directories(out_dir);
  if (rc.output.trace_csv)
    write_trace_csv((fs::path(out_dir) / "trace.csv").string(), res.trace);
  SignalSet received = apply_A(res.r, built.scene);
  if (rc.output.signal_dumps) {
    write_signal_csv((fs::path(out_dir) / "base_signal.csv").string(), res.r);
    write_signal_csv((fs::path(out_dir) / "received.csv").string(), received);
  }

  // Final forward pass for boundary monitoring and optional snapshots.
  {
    const Scene& sc = built.scene;
    FieldMovie q = apply_Q(res.r, sc.base, sc.medium, sc.grid, sc.mspec);
    BoundaryWatch watch{sc.grid};
    FieldMovie snaps;
    snaps.kind = MovieKind::State;
    const int every = rc.output.snapshot_every;
    run_forward(q, sc.medium, sc.grid, sc.stepper,
                [&](int step, const FieldState& u) {
                  watch.observe(u);
                  if (every > 0 && step % every == 0) snaps.frames.push_back(u);
                });
    if (watch.peak > 0.0 && watch.boundary_peak > 1e-8 * watch.peak)
      std::cerr << "warning: boundary-adjacent energy is "
                << format_double(watch.boundary_peak / watch.peak)
                << " of peak (> 1e-8); reflections may contaminate signals\n";
    if (every > 0 && !snaps.frames.empty()) {
      Grid gs = sc.grid;
      gs.nt = static_cast<int>(snaps.frames.size());
      write_field_movie((fs::path(out_dir) / "fields.bin").string(), snaps, gs);
    }
  }

  SignalSet resid = built.pilot;
  resid.axpy(-1.0, received);
  const double resn = norm_signals(resid, cfg.user_weights);
  std::cout << "scheme: converged=" << (res.trace.converged ? "yes" : "no")
            << " iterations=" << res.trace.iterations << "\n";
  std::cout << "final_residual " << format_double(resn) << "\n";
  std::cout << "base_energy " << format_double(norm_signals(res.r)) << "\n";
  // Per-user interference ratio: received energy relative to the pilot user.
  {
    std::vector<double> e(static_cast<std::size_t>(received.antennas()), 0.0);
    for (int k = 0; k < received.antennas(); ++k) {
      double acc = 0.0;
      for (int c = 0; c < received.channels(); ++c)
        for (int i = 0; i < received.nt(); ++i) {
          const double w = (i == 0 || i == received.nt() - 1) ? 0.5 : 1.0;
          acc += w * received.at(k, c, i) * received.at(k, c, i);
        }
      e[static_cast<std::size_t>(k)] = acc * received.dt();
    }
    const double ref =
        e[static_cast<std::size_t>(rc.scene.pilot.user_index)];
    for (int k = 0; k < received.antennas(); ++k)
      std::cout << "user" << (k + 1) << "_interference_ratio "
                << format_double(ref > 0.0
                                     ? e[static_cast<std::size_t>(k)] / ref
                                     : 0.0)
                << "\n";
  }
  return res.trace.converged ? 0 : 2;
}

int cmd_verify(const std::string& tier_name, bool corrupt) {
  const VerifyTier tier =
      tier_name == "small" ? VerifyTier::Small : VerifyTier::Tiny;
  auto results = run_verify(tier, corrupt);
  bool all = true;
  for (const auto& r : results) {
    std::printf("%-45s err=%.3e tol=%.0e %s\n", r.name.c_str(), r.error, r.tol,
                r.pass ? "PASS" : "FAIL");
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "ALL CHECKS PASSED" : "CHECKS FAILED");
  return all ? 0 : 3;
}

void write_matrix(const std::string& path,
                  const std::vector<std::vector<double>>& m) {
  std::ofstream f(path);
  if (!f) throw ConfigError("dump-operator: cannot open " + path);
  f << m.size() << " " << (m.empty() ? 0 : m.front().size()) << "\n";
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j)
      f << (j ? " " : "") << format_double(row[j]);
    f << "\n";
  }
}

int cmd_dump_operator(const std::string& config_path, const std::string& out_dir,
                      int max_dims, bool seed_given, std::uint64_t seed) {
  cli::RunConfig rc = cli::parse_run_config(config_path);
  if (seed_given) rc.scene.seed = seed;
  BuiltScene built = build_scene(rc.scene);
  const Scene& sc = built.scene;
  SignalSet zb = zero_base_signal(sc);
  SignalSet zu = zero_user_signal(sc);
  const int cols = static_cast<int>(zb.size());
  const int rows = static_cast<int>(zu.size());
  if (cols > max_dims || rows > max_dims)
    throw SizeError("dump-operator: total signal dimensions exceed max dims");

  auto quad_weights = [](const SignalSet& z) {
    std::vector<double> w(z.size());
    std::size_t idx = 0;
    for (int k = 0; k < z.antennas(); ++k)
      for (int c = 0; c < z.channels(); ++c)
        for (int i = 0; i < z.nt(); ++i, ++idx)
          w[idx] = ((i == 0 || i == z.nt() - 1) ? 0.5 : 1.0) * z.dt();
    return w;
  };
  const auto wz = quad_weights(zb);
  const auto wu = quad_weights(zu);

  std::vector<std::vector<double>> A(
      static_cast<std::size_t>(rows),
      std::vector<double>(static_cast<std::size_t>(cols), 0.0));
  for (int j = 0; j < cols; ++j) {
    SignalSet e = zb;
    e.data()[static_cast<std::size_t>(j)] = 1.0;
    SignalSet s = apply_A(e, sc);
    for (int i = 0; i < rows; ++i)
      A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          s.data()[static_cast<std::size_t>(i)];
  }
  std::vector<std::vector<double>> Astar(
      static_cast<std::size_t>(cols),
      std::vector<double>(static_cast<std::size_t>(rows), 0.0));
  for (int j = 0; j < rows; ++j) {
    SignalSet e = zu;
    e.data()[static_cast<std::size_t>(j)] = 1.0;
    SignalSet r = apply_A_star(e, sc);
    for (int i = 0; i < cols; ++i)
      Astar[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          r.data()[static_cast<std::size_t>(i)];
  }

  fs::create_directories(out_dir);
  write_matrix((fs::path(out_dir) / "A.txt").string(), A);
  write_matrix((fs::path(out_dir) / "Astar.txt").string(), Astar);

  // Weighted transpose check: Astar must equal Wz^-1 A^T Wu.
  double max_err = 0.0, max_val = 0.0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double a = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      max_val = std::max(max_val, std::abs(a));
      const double expect = a * wu[static_cast<std::size_t>(i)] /
                            wz[static_cast<std::size_t>(j)];
      max_err = std::max(
          max_err,
          std::abs(Astar[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -
                   expect));
    }
  const double rel = max_val > 0.0 ? max_err / max_val : max_err;
  const bool pass = rel <= 1e-12;
  {
    std::ofstream f(fs::path(out_dir) / "report.txt");
    f << "rows " << rows << "\ncols " << cols << "\n";
    f << "weighted_transpose_rel_err " << format_double(rel) << "\n";
    f << (pass ? "PASS" : "FAIL") << "\n";
  }
  std::cout << "weighted_transpose_rel_err " << format_double(rel) << " "
            << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-reversal communication toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", tier = "tiny";
  std::uint64_t seed = 0;
  bool corrupt = false;
  int max_dims = 4096;

  CLI::App* run = app.add_subcommand("run", "run a configured experiment");
  run->add_option("--config", config_path, "config file path")->required();
  run->add_option("--out", out_dir, "output directory");
  auto* run_seed = run->add_option("--seed", seed, "seed override");

  CLI::App* verify = app.add_subcommand("verify", "run the identity suite");
  verify->add_option("--tier", tier, "tiny or small")
      ->check(CLI::IsMember({"tiny", "small"}));
  verify->add_flag("--corrupt-sign-mask", corrupt)->group("");

  CLI::App* dump =
      app.add_subcommand("dump-operator", "assemble A explicitly");
  dump->add_option("--config", config_path, "config file path")->required();
  dump->add_option("--out", out_dir, "output directory");
  dump->add_option("--max-dims", max_dims, "dense assembly size cap");
  auto* dump_seed = dump->add_option("--seed", seed, "seed override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(config_path, out_dir, run_seed->count() > 0, seed);
    if (verify->parsed()) return cmd_verify(tier, corrupt);
    if (dump->parsed())
      return cmd_dump_operator(config_path, out_dir, max_dims,
                               dump_seed->count() > 0, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
