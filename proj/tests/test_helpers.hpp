#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "trcomm/array_ops.hpp"
#include "trcomm/rng.hpp"

namespace testutil {

using namespace trcomm;

// Randomized heterogeneous medium on an n x n grid, for identity tests.
struct TinySetup {
  Grid g;
  Medium medium;
  StepperConfig cfg;
};

inline TinySetup make_tiny(PhysicsTag tag, int n, int nt, bool lossy,
                           std::uint64_t seed, double dx = 0.9,
                           double dy = 1.1) {
  Rng rng(seed);
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
  Medium m = tag == PhysicsTag::Acoustic2D ? Medium::acoustic(g, gt, gs)
                                           : Medium::maxwell_tm(g, gs, gt, sig);
  return {g, std::move(m), StepperConfig{0.5, 0}};
}

// A small scene on the make_tiny medium: base antennas on the left column,
// users on the right, single-cell delta profiles.
inline Scene make_scene(PhysicsTag tag, int n, int nt, int n_base, int n_users,
                        MeasurementSpec mspec, bool lossy, std::uint64_t seed) {
  TinySetup s = make_tiny(tag, n, nt, lossy, seed);
  std::vector<std::pair<int, int>> bpos, upos;
  for (int k = 0; k < n_base; ++k) bpos.emplace_back(2, 2 + 2 * k);
  for (int k = 0; k < n_users; ++k) upos.emplace_back(n - 3, 2 + 2 * k);
  Scene sc{s.g,
           s.medium,
           AntennaArray::delta(s.g, bpos),
           AntennaArray::delta(s.g, upos),
           s.cfg,
           std::move(mspec)};
  sc.validate();
  return sc;
}

inline FieldMovie random_movie(const Grid& g, Rng& rng, bool interior_only,
                               MovieKind kind = MovieKind::Source) {
  FieldMovie u(g, kind);
  for (auto& frame : u.frames)
    for (auto& c : frame.ch)
      for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
          if (!interior_only || g.interior(i, j))
            c[g.cell(i, j)] = rng.uniform(-1.0, 1.0);
  return u;
}

inline SignalSet random_signal(SignalSet shape, Rng& rng) {
  for (auto& v : shape.data()) v = rng.uniform(-1.0, 1.0);
  return shape;
}

inline double movie_max_abs_diff(const FieldMovie& a, const FieldMovie& b) {
  double e = 0.0;
  for (int n = 0; n < a.nt(); ++n)
    for (int c = 0; c < kChannels; ++c)
      for (std::size_t x = 0; x < a[n].ch[0].size(); ++x)
        e = std::max(e, std::abs(a[n].ch[static_cast<std::size_t>(c)][x] -
                                 b[n].ch[static_cast<std::size_t>(c)][x]));
  return e;
}

inline double movie_max_abs(const FieldMovie& a) {
  double e = 0.0;
  for (const auto& f : a.frames)
    for (const auto& c : f.ch)
      for (double v : c) e = std::max(e, std::abs(v));
  return e;
}

inline double signal_max_abs_diff(const SignalSet& a, const SignalSet& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    e = std::max(e, std::abs(a.data()[i] - b.data()[i]));
  return e;
}

inline std::vector<double> quad_weights(const SignalSet& z) {
  std::vector<double> w(z.size());
  std::size_t idx = 0;
  for (int k = 0; k < z.antennas(); ++k)
    for (int c = 0; c < z.channels(); ++c)
      for (int i = 0; i < z.nt(); ++i, ++idx)
        w[idx] = ((i == 0 || i == z.nt() - 1) ? 0.5 : 1.0) * z.dt();
  return w;
}

// Dense A assembled column-by-column through apply_A.
inline Eigen::MatrixXd assemble_A(const Scene& sc) {
  SignalSet zb = zero_base_signal(sc);
  SignalSet zu = zero_user_signal(sc);
  Eigen::MatrixXd A(static_cast<long>(zu.size()), static_cast<long>(zb.size()));
  for (long j = 0; j < A.cols(); ++j) {
    SignalSet e = zb;
    e.data()[static_cast<std::size_t>(j)] = 1.0;
    SignalSet s = apply_A(e, sc);
    for (long i = 0; i < A.rows(); ++i)
      A(i, j) = s.data()[static_cast<std::size_t>(i)];
  }
  return A;
}

// A CommOperator backed by an explicit matrix, with the same
// quadrature-weighted adjoint convention as SceneOperator. Lets scheme tests
// compare iterates against dense linear algebra without any PDE runs.
class DenseOperator final : public CommOperator {
 public:
  DenseOperator(Eigen::MatrixXd A, SignalSet zb, SignalSet zu)
      : A_(std::move(A)), zb_(std::move(zb)), zu_(std::move(zu)),
        wz_(quad_weights(zb_)), wu_(quad_weights(zu_)) {}

  SignalSet apply_A(const SignalSet& r) const override {
    SignalSet s = zu_;
    for (long i = 0; i < A_.rows(); ++i) {
      double acc = 0.0;
      for (long j = 0; j < A_.cols(); ++j)
        acc += A_(i, j) * r.data()[static_cast<std::size_t>(j)];
      s.data()[static_cast<std::size_t>(i)] = acc;
    }
    return s;
  }
  SignalSet apply_A_star(const SignalSet& s) const override {
    SignalSet r = zb_;
    for (long j = 0; j < A_.cols(); ++j) {
      double acc = 0.0;
      for (long i = 0; i < A_.rows(); ++i)
        acc += A_(i, j) * wu_[static_cast<std::size_t>(i)] *
               s.data()[static_cast<std::size_t>(i)];
      r.data()[static_cast<std::size_t>(j)] =
          acc / wz_[static_cast<std::size_t>(j)];
    }
    return r;
  }
  SignalSet zero_base() const override { return zb_.zeros_like(); }
  SignalSet zero_users() const override { return zu_.zeros_like(); }
  const Eigen::MatrixXd& matrix() const { return A_; }
  const std::vector<double>& wz() const { return wz_; }
  const std::vector<double>& wu() const { return wu_; }

 private:
  Eigen::MatrixXd A_;
  SignalSet zb_, zu_;
  std::vector<double> wz_, wu_;
};

}  // namespace testutil
