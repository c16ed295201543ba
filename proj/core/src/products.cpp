#include "trcomm/products.hpp"

#include <cmath>

#include "trcomm/errors.hpp"

namespace trcomm {

double inner_product_signals(const SignalSet& a, const SignalSet& b,
                             const std::vector<double>& user_weights) {
  if (!a.same_shape(b))
    throw DimensionError("inner_product_signals: shape mismatch");
  if (!user_weights.empty() &&
      user_weights.size() != static_cast<std::size_t>(a.antennas()))
    throw DimensionError("inner_product_signals: bad user_weights length");
  const int nt = a.nt();
  const double dt = a.dt();
  double acc = 0.0;
  for (int k = 0; k < a.antennas(); ++k) {
    const double wk = user_weights.empty()
                          ? 1.0
                          : user_weights[static_cast<std::size_t>(k)];
    double ak = 0.0;
    for (int c = 0; c < a.channels(); ++c)
      for (int i = 0; i < nt; ++i) {
        const double w = (i == 0 || i == nt - 1) ? 0.5 : 1.0;
        ak += w * a.at(k, c, i) * b.at(k, c, i);
      }
    acc += wk * ak;
  }
  return acc * dt;
}

double norm_signals(const SignalSet& a, const std::vector<double>& user_weights) {
  return std::sqrt(inner_product_signals(a, a, user_weights));
}

double inner_product_fields(const FieldMovie& u, const FieldMovie& v,
                            const Medium& m, const Grid& g) {
  if (u.nt() != g.nt || v.nt() != g.nt ||
      u[0].cells() != g.cells() || v[0].cells() != g.cells())
    throw DimensionError("inner_product_fields: grid mismatch");
  double acc = 0.0;
  for (int n = 0; n < g.nt; ++n) {
    const double w = (n == 0 || n == g.nt - 1) ? 0.5 : 1.0;
    double frame = 0.0;
    for (int c = 0; c < kChannels; ++c) {
      const auto& gc = m.gamma(c);
      const auto& uc = u[n].ch[static_cast<std::size_t>(c)];
      const auto& vc = v[n].ch[static_cast<std::size_t>(c)];
      for (std::size_t x = 0; x < gc.size(); ++x) frame += gc[x] * uc[x] * vc[x];
    }
    acc += w * frame;
  }
  return acc * g.dx * g.dy * g.dt;
}

double energy_total(const FieldState& u, const Medium& m, const Grid& g) {
  if (u.cells() != g.cells() || m.cells() != g.cells())
    throw DimensionError("energy_total: shape mismatch");
  double acc = 0.0;
  for (int c = 0; c < kChannels; ++c) {
    const auto& gc = m.gamma(c);
    const auto& uc = u.ch[static_cast<std::size_t>(c)];
    for (std::size_t x = 0; x < gc.size(); ++x) acc += gc[x] * uc[x] * uc[x];
  }
  return 0.5 * acc * g.dx * g.dy;
}

std::vector<double> energy_density(const FieldState& u, const Medium& m,
                                   const Grid& g) {
  if (u.cells() != g.cells() || m.cells() != g.cells())
    throw DimensionError("energy_density: shape mismatch");
  std::vector<double> e(g.cells(), 0.0);
  for (int c = 0; c < kChannels; ++c) {
    const auto& gc = m.gamma(c);
    const auto& uc = u.ch[static_cast<std::size_t>(c)];
    for (std::size_t x = 0; x < e.size(); ++x)
      e[x] += 0.5 * gc[x] * uc[x] * uc[x];
  }
  return e;
}

std::array<std::vector<double>, 2> flux(const FieldState& u, const Medium& m,
                                        const Grid& g) {
  if (u.cells() != g.cells() || m.cells() != g.cells())
    throw DimensionError("flux: shape mismatch");
  std::array<std::vector<double>, 2> f;
  f[0].assign(g.cells(), 0.0);
  f[1].assign(g.cells(), 0.0);
  const auto& c0 = u.ch[0];
  const auto& c1 = u.ch[1];
  const auto& c2 = u.ch[2];
  if (m.physics().tag == PhysicsTag::Acoustic2D) {
    for (std::size_t x = 0; x < g.cells(); ++x) {
      f[0][x] = c2[x] * c0[x];  // p * v_x
      f[1][x] = c2[x] * c1[x];  // p * v_y
    }
  } else {
    // Poynting vector E x H with E = Ez zhat.
    for (std::size_t x = 0; x < g.cells(); ++x) {
      f[0][x] = -c2[x] * c1[x];  // -Ez * Hy
      f[1][x] = c2[x] * c0[x];   // +Ez * Hx
    }
  }
  return f;
}

}  // namespace trcomm
