#pragma once
#include <array>
#include <cmath>
#include <vector>

#include "trcomm/errors.hpp"
#include "trcomm/grid.hpp"
#include "trcomm/physics.hpp"

namespace trcomm {

// Coefficient fields of the symmetric hyperbolic system
//   Gamma du/dt + Lambda u + Phi u = q.
// Gamma and Phi are diagonal; stored per channel, per cell.
//   Acoustic2D : Gamma = diag(rho, rho, kappa), Phi = 0
//                (kappa is the compressibility; c = 1/sqrt(rho*kappa))
//   MaxwellTM2D: Gamma = diag(mu, mu, eps), Phi = diag(0, 0, sigma)
class Medium {
 public:
  static Medium acoustic(const Grid& g, std::vector<double> rho,
                         std::vector<double> kappa) {
    Medium m;
    m.phys_ = Physics::acoustic();
    if (rho.size() != g.cells() || kappa.size() != g.cells())
      throw DimensionError("Medium: rho/kappa size mismatch with grid");
    m.gamma_[0] = rho;
    m.gamma_[1] = std::move(rho);
    m.gamma_[2] = std::move(kappa);
    for (auto& p : m.phi_) p.assign(g.cells(), 0.0);
    m.finish(g);
    return m;
  }

  static Medium maxwell_tm(const Grid& g, std::vector<double> eps,
                           std::vector<double> mu, std::vector<double> sigma,
                           bool flip_h = false) {
    Medium m;
    m.phys_ = Physics::maxwell_tm(flip_h);
    if (eps.size() != g.cells() || mu.size() != g.cells() ||
        sigma.size() != g.cells())
      throw DimensionError("Medium: eps/mu/sigma size mismatch with grid");
    m.gamma_[0] = mu;
    m.gamma_[1] = std::move(mu);
    m.gamma_[2] = std::move(eps);
    m.phi_[0].assign(g.cells(), 0.0);
    m.phi_[1].assign(g.cells(), 0.0);
    m.phi_[2] = std::move(sigma);
    m.finish(g);
    return m;
  }

  const Physics& physics() const { return phys_; }
  const std::vector<double>& gamma(int channel) const { return gamma_[channel]; }
  const std::vector<double>& phi(int channel) const { return phi_[channel]; }
  double c_max() const { return c_max_; }
  std::size_t cells() const { return gamma_[0].size(); }

  bool operator==(const Medium&) const = default;

 private:
  void finish(const Grid& g) {
    constexpr double eps_pd = 1e-12;
    for (const auto& gc : gamma_)
      for (double v : gc)
        if (!(v >= eps_pd) || !std::isfinite(v))
          throw ConfigError("Medium: Gamma must be uniformly positive definite");
    for (const auto& pc : phi_)
      for (double v : pc)
        if (!(v >= 0.0) || !std::isfinite(v))
          throw ConfigError("Medium: Phi must be positive semi-definite");
    c_max_ = 0.0;
    for (std::size_t x = 0; x < g.cells(); ++x) {
      // wave speed 1/sqrt(gamma_transverse * gamma_scalar)
      double c = 1.0 / std::sqrt(gamma_[0][x] * gamma_[2][x]);
      if (c > c_max_) c_max_ = c;
    }
  }

  Physics phys_;
  std::array<std::vector<double>, kChannels> gamma_;
  std::array<std::vector<double>, kChannels> phi_;
  double c_max_ = 0.0;
};

}  // namespace trcomm
