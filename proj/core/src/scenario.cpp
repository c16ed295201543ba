#include "trcomm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "trcomm/errors.hpp"
#include "trcomm/rng.hpp"

namespace trcomm {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::pair<int, int>> line_layout(int count, int i_col, int ny) {
  const int lo = std::max(2, ny / 6);
  const int hi = ny - 1 - lo;
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < count; ++k) {
    const double frac = (k + 1.0) / (count + 1.0);
    int j = lo + static_cast<int>(std::lround(frac * (hi - lo)));
    out.emplace_back(i_col, j);
  }
  return out;
}

AntennaArray make_array(const Grid& g, const std::string& profile,
                        const std::vector<std::pair<int, int>>& centers) {
  if (profile == "delta") return AntennaArray::delta(g, centers);
  if (profile == "gaussian3x3") return AntennaArray::gaussian3x3(g, centers);
  throw ConfigError("build_scene: unknown antenna profile '" + profile + "'");
}

}  // namespace

std::vector<double> make_wavelet(const PilotRecipe& recipe, const Grid& g) {
  std::vector<double> a(static_cast<std::size_t>(g.nt), 0.0);
  switch (recipe.kind) {
    case WaveletKind::Ricker: {
      if (!(recipe.f0 > 0.0)) throw ConfigError("ricker: f0 must be > 0");
      if (g.dt > 1.0 / (10.0 * recipe.f0))
        throw SamplingError(
            "ricker: center frequency unresolvable (< 10 points per period)");
      const double t0 = recipe.t0 >= 0.0 ? recipe.t0 : 1.5 / recipe.f0;
      const double s = kPi * kPi * recipe.f0 * recipe.f0;
      for (int i = 0; i < g.nt; ++i) {
        const double tau = i * g.dt - t0;
        a[static_cast<std::size_t>(i)] =
            (1.0 - 2.0 * s * tau * tau) * std::exp(-s * tau * tau);
      }
      break;
    }
    case WaveletKind::Gaussian: {
      if (!(recipe.width > 0.0)) throw ConfigError("gaussian: width must be > 0");
      if (recipe.width < 3.0 * g.dt)
        throw SamplingError("gaussian: pulse width unresolvable at dt");
      const double t0 = recipe.t0 >= 0.0 ? recipe.t0 : 4.0 * recipe.width;
      for (int i = 0; i < g.nt; ++i) {
        const double tau = i * g.dt - t0;
        a[static_cast<std::size_t>(i)] =
            std::exp(-tau * tau / (2.0 * recipe.width * recipe.width));
      }
      break;
    }
    case WaveletKind::Chirp: {
      if (!(recipe.f1 > 0.0) || !(recipe.f2 > 0.0))
        throw ConfigError("chirp: f1, f2 must be > 0");
      if (g.dt > 1.0 / (10.0 * std::max(recipe.f1, recipe.f2)))
        throw SamplingError(
            "chirp: endpoint frequency unresolvable (< 10 points per period)");
      const double T = g.T();
      for (int i = 0; i < g.nt; ++i) {
        const double t = i * g.dt;
        const double phase =
            2.0 * kPi * (recipe.f1 * t +
                         0.5 * (recipe.f2 - recipe.f1) * t * t / T);
        a[static_cast<std::size_t>(i)] = std::sin(phase);
      }
      break;
    }
  }
  return a;
}

BuiltScene build_scene(const SceneSpec& spec) {
  if (spec.nx < 4 || spec.ny < 4 || spec.nt < 2)
    throw ConfigError("build_scene: grid dims too small");
  if (!(spec.dx > 0.0) || !(spec.dy > 0.0))
    throw ConfigError("build_scene: dx, dy must be > 0");
  if (!(spec.medium.c > 0.0)) throw ConfigError("build_scene: c must be > 0");

  const std::size_t cells =
      static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.ny);
  // Background: transverse coefficient 1, scalar coefficient 1/c^2, so that
  // the wave speed is c.
  std::vector<double> gt(cells, 1.0);
  std::vector<double> gs(cells, 1.0 / (spec.medium.c * spec.medium.c));

  Rng rng(spec.seed);
  auto cell_of = [&](int i, int j) {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(spec.ny) +
           static_cast<std::size_t>(j);
  };

  switch (spec.medium.kind) {
    case MediumRecipeKind::Homogeneous:
      break;
    case MediumRecipeKind::RandomScatterers: {
      const MediumRecipe& mr = spec.medium;
      if (mr.count < 0 || !(mr.radius_min > 0.0) ||
          mr.radius_max < mr.radius_min)
        throw ConfigError("build_scene: bad scatterer radii");
      if (!(mr.contrast_min > 0.0) || mr.contrast_max < mr.contrast_min)
        throw ConfigError(
            "build_scene: scatterer contrast must keep Gamma positive");
      const double d = std::min(spec.dx, spec.dy);
      const int margin = static_cast<int>(std::ceil(mr.radius_max / d)) + 2;
      if (spec.nx - 2 * margin < 1 || spec.ny - 2 * margin < 1)
        throw ConfigError("build_scene: scatterers too large for the grid");
      for (int n = 0; n < mr.count; ++n) {
        const double cx =
            rng.uniform(margin * spec.dx, (spec.nx - 1 - margin) * spec.dx);
        const double cy =
            rng.uniform(margin * spec.dy, (spec.ny - 1 - margin) * spec.dy);
        const double rad = rng.uniform(mr.radius_min, mr.radius_max);
        const double contrast = rng.uniform(mr.contrast_min, mr.contrast_max);
        const int i0 = std::max(1, static_cast<int>((cx - rad) / spec.dx) - 1);
        const int i1 =
            std::min(spec.nx - 2, static_cast<int>((cx + rad) / spec.dx) + 1);
        for (int i = i0; i <= i1; ++i)
          for (int j = 1; j < spec.ny - 1; ++j) {
            const double px = i * spec.dx - cx;
            const double py = j * spec.dy - cy;
            if (px * px + py * py <= rad * rad) gs[cell_of(i, j)] *= contrast;
          }
      }
      break;
    }
    case MediumRecipeKind::Waveguide: {
      const MediumRecipe& mr = spec.medium;
      if (mr.band_cells < 1 || 2 * mr.band_cells >= spec.ny - 2)
        throw ConfigError("build_scene: bad waveguide band thickness");
      if (!(mr.band_contrast > 0.0))
        throw ConfigError("build_scene: band contrast must be > 0");
      for (int i = 1; i < spec.nx - 1; ++i)
        for (int b = 0; b < mr.band_cells; ++b) {
          gs[cell_of(i, 1 + b)] *= mr.band_contrast;
          gs[cell_of(i, spec.ny - 2 - b)] *= mr.band_contrast;
        }
      break;
    }
  }

  // dt from the CFL bound against the actual (possibly perturbed) medium.
  double c_max = 0.0;
  for (std::size_t x = 0; x < cells; ++x)
    c_max = std::max(c_max, 1.0 / std::sqrt(gt[x] * gs[x]));
  const double dt = spec.cfl * std::min(spec.dx, spec.dy) / c_max;
  Grid g(spec.nx, spec.ny, spec.dx, spec.dy, dt, spec.nt);

  Medium medium =
      spec.physics == PhysicsTag::Acoustic2D
          ? Medium::acoustic(g, gt, gs)
          : Medium::maxwell_tm(
                g, gs, gt,
                std::vector<double>(cells, spec.medium.sigma), spec.em_flip_h);

  auto base_pos = spec.base_positions.empty()
                      ? line_layout(spec.base_count, std::max(2, spec.nx / 6),
                                    spec.ny)
                      : spec.base_positions;
  auto user_pos =
      spec.user_positions.empty()
          ? line_layout(spec.user_count,
                        spec.nx - 1 - std::max(2, spec.nx / 6), spec.ny)
          : spec.user_positions;
  AntennaArray base = make_array(g, spec.antenna_profile, base_pos);
  AntennaArray users = make_array(g, spec.antenna_profile, user_pos);

  // Base and user supports must not overlap each other either.
  std::set<std::pair<int, int>> occupied;
  for (int k = 0; k < base.count(); ++k)
    for (auto cell : base[k].cells) occupied.insert(cell);
  for (int k = 0; k < users.count(); ++k)
    for (auto cell : users[k].cells)
      if (occupied.count(cell))
        throw LayoutError("build_scene: user antenna " + std::to_string(k) +
                          " overlaps a base antenna at (" +
                          std::to_string(cell.first) + "," +
                          std::to_string(cell.second) + ")");

  Scene scene{g, std::move(medium), std::move(base), std::move(users),
              StepperConfig{spec.cfl, 0}, spec.mspec};
  scene.validate();

  std::vector<double> alpha = make_wavelet(spec.pilot, g);
  SignalSet pilot = make_pilot(alpha, spec.pilot.user_index,
                               scene.users.count(), g, spec.mspec);
  return {std::move(scene), std::move(pilot)};
}

}  // namespace trcomm
