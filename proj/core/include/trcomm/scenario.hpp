#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "trcomm/array_ops.hpp"
#include "trcomm/schemes.hpp"

namespace trcomm {

enum class MediumRecipeKind { Homogeneous, RandomScatterers, Waveguide };

struct MediumRecipe {
  MediumRecipeKind kind = MediumRecipeKind::Homogeneous;
  double c = 1.0;  // background wave speed
  // random_scatterers: circular inclusions perturbing kappa (acoustics) or
  // eps (EM) by a multiplicative contrast factor.
  int count = 0;
  double radius_min = 0.0, radius_max = 0.0;  // physical units
  double contrast_min = 1.0, contrast_max = 1.0;
  // waveguide: high-contrast rigid bands at the top and bottom.
  int band_cells = 3;
  double band_contrast = 25.0;
  // EM only: uniform background conductivity.
  double sigma = 0.0;
};

enum class WaveletKind { Ricker, Gaussian, Chirp };

struct PilotRecipe {
  WaveletKind kind = WaveletKind::Ricker;
  double f0 = 0.0;           // ricker center frequency
  double t0 = -1.0;          // pulse center; < 0 means auto
  double width = 0.0;        // gaussian width
  double f1 = 0.0, f2 = 0.0; // chirp endpoint frequencies
  int user_index = 0;
};

struct SceneSpec {
  PhysicsTag physics = PhysicsTag::Acoustic2D;
  bool em_flip_h = false;  // alternative EM mirror convention
  int nx = 0, ny = 0, nt = 0;
  double dx = 0.0, dy = 0.0;
  double cfl = 0.5;  // dt auto-computed: dt = cfl*min(dx,dy)/c_max
  MediumRecipe medium;
  int base_count = 1;
  std::vector<std::pair<int, int>> base_positions;  // overrides base_count
  int user_count = 1;
  std::vector<std::pair<int, int>> user_positions;
  std::string antenna_profile = "delta";  // or "gaussian3x3"
  MeasurementSpec mspec;
  PilotRecipe pilot;
  double noise_level = 0.0;
  std::uint64_t seed = 0;  // mandatory; drives all randomness
};

struct BuiltScene {
  Scene scene;
  SignalSet pilot;  // the ideal signal s-tilde
};

// Deterministic scene construction; identical specs (with seed) produce
// bit-identical scenes.
BuiltScene build_scene(const SceneSpec& spec);

// Pilot waveform sampled on the grid's time axis; unit peak amplitude,
// zero-padded to nt.
std::vector<double> make_wavelet(const PilotRecipe& recipe, const Grid& g);

}  // namespace trcomm
