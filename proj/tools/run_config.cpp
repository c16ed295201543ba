#include "run_config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "trcomm/errors.hpp"

namespace trcomm::cli {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("config: unknown key '" + where + it.key() + "'");
}

std::vector<std::pair<int, int>> parse_positions(const json& arr,
                                                 const std::string& where) {
  std::vector<std::pair<int, int>> out;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2)
      throw ConfigError("config: '" + where + "' entries must be [i, j] pairs");
    out.emplace_back(p[0].get<int>(), p[1].get<int>());
  }
  return out;
}

}  // namespace

RunConfig parse_run_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }

  RunConfig rc;
  check_keys(j, "",
             {"physics", "em_flip_h", "grid", "medium", "seed", "base", "users",
              "antenna_profile", "measurement", "pilot", "noise_level",
              "scheme", "output"});

  if (!j.contains("seed"))
    throw ConfigError("config: missing mandatory key 'seed'");
  rc.scene.seed = j.at("seed").get<std::uint64_t>();

  const std::string phys = j.value("physics", "acoustic");
  if (phys == "acoustic")
    rc.scene.physics = PhysicsTag::Acoustic2D;
  else if (phys == "maxwell_tm")
    rc.scene.physics = PhysicsTag::MaxwellTM2D;
  else
    throw ConfigError("config: unknown value for key 'physics': " + phys);
  rc.scene.em_flip_h = j.value("em_flip_h", false);

  {
    const json& g = j.at("grid");
    check_keys(g, "grid.", {"nx", "ny", "nt", "dx", "dy", "cfl"});
    rc.scene.nx = g.at("nx").get<int>();
    rc.scene.ny = g.at("ny").get<int>();
    rc.scene.nt = g.at("nt").get<int>();
    rc.scene.dx = g.at("dx").get<double>();
    rc.scene.dy = g.at("dy").get<double>();
    rc.scene.cfl = g.value("cfl", 0.5);
  }

  if (j.contains("medium")) {
    const json& m = j.at("medium");
    check_keys(m, "medium.",
               {"type", "c", "count", "radius_min", "radius_max",
                "contrast_min", "contrast_max", "band_cells", "band_contrast",
                "sigma"});
    const std::string type = m.value("type", "homogeneous");
    MediumRecipe& mr = rc.scene.medium;
    if (type == "homogeneous")
      mr.kind = MediumRecipeKind::Homogeneous;
    else if (type == "random_scatterers")
      mr.kind = MediumRecipeKind::RandomScatterers;
    else if (type == "waveguide")
      mr.kind = MediumRecipeKind::Waveguide;
    else
      throw ConfigError("config: unknown value for key 'medium.type': " + type);
    mr.c = m.value("c", 1.0);
    mr.count = m.value("count", 0);
    mr.radius_min = m.value("radius_min", 0.0);
    mr.radius_max = m.value("radius_max", 0.0);
    mr.contrast_min = m.value("contrast_min", 1.0);
    mr.contrast_max = m.value("contrast_max", 1.0);
    mr.band_cells = m.value("band_cells", 3);
    mr.band_contrast = m.value("band_contrast", 25.0);
    mr.sigma = m.value("sigma", 0.0);
  }

  for (const char* side : {"base", "users"}) {
    if (!j.contains(side)) continue;
    const json& a = j.at(side);
    check_keys(a, std::string(side) + ".", {"count", "positions"});
    int& count = side == std::string("base") ? rc.scene.base_count
                                             : rc.scene.user_count;
    auto& pos = side == std::string("base") ? rc.scene.base_positions
                                            : rc.scene.user_positions;
    count = a.value("count", 1);
    if (a.contains("positions"))
      pos = parse_positions(a.at("positions"), std::string(side) + ".positions");
  }
  rc.scene.antenna_profile = j.value("antenna_profile", "delta");

  if (j.contains("measurement")) {
    const json& m = j.at("measurement");
    check_keys(m, "measurement.", {"mode", "channel"});
    const std::string mode = m.value("mode", "full");
    if (mode == "full")
      rc.scene.mspec = MeasurementSpec::full();
    else if (mode == "partial")
      rc.scene.mspec = MeasurementSpec::partial(m.value("channel", kChannels - 1));
    else
      throw ConfigError("config: unknown value for key 'measurement.mode': " +
                        mode);
  }

  {
    const json& p = j.at("pilot");
    check_keys(p, "pilot.", {"type", "f0", "t0", "width", "f1", "f2", "user"});
    PilotRecipe& pr = rc.scene.pilot;
    const std::string type = p.value("type", "ricker");
    if (type == "ricker")
      pr.kind = WaveletKind::Ricker;
    else if (type == "gaussian_pulse")
      pr.kind = WaveletKind::Gaussian;
    else if (type == "chirp")
      pr.kind = WaveletKind::Chirp;
    else
      throw ConfigError("config: unknown value for key 'pilot.type': " + type);
    pr.f0 = p.value("f0", 0.0);
    pr.t0 = p.value("t0", -1.0);
    pr.width = p.value("width", 0.0);
    pr.f1 = p.value("f1", 0.0);
    pr.f2 = p.value("f2", 0.0);
    pr.user_index = p.value("user", 0);
  }

  rc.scene.noise_level = j.value("noise_level", 0.0);
  rc.scheme.noise_level = rc.scene.noise_level;
  rc.scheme.noise_seed = rc.scene.seed + 1;

  if (j.contains("scheme")) {
    const json& s = j.at("scheme");
    check_keys(s, "scheme.",
               {"name", "beta_rule", "beta", "lambda", "max_iter", "tol",
                "user_weights"});
    const std::string name = s.value("name", "gradient");
    if (name == "gradient")
      rc.scheme.scheme = SchemeKind::Gradient;
    else if (name == "gradient_reg")
      rc.scheme.scheme = SchemeKind::GradientReg;
    else if (name == "min_norm")
      rc.scheme.scheme = SchemeKind::MinNorm;
    else if (name == "min_norm_reg")
      rc.scheme.scheme = SchemeKind::MinNormReg;
    else if (name == "rls")
      rc.scheme.scheme = SchemeKind::Rls;
    else
      throw ConfigError("config: unknown value for key 'scheme.name': " + name);
    const std::string rule = s.value("beta_rule", "exact_line_search");
    if (rule == "exact_line_search")
      rc.scheme.beta_rule = BetaRule::ExactLineSearch;
    else if (rule == "fixed")
      rc.scheme.beta_rule = BetaRule::Fixed;
    else
      throw ConfigError("config: unknown value for key 'scheme.beta_rule': " +
                        rule);
    rc.scheme.beta = s.value("beta", 1.0);
    if (s.contains("lambda")) {
      rc.scheme.lambda = s.at("lambda").get<double>();
      rc.lambda_given = true;
    }
    rc.scheme.max_iter = s.value("max_iter", 50);
    rc.scheme.tol = s.value("tol", 1e-3);
    if (s.contains("user_weights"))
      rc.scheme.user_weights = s.at("user_weights").get<std::vector<double>>();
  }

  if (j.contains("output")) {
    const json& o = j.at("output");
    check_keys(o, "output.", {"trace_csv", "snapshot_every", "signal_dumps"});
    rc.output.trace_csv = o.value("trace_csv", true);
    rc.output.snapshot_every = o.value("snapshot_every", 0);
    rc.output.signal_dumps = o.value("signal_dumps", true);
  }

  return rc;
}

}  // namespace trcomm::cli
