#include "nslab/run_config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace nslab {

using ordered_json = nlohmann::ordered_json;

void RunConfig::validate() const {
  if (!(grid_R > 0.0)) throw config_error("grid.R must be positive");
  if (grid_nr < 8) throw config_error("grid.n_r must be >= 8");
  if (grid_ns < 8) throw config_error("grid.n_s must be >= 8");
  if (profiles.empty()) throw config_error("profiles must not be empty");
  for (const auto& p : profiles) {
    if (p.kind != "gaussian" && p.kind != "exp-decay") {
      throw config_error("profile.kind must be gaussian or exp-decay, got '" +
                         p.kind + "'");
    }
    if (p.amplitude == 0.0) throw config_error("profile.amplitude must be nonzero");
    if (p.kind == "gaussian" && !(p.width > 0.0)) {
      throw config_error("profile.width must be positive");
    }
    if (p.kind == "exp-decay" && !(p.rate > 0.0)) {
      throw config_error("profile.rate must be positive");
    }
  }
  if (geometry_samples < 1) throw config_error("geometry_samples must be >= 1");
  if (supersolution_samples < 1000) {
    throw config_error("supersolution_samples must be >= 1000");
  }
  if (deltas.empty()) throw config_error("deltas must not be empty");
  for (double d : deltas) {
    if (!(d > 0.0 && d <= 2.0)) throw config_error("deltas entries must be in (0, 2]");
  }
  if (psi_samples < 96) throw config_error("psi_samples must be >= 96");
  if (quadrature_levels < 3) throw config_error("quadrature_levels must be >= 3");
  if (k_multipliers.empty()) throw config_error("k_multipliers must not be empty");
  for (double m : k_multipliers) {
    if (!(m > 0.0)) throw config_error("k_multipliers entries must be positive");
  }
  if (f0 == 0.0) throw config_error("f0 must be nonzero");
  if (!(nu >= 0.0)) throw config_error("nu must be >= 0");
  if (out_dir.empty()) throw config_error("out_dir must not be empty");
}

namespace {

ProfileSpec profile_from_json(const ordered_json& j) {
  ProfileSpec p;
  static const std::set<std::string> known = {"kind", "amplitude", "center",
                                              "width", "rate"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw config_error("unknown profile key '" + key + "'");
  }
  p.kind = j.value("kind", p.kind);
  p.amplitude = j.value("amplitude", p.amplitude);
  p.center = j.value("center", p.center);
  p.width = j.value("width", p.width);
  p.rate = j.value("rate", p.rate);
  return p;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw config_error("config parse error: " + std::string(e.what()));
  }

  static const std::set<std::string> known = {
      "grid_R",         "grid_nr",       "grid_ns",
      "profiles",       "geometry_samples", "supersolution_samples",
      "deltas",         "psi_samples",   "quadrature_levels",
      "theta_factor",   "k_multipliers", "f0",
      "nu",             "show_violations", "out_dir",
      "seed"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw config_error("unknown config key '" + key + "'");
  }

  RunConfig cfg;
  cfg.grid_R = j.value("grid_R", cfg.grid_R);
  cfg.grid_nr = j.value("grid_nr", cfg.grid_nr);
  cfg.grid_ns = j.value("grid_ns", cfg.grid_ns);
  if (j.contains("profiles")) {
    for (const auto& pj : j["profiles"]) cfg.profiles.push_back(profile_from_json(pj));
  }
  cfg.geometry_samples = j.value("geometry_samples", cfg.geometry_samples);
  cfg.supersolution_samples =
      j.value("supersolution_samples", cfg.supersolution_samples);
  if (j.contains("deltas")) cfg.deltas = j["deltas"].get<std::vector<double>>();
  cfg.psi_samples = j.value("psi_samples", cfg.psi_samples);
  cfg.quadrature_levels = j.value("quadrature_levels", cfg.quadrature_levels);
  cfg.theta_factor = j.value("theta_factor", cfg.theta_factor);
  if (j.contains("k_multipliers")) {
    cfg.k_multipliers = j["k_multipliers"].get<std::vector<double>>();
  }
  cfg.f0 = j.value("f0", cfg.f0);
  cfg.nu = j.value("nu", cfg.nu);
  cfg.show_violations = j.value("show_violations", cfg.show_violations);
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  cfg.seed = j.value("seed", cfg.seed);
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["grid_R"] = cfg.grid_R;
  j["grid_nr"] = cfg.grid_nr;
  j["grid_ns"] = cfg.grid_ns;
  ordered_json profiles = ordered_json::array();
  for (const auto& p : cfg.profiles.empty()
                           ? std::vector<ProfileSpec>{ProfileSpec{}}
                           : cfg.profiles) {
    ordered_json pj;
    pj["kind"] = p.kind;
    pj["amplitude"] = p.amplitude;
    pj["center"] = p.center;
    if (p.kind == "gaussian") pj["width"] = p.width;
    if (p.kind == "exp-decay") pj["rate"] = p.rate;
    profiles.push_back(pj);
  }
  j["profiles"] = profiles;
  j["geometry_samples"] = cfg.geometry_samples;
  j["supersolution_samples"] = cfg.supersolution_samples;
  j["deltas"] = cfg.deltas;
  j["psi_samples"] = cfg.psi_samples;
  j["quadrature_levels"] = cfg.quadrature_levels;
  j["theta_factor"] = cfg.theta_factor;
  j["k_multipliers"] = cfg.k_multipliers;
  j["f0"] = cfg.f0;
  j["nu"] = cfg.nu;
  j["show_violations"] = cfg.show_violations;
  j["out_dir"] = cfg.out_dir;
  j["seed"] = cfg.seed;
  return j.dump(2);
}

}  // namespace nslab
