#include "nbbl1/presets.hpp"

namespace nbbl1 {

std::string_view to_string(Preset preset) {
  switch (preset) {
    case Preset::Cuter: return "cuter";
    case Preset::Cs: return "cs";
    case Preset::CsDct: return "cs-dct";
  }
  return "?";
}

std::optional<Preset> parse_preset(std::string_view text) {
  for (Preset p : all_presets()) {
    if (text == to_string(p)) return p;
  }
  return std::nullopt;
}

const std::vector<Preset>& all_presets() {
  static const std::vector<Preset> presets = {Preset::Cuter, Preset::Cs,
                                              Preset::CsDct};
  return presets;
}

SolverConfig preset_config(Preset preset) {
  SolverConfig cfg;
  cfg.rho = 0.35;
  cfg.m_tilde = 5;
  cfg.lambda0 = 1.0;
  cfg.max_backtracks = 100;
  switch (preset) {
    case Preset::Cuter:
      cfg.h = 1.0;
      cfg.delta = 1e-4;
      cfg.lambda_min = 1e-20;
      cfg.lambda_max = 1e20;
      cfg.tol_d = 1e-8;
      cfg.tol_x = 0.0;
      cfg.max_iter = 10000;
      break;
    case Preset::Cs:
    case Preset::CsDct:
      cfg.h = preset == Preset::Cs ? 1e-2 : 0.8;
      cfg.delta = preset == Preset::Cs ? 1e-4 : 1e-5;
      cfg.lambda_min = 1e-30;
      cfg.lambda_max = 1e30;
      cfg.tol_d = 0.0;
      cfg.tol_x = 1e-4;
      cfg.max_iter = 20000;
      break;
  }
  return cfg;
}

}  // namespace nbbl1
