#pragma once

#include "nbbl1/core_model.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace nbbl1 {

/// Named parameter sets.
///   cuter:  tol_d=1e-8, tol_x=0, h=1, rho=0.35, delta=1e-4, m=5,
///           lambda in [1e-20, 1e20], max_iter=10000
///   cs:     tol_d=0, tol_x=1e-4, h=1e-2, rho=0.35, delta=1e-4, m=5,
///           lambda in [1e-30, 1e30]
///   cs-dct: cs with h=0.8, delta=1e-5
enum class Preset { Cuter, Cs, CsDct };

std::string_view to_string(Preset preset);
std::optional<Preset> parse_preset(std::string_view text);
const std::vector<Preset>& all_presets();

SolverConfig preset_config(Preset preset);

}  // namespace nbbl1
