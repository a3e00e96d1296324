#pragma once

#include <filesystem>
#include <istream>
#include <string_view>

#include "lambdatherm/optics.hpp"

namespace lambdatherm {

// Material files hold exactly the four keys eps_inf, omega_L, omega_T,
// gamma_damp (SI units) in the flat key/value format.
DielectricModel<double> parse_material(std::istream& in, std::string_view source);
DielectricModel<double> read_material(const std::filesystem::path& path);

/// Directory holding bundled presets; LAMBDATHERM_DATA_DIR overrides the
/// build-time location.
std::filesystem::path data_directory();

/// `name` is either a bundled preset ("sic") or a path to a material file.
DielectricModel<double> load_material(std::string_view name);

/// Surface phonon-polariton frequency: the root of Re eps(w) = -1 between
/// omega_T and omega_L.
double surface_mode_frequency(const DielectricModel<double>& model);

}  // namespace lambdatherm
