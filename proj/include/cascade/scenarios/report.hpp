#pragma once

#include <string>

#include "cascade/scenarios/acceptance.hpp"

namespace cascade {

/// Rebuilds the acceptance inputs from an existing output tree. Anything not
/// found is listed in AcceptanceReport::missing.
AcceptanceInputs load_acceptance_inputs(const std::string& root, std::vector<std::string>* missing = nullptr);

/// Evaluates the acceptance criteria from files under root, without running
/// any model.
AcceptanceReport report_directory(const std::string& root);

} // namespace cascade
