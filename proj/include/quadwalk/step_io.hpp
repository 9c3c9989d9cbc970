#pragma once

#include "quadwalk/walk_model.hpp"

#include <string>

namespace quadwalk {

/// Parses {"steps": [{"dx": int, "dy": int, "w": number}, ...]}.
/// Weights are relative; the result is normalized.
StepDistribution parse_steps_json(const std::string& text);

/// Throws InputError(FileError) if the file cannot be read.
StepDistribution load_steps_file(const std::string& path);

std::string steps_to_json(const StepDistribution& sd);

} // namespace quadwalk
