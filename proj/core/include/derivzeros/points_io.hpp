#pragma once

#include <string>

#include "derivzeros/empirical.hpp"

namespace derivzeros {

/// Text point format: UTF-8 lines "re im [weight]", '#' starts a comment.
EmpiricalMeasure read_points(const std::string& path);
void write_points(const std::string& path, const EmpiricalMeasure& m, bool with_weights = false);

} // namespace derivzeros
