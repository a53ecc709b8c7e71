#pragma once

#include <string>

#include "hcncov/types.hpp"

namespace hcncov {

// Empty string if the config satisfies all invariants, otherwise a
// newline-separated list of violations.
std::string validation_errors(const NetworkConfig& cfg);

// Throws std::invalid_argument listing every violation.
void validate_config(const NetworkConfig& cfg);

// E[S^delta] for zero-median lognormal shadowing with the given dB std dev:
// exp(0.5 * (delta * sigma_db * ln10/10)^2).
double lognormal_delta_moment(double sigma_db, double delta);

// Evaluates all per-tier constants. Weights are normalized so the largest
// weight is 1 (only ratios enter any formula). Validates first.
DerivedConstants derive_constants(const NetworkConfig& cfg);

// Convenience bundle used by all formula and simulator code.
Model make_model(const NetworkConfig& cfg);

}  // namespace hcncov
