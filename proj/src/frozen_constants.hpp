#pragma once

#include <cstdint>
#include <string>

namespace nlslab {

// The paper-style estimates assert existence of constants without giving
// magnitudes. These were estimated once by dense log-uniform sampling,
// inflated by 10% and frozen in data/frozen_constants.txt; the inequality
// oracles assert against the frozen values.
struct FrozenConstants {
  double lip24_c = 0.0;        // eq (2.4), truncated cubic power family
  double log35a_c = 0.0;       // Lemma 3.5 for the a_n part
  double log35b_c = 0.0;       // Lemma 3.5 for the b_n part
  double holder_damp_c = 0.0;  // |u/|u|^a - v/|v|^a| <= C |u-v|^(1-a)
};

// Parsed once from $NLSLAB_CONSTANTS_FILE or the compiled-in default path.
const FrozenConstants& frozen_constants();

FrozenConstants parse_constants_text(const std::string& text);

// Re-estimates the constants by sampling (used by calibration and by the
// drift check in the test suite). Returns raw suprema, not inflated.
FrozenConstants estimate_constants(std::uint64_t seed, std::uint64_t samples_per_kind);

}  // namespace nlslab
