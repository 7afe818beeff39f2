#pragma once

#include <cstdint>
#include <vector>

namespace nlslab {

struct CheckResult;

// Property suites behind `verify`. Each check reports its sample count, the
// number of violations (zero means the property held everywhere) and the
// worst normalized margin it saw (<= 1 is comfortable, > 1 is a violation).
std::vector<CheckResult> verify_pointwise(std::uint64_t samples, std::uint64_t seed);
std::vector<CheckResult> verify_yosida(std::uint64_t samples, std::uint64_t seed);
std::vector<CheckResult> verify_norms(std::uint64_t samples, std::uint64_t seed);

}  // namespace nlslab
