#pragma once

#include <string>
#include <vector>

namespace vsa {

inline constexpr const char* kToolVersion = "vsa-workbench 1.0.0";

// Full front end behind the vsa_bench binary. Takes argv without the program
// name. Returns 0 on success, 2 on configuration errors (bad flags, bad
// ranges, invalid model/dimension combinations), 1 on runtime errors.
int cli_dispatch(std::vector<std::string> args);

}  // namespace vsa
