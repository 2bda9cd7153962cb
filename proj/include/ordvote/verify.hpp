#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ordvote {

struct VerifyOptions {
    std::uint64_t seed = 1;
    int trials = 0;   // 0 = suite default
    int threads = 0;  // 0 = hardware
    bool quick = false;  // reduced scale, for smoke runs
};

struct VerifyResult {
    std::string target;
    bool pass = false;
    bool vacuous = false;  // ran with zero effective instances
    std::string details;   // human-readable report, one finding per line

    std::string record() const;
};

// All registered verification targets, in reporting order.
std::vector<std::string> verify_targets();

// Runs one named suite. Unknown targets raise ConfigError.
VerifyResult run_verify(const std::string& target, const VerifyOptions& opts = {});

}  // namespace ordvote
