#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ekron::cli {

// Exit codes: 0 ok (witness: transcendental verdict), 2 zero-difference
// verdict, 3 hypothesis violated, 64 usage, 65 data/overflow, 70 internal
// invariant violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitZeroDifference = 2;
inline constexpr int kExitHypothesisViolated = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitInternal = 70;

// Per-invocation configuration shared by every subcommand. There is no
// randomness anywhere; identical invocations produce byte-identical output.
struct RunConfig {
    std::string field_spec = "Q";
    long precision_bits = 128;   // >= 64
    std::uint64_t bound = 1;
    std::string model = "two-term";
    std::string format = "json";  // json | csv | text (subcommand-dependent)
    bool serial_sieve = false;
    std::uint64_t segment_size = 1ULL << 24;
};

// Parses argv-style arguments (without the program name) and runs the mapped
// subcommand, writing results to out and diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ekron::cli
