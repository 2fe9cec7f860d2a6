#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mixmult {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,        // parse and model validation errors
  kExitComputation = 3,
  kExitMismatch = 4,     // verify-paper found a wrong value
};

struct CommandRequest {
  std::string command;
  std::string model = "paper";
  std::optional<std::string> divisor;   // -D
  std::optional<std::string> divisor1;  // -D1
  std::optional<std::string> divisor2;  // -D2
  std::optional<std::string> exponents; // --exponents d1,d2
  std::uint64_t n_max = 1000;
  std::string sequence = "sqrt2";       // examples --sequence
  std::string output = "text";
};

const std::vector<std::string>& command_names();

/// Executes one request. Output is deterministic; errors go to `err` with a
/// "parse error:", "validation error:" or "computation error:" prefix.
int run(const CommandRequest& request, std::ostream& out, std::ostream& err);

/// argv front end: `mixmult <command> [flags]`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mixmult
