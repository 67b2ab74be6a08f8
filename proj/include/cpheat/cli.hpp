#pragma once

// Command-line front end. Options may be given as --key value or key=value;
// `validate quick` is shorthand for `validate --tier quick`.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpheat {

enum class Command { density1d, density2d, coeffs, laplace, simulate, validate };

struct RunManifest {
  Command command = Command::validate;
  std::map<std::string, std::string> params;  // keys as in the flags, without dashes
  std::string output_path = "-";              // "-" is standard output
};

/// Bad command line or out-of-range parameter (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string command_name(Command c);

/// Parses arguments after the program name.
RunManifest parse_command_line(const std::vector<std::string>& args);

/// Checks that the parameters are complete and in range for the command.
void validate_manifest(const RunManifest& m);

/// Executes a validated manifest. Returns 0, or 1 when a validation check fails.
int run(const RunManifest& m);

/// parse + validate + run, mapping errors to exit codes (2 for usage errors).
int cli_main(int argc, const char* const* argv);

}  // namespace cpheat
