#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qirvm::cli {

// sysexits-style codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitParse = 65;
inline constexpr int kExitNoInput = 66;
inline constexpr int kExitRuntime = 70;
inline constexpr int kExitCantCreate = 73;
inline constexpr int kExitValidation = 78;

inline constexpr std::string_view kVersion = "0.1.0";

struct CliArgs {
    std::string input_path;
    std::size_t shots = 1024;
    std::uint64_t seed = 0;
    std::string backend = "statevector";
    std::optional<std::string> entry;
    std::optional<std::string> output;
    bool per_shot = false;
    bool validate_only = false;
};

// Returned when argument handling already decided the exit code
// (--help, --version, usage errors).
struct CliExit {
    int code = kExitOk;
};

// argv[0] is the program name.
std::variant<CliArgs, CliExit> parse_args(const std::vector<std::string>& argv, std::ostream& out,
                                          std::ostream& err);

// JSON goes to `out` (or the --output file); diagnostics go to `err`.
int main_run(const CliArgs& args, std::ostream& out, std::ostream& err);

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace qirvm::cli
