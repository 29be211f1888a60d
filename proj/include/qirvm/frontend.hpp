#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qirvm/errors.hpp"
#include "qirvm/program.hpp"
#include "qirvm/registry.hpp"

namespace qirvm {

// Parses the textual QIR subset:
//   source_filename, `%T = type opaque`, global string constants,
//   define / declare, attribute groups, !llvm.module.flags and their nodes,
//   call / br / ret, inttoptr and null pointer constants, integer and double
//   literals (decimal or LLVM hex), and getelementptr on a global string.
// Both `%Qubit*` and opaque `ptr` spellings are accepted. Anything else
// raises ParseError.
ProgramModule parse_module(std::string_view text, std::string source_name = {});

// Decimal float, or `0x` followed by exactly 16 hex digits holding the
// IEEE-754 bit pattern.
double parse_double_literal(std::string_view token);

// Renders a module back to text the parser accepts. Pointers are written
// in the typed (`%Qubit*`) spelling unless the operand is untyped.
std::string render_module(const ProgramModule& module);

EntryPoint find_entry(const ProgramModule& module,
                      const std::optional<std::string>& override_name = std::nullopt);

enum class Severity { Warning, Error };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    SourceLoc loc;
};

std::string to_string(const Diagnostic& diag);

std::vector<Diagnostic> validate_profile(const ProgramModule& module,
                                         const EntryPoint& entry,
                                         const Registry& registry);

bool has_errors(const std::vector<Diagnostic>& diags);

}  // namespace qirvm
