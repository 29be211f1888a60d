#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qirvm/program.hpp"
#include "qirvm/registry.hpp"

namespace qirvm::detail {

enum class Slot { Double, Qubit, Result, Int, Label };

std::string_view describe(Slot slot);

// Expected call arguments for an operation, in order. Gates take their
// angle parameters first, then qubits (controls before targets).
// Returns nullopt for operations that accept and ignore any arguments.
std::optional<std::vector<Slot>> operand_layout(const OpSpec& spec);

bool slot_accepts(Slot slot, const Operand& op);

// Index carried by a qubit/result slot operand; null pointers are index 0.
std::uint64_t pointer_index(const Operand& op);

}  // namespace qirvm::detail
