#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qirvm {

enum class GateId {
    H, X, Y, Z, S, Sdg, SY, T, Tdg,
    Rx, Ry, Rz, Rzz,
    CNOT, CY, CZ, CCNOT, SWAP, ZZ, XX,
};

inline constexpr GateId kAllGates[] = {
    GateId::H,    GateId::X,  GateId::Y,  GateId::Z,     GateId::S,    GateId::Sdg, GateId::SY,
    GateId::T,    GateId::Tdg, GateId::Rx, GateId::Ry,   GateId::Rz,   GateId::Rzz, GateId::CNOT,
    GateId::CY,   GateId::CZ, GateId::CCNOT, GateId::SWAP, GateId::ZZ, GateId::XX,
};

// Lower-case display name used in trace logs ("h", "cnot", "sdg", ...).
std::string_view gate_name(GateId gate);
std::size_t gate_qubit_count(GateId gate);
std::size_t gate_param_count(GateId gate);

enum class OpKind { Gate, Measure, Reset, ReadResult, RecordArray, RecordResult, Initialize };

std::string_view to_string(OpKind kind);

struct OpSpec {
    OpKind kind = OpKind::Gate;
    std::optional<GateId> gate_id;
    std::size_t num_qubits = 0;
    std::size_t num_params = 0;
    bool returns_bool = false;

    static OpSpec gate(GateId id);
    bool valid() const;

    friend bool operator==(const OpSpec&, const OpSpec&) = default;
};

struct Unresolved {
    std::string name;
    friend bool operator==(const Unresolved&, const Unresolved&) = default;
};

using Resolution = std::variant<OpSpec, Unresolved>;

// Name -> operation table consulted by the validator and the interpreter.
// Populate during setup; a registry that is no longer mutated can be read
// from any number of threads.
class Registry {
  public:
    // Returns true when an existing entry was replaced.
    bool register_operation(std::string name, OpSpec spec);

    Resolution resolve(std::string_view name) const;
    const OpSpec* find(std::string_view name) const;

    std::size_t size() const noexcept { return table_.size(); }
    std::vector<std::string> names() const;

  private:
    std::map<std::string, OpSpec, std::less<>> table_;
};

Registry default_registry();

inline constexpr std::string_view kQisPrefix = "__quantum__qis__";
inline constexpr std::string_view kRtPrefix = "__quantum__rt__";

}  // namespace qirvm
