#include "qirvm/registry.hpp"

#include <stdexcept>

namespace qirvm {

std::string_view gate_name(GateId gate) {
    switch (gate) {
    case GateId::H: return "h";
    case GateId::X: return "x";
    case GateId::Y: return "y";
    case GateId::Z: return "z";
    case GateId::S: return "s";
    case GateId::Sdg: return "sdg";
    case GateId::SY: return "sy";
    case GateId::T: return "t";
    case GateId::Tdg: return "tdg";
    case GateId::Rx: return "rx";
    case GateId::Ry: return "ry";
    case GateId::Rz: return "rz";
    case GateId::Rzz: return "rzz";
    case GateId::CNOT: return "cnot";
    case GateId::CY: return "cy";
    case GateId::CZ: return "cz";
    case GateId::CCNOT: return "ccnot";
    case GateId::SWAP: return "swap";
    case GateId::ZZ: return "zz";
    case GateId::XX: return "xx";
    }
    return "?";
}

std::size_t gate_qubit_count(GateId gate) {
    switch (gate) {
    case GateId::Rzz:
    case GateId::CNOT:
    case GateId::CY:
    case GateId::CZ:
    case GateId::SWAP:
    case GateId::ZZ:
    case GateId::XX: return 2;
    case GateId::CCNOT: return 3;
    default: return 1;
    }
}

std::size_t gate_param_count(GateId gate) {
    switch (gate) {
    case GateId::Rx:
    case GateId::Ry:
    case GateId::Rz:
    case GateId::Rzz: return 1;
    default: return 0;
    }
}

std::string_view to_string(OpKind kind) {
    switch (kind) {
    case OpKind::Gate: return "gate";
    case OpKind::Measure: return "measure";
    case OpKind::Reset: return "reset";
    case OpKind::ReadResult: return "read_result";
    case OpKind::RecordArray: return "record_array";
    case OpKind::RecordResult: return "record_result";
    case OpKind::Initialize: return "initialize";
    }
    return "?";
}

OpSpec OpSpec::gate(GateId id) {
    return {OpKind::Gate, id, gate_qubit_count(id), gate_param_count(id), false};
}

bool OpSpec::valid() const {
    if (returns_bool != (kind == OpKind::ReadResult)) return false;
    if (num_params > 1) return false;
    switch (kind) {
    case OpKind::Gate:
        return gate_id.has_value() && num_qubits == gate_qubit_count(*gate_id) &&
               num_params == gate_param_count(*gate_id);
    case OpKind::Measure:
    case OpKind::Reset: return !gate_id && num_qubits == 1 && num_params == 0;
    default: return !gate_id && num_qubits == 0 && num_params == 0;
    }
}

bool Registry::register_operation(std::string name, OpSpec spec) {
    if (name.empty()) throw std::invalid_argument("operation name must not be empty");
    if (!spec.valid()) throw std::invalid_argument("malformed operation spec for '" + name + "'");
    auto [it, inserted] = table_.insert_or_assign(std::move(name), spec);
    return !inserted;
}

Resolution Registry::resolve(std::string_view name) const {
    if (const OpSpec* spec = find(name)) return *spec;
    return Unresolved{std::string(name)};
}

const OpSpec* Registry::find(std::string_view name) const {
    auto it = table_.find(name);
    return it == table_.end() ? nullptr : &it->second;
}

std::vector<std::string> Registry::names() const {
    std::vector<std::string> out;
    out.reserve(table_.size());
    for (const auto& [name, spec] : table_) out.push_back(name);
    return out;
}

Registry default_registry() {
    Registry reg;
    auto body = [](std::string_view op) { return std::string(kQisPrefix) + std::string(op) + "__body"; };
    auto adj = [](std::string_view op) { return std::string(kQisPrefix) + std::string(op) + "__adj"; };

    const std::pair<std::string_view, GateId> gates[] = {
        {"h", GateId::H},       {"x", GateId::X},        {"y", GateId::Y},         {"z", GateId::Z},
        {"s", GateId::S},       {"t", GateId::T},        {"sy", GateId::SY},       {"rx", GateId::Rx},
        {"ry", GateId::Ry},     {"rz", GateId::Rz},      {"rzz", GateId::Rzz},     {"cnot", GateId::CNOT},
        {"cx", GateId::CNOT},   {"cy", GateId::CY},      {"cz", GateId::CZ},       {"ccx", GateId::CCNOT},
        {"ccnot", GateId::CCNOT}, {"swap", GateId::SWAP}, {"zz", GateId::ZZ},      {"xx", GateId::XX},
    };
    for (const auto& [op, id] : gates) reg.register_operation(body(op), OpSpec::gate(id));
    reg.register_operation(adj("s"), OpSpec::gate(GateId::Sdg));
    reg.register_operation(adj("t"), OpSpec::gate(GateId::Tdg));

    const OpSpec measure{OpKind::Measure, std::nullopt, 1, 0, false};
    reg.register_operation(body("mz"), measure);
    reg.register_operation(body("m"), measure);
    reg.register_operation(body("reset"), {OpKind::Reset, std::nullopt, 1, 0, false});
    reg.register_operation(body("read_result"), {OpKind::ReadResult, std::nullopt, 0, 0, true});

    reg.register_operation("__quantum__rt__initialize", {OpKind::Initialize, std::nullopt, 0, 0, false});
    reg.register_operation("__quantum__rt__array_record_output", {OpKind::RecordArray, std::nullopt, 0, 0, false});
    reg.register_operation("__quantum__rt__result_record_output", {OpKind::RecordResult, std::nullopt, 0, 0, false});
    return reg;
}

}  // namespace qirvm
