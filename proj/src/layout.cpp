#include "layout.hpp"

namespace qirvm::detail {

std::string_view describe(Slot slot) {
    switch (slot) {
    case Slot::Double: return "double";
    case Slot::Qubit: return "qubit";
    case Slot::Result: return "result";
    case Slot::Int: return "integer";
    case Slot::Label: return "label";
    }
    return "?";
}

std::optional<std::vector<Slot>> operand_layout(const OpSpec& spec) {
    switch (spec.kind) {
    case OpKind::Gate: {
        std::vector<Slot> slots(spec.num_params, Slot::Double);
        slots.insert(slots.end(), spec.num_qubits, Slot::Qubit);
        return slots;
    }
    case OpKind::Measure: return std::vector<Slot>{Slot::Qubit, Slot::Result};
    case OpKind::Reset: return std::vector<Slot>{Slot::Qubit};
    case OpKind::ReadResult: return std::vector<Slot>{Slot::Result};
    case OpKind::RecordArray: return std::vector<Slot>{Slot::Int, Slot::Label};
    case OpKind::RecordResult: return std::vector<Slot>{Slot::Result, Slot::Label};
    case OpKind::Initialize: return std::nullopt;
    }
    return std::nullopt;
}

bool slot_accepts(Slot slot, const Operand& op) {
    switch (slot) {
    case Slot::Double: return std::holds_alternative<DoubleConst>(op);
    case Slot::Int: return std::holds_alternative<IntConst>(op);
    case Slot::Qubit: return std::holds_alternative<QubitRef>(op) || std::holds_alternative<NullPtr>(op);
    case Slot::Result: return std::holds_alternative<ResultRef>(op) || std::holds_alternative<NullPtr>(op);
    case Slot::Label: return std::holds_alternative<LabelConst>(op) || std::holds_alternative<NullPtr>(op);
    }
    return false;
}

std::uint64_t pointer_index(const Operand& op) {
    if (const auto* q = std::get_if<QubitRef>(&op)) return q->index;
    if (const auto* r = std::get_if<ResultRef>(&op)) return r->index;
    return 0;
}

}  // namespace qirvm::detail
