#include "qirvm/program.hpp"

#include <algorithm>
#include <bit>

namespace qirvm {

bool operator==(const DoubleConst& a, const DoubleConst& b) {
    return std::bit_cast<std::uint64_t>(a.value) == std::bit_cast<std::uint64_t>(b.value);
}

std::string_view to_string(ValueKind kind) {
    switch (kind) {
    case ValueKind::Void: return "void";
    case ValueKind::Bool: return "i1";
    case ValueKind::Int: return "i64";
    case ValueKind::Double: return "double";
    case ValueKind::QubitPtr: return "%Qubit*";
    case ValueKind::ResultPtr: return "%Result*";
    case ValueKind::BytePtr: return "i8*";
    case ValueKind::Ptr: return "ptr";
    }
    return "?";
}

const BasicBlock* FunctionDef::find_block(std::string_view label) const {
    auto it = std::find_if(blocks.begin(), blocks.end(), [&](const BasicBlock& b) { return b.label == label; });
    return it == blocks.end() ? nullptr : &*it;
}

bool AttrGroup::has(std::string_view key) const {
    return bare_keys.contains(std::string(key)) || kv.contains(std::string(key));
}

std::optional<std::string> AttrGroup::value(std::string_view key) const {
    auto it = kv.find(std::string(key));
    if (it == kv.end()) return std::nullopt;
    return it->second;
}

const FunctionDef* ProgramModule::find_function(std::string_view name) const {
    auto it = std::find_if(functions.begin(), functions.end(), [&](const FunctionDef& f) { return f.name == name; });
    return it == functions.end() ? nullptr : &*it;
}

const FunctionDecl* ProgramModule::find_declaration(std::string_view name) const {
    auto it = std::find_if(declarations.begin(), declarations.end(),
                           [&](const FunctionDecl& d) { return d.name == name; });
    return it == declarations.end() ? nullptr : &*it;
}

}  // namespace qirvm
