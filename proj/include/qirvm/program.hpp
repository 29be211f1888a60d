#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qirvm/errors.hpp"

// In-memory model of a parsed QIR module. Everything here is plain data;
// a parsed module is immutable and can be shared between executors.

namespace qirvm {

struct QubitRef {
    std::uint64_t index = 0;
    friend bool operator==(const QubitRef&, const QubitRef&) = default;
};

struct ResultRef {
    std::uint64_t index = 0;
    friend bool operator==(const ResultRef&, const ResultRef&) = default;
};

struct IntConst {
    std::int64_t value = 0;
    friend bool operator==(const IntConst&, const IntConst&) = default;
};

struct DoubleConst {
    double value = 0.0;
    // Bitwise so that round-tripping through text is checked exactly.
    friend bool operator==(const DoubleConst& a, const DoubleConst& b);
};

// SSA value name without the leading '%'.
struct BoolVar {
    std::string name;
    friend bool operator==(const BoolVar&, const BoolVar&) = default;
};

// Untyped `ptr null` in a position whose role is not known from the callee.
struct NullPtr {
    friend bool operator==(const NullPtr&, const NullPtr&) = default;
};

// Output label: the payload of a global string constant, or absent for null.
struct LabelConst {
    std::optional<std::string> text;
    friend bool operator==(const LabelConst&, const LabelConst&) = default;
};

using Operand = std::variant<QubitRef, ResultRef, IntConst, DoubleConst, BoolVar, NullPtr, LabelConst>;

// Kinds of values that can appear in declarations and call arguments.
enum class ValueKind {
    Void,
    Bool,     // i1
    Int,      // i8 / i32 / i64 used as a value
    Double,
    QubitPtr, // %Qubit*
    ResultPtr,
    BytePtr,  // i8*
    Ptr,      // opaque `ptr`
};

std::string_view to_string(ValueKind kind);

struct CallInst {
    std::optional<std::string> result_var;
    std::string callee;
    std::vector<Operand> args;
    friend bool operator==(const CallInst&, const CallInst&) = default;
};

struct CondBranchInst {
    Operand cond;
    std::string then_label;
    std::string else_label;
    friend bool operator==(const CondBranchInst&, const CondBranchInst&) = default;
};

struct BranchInst {
    std::string target_label;
    friend bool operator==(const BranchInst&, const BranchInst&) = default;
};

struct ReturnVoidInst {
    friend bool operator==(const ReturnVoidInst&, const ReturnVoidInst&) = default;
};

using InstructionOp = std::variant<CallInst, CondBranchInst, BranchInst, ReturnVoidInst>;

struct Instruction {
    InstructionOp op;
    SourceLoc loc;

    bool is_terminator() const { return !std::holds_alternative<CallInst>(op); }

    // Source location is not part of structural identity.
    friend bool operator==(const Instruction& a, const Instruction& b) { return a.op == b.op; }
};

struct BasicBlock {
    std::string label;
    std::vector<Instruction> instructions;
    friend bool operator==(const BasicBlock&, const BasicBlock&) = default;
};

struct FunctionDef {
    std::string name;
    std::optional<int> attr_group;
    std::vector<BasicBlock> blocks;

    const BasicBlock* find_block(std::string_view label) const;

    friend bool operator==(const FunctionDef&, const FunctionDef&) = default;
};

struct FunctionDecl {
    std::string name;
    std::vector<ValueKind> params;
    ValueKind return_kind = ValueKind::Void;
    std::vector<int> attr_groups;
    friend bool operator==(const FunctionDecl&, const FunctionDecl&) = default;
};

struct AttrGroup {
    std::set<std::string> bare_keys;
    std::map<std::string, std::string> kv;

    bool has(std::string_view key) const;
    std::optional<std::string> value(std::string_view key) const;

    friend bool operator==(const AttrGroup&, const AttrGroup&) = default;
};

struct ModuleFlag {
    int behavior = 0;
    std::string key;
    std::variant<std::int64_t, bool> value;
    friend bool operator==(const ModuleFlag&, const ModuleFlag&) = default;
};

struct ProgramModule {
    std::string source_name;
    std::set<std::string> opaque_types;
    std::map<std::string, std::string> globals;
    std::vector<FunctionDef> functions;
    std::vector<FunctionDecl> declarations;
    std::map<int, AttrGroup> attribute_groups;
    std::vector<ModuleFlag> module_flags;

    const FunctionDef* find_function(std::string_view name) const;
    const FunctionDecl* find_declaration(std::string_view name) const;

    friend bool operator==(const ProgramModule&, const ProgramModule&) = default;
};

struct EntryPoint {
    std::string function_name;
    std::size_t num_qubits = 0;
    std::size_t num_results = 0;
    std::string profile_name;
    friend bool operator==(const EntryPoint&, const EntryPoint&) = default;
};

}  // namespace qirvm
