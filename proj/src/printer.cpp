#include <bit>
#include <cctype>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qirvm/frontend.hpp"

namespace qirvm {

namespace {

std::string quote_name(char sigil, const std::string& name) {
    bool plain = !name.empty();
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$' || c == '-')) {
            plain = false;
        }
    }
    if (plain) return std::string(1, sigil) + name;
    std::string out(1, sigil);
    out += '"';
    for (char c : name) {
        if (c == '"' || c == '\\' || !std::isprint(static_cast<unsigned char>(c))) {
            char buf[4];
            std::snprintf(buf, sizeof buf, "\\%02X", static_cast<unsigned char>(c));
            out += buf;
        } else {
            out += c;
        }
    }
    out += '"';
    return out;
}

std::string escape_bytes(const std::string& bytes) {
    std::string out;
    for (char c : bytes) {
        if (c == '"' || c == '\\' || !std::isprint(static_cast<unsigned char>(c))) {
            char buf[4];
            std::snprintf(buf, sizeof buf, "\\%02X", static_cast<unsigned char>(c));
            out += buf;
        } else {
            out += c;
        }
    }
    return out;
}

ValueKind natural_kind(const Operand& op) {
    struct Visitor {
        ValueKind operator()(const QubitRef&) const { return ValueKind::QubitPtr; }
        ValueKind operator()(const ResultRef&) const { return ValueKind::ResultPtr; }
        ValueKind operator()(const IntConst&) const { return ValueKind::Int; }
        ValueKind operator()(const DoubleConst&) const { return ValueKind::Double; }
        ValueKind operator()(const BoolVar&) const { return ValueKind::Bool; }
        ValueKind operator()(const NullPtr&) const { return ValueKind::Ptr; }
        ValueKind operator()(const LabelConst&) const { return ValueKind::BytePtr; }
    };
    return std::visit(Visitor{}, op);
}

class Printer {
  public:
    explicit Printer(const ProgramModule& module) : m_(module) {}

    std::string run() {
        if (!m_.source_name.empty()) out_ << "source_filename = \"" << escape_bytes(m_.source_name) << "\"\n\n";
        for (const auto& t : m_.opaque_types) out_ << quote_name('%', t) << " = type opaque\n";
        if (!m_.opaque_types.empty()) out_ << '\n';
        for (const auto& [name, text] : m_.globals) {
            out_ << quote_name('@', name) << " = internal constant [" << text.size() + 1 << " x i8] c\""
                 << escape_bytes(text) << "\\00\"\n";
        }
        if (!m_.globals.empty()) out_ << '\n';
        for (const auto& fn : m_.functions) function(fn);
        for (const auto& decl : m_.declarations) declaration(decl);
        if (!m_.declarations.empty()) out_ << '\n';
        for (const auto& [id, group] : m_.attribute_groups) {
            out_ << "attributes #" << id << " = {";
            for (const auto& key : group.bare_keys) out_ << " \"" << escape_bytes(key) << '"';
            for (const auto& [k, v] : group.kv) out_ << " \"" << escape_bytes(k) << "\"=\"" << escape_bytes(v) << '"';
            out_ << " }\n";
        }
        if (!m_.module_flags.empty()) {
            out_ << "\n!llvm.module.flags = !{";
            for (std::size_t i = 0; i < m_.module_flags.size(); ++i) out_ << (i ? ", " : "") << '!' << i;
            out_ << "}\n\n";
            for (std::size_t i = 0; i < m_.module_flags.size(); ++i) {
                const auto& f = m_.module_flags[i];
                out_ << '!' << i << " = !{i32 " << f.behavior << ", !\"" << escape_bytes(f.key) << "\", ";
                if (const bool* b = std::get_if<bool>(&f.value)) {
                    out_ << "i1 " << (*b ? "true" : "false");
                } else {
                    out_ << "i32 " << std::get<std::int64_t>(f.value);
                }
                out_ << "}\n";
            }
        }
        return out_.str();
    }

  private:
    const ProgramModule& m_;
    std::ostringstream out_;

    void function(const FunctionDef& fn) {
        out_ << "define void " << quote_name('@', fn.name) << "()";
        if (fn.attr_group) out_ << " #" << *fn.attr_group;
        out_ << " {\n";
        for (std::size_t b = 0; b < fn.blocks.size(); ++b) {
            const auto& block = fn.blocks[b];
            if (b) out_ << '\n';
            out_ << block.label << ":\n";
            for (const auto& inst : block.instructions) {
                out_ << "  ";
                instruction(inst);
                out_ << '\n';
            }
        }
        out_ << "}\n\n";
    }

    void declaration(const FunctionDecl& decl) {
        out_ << "declare " << to_string(decl.return_kind) << ' ' << quote_name('@', decl.name) << '(';
        for (std::size_t i = 0; i < decl.params.size(); ++i) out_ << (i ? ", " : "") << to_string(decl.params[i]);
        out_ << ')';
        for (int g : decl.attr_groups) out_ << " #" << g;
        out_ << '\n';
    }

    void instruction(const Instruction& inst) {
        if (const auto* call = std::get_if<CallInst>(&inst.op)) {
            const FunctionDecl* decl = m_.find_declaration(call->callee);
            ValueKind ret = decl ? decl->return_kind : ValueKind::Void;
            if (call->result_var) out_ << quote_name('%', *call->result_var) << " = ";
            out_ << "call " << to_string(ret) << ' ' << quote_name('@', call->callee) << '(';
            for (std::size_t i = 0; i < call->args.size(); ++i) {
                ValueKind kind = (decl && decl->params.size() == call->args.size()) ? decl->params[i]
                                                                                     : natural_kind(call->args[i]);
                out_ << (i ? ", " : "");
                operand(kind, call->args[i]);
            }
            out_ << ')';
        } else if (const auto* cbr = std::get_if<CondBranchInst>(&inst.op)) {
            out_ << "br ";
            operand(ValueKind::Bool, cbr->cond);
            out_ << ", label " << quote_name('%', cbr->then_label) << ", label " << quote_name('%', cbr->else_label);
        } else if (const auto* br = std::get_if<BranchInst>(&inst.op)) {
            out_ << "br label " << quote_name('%', br->target_label);
        } else {
            out_ << "ret void";
        }
    }

    std::string global_for(const std::string& text) const {
        for (const auto& [name, payload] : m_.globals) {
            if (payload == text) return name;
        }
        throw std::invalid_argument("label \"" + text + "\" has no global string constant");
    }

    void pointer(ValueKind kind, std::optional<std::uint64_t> index) {
        std::string type(to_string(kind));
        if (!index) {
            out_ << type << " null";
        } else {
            out_ << type << " inttoptr (i64 " << *index << " to " << type << ')';
        }
    }

    void operand(ValueKind kind, const Operand& op) {
        if (const auto* q = std::get_if<QubitRef>(&op)) {
            pointer(kind, q->index);
        } else if (const auto* r = std::get_if<ResultRef>(&op)) {
            pointer(kind, r->index);
        } else if (const auto* i = std::get_if<IntConst>(&op)) {
            if (kind == ValueKind::Bool) {
                out_ << "i1 " << (i->value ? "true" : "false");
            } else {
                out_ << "i64 " << i->value;
            }
        } else if (const auto* d = std::get_if<DoubleConst>(&op)) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "double 0x%016llX",
                          static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(d->value)));
            out_ << buf;
        } else if (const auto* v = std::get_if<BoolVar>(&op)) {
            out_ << "i1 " << quote_name('%', v->name);
        } else if (std::holds_alternative<NullPtr>(op)) {
            out_ << to_string(kind) << " null";
        } else {
            const auto& label = std::get<LabelConst>(op);
            if (!label.text) {
                out_ << to_string(kind) << " null";
            } else if (kind == ValueKind::Ptr) {
                out_ << "ptr " << quote_name('@', global_for(*label.text));
            } else {
                std::size_t len = label.text->size() + 1;
                out_ << "i8* getelementptr inbounds ([" << len << " x i8], [" << len << " x i8]* "
                     << quote_name('@', global_for(*label.text)) << ", i64 0, i64 0)";
            }
        }
    }
};

}  // namespace

std::string render_module(const ProgramModule& module) { return Printer(module).run(); }

}  // namespace qirvm
