#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <unordered_set>

#include "lexer.hpp"
#include "qirvm/frontend.hpp"

namespace qirvm {

using detail::Tok;
using detail::Token;

double parse_double_literal(std::string_view token) {
    auto fail = [&]() -> double {
        throw ParseError({}, "malformed floating-point literal '" + std::string(token) + "'",
                         "decimal float or 0x followed by 16 hex digits");
    };
    if (token.size() >= 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X')) {
        std::string_view digits = token.substr(2);
        if (digits.size() != 16) return fail();
        std::uint64_t bits = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits, 16);
        if (ec != std::errc{} || ptr != digits.data() + digits.size()) return fail();
        return std::bit_cast<double>(bits);
    }
    if (token.empty()) return fail();
    std::size_t first = (token[0] == '-' || token[0] == '+') ? 1 : 0;
    if (first >= token.size() || !(std::isdigit(static_cast<unsigned char>(token[first])))) return fail();
    // from_chars rejects a leading '+'.
    std::string_view body = token[0] == '+' ? token.substr(1) : token;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ec != std::errc{} || ptr != body.data() + body.size()) return fail();
    return value;
}

namespace {

enum class PtrRole { Qubit, Result, Label, Unknown };

// QIR calling conventions for untyped `ptr` arguments.
PtrRole opaque_pointer_role(std::string_view callee, std::size_t arg_index) {
    auto qis = [&](std::string_view op) {
        return callee == std::string(kQisPrefix) + std::string(op) + "__body";
    };
    if (qis("mz") || qis("m")) return arg_index == 0 ? PtrRole::Qubit : PtrRole::Result;
    if (qis("read_result")) return PtrRole::Result;
    if (callee.starts_with(kQisPrefix)) return PtrRole::Qubit;
    if (callee.starts_with(kRtPrefix) && callee.ends_with("record_output")) {
        if (callee == "__quantum__rt__result_record_output" && arg_index == 0) return PtrRole::Result;
        return arg_index == 0 ? PtrRole::Unknown : PtrRole::Label;
    }
    return PtrRole::Unknown;
}

struct RawPointer {
    enum class Form { Null, Int, Global } form = Form::Null;
    std::uint64_t index = 0;
    std::string global;
};

struct LabelFixup {
    std::size_t function;
    std::size_t block;
    std::size_t instr;
    std::size_t arg;
    std::string global;
    SourceLoc loc;
};

struct PendingMetadata {
    std::vector<Token> items;  // flattened, comma separated
    SourceLoc loc;
};

class Parser {
  public:
    explicit Parser(std::string_view text) : tokens_(detail::tokenize(text)) {}

    ProgramModule run(std::string source_name) {
        module_.source_name = std::move(source_name);
        while (!cur().is(Tok::Eof)) top_level();
        finish();
        return std::move(module_);
    }

  private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    ProgramModule module_;

    std::vector<LabelFixup> label_fixups_;
    std::vector<std::pair<std::string, SourceLoc>> used_types_;
    std::vector<std::pair<int, SourceLoc>> used_groups_;
    std::optional<std::pair<std::vector<int>, SourceLoc>> flag_list_;
    std::map<int, PendingMetadata> metadata_;
    std::map<std::string, SourceLoc> global_locs_;

    const Token& cur() const { return tokens_[pos_]; }
    const Token& peek(std::size_t ahead = 1) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    Token take() {
        Token t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    static std::string spell(const Token& t) {
        switch (t.kind) {
        case Tok::Eof: return "end of input";
        case Tok::LocalVar: return "'%" + t.text + "'";
        case Tok::GlobalVar: return "'@" + t.text + "'";
        case Tok::AttrRef: return "'#" + t.text + "'";
        case Tok::MetaRef: return "'!" + t.text + "'";
        case Tok::MetaName: return "'!" + t.text + "'";
        case Tok::LabelDef: return "'" + t.text + ":'";
        case Tok::String:
        case Tok::MetaString:
        case Tok::CString: return "string \"" + t.text + "\"";
        default: return "'" + t.text + "'";
        }
    }

    [[noreturn]] void fail_at(const Token& t, const std::string& expected) const {
        throw ParseError(t.loc, "expected " + expected + " but found " + spell(t), expected);
    }
    [[noreturn]] void fail_msg(SourceLoc loc, const std::string& msg) const { throw ParseError(loc, msg); }

    Token expect(Tok kind) {
        if (!cur().is(kind)) fail_at(cur(), std::string(detail::describe(kind)));
        return take();
    }
    Token expect_ident(std::string_view word) {
        if (!cur().is_ident(word)) fail_at(cur(), "'" + std::string(word) + "'");
        return take();
    }
    bool accept(Tok kind) {
        if (cur().is(kind)) {
            take();
            return true;
        }
        return false;
    }
    bool accept_ident(std::string_view word) {
        if (cur().is_ident(word)) {
            take();
            return true;
        }
        return false;
    }

    std::int64_t parse_int(const Token& t) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
            fail_msg(t.loc, "integer literal '" + t.text + "' out of range");
        }
        return v;
    }

    int parse_group_id(const Token& t) {
        std::int64_t v = parse_int(t);
        if (v > std::numeric_limits<int>::max()) fail_msg(t.loc, "attribute group id too large");
        return static_cast<int>(v);
    }

    // ---------------------------------------------------------------- top level

    void top_level() {
        const Token& t = cur();
        if (t.is_ident("source_filename")) {
            take();
            expect(Tok::Equal);
            module_.source_name = expect(Tok::String).text;
            return;
        }
        if (t.is(Tok::LocalVar)) {
            Token name = take();
            expect(Tok::Equal);
            expect_ident("type");
            if (!cur().is_ident("opaque")) fail_at(cur(), "'opaque' (only opaque struct types are supported)");
            take();
            if (!module_.opaque_types.insert(name.text).second) {
                fail_msg(name.loc, "redefinition of type '%" + name.text + "'");
            }
            return;
        }
        if (t.is(Tok::GlobalVar)) return global_constant();
        if (t.is_ident("define")) return function_definition();
        if (t.is_ident("declare")) return function_declaration();
        if (t.is_ident("attributes")) return attribute_group();
        if (t.is(Tok::MetaName)) return named_metadata();
        if (t.is(Tok::MetaRef)) return metadata_node();
        if (t.is(Tok::Ident)) {
            fail_msg(t.loc, "unsupported top-level construct '" + t.text + "'");
        }
        fail_at(t, "top-level entity (source_filename, type, global, define, declare, attributes, metadata)");
    }

    void global_constant() {
        Token name = take();
        expect(Tok::Equal);
        static const std::unordered_set<std::string> kLinkage = {
            "private", "internal", "external", "linkonce_odr", "weak_odr", "dso_local",
            "unnamed_addr", "local_unnamed_addr", "hidden"};
        while (cur().is(Tok::Ident) && kLinkage.contains(cur().text)) take();
        if (!accept_ident("constant")) fail_at(cur(), "'constant' (only global string constants are supported)");
        std::int64_t length = array_of_i8();
        Token payload = expect(Tok::CString);
        if (static_cast<std::int64_t>(payload.text.size()) != length) {
            fail_msg(payload.loc, "string constant length " + std::to_string(payload.text.size()) +
                                      " does not match array type length " + std::to_string(length));
        }
        if (accept(Tok::Comma)) {
            expect_ident("align");
            expect(Tok::Integer);
        }
        std::string text = payload.text;
        if (!text.empty() && text.back() == '\0') text.pop_back();
        if (module_.globals.contains(name.text)) fail_msg(name.loc, "redefinition of global '@" + name.text + "'");
        module_.globals.emplace(name.text, std::move(text));
        global_locs_.emplace(name.text, name.loc);
    }

    // `[N x i8]`; returns N.
    std::int64_t array_of_i8() {
        expect(Tok::LBracket);
        Token n = expect(Tok::Integer);
        expect_ident("x");
        expect_ident("i8");
        expect(Tok::RBracket);
        std::int64_t v = parse_int(n);
        if (v < 0) fail_msg(n.loc, "negative array length");
        return v;
    }

    void attribute_group() {
        take();
        Token id = expect(Tok::AttrRef);
        expect(Tok::Equal);
        expect(Tok::LBrace);
        AttrGroup group;
        while (!cur().is(Tok::RBrace)) {
            if (cur().is(Tok::String)) {
                std::string key = take().text;
                if (accept(Tok::Equal)) {
                    group.kv[key] = expect(Tok::String).text;
                } else {
                    group.bare_keys.insert(key);
                }
            } else if (cur().is(Tok::Ident)) {
                group.bare_keys.insert(take().text);
            } else {
                fail_at(cur(), "attribute or '}'");
            }
        }
        take();
        int gid = parse_group_id(id);
        if (!module_.attribute_groups.emplace(gid, std::move(group)).second) {
            fail_msg(id.loc, "redefinition of attribute group #" + id.text);
        }
    }

    void named_metadata() {
        Token name = take();
        if (name.text != "llvm.module.flags") fail_msg(name.loc, "unsupported named metadata '!" + name.text + "'");
        if (flag_list_) fail_msg(name.loc, "duplicate !llvm.module.flags");
        expect(Tok::Equal);
        expect(Tok::Exclaim);
        expect(Tok::LBrace);
        std::vector<int> refs;
        if (!cur().is(Tok::RBrace)) {
            do {
                refs.push_back(parse_group_id(expect(Tok::MetaRef)));
            } while (accept(Tok::Comma));
        }
        expect(Tok::RBrace);
        flag_list_ = std::make_pair(std::move(refs), name.loc);
    }

    void metadata_node() {
        Token id = take();
        expect(Tok::Equal);
        expect(Tok::Exclaim);
        expect(Tok::LBrace);
        PendingMetadata node;
        node.loc = id.loc;
        if (!cur().is(Tok::RBrace)) {
            do {
                if (cur().is(Tok::MetaString)) {
                    node.items.push_back(take());
                } else if (cur().is(Tok::Ident)) {
                    Token type = take();
                    if (type.text != "i32" && type.text != "i1" && type.text != "i64") {
                        fail_at(type, "metadata operand type (i1, i32, i64)");
                    }
                    Token value = take();
                    if (!value.is(Tok::Integer) && !value.is_ident("true") && !value.is_ident("false")) {
                        fail_at(value, "integer or boolean constant");
                    }
                    if (type.text == "i1" && value.is(Tok::Integer)) {
                        value = Token{Tok::Ident, value.text == "0" ? "false" : "true", value.loc};
                    }
                    node.items.push_back(value);
                } else {
                    fail_at(cur(), "metadata operand");
                }
            } while (accept(Tok::Comma));
        }
        expect(Tok::RBrace);
        if (!metadata_.emplace(parse_group_id(id), std::move(node)).second) {
            fail_msg(id.loc, "redefinition of metadata !" + id.text);
        }
    }

    // ---------------------------------------------------------------- types

    ValueKind parse_type() {
        const Token& t = cur();
        if (t.is(Tok::LocalVar)) {
            Token name = take();
            if (!cur().is(Tok::Star)) fail_at(cur(), "'*' after named type (only pointers to opaque types)");
            take();
            used_types_.emplace_back(name.text, name.loc);
            if (name.text == "Qubit") return ValueKind::QubitPtr;
            if (name.text == "Result") return ValueKind::ResultPtr;
            fail_msg(name.loc, "unsupported pointer type '%" + name.text + "*'");
        }
        if (!t.is(Tok::Ident)) fail_at(t, "type");
        Token word = take();
        if (word.text == "void") return ValueKind::Void;
        if (word.text == "i1") return ValueKind::Bool;
        if (word.text == "double") return ValueKind::Double;
        if (word.text == "ptr") return ValueKind::Ptr;
        if (word.text == "i8" && cur().is(Tok::Star)) {
            take();
            return ValueKind::BytePtr;
        }
        if (word.text == "i8" || word.text == "i16" || word.text == "i32" || word.text == "i64") {
            return ValueKind::Int;
        }
        fail_msg(word.loc, "unsupported type '" + word.text + "'");
    }

    static bool is_pointer(ValueKind k) {
        return k == ValueKind::QubitPtr || k == ValueKind::ResultPtr || k == ValueKind::BytePtr ||
               k == ValueKind::Ptr;
    }

    // ---------------------------------------------------------------- functions

    void skip_linkage() {
        static const std::unordered_set<std::string> kWords = {
            "dso_local", "internal", "private", "external", "hidden", "default", "dso_preemptable",
            "local_unnamed_addr", "unnamed_addr"};
        while (cur().is(Tok::Ident) && kWords.contains(cur().text)) take();
    }

    void check_unique_function(const Token& name) {
        if (module_.find_function(name.text) || module_.find_declaration(name.text)) {
            fail_msg(name.loc, "redefinition of function '@" + name.text + "'");
        }
    }

    void function_declaration() {
        take();
        FunctionDecl decl;
        decl.return_kind = parse_type();
        Token name = expect(Tok::GlobalVar);
        check_unique_function(name);
        decl.name = name.text;
        expect(Tok::LParen);
        if (!cur().is(Tok::RParen)) {
            do {
                ValueKind k = parse_type();
                if (k == ValueKind::Void) fail_msg(name.loc, "void parameter in declaration of '@" + name.text + "'");
                decl.params.push_back(k);
                // parameter attributes (writeonly, nocapture, ...)
                while (cur().is(Tok::Ident)) take();
            } while (accept(Tok::Comma));
        }
        expect(Tok::RParen);
        for (;;) {
            if (cur().is(Tok::AttrRef)) {
                Token ref = take();
                int gid = parse_group_id(ref);
                decl.attr_groups.push_back(gid);
                used_groups_.emplace_back(gid, ref.loc);
            } else if (cur().is_ident("local_unnamed_addr") || cur().is_ident("unnamed_addr")) {
                take();
            } else {
                break;
            }
        }
        module_.declarations.push_back(std::move(decl));
    }

    void function_definition() {
        take();
        skip_linkage();
        Token ret = cur();
        if (parse_type() != ValueKind::Void) fail_msg(ret.loc, "only void-returning function definitions are supported");
        Token name = expect(Tok::GlobalVar);
        check_unique_function(name);
        expect(Tok::LParen);
        if (!cur().is(Tok::RParen)) fail_msg(cur().loc, "function definitions with parameters are not supported");
        expect(Tok::RParen);
        FunctionDef fn;
        fn.name = name.text;
        for (;;) {
            if (cur().is(Tok::AttrRef)) {
                Token ref = take();
                if (fn.attr_group) fail_msg(ref.loc, "multiple attribute groups on a function definition");
                fn.attr_group = parse_group_id(ref);
                used_groups_.emplace_back(*fn.attr_group, ref.loc);
            } else if (cur().is_ident("local_unnamed_addr") || cur().is_ident("unnamed_addr")) {
                take();
            } else {
                break;
            }
        }
        expect(Tok::LBrace);
        // Register before parsing the body so calls can refer to it.
        std::size_t fn_index = module_.functions.size();
        module_.functions.push_back(fn);
        std::set<std::string> ssa_defined;
        std::vector<std::pair<std::string, SourceLoc>> ssa_used;
        std::vector<std::pair<std::string, SourceLoc>> targets;
        std::vector<BasicBlock> blocks;
        while (!cur().is(Tok::RBrace)) {
            if (!cur().is(Tok::LabelDef)) fail_at(cur(), "block label");
            Token label = take();
            for (const auto& b : blocks) {
                if (b.label == label.text) fail_msg(label.loc, "redefinition of block label '" + label.text + "'");
            }
            BasicBlock block;
            block.label = label.text;
            for (;;) {
                if (cur().is(Tok::LabelDef) || cur().is(Tok::RBrace)) {
                    fail_at(cur(), "instruction (block '" + block.label + "' has no terminator)");
                }
                Instruction inst = instruction(fn_index, blocks.size(), block.instructions.size(), ssa_defined,
                                               ssa_used, targets);
                bool term = inst.is_terminator();
                block.instructions.push_back(std::move(inst));
                if (term) break;
            }
            blocks.push_back(std::move(block));
        }
        take();
        if (blocks.empty()) fail_msg(name.loc, "function '@" + name.text + "' has no blocks");
        for (const auto& [label, loc] : targets) {
            bool found = std::any_of(blocks.begin(), blocks.end(), [&](const BasicBlock& b) { return b.label == label; });
            if (!found) fail_msg(loc, "branch to unknown label '%" + label + "'");
        }
        for (const auto& [var, loc] : ssa_used) {
            if (!ssa_defined.contains(var)) fail_msg(loc, "use of undefined value '%" + var + "'");
        }
        module_.functions[fn_index].blocks = std::move(blocks);
    }

    Instruction instruction(std::size_t fn_index, std::size_t block_index, std::size_t instr_index,
                            std::set<std::string>& ssa_defined,
                            std::vector<std::pair<std::string, SourceLoc>>& ssa_used,
                            std::vector<std::pair<std::string, SourceLoc>>& targets) {
        SourceLoc loc = cur().loc;
        std::optional<std::string> result_var;
        if (cur().is(Tok::LocalVar)) {
            Token var = take();
            expect(Tok::Equal);
            if (!ssa_defined.insert(var.text).second) {
                fail_msg(var.loc, "multiple definition of local value '%" + var.text + "'");
            }
            result_var = var.text;
        }
        if (!cur().is(Tok::Ident)) fail_at(cur(), "instruction");
        const std::string op = cur().text;
        if (op == "call" || op == "tail" || op == "notail" || op == "musttail") {
            return {call(result_var, fn_index, block_index, instr_index, ssa_used), loc};
        }
        if (result_var) fail_msg(cur().loc, "unsupported instruction '" + op + "'");
        if (op == "br") {
            take();
            if (accept_ident("label")) {
                Token target = expect(Tok::LocalVar);
                targets.emplace_back(target.text, target.loc);
                return {BranchInst{target.text}, loc};
            }
            Token type = cur();
            if (parse_type() != ValueKind::Bool) fail_msg(type.loc, "conditional branch requires an i1 condition");
            Operand cond = bool_value(ssa_used);
            expect(Tok::Comma);
            expect_ident("label");
            Token then_label = expect(Tok::LocalVar);
            expect(Tok::Comma);
            expect_ident("label");
            Token else_label = expect(Tok::LocalVar);
            targets.emplace_back(then_label.text, then_label.loc);
            targets.emplace_back(else_label.text, else_label.loc);
            return {CondBranchInst{std::move(cond), then_label.text, else_label.text}, loc};
        }
        if (op == "ret") {
            take();
            if (!cur().is_ident("void")) fail_at(cur(), "'void' (only 'ret void' is supported)");
            take();
            return {ReturnVoidInst{}, loc};
        }
        fail_msg(cur().loc, "unsupported instruction '" + op + "'");
    }

    Operand bool_value(std::vector<std::pair<std::string, SourceLoc>>& ssa_used) {
        const Token& t = cur();
        if (t.is(Tok::LocalVar)) {
            Token v = take();
            ssa_used.emplace_back(v.text, v.loc);
            return BoolVar{v.text};
        }
        if (t.is_ident("true")) {
            take();
            return IntConst{1};
        }
        if (t.is_ident("false")) {
            take();
            return IntConst{0};
        }
        if (t.is(Tok::Integer) && (t.text == "0" || t.text == "1")) {
            return IntConst{parse_int(take())};
        }
        fail_at(t, "i1 value");
    }

    RawPointer pointer_value(ValueKind kind) {
        const Token& t = cur();
        if (t.is_ident("null")) {
            take();
            return {};
        }
        if (t.is_ident("inttoptr")) {
            take();
            expect(Tok::LParen);
            if (!cur().is_ident("i64") && !cur().is_ident("i32")) fail_at(cur(), "integer type");
            take();
            Token n = expect(Tok::Integer);
            std::int64_t v = parse_int(n);
            if (v < 0) fail_msg(n.loc, "negative pointer index");
            expect_ident("to");
            Token to = cur();
            if (parse_type() != kind) fail_msg(to.loc, "inttoptr target type does not match operand type");
            expect(Tok::RParen);
            return {RawPointer::Form::Int, static_cast<std::uint64_t>(v), {}};
        }
        if (t.is_ident("getelementptr")) {
            take();
            accept_ident("inbounds");
            expect(Tok::LParen);
            array_of_i8();
            expect(Tok::Comma);
            // source pointer: `[N x i8]*` or `ptr`
            if (cur().is(Tok::LBracket)) {
                array_of_i8();
                expect(Tok::Star);
            } else {
                expect_ident("ptr");
            }
            Token g = expect(Tok::GlobalVar);
            for (int i = 0; i < 2; ++i) {
                expect(Tok::Comma);
                if (!cur().is_ident("i64") && !cur().is_ident("i32")) fail_at(cur(), "integer type");
                take();
                Token idx = expect(Tok::Integer);
                if (idx.text != "0") fail_msg(idx.loc, "only zero-offset getelementptr on string constants is supported");
            }
            expect(Tok::RParen);
            return {RawPointer::Form::Global, 0, g.text};
        }
        if (t.is(Tok::GlobalVar) && kind == ValueKind::Ptr) {
            return {RawPointer::Form::Global, 0, take().text};
        }
        fail_at(t, "pointer constant (null, inttoptr, getelementptr)");
    }

    CallInst call(std::optional<std::string> result_var, std::size_t fn_index, std::size_t block_index,
                  std::size_t instr_index, std::vector<std::pair<std::string, SourceLoc>>& ssa_used) {
        if (!cur().is_ident("call")) take();  // tail / notail / musttail
        expect_ident("call");
        Token ret_tok = cur();
        ValueKind ret = parse_type();
        Token callee = expect(Tok::GlobalVar);
        CallInst inst;
        inst.result_var = std::move(result_var);
        inst.callee = callee.text;

        const FunctionDecl* decl = module_.find_declaration(callee.text);
        const FunctionDef* def = module_.find_function(callee.text);
        std::vector<ValueKind> param_kinds;
        ValueKind declared_ret = ValueKind::Void;
        if (decl) {
            param_kinds = decl->params;
            declared_ret = decl->return_kind;
        } else if (!def) {
            // Declarations conventionally follow the body; check at the end.
            pending_calls_.push_back({callee.text, callee.loc, ValueKind::Void, {}});
        }
        if (inst.result_var && ret == ValueKind::Void) fail_msg(ret_tok.loc, "cannot assign the result of a void call");
        if (!inst.result_var && ret != ValueKind::Void) {
            fail_msg(ret_tok.loc, "non-void call result must be bound to a value");
        }
        if (inst.result_var && ret != ValueKind::Bool) {
            fail_msg(ret_tok.loc, "only i1 call results are supported");
        }

        expect(Tok::LParen);
        std::vector<ValueKind> arg_kinds;
        if (!cur().is(Tok::RParen)) {
            do {
                SourceLoc arg_loc = cur().loc;
                ValueKind k = parse_type();
                while (cur().is_ident("noundef") || cur().is_ident("nonnull") || cur().is_ident("writeonly") ||
                       cur().is_ident("readonly")) {
                    take();
                }
                arg_kinds.push_back(k);
                std::size_t arg_index = inst.args.size();
                switch (k) {
                case ValueKind::Void: fail_msg(arg_loc, "void argument");
                case ValueKind::Bool: inst.args.push_back(bool_value(ssa_used)); break;
                case ValueKind::Int: {
                    Token n = cur();
                    if (n.is_ident("true") || n.is_ident("false")) {
                        take();
                        inst.args.push_back(IntConst{n.text == "true" ? 1 : 0});
                    } else {
                        inst.args.push_back(IntConst{parse_int(expect(Tok::Integer))});
                    }
                    break;
                }
                case ValueKind::Double: {
                    Token lit = cur();
                    if (!lit.is(Tok::Float) && !lit.is(Tok::HexFloat) && !lit.is(Tok::Integer)) {
                        fail_at(lit, "floating-point constant");
                    }
                    take();
                    try {
                        inst.args.push_back(DoubleConst{parse_double_literal(lit.text)});
                    } catch (const ParseError& e) {
                        throw ParseError(lit.loc, e.detail(), e.expected());
                    }
                    break;
                }
                default: {
                    RawPointer raw = pointer_value(k);
                    inst.args.push_back(classify_pointer(raw, k, callee.text, arg_index, arg_loc, fn_index,
                                                         block_index, instr_index));
                    break;
                }
                }
            } while (accept(Tok::Comma));
        }
        expect(Tok::RParen);
        while (cur().is(Tok::AttrRef)) {
            Token ref = take();
            used_groups_.emplace_back(parse_group_id(ref), ref.loc);
        }

        if (decl || def) {
            check_signature(callee, ret, declared_ret, arg_kinds, param_kinds);
        } else {
            pending_calls_.back().ret = ret;
            pending_calls_.back().args = arg_kinds;
        }
        return inst;
    }

    Operand classify_pointer(const RawPointer& raw, ValueKind kind, const std::string& callee, std::size_t arg_index,
                             SourceLoc loc, std::size_t fn_index, std::size_t block_index, std::size_t instr_index) {
        PtrRole role = PtrRole::Unknown;
        switch (kind) {
        case ValueKind::QubitPtr: role = PtrRole::Qubit; break;
        case ValueKind::ResultPtr: role = PtrRole::Result; break;
        case ValueKind::BytePtr: role = PtrRole::Label; break;
        default: role = opaque_pointer_role(callee, arg_index); break;
        }
        if (raw.form == RawPointer::Form::Global) {
            if (role != PtrRole::Label && kind != ValueKind::Ptr) {
                fail_msg(loc, "string constant passed where a qubit or result pointer is expected");
            }
            if (role == PtrRole::Qubit || role == PtrRole::Result) {
                fail_msg(loc, "string constant passed where a qubit or result pointer is expected");
            }
            label_fixups_.push_back({fn_index, block_index, instr_index, arg_index, raw.global, loc});
            return LabelConst{};
        }
        switch (role) {
        case PtrRole::Qubit: return QubitRef{raw.index};
        case PtrRole::Result: return ResultRef{raw.index};
        case PtrRole::Label:
            if (raw.form == RawPointer::Form::Int) fail_msg(loc, "integer-to-pointer label arguments are not supported");
            return LabelConst{};
        case PtrRole::Unknown:
            if (raw.form == RawPointer::Form::Int) {
                fail_msg(loc, "cannot infer whether this untyped pointer is a qubit or a result");
            }
            return NullPtr{};
        }
        return NullPtr{};
    }

    void check_signature(const Token& callee, ValueKind ret, ValueKind declared_ret,
                         const std::vector<ValueKind>& args, const std::vector<ValueKind>& params) const {
        if (ret != declared_ret) {
            fail_msg(callee.loc, "call to '@" + callee.text + "' uses return type " + std::string(to_string(ret)) +
                                     " but it is declared " + std::string(to_string(declared_ret)));
        }
        if (args.size() != params.size()) {
            fail_msg(callee.loc, "call to '@" + callee.text + "' passes " + std::to_string(args.size()) +
                                     " arguments but it takes " + std::to_string(params.size()));
        }
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] != params[i]) {
                fail_msg(callee.loc, "argument " + std::to_string(i + 1) + " of call to '@" + callee.text + "' has type " +
                                         std::string(to_string(args[i])) + " but parameter type is " +
                                         std::string(to_string(params[i])));
            }
        }
    }

    struct PendingCall {
        std::string callee;
        SourceLoc loc;
        ValueKind ret = ValueKind::Void;
        std::vector<ValueKind> args;
    };
    std::vector<PendingCall> pending_calls_;

    // ---------------------------------------------------------------- module-level checks

    void finish() {
        for (const auto& pc : pending_calls_) {
            Token t{Tok::GlobalVar, pc.callee, pc.loc};
            if (const FunctionDecl* decl = module_.find_declaration(pc.callee)) {
                check_signature(t, pc.ret, decl->return_kind, pc.args, decl->params);
            } else if (module_.find_function(pc.callee)) {
                check_signature(t, pc.ret, ValueKind::Void, pc.args, {});
            } else {
                fail_msg(pc.loc, "call to undeclared function '@" + pc.callee + "'");
            }
        }
        for (const auto& [name, loc] : used_types_) {
            if (!module_.opaque_types.contains(name)) fail_msg(loc, "use of undefined type '%" + name + "'");
        }
        for (const auto& [gid, loc] : used_groups_) {
            if (!module_.attribute_groups.contains(gid)) {
                fail_msg(loc, "reference to undefined attribute group #" + std::to_string(gid));
            }
        }
        for (const auto& fix : label_fixups_) {
            auto it = module_.globals.find(fix.global);
            if (it == module_.globals.end()) fail_msg(fix.loc, "use of undefined global '@" + fix.global + "'");
            auto& inst = module_.functions[fix.function].blocks[fix.block].instructions[fix.instr];
            std::get<CallInst>(inst.op).args[fix.arg] = LabelConst{it->second};
        }
        if (flag_list_) {
            for (int ref : flag_list_->first) {
                auto it = metadata_.find(ref);
                if (it == metadata_.end()) {
                    fail_msg(flag_list_->second, "reference to undefined metadata !" + std::to_string(ref));
                }
                module_.module_flags.push_back(module_flag(it->second));
            }
        }
        for (const auto& [id, node] : metadata_) {
            bool referenced = flag_list_ && std::find(flag_list_->first.begin(), flag_list_->first.end(), id) !=
                                                flag_list_->first.end();
            if (!referenced) fail_msg(node.loc, "metadata node !" + std::to_string(id) + " is not a module flag");
        }
    }

    ModuleFlag module_flag(const PendingMetadata& node) {
        const auto& items = node.items;
        if (items.size() != 3 || !items[0].is(Tok::Integer) || !items[1].is(Tok::MetaString)) {
            fail_msg(node.loc, "module flag must have the form !{i32 behavior, !\"key\", value}");
        }
        ModuleFlag flag;
        flag.behavior = static_cast<int>(parse_int(items[0]));
        flag.key = items[1].text;
        if (items[2].is(Tok::Integer)) {
            flag.value = parse_int(items[2]);
        } else if (items[2].is(Tok::Ident)) {
            flag.value = items[2].text == "true";
        } else {
            fail_msg(items[2].loc, "module flag value must be an integer or boolean");
        }
        return flag;
    }
};

}  // namespace

ProgramModule parse_module(std::string_view text, std::string source_name) {
    try {
        return Parser(text).run(std::move(source_name));
    } catch (const ParseError& e) {
        int lines = detail::count_lines(text);
        if (e.loc().line > lines || e.loc().line < 1) {
            throw ParseError({std::clamp(e.loc().line, 1, lines), e.loc().column}, e.detail(), e.expected());
        }
        throw;
    }
}

}  // namespace qirvm
