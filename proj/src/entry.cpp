#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "layout.hpp"
#include "qirvm/frontend.hpp"

namespace qirvm {

namespace {

bool is_entry_group(const AttrGroup& g) { return g.has("entry_point") || g.has("EntryPoint"); }

std::optional<std::string> first_value(const AttrGroup& g, std::initializer_list<std::string_view> keys) {
    for (auto key : keys) {
        if (auto v = g.value(key)) return v;
    }
    return std::nullopt;
}

std::size_t parse_count(const std::string& text, std::string_view what) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw EntryError(EntryError::Kind::InvalidCount,
                         "attribute '" + std::string(what) + "' has non-numeric value \"" + text + "\"");
    }
    return value;
}

struct UsedIndices {
    std::optional<std::uint64_t> max_qubit;
    std::optional<std::uint64_t> max_result;
};

UsedIndices scan_indices(const FunctionDef& fn) {
    UsedIndices used;
    auto bump = [](std::optional<std::uint64_t>& slot, std::uint64_t v) { slot = slot ? std::max(*slot, v) : v; };
    for (const auto& block : fn.blocks) {
        for (const auto& inst : block.instructions) {
            const auto* call = std::get_if<CallInst>(&inst.op);
            if (!call) continue;
            for (const auto& arg : call->args) {
                if (const auto* q = std::get_if<QubitRef>(&arg)) bump(used.max_qubit, q->index);
                if (const auto* r = std::get_if<ResultRef>(&arg)) bump(used.max_result, r->index);
            }
        }
    }
    return used;
}

}  // namespace

EntryPoint find_entry(const ProgramModule& module, const std::optional<std::string>& override_name) {
    const FunctionDef* fn = nullptr;
    if (override_name) {
        fn = module.find_function(*override_name);
        if (!fn) throw EntryError(EntryError::Kind::NoEntry, "no defined function named '@" + *override_name + "'");
    } else {
        std::vector<const FunctionDef*> found;
        for (const auto& f : module.functions) {
            if (!f.attr_group) continue;
            auto it = module.attribute_groups.find(*f.attr_group);
            if (it != module.attribute_groups.end() && is_entry_group(it->second)) found.push_back(&f);
        }
        if (found.empty()) throw EntryError(EntryError::Kind::NoEntry, "no function carries the entry_point attribute");
        if (found.size() > 1) {
            throw EntryError(EntryError::Kind::AmbiguousEntry, "multiple entry points: '@" + found[0]->name +
                                                                   "' and '@" + found[1]->name + "'");
        }
        fn = found.front();
    }

    EntryPoint entry;
    entry.function_name = fn->name;
    const AttrGroup* group = nullptr;
    if (fn->attr_group) {
        auto it = module.attribute_groups.find(*fn->attr_group);
        if (it != module.attribute_groups.end()) group = &it->second;
    }
    std::optional<std::string> qubits, results;
    if (group) {
        qubits = first_value(*group, {"num_required_qubits", "requiredQubits"});
        results = first_value(*group, {"num_required_results", "requiredResults"});
        entry.profile_name = group->value("qir_profiles").value_or("");
    }

    UsedIndices used = scan_indices(*fn);
    auto resolve = [&](const std::optional<std::string>& attr, std::optional<std::uint64_t> max_used,
                       std::string_view what) -> std::size_t {
        if (attr) return parse_count(*attr, what);
        if (!max_used) return 0;
        if (override_name) return static_cast<std::size_t>(*max_used + 1);
        throw EntryError(EntryError::Kind::MissingCounts, "entry point '@" + fn->name + "' uses " +
                                                              std::string(what) + " but does not declare how many");
    };
    entry.num_qubits = resolve(qubits, used.max_qubit, "qubits");
    entry.num_results = resolve(results, used.max_result, "results");
    return entry;
}

std::string to_string(const Diagnostic& diag) {
    return std::string(diag.severity == Severity::Error ? "error" : "warning") + " at " + to_string(diag.loc) +
           ": " + diag.message;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::vector<Diagnostic> validate_profile(const ProgramModule& module, const EntryPoint& entry,
                                         const Registry& registry) {
    std::vector<Diagnostic> diags;
    auto error = [&](SourceLoc loc, std::string msg) { diags.push_back({Severity::Error, std::move(msg), loc}); };

    const FunctionDef* fn = module.find_function(entry.function_name);
    if (!fn) {
        error({}, "entry function '@" + entry.function_name + "' is not defined");
        return diags;
    }

    std::set<std::uint64_t> bad_qubits, bad_results, written;
    std::map<std::uint64_t, SourceLoc> reads;

    for (const auto& block : fn->blocks) {
        for (const auto& inst : block.instructions) {
            const auto* call = std::get_if<CallInst>(&inst.op);
            if (!call) continue;
            const OpSpec* spec = registry.find(call->callee);
            if (!spec) {
                if (call->callee.starts_with(kQisPrefix)) {
                    error(inst.loc, "unresolved QIS function '@" + call->callee + "'");
                } else {
                    error(inst.loc, "unresolved function '@" + call->callee + "'");
                }
                continue;
            }
            if (spec->returns_bool != call->result_var.has_value()) {
                error(inst.loc, "'@" + call->callee + (spec->returns_bool ? "' returns a value that must be bound"
                                                                           : "' does not return a value"));
            }
            auto layout = detail::operand_layout(*spec);
            if (!layout) continue;
            if (layout->size() != call->args.size()) {
                error(inst.loc, "'@" + call->callee + "' expects " + std::to_string(layout->size()) +
                                    " arguments, got " + std::to_string(call->args.size()));
                continue;
            }
            std::set<std::uint64_t> call_qubits;
            for (std::size_t i = 0; i < layout->size(); ++i) {
                detail::Slot slot = (*layout)[i];
                const Operand& arg = call->args[i];
                if (!detail::slot_accepts(slot, arg)) {
                    error(inst.loc, "argument " + std::to_string(i + 1) + " of '@" + call->callee + "' must be a " +
                                        std::string(detail::describe(slot)));
                    continue;
                }
                std::uint64_t idx = detail::pointer_index(arg);
                if (slot == detail::Slot::Qubit) {
                    if (!call_qubits.insert(idx).second) {
                        error(inst.loc, "qubit " + std::to_string(idx) + " used twice in call to '@" + call->callee +
                                            "'");
                    }
                    if (idx >= entry.num_qubits && bad_qubits.insert(idx).second) {
                        error(inst.loc, "qubit index " + std::to_string(idx) + " out of range (num_required_qubits = " +
                                            std::to_string(entry.num_qubits) + ")");
                    }
                } else if (slot == detail::Slot::Result) {
                    if (idx >= entry.num_results && bad_results.insert(idx).second) {
                        error(inst.loc, "result index " + std::to_string(idx) +
                                            " out of range (num_required_results = " +
                                            std::to_string(entry.num_results) + ")");
                    }
                    if (spec->kind == OpKind::Measure) {
                        written.insert(idx);
                    } else {
                        reads.emplace(idx, inst.loc);
                    }
                }
            }
        }
    }
    for (const auto& [idx, loc] : reads) {
        if (!written.contains(idx)) {
            diags.push_back({Severity::Warning, "result " + std::to_string(idx) + " is read but never measured", loc});
        }
    }
    return diags;
}

}  // namespace qirvm
