#include "qirvm/interpreter.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "layout.hpp"
#include "qirvm/errors.hpp"

namespace qirvm {

RuntimeValue eval_operand(const ExecEnv& env, const Operand& operand) {
    struct Visitor {
        const ExecEnv& env;
        RuntimeValue operator()(const QubitRef& q) const { return PointerIndex{q.index}; }
        RuntimeValue operator()(const ResultRef& r) const { return PointerIndex{r.index}; }
        RuntimeValue operator()(const NullPtr&) const { return PointerIndex{0}; }
        RuntimeValue operator()(const IntConst& i) const { return i.value; }
        RuntimeValue operator()(const DoubleConst& d) const { return d.value; }
        RuntimeValue operator()(const LabelConst& l) const { return l.text; }
        RuntimeValue operator()(const BoolVar& v) const {
            auto it = env.ssa.find(v.name);
            if (it == env.ssa.end()) throw RuntimeFault("use of unbound value '%" + v.name + "'");
            return it->second;
        }
    };
    return std::visit(Visitor{env}, operand);
}

Executor::Executor(const ProgramModule& module, const EntryPoint& entry, const Registry& registry)
    : entry_(entry) {
    const FunctionDef* fn = module.find_function(entry.function_name);
    if (!fn) throw RuntimeFault("entry function '@" + entry.function_name + "' is not defined");
    if (fn->blocks.empty()) throw RuntimeFault("entry function '@" + entry.function_name + "' has no blocks");

    auto index_of = [&](const std::string& label) -> std::size_t {
        for (std::size_t i = 0; i < fn->blocks.size(); ++i) {
            if (fn->blocks[i].label == label) return i;
        }
        throw RuntimeFault("branch to unknown label '%" + label + "'");
    };

    blocks_.reserve(fn->blocks.size());
    for (const auto& bb : fn->blocks) {
        Block block;
        block.source = &bb;
        for (const auto& inst : bb.instructions) {
            std::optional<OpSpec> spec;
            if (const auto* call = std::get_if<CallInst>(&inst.op)) {
                if (const OpSpec* found = registry.find(call->callee)) spec = *found;
            } else if (const auto* br = std::get_if<BranchInst>(&inst.op)) {
                block.then_target = index_of(br->target_label);
            } else if (const auto* cbr = std::get_if<CondBranchInst>(&inst.op)) {
                block.then_target = index_of(cbr->then_label);
                block.else_target = index_of(cbr->else_label);
            }
            block.specs.push_back(spec);
        }
        if (bb.instructions.empty() || !bb.instructions.back().is_terminator()) {
            throw RuntimeFault("block '" + bb.label + "' does not end in a terminator");
        }
        blocks_.push_back(std::move(block));
    }
}

namespace {

std::uint64_t as_index(const RuntimeValue& v) { return std::get<PointerIndex>(v).value; }

}  // namespace

void Executor::execute_call(const CallInst& call, const std::optional<OpSpec>& spec, SourceLoc loc, ExecEnv& env,
                            Backend& backend, ShotRecorder& recorder, RngStream& rng) const {
    if (!spec) throw RuntimeFault("call to unresolved function '@" + call.callee + "'", loc);
    auto layout = detail::operand_layout(*spec);
    if (!layout) return;  // Initialize
    if (layout->size() != call.args.size()) {
        throw RuntimeFault("'@" + call.callee + "' expects " + std::to_string(layout->size()) + " arguments, got " +
                               std::to_string(call.args.size()),
                           loc);
    }
    std::array<RuntimeValue, 4> values;
    for (std::size_t i = 0; i < layout->size(); ++i) {
        if (!detail::slot_accepts((*layout)[i], call.args[i])) {
            throw RuntimeFault("argument " + std::to_string(i + 1) + " of '@" + call.callee + "' must be a " +
                                   std::string(detail::describe((*layout)[i])),
                               loc);
        }
        values[i] = eval_operand(env, call.args[i]);
    }

    auto result_slot = [&](std::uint64_t index) -> ResultBit& {
        if (index >= env.result_bits.size()) {
            throw RuntimeFault("result index " + std::to_string(index) + " out of range (" +
                                   std::to_string(env.result_bits.size()) + " results)",
                               loc);
        }
        return env.result_bits[index];
    };
    auto read_bit = [&](std::uint64_t index) -> bool {
        ResultBit b = result_slot(index);
        if (b == ResultBit::Unset) throw RuntimeFault("use of unmeasured result " + std::to_string(index), loc);
        return b == ResultBit::One;
    };

    try {
        switch (spec->kind) {
        case OpKind::Gate: {
            std::array<double, 1> params{};
            std::array<std::size_t, 3> qubits{};
            for (std::size_t p = 0; p < spec->num_params; ++p) params[p] = std::get<double>(values[p]);
            for (std::size_t q = 0; q < spec->num_qubits; ++q) qubits[q] = as_index(values[spec->num_params + q]);
            backend.apply_gate(*spec->gate_id, std::span(params.data(), spec->num_params),
                               std::span(qubits.data(), spec->num_qubits));
            break;
        }
        case OpKind::Measure: {
            ResultBit& slot = result_slot(as_index(values[1]));
            slot = backend.measure(as_index(values[0]), rng) ? ResultBit::One : ResultBit::Zero;
            break;
        }
        case OpKind::Reset: backend.reset(as_index(values[0]), rng); break;
        case OpKind::ReadResult: {
            bool bit = read_bit(as_index(values[0]));
            if (!call.result_var) throw RuntimeFault("result of '@" + call.callee + "' is not bound", loc);
            auto [it, inserted] = env.ssa.insert_or_assign(*call.result_var, bit);
            if (!inserted) ++env.ssa_rebinds;
            break;
        }
        case OpKind::RecordArray:
            recorder.record_array(std::get<std::int64_t>(values[0]), std::get<Label>(values[1]));
            break;
        case OpKind::RecordResult:
            recorder.record_result(read_bit(as_index(values[0])), std::get<Label>(values[1]));
            break;
        case OpKind::Initialize: break;
        }
    } catch (const RuntimeFault& fault) {
        if (fault.loc()) throw;
        throw RuntimeFault(fault.message(), loc);
    }
}

ShotOutput Executor::execute_shot(Backend& backend, ShotRecorder& recorder, RngStream& rng,
                                  std::uint64_t step_limit, ExecEnv* env_out) const {
    ExecEnv local;
    ExecEnv& env = env_out ? *env_out : local;
    env = ExecEnv{};
    env.result_bits.assign(entry_.num_results, ResultBit::Unset);

    std::size_t block_index = 0;
    for (;;) {
        const Block& block = blocks_[block_index];
        env.current_block = block.source->label;
        const auto& instructions = block.source->instructions;
        std::optional<std::size_t> next;
        for (std::size_t i = 0; i < instructions.size() && !next; ++i) {
            env.instr_cursor = i;
            if (++env.step_count > step_limit) {
                throw RuntimeFault("step limit of " + std::to_string(step_limit) + " exceeded", instructions[i].loc);
            }
            const Instruction& inst = instructions[i];
            if (const auto* call = std::get_if<CallInst>(&inst.op)) {
                execute_call(*call, block.specs[i], inst.loc, env, backend, recorder, rng);
            } else if (std::holds_alternative<BranchInst>(inst.op)) {
                next = block.then_target;
            } else if (const auto* cbr = std::get_if<CondBranchInst>(&inst.op)) {
                RuntimeValue cond;
                try {
                    cond = eval_operand(env, cbr->cond);
                } catch (const RuntimeFault& fault) {
                    throw RuntimeFault(fault.message(), inst.loc);
                }
                bool taken = false;
                if (const bool* b = std::get_if<bool>(&cond)) {
                    taken = *b;
                } else if (const auto* n = std::get_if<std::int64_t>(&cond)) {
                    taken = *n != 0;
                } else {
                    throw RuntimeFault("conditional branch on a non-boolean operand", inst.loc);
                }
                next = taken ? block.then_target : block.else_target;
            } else {
                return recorder.finalize();
            }
        }
        block_index = *next;
    }
}

ShotOutput execute_shot(const ProgramModule& module, const EntryPoint& entry, const Registry& registry,
                        Backend& backend, ShotRecorder& recorder, RngStream& rng, std::uint64_t step_limit) {
    return Executor(module, entry, registry).execute_shot(backend, recorder, rng, step_limit);
}

RunResult run_program(const ProgramModule& module, const EntryPoint& entry, const Registry& registry,
                      const RunConfig& config, const BackendFactory& backends) {
    if (config.shots == 0) throw std::invalid_argument("shots must be at least 1");
    if (!backends.contains(config.backend)) throw UnknownBackend(config.backend, backends.names());

    const Executor executor(module, entry, registry);
    std::vector<ShotOutput> outputs(config.shots);

    auto run_one = [&](std::size_t shot) {
        auto backend = backends.create(config.backend);
        try {
            backend->allocate(entry.num_qubits);
            ShotRecorder recorder;
            RngStream rng = RngStream::for_shot(config.seed, shot);
            outputs[shot] = executor.execute_shot(*backend, recorder, rng, config.step_limit);
        } catch (const RuntimeFault& fault) {
            throw fault.with_shot(shot);
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(config.shots)));
    if (threads == 1) {
        for (std::size_t shot = 0; shot < config.shots; ++shot) run_one(shot);
    } else {
        std::mutex mu;
        std::optional<std::size_t> failed_shot;
        std::exception_ptr failure;
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t shot = t; shot < config.shots; shot += threads) {
                    try {
                        run_one(shot);
                    } catch (...) {
                        std::lock_guard lock(mu);
                        if (!failed_shot || shot < *failed_shot) {
                            failed_shot = shot;
                            failure = std::current_exception();
                        }
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    RunResult result = aggregate(outputs, config.per_shot);
    result.program = module.source_name;
    result.backend = config.backend;
    result.seed = config.seed;
    result.rng = std::string(RngStream::kId);
    result.num_qubits = entry.num_qubits;
    result.num_results = entry.num_results;
    return result;
}

}  // namespace qirvm
