#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qirvm/backend.hpp"
#include "qirvm/program.hpp"
#include "qirvm/recorder.hpp"
#include "qirvm/registry.hpp"
#include "qirvm/rng.hpp"

namespace qirvm {

inline constexpr std::uint64_t kDefaultStepLimit = 10'000'000;
inline constexpr std::size_t kDefaultShots = 1024;

struct RunConfig {
    std::size_t shots = kDefaultShots;
    std::uint64_t seed = 0;
    std::string backend = "statevector";
    std::uint64_t step_limit = kDefaultStepLimit;
    std::optional<std::string> output_path;
    bool per_shot = false;
    // Shots are independent; >1 spreads them over worker threads without
    // changing the result.
    unsigned threads = 1;
};

enum class ResultBit : std::uint8_t { Unset, Zero, One };

struct ExecEnv {
    std::unordered_map<std::string, bool> ssa;
    std::string current_block;
    std::size_t instr_cursor = 0;
    std::vector<ResultBit> result_bits;
    std::uint64_t step_count = 0;
    // Times an SSA name was bound while already bound (only possible in
    // cyclic control flow).
    std::size_t ssa_rebinds = 0;
};

struct PointerIndex {
    std::uint64_t value = 0;
    friend bool operator==(const PointerIndex&, const PointerIndex&) = default;
};

using RuntimeValue = std::variant<PointerIndex, std::int64_t, double, bool, Label>;

// Qubit/result pointers and null evaluate to their index, constants to
// their value, BoolVar to its binding. Unbound names raise RuntimeFault.
RuntimeValue eval_operand(const ExecEnv& env, const Operand& operand);

// Entry function prepared for repeated execution: blocks indexed, callees
// resolved. Immutable after construction; one instance can drive shots on
// several threads.
class Executor {
  public:
    Executor(const ProgramModule& module, const EntryPoint& entry, const Registry& registry);

    // The backend must already be allocated with entry.num_qubits qubits.
    ShotOutput execute_shot(Backend& backend, ShotRecorder& recorder, RngStream& rng,
                            std::uint64_t step_limit = kDefaultStepLimit, ExecEnv* env_out = nullptr) const;

    const EntryPoint& entry() const noexcept { return entry_; }

  private:
    struct Block {
        const BasicBlock* source = nullptr;
        std::vector<std::optional<OpSpec>> specs;  // per instruction, empty for terminators / unresolved
        std::size_t then_target = 0;       // Branch target or CondBranch then-target
        std::size_t else_target = 0;
    };

    EntryPoint entry_;
    std::vector<Block> blocks_;

    void execute_call(const CallInst& call, const std::optional<OpSpec>& spec, SourceLoc loc, ExecEnv& env, Backend& backend,
                      ShotRecorder& recorder, RngStream& rng) const;
};

ShotOutput execute_shot(const ProgramModule& module, const EntryPoint& entry, const Registry& registry,
                        Backend& backend, ShotRecorder& recorder, RngStream& rng,
                        std::uint64_t step_limit = kDefaultStepLimit);

// Runs config.shots shots, each on a fresh backend from `backends` with an
// RNG stream derived from (config.seed, shot index). Faults are rethrown
// annotated with the (lowest) failing shot index.
RunResult run_program(const ProgramModule& module, const EntryPoint& entry, const Registry& registry,
                      const RunConfig& config, const BackendFactory& backends = default_backends());

}  // namespace qirvm
