#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qirvm/backend.hpp"

namespace qirvm {

struct TraceEntry {
    std::string op;  // gate name, "mz" or "reset"
    std::vector<double> params;
    std::vector<std::size_t> targets;

    // "cnot q1 q2", "rz(0.5) q0"
    std::string to_string() const;

    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

// Records every dispatched operation instead of simulating it. measure()
// returns the forced bits in order (cycling), or alternates 0,1,0,... when
// none are given.
class TraceBackend final : public Backend {
  public:
    explicit TraceBackend(std::vector<bool> forced_bits = {}) : forced_(std::move(forced_bits)) {}

    std::string_view name() const override { return "trace"; }
    void allocate(std::size_t num_qubits) override;
    void apply_gate(GateId gate, std::span<const double> params, std::span<const std::size_t> targets) override;
    bool measure(std::size_t qubit, RngStream& rng) override;
    void reset(std::size_t qubit, RngStream& rng) override;

    const std::vector<TraceEntry>& log() const noexcept { return log_; }
    std::vector<std::string> log_lines() const;

  private:
    std::vector<bool> forced_;
    std::size_t next_bit_ = 0;
    std::size_t num_qubits_ = 0;
    std::vector<TraceEntry> log_;

    void check(std::size_t qubit) const;
};

}  // namespace qirvm
