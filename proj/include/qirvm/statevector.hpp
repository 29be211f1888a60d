#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qirvm/backend.hpp"
#include "qirvm/gates.hpp"

namespace qirvm {

inline constexpr std::size_t kDefaultMaxQubits = 24;

// Dense 2^n amplitude vector. Qubit i is bit i of the basis index
// (little-endian), so amplitude[5] on 3 qubits is |q2 q1 q0> = |101>.
class Statevector {
  public:
    explicit Statevector(std::size_t num_qubits, std::size_t max_qubits = kDefaultMaxQubits);

    std::size_t num_qubits() const noexcept { return n_; }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    std::span<Complex> amplitudes() noexcept { return amps_; }

    // Targets must be distinct and in range; controls precede the target.
    void apply(const GateMatrix& u, std::span<const std::size_t> targets);
    void apply(GateId gate, std::span<const double> params, std::span<const std::size_t> targets);

    // One uniform draw u; outcome is 1 iff u < P(qubit = 1). The state is
    // projected and renormalized.
    bool measure(std::size_t qubit, RngStream& rng);

    // Measure, then flip back to |0> if the outcome was 1.
    void reset(std::size_t qubit, RngStream& rng);

    double probability_one(std::size_t qubit) const;
    std::vector<double> probabilities() const;
    double norm_squared() const;

  private:
    std::size_t n_;
    std::vector<Complex> amps_;

    void check_qubit(std::size_t qubit) const;
};

class StatevectorBackend final : public Backend {
  public:
    explicit StatevectorBackend(std::size_t max_qubits = kDefaultMaxQubits) : max_qubits_(max_qubits) {}

    std::string_view name() const override { return "statevector"; }
    void allocate(std::size_t num_qubits) override;
    void apply_gate(GateId gate, std::span<const double> params, std::span<const std::size_t> targets) override;
    bool measure(std::size_t qubit, RngStream& rng) override;
    void reset(std::size_t qubit, RngStream& rng) override;

    const Statevector& state() const;

  private:
    std::size_t max_qubits_;
    std::optional<Statevector> state_;

    Statevector& live();
};

}  // namespace qirvm
