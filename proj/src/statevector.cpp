#include "qirvm/statevector.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qirvm/errors.hpp"

namespace qirvm {

Statevector::Statevector(std::size_t num_qubits, std::size_t max_qubits) : n_(num_qubits) {
    if (num_qubits > max_qubits) {
        throw RuntimeFault("statevector backend supports at most " + std::to_string(max_qubits) +
                           " qubits, program requires " + std::to_string(num_qubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

void Statevector::check_qubit(std::size_t qubit) const {
    if (qubit >= n_) {
        throw RuntimeFault("qubit index " + std::to_string(qubit) + " out of range (" + std::to_string(n_) +
                           " qubits allocated)");
    }
}

void Statevector::apply(const GateMatrix& u, std::span<const std::size_t> targets) {
    const std::size_t k = targets.size();
    if (k == 0 || k > 3 || u.dim != (std::size_t{1} << k)) {
        throw RuntimeFault("gate matrix dimension does not match " + std::to_string(k) + " target qubits");
    }
    for (std::size_t i = 0; i < k; ++i) {
        check_qubit(targets[i]);
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw RuntimeFault("duplicate target qubit " + std::to_string(targets[i]));
            }
        }
    }
    const std::size_t d = u.dim;

    // offsets[c]: basis offset selecting matrix column c; target j is bit
    // (k-1-j) of c.
    std::array<std::size_t, 8> offsets{};
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t off = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if ((c >> (k - 1 - j)) & 1) off |= std::size_t{1} << targets[j];
        }
        offsets[c] = off;
    }
    std::array<std::size_t, 3> sorted{};
    std::copy(targets.begin(), targets.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.begin() + k);

    const std::size_t groups = amps_.size() >> k;
    std::array<Complex, 8> in{};
    for (std::size_t g = 0; g < groups; ++g) {
        // Spread g over the non-target bit positions.
        std::size_t base = g;
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t low = base & ((std::size_t{1} << sorted[j]) - 1);
            base = ((base >> sorted[j]) << (sorted[j] + 1)) | low;
        }
        for (std::size_t c = 0; c < d; ++c) in[c] = amps_[base | offsets[c]];
        for (std::size_t r = 0; r < d; ++r) {
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < d; ++c) acc += u(r, c) * in[c];
            amps_[base | offsets[r]] = acc;
        }
    }
}

void Statevector::apply(GateId gate, std::span<const double> params, std::span<const std::size_t> targets) {
    if (targets.size() != gate_qubit_count(gate)) {
        throw RuntimeFault("gate '" + std::string(gate_name(gate)) + "' acts on " +
                           std::to_string(gate_qubit_count(gate)) + " qubits, got " + std::to_string(targets.size()));
    }
    if (params.size() != gate_param_count(gate)) {
        throw RuntimeFault("gate '" + std::string(gate_name(gate)) + "' takes " +
                           std::to_string(gate_param_count(gate)) + " parameters, got " +
                           std::to_string(params.size()));
    }
    apply(gate_matrix(gate, params), targets);
}

double Statevector::probability_one(std::size_t qubit) const {
    check_qubit(qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) p += std::norm(amps_[i]);
    }
    return p;
}

bool Statevector::measure(std::size_t qubit, RngStream& rng) {
    check_qubit(qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    double p0 = 0.0, p1 = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        (i & mask ? p1 : p0) += std::norm(amps_[i]);
    }
    const double total = p0 + p1;
    const double u = rng.uniform();
    bool outcome = u < p1 / total;
    // Guard against selecting a branch with zero weight through rounding.
    if (outcome && p1 == 0.0) outcome = false;
    if (!outcome && p0 == 0.0) outcome = true;
    const double scale = 1.0 / std::sqrt(outcome ? p1 : p0);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (static_cast<bool>(i & mask) == outcome) {
            amps_[i] *= scale;
        } else {
            amps_[i] = 0.0;
        }
    }
    return outcome;
}

void Statevector::reset(std::size_t qubit, RngStream& rng) {
    if (measure(qubit, rng)) {
        const std::size_t mask = std::size_t{1} << qubit;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if (i & mask) std::swap(amps_[i], amps_[i ^ mask]);
        }
    }
}

std::vector<double> Statevector::probabilities() const {
    std::vector<double> out(amps_.size());
    std::transform(amps_.begin(), amps_.end(), out.begin(), [](const Complex& a) { return std::norm(a); });
    return out;
}

double Statevector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

// ---------------------------------------------------------------------------

void StatevectorBackend::allocate(std::size_t num_qubits) { state_.emplace(num_qubits, max_qubits_); }

Statevector& StatevectorBackend::live() {
    if (!state_) throw RuntimeFault("statevector backend used before allocate()");
    return *state_;
}

const Statevector& StatevectorBackend::state() const {
    if (!state_) throw RuntimeFault("statevector backend used before allocate()");
    return *state_;
}

void StatevectorBackend::apply_gate(GateId gate, std::span<const double> params,
                                    std::span<const std::size_t> targets) {
    live().apply(gate, params, targets);
}

bool StatevectorBackend::measure(std::size_t qubit, RngStream& rng) { return live().measure(qubit, rng); }

void StatevectorBackend::reset(std::size_t qubit, RngStream& rng) { live().reset(qubit, rng); }

}  // namespace qirvm
