#include "qirvm/trace_backend.hpp"

#include <sstream>

#include "qirvm/errors.hpp"

namespace qirvm {

std::string TraceEntry::to_string() const {
    std::ostringstream out;
    out << op;
    if (!params.empty()) {
        out << '(';
        for (std::size_t i = 0; i < params.size(); ++i) out << (i ? "," : "") << params[i];
        out << ')';
    }
    for (std::size_t t : targets) out << " q" << t;
    return out.str();
}

void TraceBackend::allocate(std::size_t num_qubits) {
    num_qubits_ = num_qubits;
    log_.clear();
}

void TraceBackend::check(std::size_t qubit) const {
    if (qubit >= num_qubits_) {
        throw RuntimeFault("qubit index " + std::to_string(qubit) + " out of range (" + std::to_string(num_qubits_) +
                           " qubits allocated)");
    }
}

void TraceBackend::apply_gate(GateId gate, std::span<const double> params, std::span<const std::size_t> targets) {
    for (std::size_t t : targets) check(t);
    log_.push_back({std::string(gate_name(gate)), {params.begin(), params.end()}, {targets.begin(), targets.end()}});
}

bool TraceBackend::measure(std::size_t qubit, RngStream&) {
    check(qubit);
    log_.push_back({"mz", {}, {qubit}});
    const std::size_t i = next_bit_++;
    if (forced_.empty()) return i % 2 == 1;
    return forced_[i % forced_.size()];
}

void TraceBackend::reset(std::size_t qubit, RngStream&) {
    check(qubit);
    log_.push_back({"reset", {}, {qubit}});
}

std::vector<std::string> TraceBackend::log_lines() const {
    std::vector<std::string> out;
    out.reserve(log_.size());
    for (const auto& e : log_) out.push_back(e.to_string());
    return out;
}

}  // namespace qirvm
