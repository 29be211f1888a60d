#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qirvm/registry.hpp"
#include "qirvm/rng.hpp"

namespace qirvm {

// Execution target for one shot. After allocate(n), qubits 0..n-1 are valid
// and in |0>. measure and reset are the only non-unitary operations.
// Failures are reported as RuntimeFault.
class Backend {
  public:
    virtual ~Backend() = default;

    virtual std::string_view name() const = 0;
    virtual void allocate(std::size_t num_qubits) = 0;
    virtual void apply_gate(GateId gate, std::span<const double> params, std::span<const std::size_t> targets) = 0;
    virtual bool measure(std::size_t qubit, RngStream& rng) = 0;
    virtual void reset(std::size_t qubit, RngStream& rng) = 0;
};

// Name -> constructor table for backends. create() returns a fresh instance.
class BackendFactory {
  public:
    using Creator = std::function<std::unique_ptr<Backend>()>;

    void register_backend(std::string name, Creator creator);
    std::unique_ptr<Backend> create(std::string_view name) const;
    bool contains(std::string_view name) const;
    std::vector<std::string> names() const;

  private:
    std::map<std::string, Creator, std::less<>> creators_;
};

// "statevector" and "trace".
const BackendFactory& default_backends();

std::unique_ptr<Backend> create_backend(std::string_view name);

}  // namespace qirvm
