#include "qirvm/backend.hpp"

#include <stdexcept>

#include "qirvm/errors.hpp"
#include "qirvm/statevector.hpp"
#include "qirvm/trace_backend.hpp"

namespace qirvm {

void BackendFactory::register_backend(std::string name, Creator creator) {
    if (name.empty()) throw std::invalid_argument("backend name must not be empty");
    creators_.insert_or_assign(std::move(name), std::move(creator));
}

std::unique_ptr<Backend> BackendFactory::create(std::string_view name) const {
    auto it = creators_.find(name);
    if (it == creators_.end()) throw UnknownBackend(std::string(name), names());
    return it->second();
}

bool BackendFactory::contains(std::string_view name) const { return creators_.find(name) != creators_.end(); }

std::vector<std::string> BackendFactory::names() const {
    std::vector<std::string> out;
    for (const auto& [name, creator] : creators_) out.push_back(name);
    return out;
}

const BackendFactory& default_backends() {
    static const BackendFactory factory = [] {
        BackendFactory f;
        f.register_backend("statevector", [] { return std::make_unique<StatevectorBackend>(); });
        f.register_backend("trace", [] { return std::make_unique<TraceBackend>(); });
        return f;
    }();
    return factory;
}

std::unique_ptr<Backend> create_backend(std::string_view name) { return default_backends().create(name); }

}  // namespace qirvm
