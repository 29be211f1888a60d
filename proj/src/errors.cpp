#include "qirvm/errors.hpp"

namespace qirvm {

std::string to_string(const SourceLoc& loc) {
    return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

ParseError::ParseError(SourceLoc loc, std::string message, std::string expected)
    : std::runtime_error("line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column) + ": " +
                         message),
      loc_(loc),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

RuntimeFault RuntimeFault::with_shot(std::size_t shot) const {
    RuntimeFault fault("shot " + std::to_string(shot) + ": " + message_, loc_);
    fault.message_ = message_;
    fault.shot_ = shot;
    return fault;
}

namespace {
std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}
}  // namespace

UnknownBackend::UnknownBackend(const std::string& name, std::vector<std::string> available)
    : std::runtime_error("unknown backend '" + name + "' (available: " + join_names(available) + ")"),
      available_(std::move(available)) {}

}  // namespace qirvm
