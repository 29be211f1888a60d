#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qirvm {

struct SourceLoc {
    int line = 0;
    int column = 0;

    friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

std::string to_string(const SourceLoc& loc);

// Raised by the frontend for anything outside the accepted QIR subset.
class ParseError : public std::runtime_error {
  public:
    ParseError(SourceLoc loc, std::string message, std::string expected = {});

    const SourceLoc& loc() const noexcept { return loc_; }
    const std::string& detail() const noexcept { return detail_; }
    const std::string& expected() const noexcept { return expected_; }

  private:
    SourceLoc loc_;
    std::string detail_;
    std::string expected_;
};

class EntryError : public std::runtime_error {
  public:
    enum class Kind { NoEntry, AmbiguousEntry, MissingCounts, InvalidCount };

    EntryError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

  private:
    Kind kind_;
};

// Anything that goes wrong while a shot is executing.
class RuntimeFault : public std::runtime_error {
  public:
    explicit RuntimeFault(const std::string& message, std::optional<SourceLoc> loc = std::nullopt)
        : std::runtime_error(message), message_(message), loc_(loc) {}

    RuntimeFault with_shot(std::size_t shot) const;

    const std::string& message() const noexcept { return message_; }
    const std::optional<SourceLoc>& loc() const noexcept { return loc_; }
    const std::optional<std::size_t>& shot() const noexcept { return shot_; }

  private:
    std::string message_;
    std::optional<SourceLoc> loc_;
    std::optional<std::size_t> shot_;
};

class UnknownBackend : public std::runtime_error {
  public:
    UnknownBackend(const std::string& name, std::vector<std::string> available);

    const std::vector<std::string>& available() const noexcept { return available_; }

  private:
    std::vector<std::string> available_;
};

}  // namespace qirvm
