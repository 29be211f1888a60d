#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qirvm {

using Label = std::optional<std::string>;

struct ShotOutput {
    std::string bitstring;  // record-call order, left to right
    std::vector<bool> raw_bits;
    std::vector<Label> labels;  // parallel to raw_bits

    friend bool operator==(const ShotOutput&, const ShotOutput&) = default;
};

// Collects the output-recording calls of a single shot.
class ShotRecorder {
  public:
    // At most one array header per shot.
    void record_array(std::int64_t length, Label label = std::nullopt);
    void record_result(bool bit, Label label = std::nullopt);

    // Fails if an array header declared a different number of results.
    ShotOutput finalize() const;

    std::optional<std::size_t> declared_length() const noexcept { return declared_len_; }
    std::size_t size() const noexcept { return bits_.size(); }

  private:
    std::optional<std::size_t> declared_len_;
    std::vector<bool> bits_;
    std::vector<Label> labels_;
};

struct RunResult {
    std::string program;
    std::string backend;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::string rng;
    std::uint64_t num_qubits = 0;
    std::uint64_t num_results = 0;
    std::optional<std::vector<Label>> labels;
    std::map<std::string, std::uint64_t> histogram;
    std::optional<std::vector<std::string>> per_shot;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

inline constexpr std::string_view kResultSchema = "qirvm-result/1";

// Builds histogram, labels and (optionally) per-shot list; metadata fields
// are left for the caller. Faults if bitstring lengths or labels differ
// between shots.
RunResult aggregate(std::span<const ShotOutput> shots, bool keep_per_shot);

// Fixed key order, sorted histogram keys, two-space indent, trailing LF.
std::string emit_json(const RunResult& result);

// Inverse of emit_json. Throws std::runtime_error on schema violations.
RunResult parse_run_result(std::string_view json);

}  // namespace qirvm
