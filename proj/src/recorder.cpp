#include "qirvm/recorder.hpp"

#include <json.hpp>
#include <stdexcept>

#include "qirvm/errors.hpp"

namespace qirvm {

void ShotRecorder::record_array(std::int64_t length, Label label) {
    (void)label;
    if (declared_len_) throw RuntimeFault("second array_record_output header in one shot");
    if (length < 0) throw RuntimeFault("array_record_output with negative length " + std::to_string(length));
    declared_len_ = static_cast<std::size_t>(length);
}

void ShotRecorder::record_result(bool bit, Label label) {
    bits_.push_back(bit);
    labels_.push_back(std::move(label));
}

ShotOutput ShotRecorder::finalize() const {
    if (declared_len_ && *declared_len_ != bits_.size()) {
        throw RuntimeFault("array_record_output declared " + std::to_string(*declared_len_) + " results but " +
                           std::to_string(bits_.size()) + " were recorded");
    }
    ShotOutput out;
    out.raw_bits = bits_;
    out.labels = labels_;
    out.bitstring.reserve(bits_.size());
    for (bool b : bits_) out.bitstring.push_back(b ? '1' : '0');
    return out;
}

RunResult aggregate(std::span<const ShotOutput> shots, bool keep_per_shot) {
    RunResult result;
    result.shots = shots.size();
    if (keep_per_shot) result.per_shot.emplace();
    for (std::size_t i = 0; i < shots.size(); ++i) {
        const ShotOutput& s = shots[i];
        if (s.bitstring.size() != shots[0].bitstring.size()) {
            throw RuntimeFault("shot " + std::to_string(i) + " recorded " + std::to_string(s.bitstring.size()) +
                               " results but shot 0 recorded " + std::to_string(shots[0].bitstring.size()));
        }
        if (s.labels != shots[0].labels) {
            throw RuntimeFault("shot " + std::to_string(i) + " recorded different output labels than shot 0");
        }
        ++result.histogram[s.bitstring];
        if (keep_per_shot) result.per_shot->push_back(s.bitstring);
    }
    if (!shots.empty()) {
        const auto& labels = shots[0].labels;
        bool any = false;
        for (const auto& l : labels) any = any || l.has_value();
        if (any) result.labels = labels;
    }
    return result;
}

std::string emit_json(const RunResult& r) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["schema"] = kResultSchema;
    doc["program"] = r.program;
    doc["backend"] = r.backend;
    doc["shots"] = r.shots;
    doc["seed"] = r.seed;
    doc["rng"] = r.rng;
    doc["num_qubits"] = r.num_qubits;
    doc["num_results"] = r.num_results;
    if (r.labels) {
        ordered_json labels = ordered_json::array();
        for (const auto& l : *r.labels) labels.push_back(l ? ordered_json(*l) : ordered_json(nullptr));
        doc["labels"] = std::move(labels);
    } else {
        doc["labels"] = nullptr;
    }
    ordered_json hist = ordered_json::object();
    for (const auto& [bits, count] : r.histogram) hist[bits] = count;
    doc["histogram"] = std::move(hist);
    if (r.per_shot) {
        doc["per_shot"] = *r.per_shot;
    } else {
        doc["per_shot"] = nullptr;
    }
    return doc.dump(2) + "\n";
}

RunResult parse_run_result(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("invalid result JSON: ") + e.what());
    }
    try {
        if (doc.at("schema").get<std::string>() != kResultSchema) {
            throw std::runtime_error("unsupported result schema '" + doc.at("schema").get<std::string>() + "'");
        }
        RunResult r;
        r.program = doc.at("program").get<std::string>();
        r.backend = doc.at("backend").get<std::string>();
        r.shots = doc.at("shots").get<std::uint64_t>();
        r.seed = doc.at("seed").get<std::uint64_t>();
        r.rng = doc.at("rng").get<std::string>();
        r.num_qubits = doc.at("num_qubits").get<std::uint64_t>();
        r.num_results = doc.at("num_results").get<std::uint64_t>();
        if (!doc.at("labels").is_null()) {
            r.labels.emplace();
            for (const auto& l : doc.at("labels")) {
                r.labels->push_back(l.is_null() ? Label{} : Label{l.get<std::string>()});
            }
        }
        for (const auto& [bits, count] : doc.at("histogram").items()) r.histogram[bits] = count.get<std::uint64_t>();
        if (!doc.at("per_shot").is_null()) r.per_shot = doc.at("per_shot").get<std::vector<std::string>>();
        std::uint64_t total = 0;
        for (const auto& [bits, count] : r.histogram) total += count;
        if (total != r.shots) {
            throw std::runtime_error("histogram counts sum to " + std::to_string(total) + ", expected " +
                                     std::to_string(r.shots) + " shots");
        }
        if (r.per_shot && r.per_shot->size() != r.shots) throw std::runtime_error("per_shot length differs from shots");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed result JSON: ") + e.what());
    }
}

}  // namespace qirvm
