#include <gtest/gtest.h>

#include <random>

#include "qir_text.hpp"
#include "qirvm/frontend.hpp"
#include "qirvm/interpreter.hpp"
#include "qirvm/recorder.hpp"

using namespace qirvm;

TEST(Recorder, HeaderThenResults) {
    ShotRecorder r;
    r.record_array(3);
    r.record_result(true);
    r.record_result(false);
    r.record_result(true);
    const ShotOutput out = r.finalize();
    EXPECT_EQ(out.bitstring, "101");
    EXPECT_EQ(out.raw_bits, (std::vector<bool>{true, false, true}));
}

TEST(Recorder, HeaderArityBreach) {
    ShotRecorder r;
    r.record_array(3);
    r.record_result(true);
    r.record_result(false);
    EXPECT_THROW(r.finalize(), RuntimeFault);
}

TEST(Recorder, HeaderOptional) {
    ShotRecorder r;
    r.record_result(false);
    r.record_result(true);
    EXPECT_EQ(r.finalize().bitstring, "01");
    EXPECT_EQ(ShotRecorder{}.finalize().bitstring, "");
}

TEST(Recorder, SecondHeaderFaults) {
    ShotRecorder r;
    r.record_array(1);
    EXPECT_THROW(r.record_array(1), RuntimeFault);
    ShotRecorder neg;
    EXPECT_THROW(neg.record_array(-1), RuntimeFault);
}

TEST(Aggregate, Counts) {
    std::vector<ShotOutput> shots;
    for (const char* s : {"00", "11", "00"}) {
        ShotOutput o;
        o.bitstring = s;
        for (char c : std::string(s)) {
            o.raw_bits.push_back(c == '1');
            o.labels.push_back(std::nullopt);
        }
        shots.push_back(o);
    }
    const RunResult r = aggregate(shots, true);
    EXPECT_EQ(r.histogram, (std::map<std::string, std::uint64_t>{{"00", 2}, {"11", 1}}));
    EXPECT_EQ(r.shots, 3u);
    EXPECT_EQ(r.per_shot, (std::vector<std::string>{"00", "11", "00"}));
    EXPECT_FALSE(r.labels.has_value());
    EXPECT_FALSE(aggregate(shots, false).per_shot.has_value());

    const std::vector<ShotOutput> empty(1024);
    EXPECT_EQ(aggregate(empty, false).histogram, (std::map<std::string, std::uint64_t>{{"", 1024}}));
}

TEST(Aggregate, MixedLengthsFault) {
    std::vector<ShotOutput> shots(2);
    shots[0].bitstring = "0";
    shots[0].raw_bits = {false};
    shots[0].labels = {std::nullopt};
    EXPECT_THROW(aggregate(shots, false), RuntimeFault);
}

TEST(Json, MinimalGolden) {
    RunResult r;
    r.program = "empty";
    r.backend = "statevector";
    r.shots = 1;
    r.rng = std::string(RngStream::kId);
    r.histogram = {{"", 1}};
    const std::string golden = R"({
  "schema": "qirvm-result/1",
  "program": "empty",
  "backend": "statevector",
  "shots": 1,
  "seed": 0,
  "rng": "mt19937_64+splitmix64/1",
  "num_qubits": 0,
  "num_results": 0,
  "labels": null,
  "histogram": {
    "": 1
  },
  "per_shot": null
}
)";
    EXPECT_EQ(emit_json(r), golden);
}

TEST(Json, SortedKeys) {
    RunResult r;
    r.shots = 6;
    r.histogram["11"] = 1;
    r.histogram["00"] = 2;
    r.histogram["10"] = 3;
    const std::string text = emit_json(r);
    const auto p00 = text.find("\"00\""), p10 = text.find("\"10\""), p11 = text.find("\"11\"");
    EXPECT_LT(p00, p10);
    EXPECT_LT(p10, p11);
}

TEST(Json, RoundTrip) {
    const ProgramModule m = parse_module(testing_support::read_fixture("teleport.ll"));
    const EntryPoint e = find_entry(m);
    RunConfig config;
    config.shots = 300;
    config.per_shot = true;
    const RunResult r = run_program(m, e, default_registry(), config);
    EXPECT_EQ(parse_run_result(emit_json(r)), r);

    const ProgramModule qpe = parse_module(testing_support::read_fixture("qpe_phi1_3_k5.ll"));
    config.per_shot = false;
    const RunResult labelled = run_program(qpe, find_entry(qpe), default_registry(), config);
    EXPECT_EQ(parse_run_result(emit_json(labelled)), labelled);
}

TEST(Json, RoundTripRandomResults) {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        RunResult r;
        r.program = "p" + std::to_string(trial);
        r.backend = trial % 2 ? "trace" : "statevector";
        r.seed = gen();
        r.rng = std::string(RngStream::kId);
        const std::size_t width = gen() % 6;
        r.num_results = width;
        r.num_qubits = width + gen() % 3;
        const std::size_t shots = 1 + gen() % 40;
        std::vector<std::string> per_shot;
        for (std::size_t s = 0; s < shots; ++s) {
            std::string bits;
            for (std::size_t b = 0; b < width; ++b) bits.push_back(gen() % 2 ? '1' : '0');
            ++r.histogram[bits];
            per_shot.push_back(bits);
        }
        r.shots = shots;
        if (trial % 3 == 0) r.per_shot = per_shot;
        if (trial % 4 == 0) {
            r.labels = std::vector<Label>(width);
            for (std::size_t b = 0; b < width; ++b)
                if (gen() % 2) (*r.labels)[b] = "r" + std::to_string(b);
        }
        EXPECT_EQ(parse_run_result(emit_json(r)), r);
    }
}

TEST(Json, RejectsSchemaViolations) {
    EXPECT_THROW(parse_run_result("{}"), std::runtime_error);
    EXPECT_THROW(parse_run_result("not json"), std::runtime_error);
    RunResult r;
    r.shots = 2;
    r.histogram = {{"0", 1}};
    EXPECT_THROW(parse_run_result(emit_json(r)), std::runtime_error);
}
