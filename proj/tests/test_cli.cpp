#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "qir_text.hpp"
#include "qirvm/cli.hpp"

using namespace qirvm::cli;
using testing_support::fixture_path;
using testing_support::TempFile;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "qirvm");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

CliArgs parsed(std::vector<std::string> args) {
    args.insert(args.begin(), "qirvm");
    std::ostringstream out, err;
    auto r = parse_args(args, out, err);
    if (!std::holds_alternative<CliArgs>(r)) throw std::runtime_error("parse failed: " + err.str());
    return std::get<CliArgs>(r);
}

int parse_code(std::vector<std::string> args) {
    args.insert(args.begin(), "qirvm");
    std::ostringstream out, err;
    auto r = parse_args(args, out, err);
    return std::holds_alternative<CliExit>(r) ? std::get<CliExit>(r).code : -1;
}

}  // namespace

TEST(CliArgs, Defaults) {
    const CliArgs a = parsed({"run", "t.ll"});
    EXPECT_EQ(a.input_path, "t.ll");
    EXPECT_EQ(a.shots, 1024u);
    EXPECT_EQ(a.seed, 0u);
    EXPECT_EQ(a.backend, "statevector");
    EXPECT_FALSE(a.entry.has_value());
    EXPECT_FALSE(a.output.has_value());
    EXPECT_FALSE(a.per_shot);
    EXPECT_FALSE(a.validate_only);
}

TEST(CliArgs, AllFlags) {
    const CliArgs a = parsed({"run", "t.ll", "--shots", "1", "--seed", "7", "--backend", "trace", "--entry", "f",
                              "--output", "o.json", "--per-shot", "--validate-only"});
    EXPECT_EQ(a.shots, 1u);
    EXPECT_EQ(a.seed, 7u);
    EXPECT_EQ(a.backend, "trace");
    EXPECT_EQ(a.entry, "f");
    EXPECT_EQ(a.output, "o.json");
    EXPECT_TRUE(a.per_shot);
    EXPECT_TRUE(a.validate_only);
}

TEST(CliArgs, UsageErrors) {
    EXPECT_EQ(parse_code({"run", "--shots", "0", "t.ll"}), kExitUsage);
    EXPECT_EQ(parse_code({"run", "t.ll", "--shots", "-3"}), kExitUsage);
    EXPECT_EQ(parse_code({"run", "t.ll", "--bogus"}), kExitUsage);
    EXPECT_EQ(parse_code({"run"}), kExitUsage);
    EXPECT_EQ(parse_code({}), kExitUsage);
    EXPECT_EQ(parse_code({"--help"}), kExitOk);
    EXPECT_EQ(parse_code({"--version"}), kExitOk);
}

TEST(Cli, TeleportDefaults) {
    const auto r = invoke({"run", fixture_path("teleport.ll")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(r.err.empty());
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["shots"], 1024);
    EXPECT_EQ(j["backend"], "statevector");
    EXPECT_EQ(j["seed"], 0);
    std::uint64_t total = 0;
    for (const auto& [key, count] : j["histogram"].items()) {
        EXPECT_EQ(key.size(), 3u);
        total += count.get<std::uint64_t>();
    }
    EXPECT_EQ(total, 1024u);
}

TEST(Cli, ValidateOnly) {
    const auto r = invoke({"run", fixture_path("teleport.ll"), "--validate-only"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_TRUE(r.out.empty());
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, PhiIsParseError) {
    TempFile f("phi.ll", testing_support::kPhiProgram);
    const auto r = invoke({"run", f.path()});
    EXPECT_EQ(r.code, kExitParse);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find(":" + std::to_string(testing_support::kPhiLine) + ":"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("phi"), std::string::npos) << r.err;
}

TEST(Cli, UnknownQisIsValidationError) {
    TempFile f("foo.ll", testing_support::kUnknownQis);
    const auto r = invoke({"run", f.path()});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE(r.err.find("unresolved QIS function"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UnmeasuredReadIsRuntimeFault) {
    TempFile f("unmeasured.ll", testing_support::kUnmeasuredRead);
    const auto r = invoke({"run", f.path()});
    EXPECT_EQ(r.code, kExitRuntime);
    EXPECT_NE(r.err.find("use of unmeasured result"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, MissingInput) {
    const auto r = invoke({"run", "/nonexistent/dir/x.ll"});
    EXPECT_EQ(r.code, kExitNoInput);
}

TEST(Cli, UnwritableOutput) {
    const auto r = invoke({"run", fixture_path("teleport.ll"), "--shots", "4", "--output", "/nonexistent/dir/o.json"});
    EXPECT_EQ(r.code, kExitCantCreate);
}

TEST(Cli, OutputFile) {
    TempFile out("out.json", "");
    const auto r = invoke({"run", fixture_path("teleport.ll"), "--shots", "8", "--per-shot", "--output", out.path()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    const auto j = nlohmann::json::parse(testing_support::read_file(out.path()));
    EXPECT_EQ(j["per_shot"].size(), 8u);
}

TEST(Cli, EntryErrors) {
    const auto r = invoke({"run", fixture_path("teleport.ll"), "--entry", "nope"});
    EXPECT_EQ(r.code, kExitValidation);
    TempFile f("noentry.ll", "define void @f() {\nentry:\n  ret void\n}\n");
    EXPECT_EQ(invoke({"run", f.path()}).code, kExitValidation);
    EXPECT_EQ(invoke({"run", f.path(), "--entry", "f", "--shots", "2"}).code, kExitOk);
}

TEST(Cli, UnknownBackend) {
    const auto r = invoke({"run", fixture_path("teleport.ll"), "--backend", "xacc"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("statevector"), std::string::npos);
}

TEST(Cli, SeedsAreReproducible) {
    const auto a = invoke({"run", fixture_path("teleport.ll"), "--shots", "50", "--seed", "3", "--per-shot"});
    const auto b = invoke({"run", fixture_path("teleport.ll"), "--shots", "50", "--seed", "3", "--per-shot"});
    const auto c = invoke({"run", fixture_path("teleport.ll"), "--shots", "50", "--seed", "4", "--per-shot"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
}
