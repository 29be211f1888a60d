#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "qir_text.hpp"
#include "qirvm/backend.hpp"
#include "qirvm/frontend.hpp"
#include "qirvm/interpreter.hpp"
#include "qirvm/statevector.hpp"
#include "qirvm/trace_backend.hpp"

using namespace qirvm;

namespace {

void apply(Statevector& sv, GateId g, std::vector<std::size_t> targets, std::vector<double> params = {}) {
    sv.apply(g, params, targets);
}

double max_deviation(std::span<const Complex> a, const std::vector<oracle::C>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST(Statevector, InitialState) {
    Statevector sv(3);
    const auto p = sv.probabilities();
    ASSERT_EQ(p.size(), 8u);
    EXPECT_EQ(p[0], 1.0);
    for (std::size_t i = 1; i < p.size(); ++i) EXPECT_EQ(p[i], 0.0);
}

TEST(Statevector, HadamardOnZero) {
    Statevector sv(1);
    apply(sv, GateId::H, {0});
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(sv.amplitudes()[0] - Complex(r)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(sv.amplitudes()[1] - Complex(r)), 0.0, 1e-15);
}

TEST(Statevector, BellState) {
    Statevector sv(2);
    apply(sv, GateId::H, {0});
    apply(sv, GateId::CNOT, {0, 1});
    const auto p = sv.probabilities();
    EXPECT_NEAR(p[0], 0.5, 1e-12);
    EXPECT_NEAR(p[1], 0.0, 1e-12);
    EXPECT_NEAR(p[2], 0.0, 1e-12);
    EXPECT_NEAR(p[3], 0.5, 1e-12);
}

TEST(Statevector, LittleEndianQubitOrder) {
    Statevector sv(3);
    apply(sv, GateId::X, {0});
    apply(sv, GateId::X, {2});
    EXPECT_EQ(sv.probabilities()[5], 1.0);
    // CNOT with control q2 flips q1: |101> -> |111>.
    apply(sv, GateId::CNOT, {2, 1});
    EXPECT_EQ(sv.probabilities()[7], 1.0);
}

TEST(Statevector, RejectsBadTargets) {
    Statevector sv(2);
    EXPECT_THROW(apply(sv, GateId::CNOT, {1, 1}), RuntimeFault);
    EXPECT_THROW(apply(sv, GateId::H, {2}), RuntimeFault);
    EXPECT_THROW(apply(sv, GateId::H, {0, 1}), RuntimeFault);
    EXPECT_THROW(apply(sv, GateId::Rx, {0}), RuntimeFault);
    EXPECT_THROW(Statevector(25), RuntimeFault);
    EXPECT_NO_THROW(Statevector(3, 3));
}

TEST(Statevector, MatchesDenseOracle) {
    std::mt19937_64 gen(31337);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const auto circuit = oracle::random_circuit(gen, n, 200);
        Statevector sv(n);
        for (const auto& op : circuit.ops) {
            sv.apply(op.gate, op.params, op.targets);
            ASSERT_NEAR(sv.norm_squared(), 1.0, 1e-10);
        }
        EXPECT_LT(max_deviation(sv.amplitudes(), oracle::simulate(circuit)), 1e-9) << "n=" << n;
    }
}

TEST(Statevector, AdjointCancellation) {
    std::mt19937_64 gen(8);
    const auto prefix = oracle::random_circuit(gen, 3, 40);
    Statevector sv(3);
    for (const auto& op : prefix.ops) sv.apply(op.gate, op.params, op.targets);
    const std::vector<Complex> before(sv.amplitudes().begin(), sv.amplitudes().end());
    const std::pair<GateId, GateId> pairs[] = {{GateId::X, GateId::X},     {GateId::Y, GateId::Y},
                                               {GateId::Z, GateId::Z},     {GateId::H, GateId::H},
                                               {GateId::S, GateId::Sdg},   {GateId::T, GateId::Tdg},
                                               {GateId::SWAP, GateId::SWAP}};
    for (auto [g, inv] : pairs) {
        std::vector<std::size_t> targets = gate_qubit_count(g) == 1 ? std::vector<std::size_t>{1}
                                                                      : std::vector<std::size_t>{2, 0};
        sv.apply(g, {}, targets);
        sv.apply(inv, {}, targets);
        double worst = 0.0;
        for (std::size_t i = 0; i < before.size(); ++i) worst = std::max(worst, std::abs(sv.amplitudes()[i] - before[i]));
        EXPECT_LT(worst, 1e-10) << gate_name(g);
    }
}

TEST(Statevector, MeasureDeterministic) {
    Statevector sv(1);
    apply(sv, GateId::X, {0});
    RngStream rng(1);
    for (int i = 0; i < 10; ++i) {
        EXPECT_TRUE(sv.measure(0, rng));
        EXPECT_EQ(sv.probabilities()[1], 1.0);
    }
}

TEST(Statevector, PlusStateIsFairCoin) {
    int ones = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        Statevector sv(1);
        apply(sv, GateId::H, {0});
        RngStream rng = RngStream::for_shot(0, i);
        ones += sv.measure(0, rng);
    }
    const double freq = static_cast<double>(ones) / trials;
    EXPECT_GE(freq, 0.48);
    EXPECT_LE(freq, 0.52);
}

TEST(Statevector, GhzCorrelation) {
    for (int shot = 0; shot < 200; ++shot) {
        Statevector sv(3);
        apply(sv, GateId::H, {0});
        apply(sv, GateId::CNOT, {0, 1});
        apply(sv, GateId::CNOT, {1, 2});
        RngStream rng = RngStream::for_shot(17, shot);
        const bool a = sv.measure(0, rng);
        EXPECT_EQ(sv.measure(1, rng), a);
        EXPECT_EQ(sv.measure(2, rng), a);
        EXPECT_NEAR(sv.norm_squared(), 1.0, 1e-10);
    }
}

TEST(Statevector, ResetCases) {
    RngStream rng(4);
    Statevector one(1);
    apply(one, GateId::X, {0});
    one.reset(0, rng);
    EXPECT_EQ(one.probabilities()[0], 1.0);

    Statevector zero(2);
    apply(zero, GateId::H, {1});
    const std::vector<Complex> before(zero.amplitudes().begin(), zero.amplitudes().end());
    zero.reset(0, rng);
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(zero.amplitudes()[i], before[i]);

    for (int shot = 0; shot < 50; ++shot) {
        Statevector bell(2);
        apply(bell, GateId::H, {0});
        apply(bell, GateId::CNOT, {0, 1});
        RngStream r = RngStream::for_shot(0, shot);
        bell.reset(0, r);
        EXPECT_NEAR(bell.probability_one(0), 0.0, 1e-12);
        const double p1 = bell.probability_one(1);
        EXPECT_TRUE(std::abs(p1) < 1e-12 || std::abs(p1 - 1.0) < 1e-12) << p1;
        EXPECT_NEAR(bell.norm_squared(), 1.0, 1e-10);
    }
}

TEST(Statevector, MeasureUsesOneDraw) {
    Statevector sv(2);
    apply(sv, GateId::H, {0});
    apply(sv, GateId::H, {1});
    RngStream a(123), b(123);
    sv.measure(0, a);
    b.next();
    EXPECT_EQ(a.next(), b.next());
}

TEST(Statevector, QpeMarginalsMatchReference) {
    const ProgramModule m = parse_module(testing_support::read_fixture("qpe_phi1_3_k5.ll"));
    const Registry reg = default_registry();
    Statevector sv(6);
    ExecEnv env;
    for (const auto& inst : m.functions[0].blocks[0].instructions) {
        const auto* call = std::get_if<CallInst>(&inst.op);
        if (!call) continue;
        const OpSpec* spec = reg.find(call->callee);
        if (!spec || spec->kind != OpKind::Gate) continue;
        std::vector<double> params;
        std::vector<std::size_t> targets;
        for (std::size_t i = 0; i < call->args.size(); ++i) {
            const RuntimeValue v = eval_operand(env, call->args[i]);
            if (i < spec->num_params)
                params.push_back(std::get<double>(v));
            else
                targets.push_back(std::get<PointerIndex>(v).value);
        }
        sv.apply(*spec->gate_id, params, targets);
    }
    const auto probs = sv.probabilities();
    const auto reference = qpe_reference_distribution(1.0 / 3.0, 5);
    for (std::size_t outcome = 0; outcome < 32; ++outcome) {
        const double marginal = probs[outcome] + probs[outcome | 32];
        EXPECT_NEAR(marginal, reference[outcome], 1e-9) << outcome;
    }
}

TEST(Backends, Factory) {
    EXPECT_EQ(create_backend("statevector")->name(), "statevector");
    EXPECT_EQ(create_backend("trace")->name(), "trace");
    try {
        create_backend("xacc");
        FAIL() << "expected UnknownBackend";
    } catch (const UnknownBackend& e) {
        EXPECT_EQ(e.available(), (std::vector<std::string>{"statevector", "trace"}));
        EXPECT_NE(std::string(e.what()).find("statevector"), std::string::npos);
    }
    auto a = create_backend("statevector");
    auto b = create_backend("statevector");
    EXPECT_NE(a.get(), b.get());
}

TEST(Backends, StatevectorBackendRequiresAllocate) {
    StatevectorBackend backend;
    const std::size_t q[] = {0};
    EXPECT_THROW(backend.apply_gate(GateId::X, {}, q), RuntimeFault);
    backend.allocate(1);
    backend.apply_gate(GateId::X, {}, q);
    EXPECT_EQ(backend.state().probabilities()[1], 1.0);
    backend.allocate(1);
    EXPECT_EQ(backend.state().probabilities()[0], 1.0);
}
