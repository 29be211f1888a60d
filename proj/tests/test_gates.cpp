#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "dense_oracle.hpp"
#include "qirvm/gates.hpp"

using namespace qirvm;

namespace {

GateMatrix from_oracle(const oracle::Matrix& m) {
    GateMatrix out(m.size());
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m.size(); ++c) out(r, c) = m[r][c];
    return out;
}

GateMatrix matrix_of(GateId g, double theta = 0.0) {
    if (gate_param_count(g) == 0) return gate_matrix(g);
    const double p[] = {theta};
    return gate_matrix(g, p);
}

double unitarity_error(const GateMatrix& u) {
    return max_abs_diff(u * u.adjoint(), GateMatrix::identity(u.dim));
}

}  // namespace

TEST(Gates, AllUnitary) {
    for (GateId g : kAllGates) EXPECT_LT(unitarity_error(matrix_of(g, 0.7)), 1e-12) << gate_name(g);
}

TEST(Gates, RandomParameterUnitarity) {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (GateId g : {GateId::Rx, GateId::Ry, GateId::Rz, GateId::Rzz}) {
        for (int i = 0; i < 200; ++i) EXPECT_LT(unitarity_error(matrix_of(g, angle(gen))), 1e-12) << gate_name(g);
    }
}

TEST(Gates, MatchTextbookMatrices) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> angle(-7.0, 7.0);
    for (GateId g : kAllGates) {
        const double theta = angle(gen);
        EXPECT_LT(max_abs_diff(matrix_of(g, theta), from_oracle(oracle::textbook(g, theta))), 1e-15) << gate_name(g);
        EXPECT_EQ(matrix_of(g, theta).dim, std::size_t{1} << gate_qubit_count(g));
    }
}

TEST(Gates, AdjointPairs) {
    const auto id = GateMatrix::identity(2);
    EXPECT_LT(max_abs_diff(gate_matrix(GateId::S) * gate_matrix(GateId::Sdg), id), 1e-12);
    EXPECT_LT(max_abs_diff(gate_matrix(GateId::T) * gate_matrix(GateId::Tdg), id), 1e-12);
    EXPECT_LT(max_abs_diff(gate_matrix(GateId::T) * gate_matrix(GateId::T), gate_matrix(GateId::S)), 1e-12);
    for (GateId g : {GateId::X, GateId::Y, GateId::Z, GateId::H}) {
        EXPECT_LT(max_abs_diff(gate_matrix(g) * gate_matrix(g), id), 1e-12) << gate_name(g);
    }
    EXPECT_LT(max_abs_diff(gate_matrix(GateId::SWAP) * gate_matrix(GateId::SWAP), GateMatrix::identity(4)), 1e-12);
}

TEST(Gates, SySquaredIsY) {
    EXPECT_LT(max_abs_diff(gate_matrix(GateId::SY) * gate_matrix(GateId::SY), gate_matrix(GateId::Y)), 1e-12);
}

TEST(Gates, RzZeroIsIdentity) {
    EXPECT_EQ(matrix_of(GateId::Rz, 0.0).entries, GateMatrix::identity(2).entries);
}

TEST(Gates, RzzDecomposition) {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> angle(-2 * std::numbers::pi, 2 * std::numbers::pi);
    const GateMatrix cnot = gate_matrix(GateId::CNOT);
    for (int i = 0; i < 20; ++i) {
        const double theta = angle(gen);
        const GateMatrix rhs = cnot * kron(GateMatrix::identity(2), matrix_of(GateId::Rz, theta)) * cnot;
        EXPECT_LT(max_abs_diff(matrix_of(GateId::Rzz, theta), rhs), 1e-12) << theta;
    }
}

TEST(Gates, FixedAngleEntanglers) {
    EXPECT_LT(max_abs_diff(gate_matrix(GateId::ZZ), matrix_of(GateId::Rzz, std::numbers::pi / 2)), 1e-15);
    // XX = (H (x) H) ZZ (H (x) H).
    const GateMatrix hh = kron(gate_matrix(GateId::H), gate_matrix(GateId::H));
    EXPECT_LT(max_abs_diff(gate_matrix(GateId::XX), hh * gate_matrix(GateId::ZZ) * hh), 1e-12);
}

TEST(Gates, WrongParameterCount) {
    EXPECT_THROW(gate_matrix(GateId::Rx), std::invalid_argument);
    const double p[] = {1.0};
    EXPECT_THROW(gate_matrix(GateId::H, p), std::invalid_argument);
}

TEST(QpeReference, ExactPhase) {
    const auto p = qpe_reference_distribution(5.0 / 32.0, 5);
    ASSERT_EQ(p.size(), 32u);
    for (std::size_t m = 0; m < p.size(); ++m) EXPECT_NEAR(p[m], m == 5 ? 1.0 : 0.0, 1e-12) << m;
}

TEST(QpeReference, OneThird) {
    const auto p = qpe_reference_distribution(1.0 / 3.0, 5);
    std::vector<std::size_t> order(p.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return p[a] > p[b]; });
    EXPECT_EQ(order[0], 11u);
    EXPECT_EQ(order[1], 10u);
    EXPECT_NEAR(p[11], 0.684, 5e-4);
    EXPECT_NEAR(p[10], 0.171, 5e-4);
    double sum = 0.0;
    for (double v : p) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(QpeReference, SumsToOne) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> phase(0.0, 1.0);
    for (unsigned k = 1; k <= 8; ++k) {
        const auto p = qpe_reference_distribution(phase(gen), k);
        double sum = 0.0;
        for (double v : p) sum += v;
        EXPECT_NEAR(sum, 1.0, 1e-12) << k;
    }
    EXPECT_THROW(qpe_reference_distribution(0.5, 21), std::invalid_argument);
}
