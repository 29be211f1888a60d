#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qirvm/registry.hpp"

namespace qirvm {

using Complex = std::complex<double>;

// Dense d x d unitary, row-major. For multi-qubit gates the first target
// qubit is the most significant bit of the row/column index, so CNOT with
// targets (control, target) is the textbook block matrix diag(I, X).
struct GateMatrix {
    std::size_t dim = 0;
    std::vector<Complex> entries;

    GateMatrix() = default;
    explicit GateMatrix(std::size_t d) : dim(d), entries(d * d) {}
    GateMatrix(std::size_t d, std::initializer_list<Complex> values);

    static GateMatrix identity(std::size_t d);

    Complex& operator()(std::size_t row, std::size_t col) { return entries[row * dim + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return entries[row * dim + col]; }

    GateMatrix adjoint() const;
    friend GateMatrix operator*(const GateMatrix& a, const GateMatrix& b);
};

// Kronecker product; a acts on the more significant qubits.
GateMatrix kron(const GateMatrix& a, const GateMatrix& b);

// Largest |(A - B)_ij|.
double max_abs_diff(const GateMatrix& a, const GateMatrix& b);

// Throws std::invalid_argument when params.size() != gate_param_count(gate).
GateMatrix gate_matrix(GateId gate, std::span<const double> params = {});

// Distribution of the k-bit readout of phase estimation for eigenphase phi:
//   P(m) = sin^2(2^k pi d) / (4^k sin^2(pi d)),  d = phi - m / 2^k,
// with P(m) = 1 when d == 0.
std::vector<double> qpe_reference_distribution(double phi, unsigned k);

}  // namespace qirvm
