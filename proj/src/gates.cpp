#include "qirvm/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qirvm {

GateMatrix::GateMatrix(std::size_t d, std::initializer_list<Complex> values) : dim(d), entries(values) {
    if (entries.size() != d * d) throw std::invalid_argument("GateMatrix: wrong number of entries");
}

GateMatrix GateMatrix::identity(std::size_t d) {
    GateMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
}

GateMatrix GateMatrix::adjoint() const {
    GateMatrix out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) out(c, r) = std::conj((*this)(r, c));
    }
    return out;
}

GateMatrix operator*(const GateMatrix& a, const GateMatrix& b) {
    if (a.dim != b.dim) throw std::invalid_argument("GateMatrix: dimension mismatch");
    GateMatrix out(a.dim);
    for (std::size_t r = 0; r < a.dim; ++r) {
        for (std::size_t k = 0; k < a.dim; ++k) {
            const Complex x = a(r, k);
            for (std::size_t c = 0; c < a.dim; ++c) out(r, c) += x * b(k, c);
        }
    }
    return out;
}

GateMatrix kron(const GateMatrix& a, const GateMatrix& b) {
    GateMatrix out(a.dim * b.dim);
    for (std::size_t ar = 0; ar < a.dim; ++ar)
        for (std::size_t ac = 0; ac < a.dim; ++ac)
            for (std::size_t br = 0; br < b.dim; ++br)
                for (std::size_t bc = 0; bc < b.dim; ++bc)
                    out(ar * b.dim + br, ac * b.dim + bc) = a(ar, ac) * b(br, bc);
    return out;
}

double max_abs_diff(const GateMatrix& a, const GateMatrix& b) {
    if (a.dim != b.dim) throw std::invalid_argument("GateMatrix: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) worst = std::max(worst, std::abs(a.entries[i] - b.entries[i]));
    return worst;
}

namespace {

constexpr Complex I{0.0, 1.0};

GateMatrix controlled(const GateMatrix& u) {
    GateMatrix out = GateMatrix::identity(2 * u.dim);
    for (std::size_t r = 0; r < u.dim; ++r)
        for (std::size_t c = 0; c < u.dim; ++c) out(u.dim + r, u.dim + c) = u(r, c);
    return out;
}

}  // namespace

GateMatrix gate_matrix(GateId gate, std::span<const double> params) {
    if (params.size() != gate_param_count(gate)) {
        throw std::invalid_argument("gate '" + std::string(gate_name(gate)) + "' takes " +
                                    std::to_string(gate_param_count(gate)) + " parameters, got " +
                                    std::to_string(params.size()));
    }
    const double r2 = std::numbers::sqrt2 / 2.0;
    const GateMatrix x{2, {0.0, 1.0, 1.0, 0.0}};
    const GateMatrix y{2, {0.0, -I, I, 0.0}};
    const GateMatrix z{2, {1.0, 0.0, 0.0, -1.0}};
    switch (gate) {
    case GateId::H: return {2, {r2, r2, r2, -r2}};
    case GateId::X: return x;
    case GateId::Y: return y;
    case GateId::Z: return z;
    case GateId::S: return {2, {1.0, 0.0, 0.0, I}};
    case GateId::Sdg: return {2, {1.0, 0.0, 0.0, -I}};
    case GateId::SY: {
        const Complex p = Complex{0.5, 0.5};
        return {2, {p, -p, p, p}};
    }
    case GateId::T: return {2, {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4)}};
    case GateId::Tdg: return {2, {1.0, 0.0, 0.0, std::polar(1.0, -std::numbers::pi / 4)}};
    case GateId::Rx: {
        const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
        return {2, {c, -I * s, -I * s, c}};
    }
    case GateId::Ry: {
        const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
        return {2, {c, -s, s, c}};
    }
    case GateId::Rz: {
        const Complex m = std::polar(1.0, -params[0] / 2), p = std::polar(1.0, params[0] / 2);
        return {2, {m, 0.0, 0.0, p}};
    }
    case GateId::Rzz:
    case GateId::ZZ: {
        // exp(-i theta/2 Z(x)Z); ZZ fixes theta = pi/2.
        const double theta = gate == GateId::Rzz ? params[0] : std::numbers::pi / 2;
        const Complex m = std::polar(1.0, -theta / 2), p = std::polar(1.0, theta / 2);
        GateMatrix out(4);
        out(0, 0) = m;
        out(1, 1) = p;
        out(2, 2) = p;
        out(3, 3) = m;
        return out;
    }
    case GateId::XX: {
        // exp(-i pi/4 X(x)X) = (I - i X(x)X) / sqrt(2)
        GateMatrix out(4);
        for (std::size_t i = 0; i < 4; ++i) {
            out(i, i) = r2;
            out(i, 3 - i) = -I * r2;
        }
        return out;
    }
    case GateId::CNOT: return controlled(x);
    case GateId::CY: return controlled(y);
    case GateId::CZ: return controlled(z);
    case GateId::CCNOT: return controlled(controlled(x));
    case GateId::SWAP: return {4, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0}};
    }
    throw std::invalid_argument("unknown gate");
}

std::vector<double> qpe_reference_distribution(double phi, unsigned k) {
    if (k > 20) throw std::invalid_argument("qpe_reference_distribution: k must be <= 20");
    const std::size_t outcomes = std::size_t{1} << k;
    const double scale = static_cast<double>(outcomes);
    std::vector<double> probs(outcomes);
    for (std::size_t m = 0; m < outcomes; ++m) {
        const double delta = phi - static_cast<double>(m) / scale;
        if (delta == 0.0) {
            probs[m] = 1.0;
            continue;
        }
        const double num = std::sin(scale * std::numbers::pi * delta);
        const double den = std::sin(std::numbers::pi * delta);
        probs[m] = (num * num) / (scale * scale * den * den);
    }
    return probs;
}

}  // namespace qirvm
