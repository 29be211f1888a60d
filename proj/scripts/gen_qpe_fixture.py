#!/usr/bin/env python3
"""Generate the checked-in QPE fixture (tests/fixtures/qpe_phi1_3_k5.ll).

Estimates phi = 1/3 with k = 5 counting qubits and one eigenstate qubit
(n = 6). Controlled phases are decomposed into rz/cnot since the default
gate set has no controlled-phase gate. Angles are written in LLVM hex
double form and pointers use the opaque `ptr` spelling.

Run once; the output is committed. Pass --check to simulate the emitted
gate list with numpy and compare against the closed-form distribution.
"""

import argparse
import math
import struct
import sys
from pathlib import Path

PHI = 1.0 / 3.0
K = 5
EIGEN = K  # eigenstate qubit index
NUM_QUBITS = K + 1


def hex_double(value):
    bits = struct.unpack("<Q", struct.pack("<d", value))[0]
    return "0x%016X" % bits


def controlled_phase(ops, lam, control, target):
    # diag(1,1,1,e^{i lam}) up to global phase.
    ops.append(("rz", lam / 2, [control]))
    ops.append(("cnot", None, [control, target]))
    ops.append(("rz", -lam / 2, [target]))
    ops.append(("cnot", None, [control, target]))
    ops.append(("rz", lam / 2, [target]))


def build_gates():
    ops = [("x", None, [EIGEN])]
    for j in range(K):
        ops.append(("h", None, [j]))
    for j in range(K):
        controlled_phase(ops, 2 * math.pi * PHI * (2 ** j), j, EIGEN)
    # inverse QFT, little-endian register (qubit j carries bit j)
    for q in range(K // 2):
        ops.append(("swap", None, [q, K - q - 1]))
    for j in range(K):
        for m in range(j):
            controlled_phase(ops, -math.pi / (2 ** (j - m)), m, j)
        ops.append(("h", None, [j]))
    return ops


def qubit(i):
    if i == 0:
        return "ptr null"
    return "ptr inttoptr (i64 %d to ptr)" % i


def render(ops):
    out = []
    out.append("; ModuleID = 'qpe'")
    out.append('source_filename = "qpe"')
    out.append("")
    for j in reversed(range(K)):
        label = "r%d" % j
        out.append('@%d = internal constant [%d x i8] c"%s\\00"' % (K - 1 - j, len(label) + 1, label))
    out.append("")
    out.append("define void @main() #0 {")
    out.append("entry:")
    out.append("  call void @__quantum__rt__initialize(ptr null)")
    for name, angle, qs in ops:
        args = []
        if angle is not None:
            args.append("double " + hex_double(angle))
        args.extend(qubit(q) for q in qs)
        out.append("  call void @__quantum__qis__%s__body(%s)" % (name, ", ".join(args)))
    for j in range(K):
        res = "ptr null" if j == 0 else "ptr inttoptr (i64 %d to ptr)" % j
        out.append("  call void @__quantum__qis__mz__body(%s, %s)" % (qubit(j), res))
    out.append("  call void @__quantum__rt__array_record_output(i64 %d, ptr null)" % K)
    for j in reversed(range(K)):
        res = "ptr null" if j == 0 else "ptr inttoptr (i64 %d to ptr)" % j
        out.append("  call void @__quantum__rt__result_record_output(%s, ptr @%d)" % (res, K - 1 - j))
    out.append("  ret void")
    out.append("}")
    out.append("")
    out.append("declare void @__quantum__rt__initialize(ptr)")
    out.append("declare void @__quantum__qis__x__body(ptr)")
    out.append("declare void @__quantum__qis__h__body(ptr)")
    out.append("declare void @__quantum__qis__rz__body(double, ptr)")
    out.append("declare void @__quantum__qis__cnot__body(ptr, ptr)")
    out.append("declare void @__quantum__qis__swap__body(ptr, ptr)")
    out.append("declare void @__quantum__qis__mz__body(ptr, ptr writeonly) #1")
    out.append("declare void @__quantum__rt__array_record_output(i64, ptr)")
    out.append("declare void @__quantum__rt__result_record_output(ptr, ptr)")
    out.append("")
    out.append('attributes #0 = { "entry_point" "num_required_qubits"="%d" "num_required_results"="%d" '
               '"output_labeling_schema" "qir_profiles"="base_profile" }' % (NUM_QUBITS, K))
    out.append('attributes #1 = { "irreversible" }')
    out.append("")
    out.append("!llvm.module.flags = !{!0, !1, !2, !3}")
    out.append("")
    out.append('!0 = !{i32 1, !"qir_major_version", i32 1}')
    out.append('!1 = !{i32 7, !"qir_minor_version", i32 0}')
    out.append('!2 = !{i32 1, !"dynamic_qubit_management", i1 false}')
    out.append('!3 = !{i32 1, !"dynamic_result_management", i1 false}')
    return "\n".join(out) + "\n"


def check(ops):
    import numpy as np

    dim = 2 ** NUM_QUBITS
    state = np.zeros(dim, dtype=complex)
    state[0] = 1.0
    h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    x = np.array([[0, 1], [1, 0]])

    def rz(t):
        return np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])

    def apply(mat, qs):
        nonlocal state
        k = len(qs)
        out = np.zeros_like(state)
        for idx in range(dim):
            sub = 0
            for p, q in enumerate(qs):
                sub |= ((idx >> q) & 1) << (k - 1 - p)
            for col in range(2 ** k):
                src = idx
                for p, q in enumerate(qs):
                    bit = (col >> (k - 1 - p)) & 1
                    src = (src & ~(1 << q)) | (bit << q)
                out[idx] += mat[sub, col] * state[src]
        state = out

    cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    swap = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    for name, angle, qs in ops:
        mat = {"x": x, "h": h, "cnot": cnot, "swap": swap}.get(name)
        if name == "rz":
            mat = rz(angle)
        apply(mat, qs)

    probs = np.abs(state) ** 2
    marg = np.zeros(2 ** K)
    for idx in range(dim):
        marg[idx & (2 ** K - 1)] += probs[idx]
    ref = np.zeros(2 ** K)
    for m in range(2 ** K):
        d = PHI - m / 2 ** K
        ref[m] = 1.0 if abs(d) < 1e-15 else math.sin(2 ** K * math.pi * d) ** 2 / (
            4 ** K * math.sin(math.pi * d) ** 2)
    err = np.max(np.abs(marg - ref))
    top = np.argsort(-marg)[:3]
    print("max |sim - ref| = %.3e; top outcomes %s" % (err, [(int(m), round(float(marg[m]), 4)) for m in top]))
    return err < 1e-9


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--output", default=str(Path(__file__).resolve().parent.parent / "tests/fixtures/qpe_phi1_3_k5.ll"))
    parser.add_argument("--check", action="store_true")
    args = parser.parse_args()
    ops = build_gates()
    if args.check and not check(ops):
        print("simulation does not match the reference distribution", file=sys.stderr)
        return 1
    Path(args.output).write_text(render(ops))
    print("wrote %s (%d gates)" % (args.output, len(ops)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
