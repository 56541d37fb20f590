#!/usr/bin/env python3
"""Side-by-side of the three simulation methods on one circuit: all return
the same amplitude, with very different amounts of work.  The statevector
oracle arbitrates."""
from zxcut import (CircuitSpec, gen_clifford_t, simulate_amplitude,
                   statevector_amplitude)

circ = gen_clifford_t(CircuitSpec(qubits=10, depth=120, sigma=0.0, seed=31))
n = circ.n_qubits
plugs = "+" * n
reference = statevector_amplitude(circ, plugs, plugs)
print(f"random sigma=0 circuit, {n} qubits x {circ.depth} gates")
print(f"oracle amplitude: {reference:.8f}\n")

header = f"{'method':>8} {'amplitude':>24} {'leaves':>8} {'tables':>8} " \
         f"{'crossref':>9} {'k':>3} {'cuts':>5}"
print(header)
for method in ("direct", "naive", "smart"):
    amp, rep = simulate_amplitude(circ, plugs, plugs, method)
    assert abs(amp - reference) < 1e-6
    print(f"{method:>8} {amp.real:+.6f}{amp.imag:+.6f}i "
          f"{rep.leaf_evals:>8} {rep.table_entries:>8} "
          f"{rep.crossref_products:>9} {rep.plan.k:>3} "
          f"{len(rep.plan.cut_spiders):>5}")

print("\nThe smart method spends leaf evaluations once per unique local")
print("assignment and cheap table products for everything else; naive")
print("re-reduces every segment for every one of its 2^C global terms.")
