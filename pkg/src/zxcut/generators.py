"""Benchmark circuit families: uniform random Clifford+T, normal-spread CNOT
variants, and compound circuits (dense blocks linked by a few CNOTs).

All generation runs off numpy's default PCG64 generator seeded from the
spec, with a fixed draw order per gate (kind, then qubits), so a spec plus
seed pins the exact gate list.  The gate set is {T, S, HSH, CNOT} with equal
probability; HSH counts as one gate of the requested depth.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, default_rng

from .circuits import Circuit

GATE_KINDS = ("T", "S", "HSH", "CNOT")


@dataclass(frozen=True)
class CircuitSpec:
    qubits: int
    depth: int
    sigma: float = math.inf  # CNOT spread; 0 = nearest neighbour, inf = uniform
    seed: int = 0

    def __post_init__(self):
        if self.qubits < 1 or self.depth < 0:
            raise ValueError("need qubits >= 1 and depth >= 0")
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative (or inf)")


@dataclass(frozen=True)
class CompoundSpec:
    blocks: int
    qubits_per_block: int
    depth_per_block: int
    external_cnots: int
    block_sigma: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.blocks < 2:
            raise ValueError("a compound circuit needs at least 2 blocks")


def span_weights(sigma: float, max_dq: int) -> np.ndarray:
    """Relative probability of a CNOT spanning 1..max_dq qubits.

    P(dq) = exp(-(dq-1)^2 / (2 sigma^2)); the normal prefactor cancels under
    normalisation.  sigma = 0 degenerates to span 1, sigma = inf to uniform.
    """
    dq = np.arange(1, max_dq + 1, dtype=float)
    if sigma == 0:
        w = np.zeros(max_dq)
        w[0] = 1.0
        return w
    if math.isinf(sigma):
        return np.ones(max_dq)
    return np.exp(-((dq - 1) ** 2) / (2 * sigma ** 2))


def sample_span(rng: Generator, sigma: float, max_dq: int) -> int:
    """Draw a span from the truncated distribution over 1..max_dq."""
    w = span_weights(sigma, max_dq)
    total = w.sum()
    if total == 0:
        return 1
    return 1 + int(rng.choice(max_dq, p=w / total))


def _place_cnot(rng: Generator, n: int, sigma: float) -> tuple[int, int]:
    c = int(rng.integers(n))
    if math.isinf(sigma):
        off = int(rng.integers(n - 1))
        return c, off if off < c else off + 1
    max_dq = max(c, n - 1 - c)
    feasible = [dq for dq in range(1, max_dq + 1)
                if c + dq < n or c - dq >= 0]
    w = span_weights(sigma, max_dq)[[dq - 1 for dq in feasible]]
    if w.sum() == 0:
        dq = 1
    else:
        dq = feasible[int(rng.choice(len(feasible), p=w / w.sum()))]
    dirs = [d for d in (1, -1) if 0 <= c + d * dq < n]
    d = dirs[int(rng.integers(len(dirs)))]
    return c, c + d * dq


def gen_clifford_t(spec: CircuitSpec) -> Circuit:
    """d gates drawn uniformly from {T, S, HSH, CNOT}; CNOT targets spread
    by the sigma-truncated normal.  On a single qubit a drawn CNOT is
    redrawn until a one-qubit gate comes up."""
    rng = default_rng(spec.seed)
    circ = Circuit(spec.qubits)
    for _ in range(spec.depth):
        kind = int(rng.integers(4))
        while kind == 3 and spec.qubits == 1:
            kind = int(rng.integers(4))
        if kind == 3:
            c, t = _place_cnot(rng, spec.qubits, spec.sigma)
            circ.add("CNOT", c, t)
        else:
            circ.add(GATE_KINDS[kind], int(rng.integers(spec.qubits)))
    return circ


def gen_compound(spec: CompoundSpec) -> Circuit:
    """Vertically stacked sigma=inf blocks plus ``external_cnots`` CNOTs
    between blocks, block distance normal-distributed with block_sigma and
    within-block qubits uniform."""
    rng = default_rng(spec.seed)
    k, q = spec.blocks, spec.qubits_per_block
    circ = Circuit(k * q)
    for b in range(k):
        base = b * q
        for _ in range(spec.depth_per_block):
            kind = int(rng.integers(4))
            while kind == 3 and q == 1:
                kind = int(rng.integers(4))
            if kind == 3:
                c, t = _place_cnot(rng, q, math.inf)
                circ.add("CNOT", base + c, base + t)
            else:
                circ.add(GATE_KINDS[kind], base + int(rng.integers(q)))
    for _ in range(spec.external_cnots):
        src = int(rng.integers(k))
        max_db = max(src, k - 1 - src)
        feasible = [db for db in range(1, max_db + 1)
                    if src + db < k or src - db >= 0]
        w = span_weights(spec.block_sigma, max_db)[[db - 1 for db in feasible]]
        if w.sum() == 0:
            db = 1
        else:
            db = feasible[int(rng.choice(len(feasible), p=w / w.sum()))]
        dirs = [d for d in (1, -1) if 0 <= src + d * db < k]
        dst = src + dirs[int(rng.integers(len(dirs)))] * db
        c = src * q + int(rng.integers(q))
        t = dst * q + int(rng.integers(q))
        circ.add("CNOT", c, t)
    return circ
