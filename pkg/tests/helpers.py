"""Shared builders for randomised tests."""
from __future__ import annotations

from numpy.random import Generator, default_rng

from zxcut.circuits import Circuit
from zxcut.diagram import EdgeKind, Phase, SpiderKind, ZxDiagram, diagram_from_circuit, plug

GATE_POOL = ("T", "S", "HSH")


def random_circuit(n: int, depth: int, rng: Generator, nearest: bool = False) -> Circuit:
    gates = []
    for _ in range(depth):
        k = int(rng.integers(4))
        if k == 3 and n > 1:
            c = int(rng.integers(n))
            if nearest:
                dirs = [x for x in (-1, 1) if 0 <= c + x < n]
                t = c + int(rng.choice(dirs))
            else:
                t = int(rng.choice([x for x in range(n) if x != c]))
            gates.append(("CNOT", c, t))
        else:
            gates.append((GATE_POOL[k % 3], int(rng.integers(n))))
    return Circuit(n, gates)


def random_plugs(n: int, rng: Generator) -> tuple[str, str]:
    chars = list("01+")
    ins = "".join(chars[int(rng.integers(3))] for _ in range(n))
    outs = "".join(chars[int(rng.integers(3))] for _ in range(n))
    return ins, outs


def random_scalar_diagram(rng: Generator, n_max: int = 5, d_max: int = 30) -> ZxDiagram:
    n = int(rng.integers(2, n_max + 1))
    d = int(rng.integers(4, d_max + 1))
    circ = random_circuit(n, d, rng)
    ins, outs = random_plugs(n, rng)
    return plug(diagram_from_circuit(circ), ins, outs)


def random_graphlike_diagram(rng: Generator, n_spiders: int, edge_p: float = 0.4,
                             boundary: int = 0) -> ZxDiagram:
    """A random Z-spider diagram with Hadamard edges and pi/4 phases."""
    d = ZxDiagram()
    vs = [d.add_spider(SpiderKind.Z, Phase(int(rng.integers(8)))) for _ in range(n_spiders)]
    for i in range(n_spiders):
        for j in range(i + 1, n_spiders):
            if rng.random() < edge_p:
                d.add_edge(vs[i], vs[j], EdgeKind.HADAMARD)
    for _ in range(boundary):
        b = d.add_spider(SpiderKind.BOUNDARY)
        d.outputs.append(b)
        d.add_edge(b, vs[int(rng.integers(n_spiders))], EdgeKind.PLAIN)
    return d
