"""The cutting decomposition: replace a spider by a boolean-parameterised
pair of branches whose two assignments sum back to the original tensor.

Cutting a degree-n Z-spider detaches its legs into n degree-1 spiders that
all carry the same fresh parameter, at an overall cost of 2 terms per cut.
The per-assignment weight splits as ``nu^n * mu * e^(i*a*alpha)``; ``nu`` and
``mu`` are solved numerically once at import time from the cut identity on
one- and two-legged spiders rather than hard-coded.
"""
from __future__ import annotations

import functools

import numpy as np

from .diagram import EdgeKind, Phase, SpiderKind, ZxDiagram
from .scalars import phase8_complex
from .simplify import _clear_self_loops
from .tensor import tensor_of


@functools.lru_cache(maxsize=1)
def cut_normalization() -> tuple[float, complex]:
    """Per-leg factor ``nu`` and global factor ``mu`` of the cut identity.

    Solved from  Z_n(0) = sum_a s_a * (pieces)  for n = 1, 2, where each
    piece is a parameter-bit spider on one leg.  The residual must be at
    machine precision or the piece templates are wrong.
    """

    def star(n: int, a: int | None) -> np.ndarray:
        d = ZxDiagram()
        outs = [d.add_spider(SpiderKind.BOUNDARY) for _ in range(n)]
        d.outputs = outs
        if a is None:
            v = d.add_spider(SpiderKind.Z)
            for b in outs:
                d.add_edge(v, b, EdgeKind.PLAIN)
        else:
            for b in outs:
                piece = d.add_spider(SpiderKind.Z, Phase(4 * a))
                d.add_edge(piece, b, EdgeKind.HADAMARD)
        t = tensor_of(d)
        return np.asarray(t).reshape(-1)

    coeffs = []
    for n in (1, 2):
        basis = np.stack([star(n, 0), star(n, 1)], axis=1)
        target = star(n, None)
        sol, *_ = np.linalg.lstsq(basis, target, rcond=None)
        resid = np.linalg.norm(basis @ sol - target)
        if resid > 1e-12:
            raise RuntimeError(f"cut identity solve failed, residual {resid}")
        if abs(sol[0] - sol[1]) > 1e-12:
            raise RuntimeError("phase-0 cut weights should not depend on the bit")
        coeffs.append(complex(sol[0]))
    nu = coeffs[1] / coeffs[0]
    mu = coeffs[0] ** 2 / coeffs[1]
    return abs(nu), complex(mu)


def cut_spider(d: ZxDiagram, v: int, p: int) -> ZxDiagram:
    """Cut spider ``v``, introducing fresh boolean parameter ``p``.

    Returns a diagram with ``v`` replaced by one degree-1 spider per incident
    edge, each carrying parameter ``p``; summing the two instantiations of
    ``p`` reproduces the original tensor.  X-spiders are colour-changed
    first; a parameterised phase on ``v`` is unfused onto a neighbour so the
    per-assignment weight stays a plain complex number.
    """
    if v not in d.spiders:
        raise ValueError(f"no spider {v}")
    if p in d.params:
        raise ValueError(f"parameter {p} already in use")
    out = d.copy()
    s = out.spiders[v]
    if s.kind == SpiderKind.BOUNDARY:
        raise ValueError("cannot cut a boundary vertex")
    if s.kind == SpiderKind.X:
        for row in out.adj[v].values():
            row[0], row[1] = row[1], row[0]
        s.kind = SpiderKind.Z
    _clear_self_loops(out, v, None)
    if s.phase.params:
        w = out.add_spider(SpiderKind.Z, Phase(0, s.phase.params))
        out.add_edge(v, w, EdgeKind.PLAIN)
        s.phase = Phase(s.phase.fixed)

    legs: list[tuple[int, EdgeKind]] = []
    for u, row in out.adj[v].items():
        legs += [(u, EdgeKind.PLAIN)] * row[0] + [(u, EdgeKind.HADAMARD)] * row[1]
    alpha = s.phase.fixed
    out.remove_spider(v)
    for u, kind in legs:
        piece = out.add_spider(SpiderKind.Z, Phase(0, frozenset({p})))
        out.add_edge(piece, u, EdgeKind(1 - kind))

    nu, mu = cut_normalization()
    half_pow = round(2 * np.log2(nu))
    if abs(nu - 2.0 ** (half_pow / 2)) < 1e-12:
        out.scalar.mul_sqrt2(half_pow * len(legs))
    else:
        out.scalar.mul_complex(nu ** len(legs))
    out.scalar.mul_complex(mu)
    out.params.add(p)
    out.param_coeffs[p] = (1 + 0j, phase8_complex(alpha))
    return out


def instantiate(d: ZxDiagram, assignment: dict[int, int]) -> ZxDiagram:
    """Resolve a subset of the diagram's parameters to concrete bits.

    A bit of 1 adds pi to every spider carrying the parameter; the
    parameter's pending cut weight multiplies into the global scalar.
    """
    for p in assignment:
        if p not in d.params:
            raise ValueError(f"unknown parameter {p}")
    out = d.copy()
    assigned = set(assignment)
    for s in out.spiders.values():
        hit = s.phase.params & assigned
        if hit:
            shift = 4 * sum(assignment[p] for p in hit)
            s.phase = Phase(s.phase.fixed + shift, s.phase.params - assigned)
    for p, bit in assignment.items():
        coeffs = out.param_coeffs.pop(p, None)
        if coeffs is not None:
            out.scalar.mul_complex(coeffs[1] if bit else coeffs[0])
        out.params.discard(p)
    return out


def cut_cost(cut_set) -> int:
    """Number of summand terms induced by a set of cuts: 2^|cuts|."""
    return 2 ** len(cut_set)
