"""Precomputed segment tables and cheapest-first pairwise regrouping.

A segment is the reduction of one partition part: a table of 2^c scalars
indexed by its c local cut parameters (first parameter in ascending id order
= most significant bit).  Segments are contracted pairwise, always picking
the connected pair with the fewest collective local parameters; parameters
appearing in no third segment are summed out by the step.

The inner product/accumulate loop exists twice: a plain sequential reference
(deterministic, bit-identical across runs) and a chunked numpy path used for
large tables, whose scatter-add (`np.add.at`) is the portable equivalent of
an atomic accumulation.  Order of accumulation within a bin is unspecified
beyond float commutativity.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cutting import instantiate
from .decompose import DecomposeStats, Decomposition, decompose_to_scalar
from .diagram import ZxDiagram
from .scalars import ScalarC, scalar_sum
from .simplify import param_safe_simplify

NUMPY_TABLE_THRESHOLD = 2 ** 14
CHUNK = 2 ** 20


@dataclass
class Segment:
    local_params: tuple[int, ...]
    scalars: list[ScalarC]

    def __post_init__(self):
        self.local_params = tuple(sorted(self.local_params))
        if len(self.scalars) != 2 ** len(self.local_params):
            raise ValueError("table length must be 2^(number of local parameters)")


# -- bit indexing (Appendix-style kernel, LSB-first shift order) --------------

def local_index(global_idx: int, mask: int, n_params: int) -> int:
    """Extract the bits of ``global_idx`` selected by ``mask``.

    Both are read as bitstrings over the same ``n_params`` positions (first
    parameter = most significant bit); the extracted bits keep their order.
    """
    out = 0
    shift = 0
    for _ in range(n_params):
        if mask & 1:
            out |= (global_idx & 1) << shift
            shift += 1
        mask >>= 1
        global_idx >>= 1
    return out


def local_index_array(global_idx: np.ndarray, mask: int, n_params: int) -> np.ndarray:
    """Vectorised :func:`local_index` over an int64 array."""
    out = np.zeros_like(global_idx)
    shift = 0
    g = global_idx.copy()
    for _ in range(n_params):
        if mask & 1:
            out |= (g & 1) << shift
            shift += 1
        mask >>= 1
        g >>= 1
    return out


def param_mask(subset, ordered_params) -> int:
    """Bitmask of ``subset`` within ``ordered_params`` (first = MSB)."""
    n = len(ordered_params)
    mask = 0
    sub = set(subset)
    for pos, p in enumerate(ordered_params):
        if p in sub:
            mask |= 1 << (n - 1 - pos)
    return mask


# -- segment precomputation ----------------------------------------------------

def precompute_segment(
    seg_graph: ZxDiagram,
    local_params=None,
    decomposition: Decomposition | None = None,
    stats: DecomposeStats | None = None,
) -> Segment:
    """Reduce one partition part to its table of 2^c scalars.

    The parameter-safe simplification runs once up front so the per-assignment
    work shares a common reduced structure; each assignment is then
    instantiated and decomposed independently.
    """
    if seg_graph.inputs or seg_graph.outputs:
        raise ValueError("segment must be a scalar diagram (no boundary wires)")
    params = tuple(sorted(seg_graph.params if local_params is None else local_params))
    shared = param_safe_simplify(seg_graph)
    c = len(params)
    table = []
    for idx in range(2 ** c):
        assignment = {p: (idx >> (c - 1 - pos)) & 1 for pos, p in enumerate(params)}
        inst = instantiate(shared, assignment)
        table.append(decompose_to_scalar(inst, decomposition, stats))
    return Segment(params, table)


# -- the segment hypergraph and regrouping ------------------------------------

class SegmentHypergraph:
    """Segments as nodes, parameters as hyperedges over the segments using
    them.  Regrouped-away segments become None; indices stay stable."""

    def __init__(self, segments):
        self.segments: list[Segment | None] = list(segments)

    def live(self) -> list[int]:
        return [i for i, s in enumerate(self.segments) if s is not None]

    def param_map(self) -> dict[int, set[int]]:
        out: dict[int, set[int]] = {}
        for i in self.live():
            for p in self.segments[i].local_params:
                out.setdefault(p, set()).add(i)
        return out


def min_pair(h: SegmentHypergraph) -> tuple[int, int, int] | None:
    """The connected segment pair with the fewest collective local
    parameters, ties broken lexicographically; None if no pair shares a
    parameter."""
    live = h.live()
    best = None
    for a in range(len(live)):
        i = live[a]
        pi = set(h.segments[i].local_params)
        for j in live[a + 1:]:
            pj = set(h.segments[j].local_params)
            if not (pi & pj):
                continue
            p = len(pi | pj)
            if best is None or (p, i, j) < best:
                best = (p, i, j)
    if best is None:
        return None
    p, i, j = best
    return i, j, p


def _merged_params(h: SegmentHypergraph, i: int, j: int) -> tuple[int, ...]:
    a = set(h.segments[i].local_params)
    b = set(h.segments[j].local_params)
    elsewhere: set[int] = set()
    for k in h.live():
        if k not in (i, j):
            elsewhere |= set(h.segments[k].local_params)
    return tuple(sorted((a ^ b) | (a & b & elsewhere)))


def _table_to_array(scalars: list[ScalarC]) -> tuple[np.ndarray, int]:
    """Common-exponent numpy view of a ScalarC table."""
    pows = [s.sqrt2_pow for s in scalars if not s.is_zero]
    base = max(pows) if pows else 0
    arr = np.array(
        [0j if s.is_zero else s.coeff * 2.0 ** (0.5 * (s.sqrt2_pow - base))
         for s in scalars],
        dtype=complex)
    return arr, base


def regroup_pair(h: SegmentHypergraph, i: int, j: int) -> int:
    """Contract segments i and j into slot i; returns the collective local
    parameter count p, the step having cost 2^p."""
    seg_a, seg_b = h.segments[i], h.segments[j]
    if seg_a is None or seg_b is None:
        raise ValueError("segment already regrouped away")
    shared = set(seg_a.local_params) & set(seg_b.local_params)
    if not shared:
        raise ValueError("segments are not connected")
    union = tuple(sorted(set(seg_a.local_params) | set(seg_b.local_params)))
    new_params = _merged_params(h, i, j)
    n = len(union)
    mask_a = param_mask(seg_a.local_params, union)
    mask_b = param_mask(seg_b.local_params, union)
    mask_c = param_mask(new_params, union)

    if 2 ** n >= NUMPY_TABLE_THRESHOLD:
        arr_a, pow_a = _table_to_array(seg_a.scalars)
        arr_b, pow_b = _table_to_array(seg_b.scalars)
        out = np.zeros(2 ** len(new_params), dtype=complex)
        for lo in range(0, 2 ** n, CHUNK):
            idx = np.arange(lo, min(lo + CHUNK, 2 ** n), dtype=np.int64)
            ab = local_index_array(idx, mask_a, n)
            bc = local_index_array(idx, mask_b, n)
            ac = local_index_array(idx, mask_c, n)
            np.add.at(out, ac, arr_a[ab] * arr_b[bc])
        new_scalars = [ScalarC(z, pow_a + pow_b) if z != 0 else ScalarC.zero()
                       for z in out]
    else:
        new_scalars = [ScalarC.zero() for _ in range(2 ** len(new_params))]
        for idx in range(2 ** n):
            ab = local_index(idx, mask_a, n)
            bc = local_index(idx, mask_b, n)
            ac = local_index(idx, mask_c, n)
            new_scalars[ac] = new_scalars[ac].plus(
                seg_a.scalars[ab].times(seg_b.scalars[bc]))

    h.segments[i] = Segment(new_params, new_scalars)
    h.segments[j] = None
    return n


def plan_schedule(param_sets: list[set[int]]) -> tuple[list[tuple[int, int, int]], int]:
    """Simulate the regroup order on parameter sets alone.

    Returns (steps, s_crossref) where each step is (i, j, p) and s_crossref
    is the exact sum of 2^p over steps; mirrors the live regrouping so
    predicted and executed costs agree.
    """
    live: list[set[int] | None] = [set(s) for s in param_sets]
    steps = []
    total = 0
    while True:
        best = None
        idxs = [i for i, s in enumerate(live) if s is not None]
        for a in range(len(idxs)):
            i = idxs[a]
            for j in idxs[a + 1:]:
                if live[i] & live[j]:
                    p = len(live[i] | live[j])
                    if best is None or (p, i, j) < best:
                        best = (p, i, j)
        if best is None:
            return steps, total
        p, i, j = best
        elsewhere: set[int] = set()
        for k in idxs:
            if k not in (i, j):
                elsewhere |= live[k]
        merged = (live[i] ^ live[j]) | (live[i] & live[j] & elsewhere)
        steps.append((i, j, p))
        total += 2 ** p
        live[i] = merged
        live[j] = None


@dataclass
class RegroupResult:
    value: ScalarC
    s_crossref: int = 0
    steps: list[tuple[int, int, int]] = field(default_factory=list)


def regroup_all(segments, step_log: list | None = None) -> RegroupResult:
    """Contract all segments cheapest-pair-first down to one scalar.

    Independent groups (sharing no parameters) multiply; a parameter held by
    a single segment is summed out in place at the end, which only happens
    for degenerate synthetic inputs.
    """
    h = SegmentHypergraph(segments)
    result = RegroupResult(ScalarC.one())
    while True:
        pick = min_pair(h)
        if pick is None:
            break
        i, j, _ = pick
        p = regroup_pair(h, i, j)
        result.s_crossref += 2 ** p
        result.steps.append((i, j, p))
        if step_log is not None:
            step_log.append({"pair": [i, j], "p": p, "cost": 2 ** p,
                             "cumulative": result.s_crossref})
    for i in h.live():
        result.value.mul(scalar_sum(h.segments[i].scalars))
    return result
