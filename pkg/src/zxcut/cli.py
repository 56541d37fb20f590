"""Command-line surface: simulate, plan, calibrate, and the benchmark
sweeps.  CSV/JSON output only; plotting is out of process.

Exit codes: 0 success, 2 parse/usage error, 3 resource cap exceeded.
Wall-clock report fields (wallSeconds, overheadSeconds) are the only
non-deterministic output for a fixed seed; sweeps in --estimate-only mode
are byte-reproducible.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import statistics
import sys
import time

from .circuits import Circuit, CircuitParseError, parse_circuit
from .costmodel import CostModel
from .engine import ResourceCapError, estimate_naive, simulate_amplitude
from .generators import CircuitSpec, CompoundSpec, gen_clifford_t, gen_compound

EXIT_PARSE = 2
EXIT_RESOURCE = 3

METHOD_CHOICES = ("direct", "naive", "smart")


def _parse_sigma(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    value = float(text)
    if value < 0:
        raise ValueError("sigma must be non-negative")
    return value


def _parse_range(text: str) -> list[int]:
    """'a..b' or 'a..b:step' (inclusive), or a single integer."""
    step = 1
    if ":" in text:
        text, step_s = text.split(":", 1)
        step = int(step_s)
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1, step))
    return [int(text)]


def _load_circuit(args) -> Circuit:
    spec_json = getattr(args, "spec", None)
    sources = [bool(args.circuit), bool(args.random), bool(args.compound),
               bool(spec_json)]
    if sum(sources) != 1:
        raise CircuitParseError(
            "exactly one of --circuit, --random, --compound, --spec is required")
    if args.circuit:
        with open(args.circuit) as fh:
            return parse_circuit(fh.read())
    if spec_json:
        with open(spec_json) as fh:
            doc = json.load(fh)
        if "random" in doc:
            f = doc["random"]
            return gen_clifford_t(CircuitSpec(
                f["qubits"], f["depth"],
                _parse_sigma(str(f.get("sigma", "inf"))), f.get("seed", 0)))
        if "compound" in doc:
            f = doc["compound"]
            return gen_compound(CompoundSpec(
                f["blocks"], f["qubitsPerBlock"], f["depthPerBlock"],
                f["externalCnots"], _parse_sigma(str(f.get("blockSigma", 1.0))),
                f.get("seed", 0)))
        raise CircuitParseError("spec JSON needs a 'random' or 'compound' key")
    if args.random:
        parts = args.random.split(",")
        if len(parts) != 4:
            raise CircuitParseError("--random needs n,d,sigma,seed")
        n, d = int(parts[0]), int(parts[1])
        return gen_clifford_t(CircuitSpec(n, d, _parse_sigma(parts[2]), int(parts[3])))
    parts = args.compound.split(",")
    if len(parts) != 6:
        raise CircuitParseError("--compound needs k,q,d,next,sigmab,seed")
    return gen_compound(CompoundSpec(int(parts[0]), int(parts[1]), int(parts[2]),
                                     int(parts[3]), _parse_sigma(parts[4]),
                                     int(parts[5])))


def _plugs(args, n: int) -> tuple[str, str]:
    if args.plus:
        return "+" * n, "+" * n
    if args.inbits is None or args.outbits is None:
        raise CircuitParseError("need --in and --out bitstrings, or --plus")
    return args.inbits, args.outbits


def _load_cost_model(args) -> CostModel:
    path = args.config or os.environ.get("ZXCUT_CONFIG")
    return CostModel.load(path) if path else CostModel()


def _add_circuit_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--circuit", help="circuit text file")
    p.add_argument("--random", metavar="n,d,sigma,seed",
                   help="random Clifford+T circuit")
    p.add_argument("--compound", metavar="k,q,d,next,sigmab,seed",
                   help="compound circuit of k blocks")
    p.add_argument("--spec", help="generator spec as JSON "
                   '({"random": {...}} or {"compound": {...}})')
    p.add_argument("--in", dest="inbits", help="input bitstring (0/1/+ per qubit)")
    p.add_argument("--out", dest="outbits", help="output bitstring")
    p.add_argument("--plus", action="store_true",
                   help="plug all inputs and outputs with |+>")
    p.add_argument("--config", help="cost model config (JSON or key=value)")
    p.add_argument("--seed", type=int, default=0, help="partitioner seed")
    p.add_argument("--force-partition", action="store_true",
                   help="require k >= 2 in plan selection")


def cmd_simulate(args) -> int:
    circ = _load_circuit(args)
    ins, outs = _plugs(args, circ.n_qubits)
    cm = _load_cost_model(args)
    trace = None
    if args.trace:
        from .simplify import Trace
        trace = Trace()
    amp, report = simulate_amplitude(
        circ, ins, outs, args.method, cm, seed=args.seed,
        force_partition=args.force_partition, plan_only=args.plan_only,
        trace=trace)
    if trace is not None:
        with open(args.trace, "w") as fh:
            for step in trace.steps:
                fh.write(json.dumps(step) + "\n")
    doc = report.to_json_dict()
    if args.json or args.plan_only:
        print(json.dumps(doc, indent=2))
    else:
        print(f"amplitude: {amp.real:+.12g}{amp.imag:+.12g}i")
        print(f"|amplitude|^2: {abs(amp) ** 2:.12g}")
        print(json.dumps(doc["counts"] | {"method": args.method,
                                          "k": doc["plan"]["k"]}, indent=2))
    return 0


def cmd_plan(args) -> int:
    circ = _load_circuit(args)
    ins, outs = _plugs(args, circ.n_qubits)
    cm = _load_cost_model(args)
    _, report = simulate_amplitude(circ, ins, outs, "smart", cm, seed=args.seed,
                                   force_partition=args.force_partition,
                                   plan_only=True)
    print(json.dumps(report.plan.to_json_dict(), indent=2))
    return 0


def _cell_seed(base: int, *parts: int) -> int:
    seed = base
    for p in parts:
        seed = (seed * 1_000_003 + p) % (2 ** 63)
    return seed


def _sigma_key(sigma: float) -> int:
    return 10 ** 9 if math.isinf(sigma) else int(round(sigma * 1000))


def _measure_cell(circ: Circuit, cm: CostModel, seed: int, estimate_only: bool,
                  force_partition: bool) -> dict[str, float]:
    """log2 seconds per method for one circuit: the projection, replaced by a
    real measured run when the projection is below the threshold."""
    _, rep = simulate_amplitude(circ, "+" * circ.n_qubits, "+" * circ.n_qubits,
                                "smart", cm, seed=seed, plan_only=True,
                                force_partition=force_partition)
    plan = rep.plan
    est = {"direct": plan.t_direct_est,
           "naive": estimate_naive(plan, cm),
           "smart": plan.t_smart_est}
    if estimate_only:
        return {m: cm.log2_seconds(v) for m, v in est.items()}
    out = {}
    for method, projected in est.items():
        if projected < cm.real_run_threshold_secs:
            t0 = time.perf_counter()
            try:
                simulate_amplitude(circ, "+" * circ.n_qubits, "+" * circ.n_qubits,
                                   method, cm, seed=seed,
                                   force_partition=force_partition)
                out[method] = cm.log2_seconds(time.perf_counter() - t0)
                continue
            except ResourceCapError:
                pass
        out[method] = cm.log2_seconds(projected)
    return out


def _write_csv(path: str | None, header: list[str], rows: list[list]) -> None:
    fh = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if path:
            fh.close()


def cmd_sweep_heatmap(args) -> int:
    cm = _load_cost_model(args)
    sigma = _parse_sigma(args.sigma)
    rows = []
    for n in _parse_range(args.qubits):
        for d in _parse_range(args.depths):
            per_method: dict[str, list[float]] = {m: [] for m in METHOD_CHOICES}
            for i in range(args.samples):
                seed = _cell_seed(args.seed, n, d, _sigma_key(sigma), i)
                circ = gen_clifford_t(CircuitSpec(n, d, sigma, seed))
                cell = _measure_cell(circ, cm, args.seed, args.estimate_only,
                                     force_partition=False)
                for m, v in cell.items():
                    per_method[m].append(v)
            for m in METHOD_CHOICES:
                vals = per_method[m]
                rows.append([n, d, m, f"{statistics.fmean(vals):.6f}",
                             f"{statistics.pstdev(vals):.6f}", len(vals)])
    _write_csv(args.out, ["n", "d", "method", "mean_log2_seconds",
                          "std_log2_seconds", "samples"], rows)
    return 0


def cmd_sweep_sigma(args) -> int:
    cm = _load_cost_model(args)
    n = args.qubits
    d = args.depth
    rows = []
    for sigma_text in args.sigmas.split(","):
        sigma = _parse_sigma(sigma_text)
        per_method: dict[str, list[float]] = {m: [] for m in METHOD_CHOICES}
        for i in range(args.samples):
            seed = _cell_seed(args.seed, n, d, _sigma_key(sigma), i)
            circ = gen_clifford_t(CircuitSpec(n, d, sigma, seed))
            cell = _measure_cell(circ, cm, args.seed, args.estimate_only,
                                 force_partition=args.force_partition)
            for m, v in cell.items():
                per_method[m].append(v)
        for m in METHOD_CHOICES:
            vals = per_method[m]
            rows.append([sigma_text, m, f"{statistics.fmean(vals):.6f}",
                         f"{statistics.pstdev(vals):.6f}", len(vals)])
    _write_csv(args.out, ["sigma", "method", "mean_log2_seconds",
                          "std_log2_seconds", "samples"], rows)
    return 0


def cmd_calibrate(args) -> int:
    """Measure local calculation rates and write them as a config file."""
    from .decompose import DecomposeStats, decompose_to_scalar
    from .diagram import diagram_from_circuit, plug
    from .partition import choose_k
    from .regroup import Segment, regroup_all
    from .scalars import ScalarC
    from .simplify import clifford_simplify
    from numpy.random import default_rng

    cm = CostModel()
    rng = default_rng(args.seed)

    leaves = 0
    t0 = time.perf_counter()
    diagrams = []
    for i in range(6):
        circ = gen_clifford_t(CircuitSpec(8, 80, math.inf, int(rng.integers(2 ** 31))))
        g = clifford_simplify(plug(diagram_from_circuit(circ), "+" * 8, "+" * 8))
        diagrams.append(g)
        stats = DecomposeStats()
        decompose_to_scalar(g, stats=stats)
        leaves += stats.leaves
    r_decomp = max(leaves / (time.perf_counter() - t0), 1e-6)

    overhead_samples = []
    evals = 0
    t0 = time.perf_counter()
    for g in diagrams:
        t1 = time.perf_counter()
        plan = choose_k(g, cm, seed=args.seed)
        overhead_samples.append(time.perf_counter() - t1)
        stats = DecomposeStats()
        if plan.k > 1:
            from .engine import split_segments
            from .regroup import precompute_segment
            segs, params, _ = split_segments(g, plan)
            for seg, ps in zip(segs, params):
                precompute_segment(seg, sorted(ps), stats=stats)
            evals += max(stats.leaves, 1)
        else:
            decompose_to_scalar(g, stats=stats)
            evals += stats.leaves
    r_precomp = max(evals / max(time.perf_counter() - t0, 1e-9), 1e-6)

    tables = []
    for s in range(6):
        vals = rng.standard_normal(2 ** 10) + 1j * rng.standard_normal(2 ** 10)
        params = tuple(range(s, s + 10))
        tables.append(Segment(params, [ScalarC(v) for v in vals]))
    t0 = time.perf_counter()
    result = regroup_all(tables)
    r_crossref = max(result.s_crossref / max(time.perf_counter() - t0, 1e-9), 1e-6)

    calibrated = CostModel(
        alpha=cm.alpha,
        r_decomp=r_decomp,
        r_precomp=r_precomp,
        r_crossref=r_crossref,
        t_overhead=statistics.fmean(overhead_samples),
        real_run_threshold_secs=cm.real_run_threshold_secs,
    )
    if args.out:
        calibrated.save(args.out)
    print(json.dumps(calibrated.to_config(), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zxcut",
        description="Strong Clifford+T simulation by partitioned ZX reduction")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="compute one amplitude")
    _add_circuit_args(p)
    p.add_argument("--method", choices=METHOD_CHOICES, default="smart")
    p.add_argument("--plan-only", action="store_true",
                   help="plan and estimate without running")
    p.add_argument("--json", action="store_true", help="full JSON report")
    p.add_argument("--trace", metavar="FILE",
                   help="write the initial simplification's rewrite steps as JSON lines")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("plan", help="print the partition plan as JSON")
    _add_circuit_args(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("calibrate", help="measure local calculation rates")
    p.add_argument("--out", help="write the measured config here")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("sweep-heatmap", help="depth x qubits grid of log2 runtimes")
    p.add_argument("--qubits", required=True, help="range a..b[:step]")
    p.add_argument("--depths", required=True, help="range a..b[:step]")
    p.add_argument("--sigma", default="inf")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--estimate-only", action="store_true")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--config")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sweep_heatmap)

    p = sub.add_parser("sweep-sigma", help="log2 runtimes against CNOT spread")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--sigmas", required=True, help="comma list, e.g. 0,1,2,inf")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--force-partition", action="store_true")
    p.add_argument("--estimate-only", action="store_true")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--config")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sweep_sigma)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CircuitParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceCapError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        print(json.dumps(exc.plan.to_json_dict(), indent=2))
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
