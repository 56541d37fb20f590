import itertools

import numpy as np
import pytest
from numpy.random import default_rng

from zxcut.circuits import Circuit, parse_circuit
from zxcut.costmodel import CostModel
from zxcut.engine import (METHODS, Report, ResourceCapError, ResourceCaps,
                          simulate_amplitude, split_segments)
from zxcut.oracle import statevector_amplitude
from zxcut.cutting import instantiate
from zxcut.diagram import diagram_from_circuit, plug
from zxcut.partition import choose_k
from zxcut.simplify import clifford_simplify
from zxcut.tensor import tensor_of

from helpers import random_circuit, random_plugs


def test_clifford_short_circuit_all_methods():
    rng = default_rng(0)
    gates = []
    for _ in range(30):
        k = int(rng.integers(3))
        if k == 2:
            a, b = rng.choice(5, 2, replace=False)
            gates.append(("CNOT", int(a), int(b)))
        else:
            gates.append((("S", "HSH")[k], int(rng.integers(5))))
    c = Circuit(5, gates)
    amps = {}
    for method in METHODS:
        amp, rep = simulate_amplitude(c, "0" * 5, "0" * 5, method)
        amps[method] = amp
        assert rep.plan.k == 1
    vals = list(amps.values())
    assert abs(vals[0] - vals[1]) < 1e-12 and abs(vals[1] - vals[2]) < 1e-12


def test_three_way_agreement_random_corpus():
    rng = default_rng(1)
    for _ in range(25):
        n = int(rng.integers(2, 8))
        c = random_circuit(n, int(rng.integers(10, 55)), rng,
                           nearest=bool(rng.integers(2)))
        ins, outs = random_plugs(n, rng)
        ref = statevector_amplitude(c, ins, outs)
        for method in METHODS:
            amp, _ = simulate_amplitude(c, ins, outs, method)
            assert abs(amp - ref) < 1e-6


def test_split_segments_reassembles_tensor():
    # sum over all assignments of the product of segment instantiations
    # equals the uncut diagram value
    rng = default_rng(2)
    tested = 0
    for _ in range(60):
        if tested >= 8:
            break
        c = random_circuit(8, 60, rng)
        g = clifford_simplify(plug(diagram_from_circuit(c), "+" * 8, "+" * 8))
        plan = choose_k(g, CostModel())
        if plan.k < 2 or not plan.cut_spiders or len(plan.cut_spiders) > 6:
            continue
        tested += 1
        segs, params, overall = split_segments(g, plan)
        all_params = sorted({p for ps in params for p in ps})
        total = 0j
        for bits in itertools.product((0, 1), repeat=len(all_params)):
            asg = dict(zip(all_params, bits))
            term = overall.to_complex()
            for seg, ps in zip(segs, params):
                local = {p: asg[p] for p in ps}
                term *= tensor_of(instantiate(seg, local))
            total += term
        ref = tensor_of(g)
        assert abs(total - ref) < 1e-9 * max(1.0, abs(ref))
    assert tested >= 3


def test_smart_counts_never_exceed_naive():
    rng = default_rng(3)
    checked = 0
    for _ in range(40):
        if checked >= 5:
            break
        c = random_circuit(8, 60, rng)
        amp_s, rep_s = simulate_amplitude(c, "+" * 8, "+" * 8, "smart")
        if rep_s.plan.k < 2 or not rep_s.plan.cut_spiders:
            continue
        checked += 1
        amp_n, rep_n = simulate_amplitude(c, "+" * 8, "+" * 8, "naive")
        assert abs(amp_s - amp_n) < 1e-6
        smart_total = rep_s.leaf_evals + rep_s.crossref_products
        naive_total = rep_n.leaf_evals + rep_n.crossref_products
        assert smart_total <= naive_total
    assert checked >= 2


def test_worked_topology_counts_136_vs_512():
    # the 4-part/9-cut worked instance: pairwise regrouping spends 136
    # cross-reference products where the naive global sum spends 2^9 = 512
    from zxcut.regroup import plan_schedule
    params = [set(range(0, 3)), set(range(0, 6)), set(range(3, 9)),
              set(range(6, 9))]
    _, s_crossref = plan_schedule(params)
    assert s_crossref == 136
    assert 2 ** 9 == 512


def test_resource_cap_direct():
    c = gen_deep_compound()
    caps = ResourceCaps(leaf_evals=4, table_entries=2 ** 26)
    with pytest.raises(ResourceCapError) as err:
        simulate_amplitude(c, "+" * c.n_qubits, "+" * c.n_qubits, "direct",
                           caps=caps)
    assert err.value.stage == "decompose"
    assert err.value.plan is not None


def gen_deep_compound():
    from zxcut.generators import CompoundSpec, gen_compound
    return gen_compound(CompoundSpec(2, 3, 80, 2, 1.0, 0))


def test_resource_cap_smart_tables():
    c = gen_deep_compound()
    caps = ResourceCaps(leaf_evals=2 ** 28, table_entries=1)
    try:
        simulate_amplitude(c, "+" * 6, "+" * 6, "smart", caps=caps,
                           force_partition=True)
    except ResourceCapError as err:
        assert err.stage in ("precompute", "crossref")


def test_plan_only_skips_execution():
    c = random_circuit(6, 40, default_rng(4))
    amp, rep = simulate_amplitude(c, "+" * 6, "+" * 6, "smart", plan_only=True)
    assert amp == 0j
    assert rep.leaf_evals == 0
    assert rep.plan is not None
    assert rep.estimates["tEstSeconds"] > 0


def test_report_serialises():
    c = random_circuit(4, 20, default_rng(5))
    _, rep = simulate_amplitude(c, "+" * 4, "+" * 4, "smart")
    doc = rep.to_json_dict()
    assert doc["method"] == "smart"
    assert set(doc["counts"]) == {"leafEvals", "tableEntries", "crossrefProducts"}
    assert doc["plan"]["k"] >= 1
    import json
    json.dumps(doc)  # must be JSON-clean


def test_unknown_method():
    c = Circuit(1)
    with pytest.raises(ValueError):
        simulate_amplitude(c, "0", "0", "samrt")


def test_sigma0_desk_scale_estimate_ratio():
    # at 20 qubits x 200 gates with nearest-neighbour CNOTs, the smart
    # estimate beats direct by at least an order of magnitude
    import math
    from zxcut.generators import CircuitSpec, gen_clifford_t
    cm = CostModel()
    ratios = []
    for i in range(4):
        c = gen_clifford_t(CircuitSpec(20, 200, 0.0, 4000 + i))
        _, rep = simulate_amplitude(c, "+" * 20, "+" * 20, "smart", plan_only=True)
        ratios.append(rep.plan.t_direct_est / rep.plan.t_smart_est)
    assert sum(ratios) / len(ratios) >= 10


def test_low_sigma_frontier_cheaper_on_average():
    import math
    from zxcut.generators import CircuitSpec, gen_clifford_t
    cm = CostModel()
    means = {}
    for sigma in (2.0, math.inf):
        tot = cnt = 0
        for n in (16, 20):
            for d in (150, 250):
                for i in range(3):
                    c = gen_clifford_t(CircuitSpec(n, d, sigma, 700 + i))
                    g = clifford_simplify(plug(diagram_from_circuit(c),
                                               "+" * n, "+" * n))
                    plan = choose_k(g, cm)
                    tot += math.log2(plan.t_smart_est)
                    cnt += 1
        means[sigma] = tot / cnt
    assert means[2.0] < means[math.inf]
