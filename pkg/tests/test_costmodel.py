import math

import pytest

from zxcut.costmodel import DEFAULTS, CostModel


def test_defaults_match_reference_rates():
    cm = CostModel()
    assert cm.alpha == 0.32
    assert cm.r_decomp == 1730
    assert cm.r_precomp == 21400
    assert cm.r_crossref == 412000
    assert cm.real_run_threshold_secs == 100


def test_t0_single_clifford_evaluation():
    cm = CostModel()
    assert cm.estimate_direct(0) == pytest.approx(1 / 1730)


def test_t50_direct_estimate():
    cm = CostModel()
    # 2^(0.32*50) / 1730 = 2^16 / 1730 ~ 37.9 s
    assert cm.estimate_direct(50) == pytest.approx(2 ** 16 / 1730)
    assert cm.estimate_direct(50) == pytest.approx(37.9, abs=0.05)


def test_estimate_monotone():
    cm = CostModel()
    prev = -1.0
    for t in range(0, 80, 5):
        cur = cm.estimate_direct(t)
        assert cur > prev
        prev = cur
    assert cm.estimate_smart(100, 100) < cm.estimate_smart(200, 100)
    assert cm.estimate_smart(100, 100) < cm.estimate_smart(100, 300)


def test_equal_rates_reduce_to_count_minimisation():
    cm = CostModel(r_decomp=1000, r_precomp=1000, r_crossref=1000, t_overhead=0)
    a = cm.estimate_smart(120, 80)
    b = cm.estimate_smart(150, 60)
    assert (a < b) == (120 + 80 < 150 + 60)


def test_config_roundtrip_json(tmp_path):
    cm = CostModel(alpha=0.4, r_decomp=2000, t_overhead=1.5)
    path = tmp_path / "cm.json"
    cm.save(str(path))
    back = CostModel.load(str(path))
    assert back == cm
    text = path.read_text()
    for key in DEFAULTS:
        assert key in text  # documented camelCase keys


def test_config_key_value_format(tmp_path):
    path = tmp_path / "cm.cfg"
    path.write_text("alpha = 0.35\nrDecomp = 1500  # local measurement\n")
    cm = CostModel.load(str(path))
    assert cm.alpha == 0.35
    assert cm.r_decomp == 1500
    assert cm.r_precomp == DEFAULTS["rPrecomp"]


def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError):
        CostModel.from_config({"bogus": 1})


def test_validation():
    with pytest.raises(ValueError):
        CostModel(alpha=0)
    with pytest.raises(ValueError):
        CostModel(r_decomp=-1)


def test_log2_seconds():
    assert CostModel.log2_seconds(8.0) == 3.0
    assert CostModel.log2_seconds(0.0) == -math.inf
