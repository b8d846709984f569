import json
import math

import pytest

from wapprox.report import Row, VerdictReport


def ladder(kind, pairs, **kw):
    rep = VerdictReport("t", **kw)
    for n, (lhs, rhs) in enumerate(pairs):
        rep.add("c", n, lhs, rhs, kind=kind)
    return rep


def test_vacuous_rows_never_flip_verdict():
    ok = ladder("bounded", [(1, 1), (2, 1), (1.5, 1)])
    assert ok.passed
    ok.add("c", 9, 0.0, 0.0)
    assert ok.passed
    bad = ladder("bounded", [(1, 1), (1, 1), (100, 1)])
    assert not bad.passed
    bad.add("c", 9, 0.0, 0.0)
    assert not bad.passed


def test_all_vacuous_ladder_passes():
    rep = ladder("bounded", [(0, 0), (0, 0)])
    assert rep.passed and rep.check_verdict("c")[1] == "vacuous"
    assert math.isnan(rep.max_ratio)


def test_bounded_rule_threshold():
    assert ladder("bounded", [(1, 1), (1, 1), (10, 1)]).passed
    assert not ladder("bounded", [(1, 1), (1, 1), (10.01, 1)]).passed
    assert ladder("bounded", [(1, 1), (1, 1), (15, 1)], threshold=20).passed


def test_zero_lhs_rows_do_not_set_the_scale():
    rep = ladder("bounded", [(1, 1), (0, 1), (0, 1), (0, 1), (2, 1)])
    assert rep.passed


def test_infinite_ratio_fails():
    rep = ladder("bounded", [(1, 1), (1, 0)])
    assert not rep.passed
    assert rep.rows[1].ratio == math.inf


def test_upper_rule_allows_decay_but_not_growth():
    assert ladder("upper", [(1, 1), (1e-3, 1), (1e-6, 1)]).passed
    assert not ladder("upper", [(1, 1), (1e-3, 1), (11, 1)]).passed


def test_growth_rule():
    assert ladder("growth", [(1, 1), (1.5, 1), (2.25, 1)]).passed
    assert not ladder("growth", [(1, 1), (1.6, 1)]).passed


@pytest.mark.parametrize("kind,lhs,rhs,tol,ok", [
    ("inequality", 1.0, 1.0, 0.0, True),
    ("inequality", 1.0 + 1e-9, 1.0, 0.0, False),
    ("inequality", 1.0 + 1e-11, 1.0, 1e-10, True),
    ("equality", 1.0, 1.0 + 1e-13, 1e-12, True),
    ("equality", 1.0, 1.01, 1e-12, False),
    ("close", 1e-13, 0.0, 1e-12, True),
    ("target", 1.0 + 1e-7, 1.0, 1e-6, True),
    ("target", 1.1, 1.0, 1e-6, False),
])
def test_row_rules(kind, lhs, rhs, tol, ok):
    assert Row("c", 1, lhs, rhs, kind, tol).ok() is ok


def test_csv_shape_and_determinism():
    rep = ladder("bounded", [(0.1, 0.3), (0.0, 0.0), (2.0, 4.0)])
    rep.runtime = 1.23
    text = rep.to_csv()
    lines = text.splitlines()
    assert lines[0] == "check,n,lhs,rhs,ratio,flag"
    assert lines[2] == "c,1,0,0,nan,vacuous"
    assert lines[3] == "c,2,2,4,0.5,ok"
    other = ladder("bounded", [(0.1, 0.3), (0.0, 0.0), (2.0, 4.0)])
    other.runtime = 9.0
    assert other.to_csv() == text


def test_json_roundtrip():
    rep = ladder("bounded", [(1, 2), (0, 0), (1, 0)])
    d = json.loads(rep.to_json())
    assert d["pass"] is False
    assert d["rows"][1]["ratio"] is None and d["rows"][2]["ratio"] == "inf"
    assert "c" in d["checks"]


def test_summary_mentions_failures():
    rep = ladder("bounded", [(1, 1), (1, 1), (100, 1)])
    assert "FAIL" in rep.summary() and "max/median" in rep.summary()
