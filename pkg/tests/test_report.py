import json

import jsonschema
import pytest

from matforge.report import REPORT_SCHEMA, VerificationReport, stopwatch


def test_fail_needs_witness():
    with pytest.raises(ValueError):
        VerificationReport("x", {}, False)
    VerificationReport("x", {}, False, {"why": 1})


def test_roundtrip_and_schema():
    rep = VerificationReport("lem:polynomial", {"r": 3}, True, None, 7, 12)
    d = json.loads(rep.to_json())
    jsonschema.validate(d, REPORT_SCHEMA)
    assert d["verdict"] == "pass"
    assert VerificationReport.from_dict(d) == rep
    bad = {"claim": "c", "params": {}, "verdict": "fail", "elapsed_ms": 0}
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(bad, REPORT_SCHEMA)


def test_stopwatch_freezes():
    with stopwatch() as sw:
        sum(range(1000))
    first = sw.ms
    sum(range(10 ** 6))
    assert sw.ms == first
