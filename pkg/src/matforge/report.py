"""Structured outcome of a batch check, serialized as one JSON line."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any


@dataclass
class VerificationReport:
    claim: str
    params: dict = field(default_factory=dict)
    verdict: bool = True
    witness: Any = None
    seed: int | None = None
    elapsed_ms: int = 0

    def __post_init__(self):
        if not self.verdict and self.witness is None:
            raise ValueError(f"failing report for {self.claim} needs a witness")

    @property
    def passed(self) -> bool:
        return bool(self.verdict)

    def to_dict(self) -> dict:
        d = {"claim": self.claim, "params": self.params,
             "verdict": "pass" if self.verdict else "fail"}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.seed is not None:
            d["seed"] = self.seed
        d["elapsed_ms"] = self.elapsed_ms
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(d["claim"], d.get("params", {}), d["verdict"] == "pass",
                   d.get("witness"), d.get("seed"), d.get("elapsed_ms", 0))


REPORT_SCHEMA = {
    "type": "object",
    "required": ["claim", "params", "verdict", "elapsed_ms"],
    "properties": {
        "claim": {"type": "string"},
        "params": {"type": "object"},
        "verdict": {"enum": ["pass", "fail"]},
        "witness": {},
        "seed": {"type": "integer"},
        "elapsed_ms": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
    "if": {"properties": {"verdict": {"const": "fail"}}},
    "then": {"required": ["witness"]},
}


class Stopwatch:
    def __init__(self):
        self.start = time.perf_counter()
        self.stop: float | None = None

    @property
    def ms(self) -> int:
        end = time.perf_counter() if self.stop is None else self.stop
        return int((end - self.start) * 1000)


@contextmanager
def stopwatch():
    sw = Stopwatch()
    try:
        yield sw
    finally:
        sw.stop = time.perf_counter()
