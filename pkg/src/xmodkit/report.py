"""Pass/fail rows shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None
    tag: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        d = {"name": self.name, "status": self.status, "witness": _plain(self.witness)}
        if self.tag:
            d["tag"] = self.tag
        return d


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, witness: Any = None, tag: str = "") -> Check:
        c = Check(name, bool(passed), None if passed else witness, tag)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.tag))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __len__(self) -> int:
        return len(self.checks)


def compare_maps(f, g):
    """None when the two maps agree, else the first element where they differ."""
    a, b = np.asarray(f.map), np.asarray(g.map)
    if a.shape != b.shape:
        return ("shape", a.shape, b.shape)
    bad = np.flatnonzero(a != b)
    if bad.size:
        x = int(bad[0])
        return (x, int(a[x]), int(b[x]))
    return None


def is_identity_map(f) -> bool:
    return f.dom.order == f.cod.order and bool(np.array_equal(f.map, np.arange(f.dom.order)))


def _plain(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if x is None or isinstance(x, (int, float, str, bool)):
        return x
    return repr(x)
