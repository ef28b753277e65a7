"""An explicit elementary abelian 3-subgroup ``(Z/3)^g`` of ``Sp(2g, Z)``.

Generator ``m_i`` is the identity except for the order-3 block
``A = [[-1, -1], [1, 0]]`` in rows and columns ``2i-1, 2i``.  The form
``J`` is block diagonal with ``g`` copies of ``[[0, 1], [-1, 0]]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import VerificationFailure

SCHEMA = "torsion-obstruct/1"

A_BLOCK = np.array([[-1, -1], [1, 0]], dtype=np.int64)
J_BLOCK = np.array([[0, 1], [-1, 0]], dtype=np.int64)


def standard_form(g: int) -> np.ndarray:
    if g < 1:
        raise ValueError("g must be >= 1")
    return np.kron(np.eye(g, dtype=np.int64), J_BLOCK)


def torsion_block(i: int, g: int) -> np.ndarray:
    """``m_i`` in ``Sp(2g, Z)`` (1-based ``i``)."""
    if g < 1 or not 1 <= i <= g:
        raise IndexError(f"block index {i} out of range for g = {g}")
    m = np.eye(2 * g, dtype=np.int64)
    k = 2 * (i - 1)
    m[k:k + 2, k:k + 2] = A_BLOCK
    return m


@dataclass
class WitnessReport:
    g: int
    checks: dict[str, bool] = field(default_factory=dict)
    group_order: int = 0
    failure: str | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None and all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "g": self.g,
            "checks": self.checks,
            "group_order": self.group_order,
            "passed": self.passed,
            "failure": self.failure,
        }


def _require(report: WitnessReport, name: str, ok: bool) -> None:
    report.checks[name] = bool(ok)
    if not ok:
        report.failure = name
        raise VerificationFailure(f"g = {report.g}: {name} fails")


def verify_witness(g: int, raise_on_failure: bool = True) -> WitnessReport:
    """Check the symplectic, order, commutation and group-order identities."""
    report = WitnessReport(g)
    ms = [torsion_block(i, g) for i in range(1, g + 1)]
    j = standard_form(g)
    eye = np.eye(2 * g, dtype=np.int64)
    try:
        _require(report, "A^2 + A + I = 0", not (A_BLOCK @ A_BLOCK + A_BLOCK + np.eye(2, dtype=np.int64)).any())
        _require(report, "m_i^T J m_i = J", all(np.array_equal(m.T @ j @ m, j) for m in ms))
        _require(report, "m_i^3 = I", all(np.array_equal(m @ m @ m, eye) for m in ms))
        _require(report, "m_i m_j = m_j m_i", all(np.array_equal(a @ b, b @ a) for a, b in itertools.combinations(ms, 2)))
        powers = [[eye, m, m @ m] for m in ms]
        seen = set()
        cubes_ok = True
        for exps in itertools.product(range(3), repeat=g):
            prod = eye
            for m, e in zip(powers, exps):
                prod = prod @ m[e]
            seen.add(prod.tobytes())
            if any(exps):
                cubes_ok &= np.array_equal(prod @ prod @ prod, eye)
        report.group_order = len(seen)
        _require(report, "|<m_1..m_g>| = 3^g", len(seen) == 3**g)
        _require(report, "exponent 3", cubes_ok)
    except VerificationFailure:
        if raise_on_failure:
            raise
    return report
