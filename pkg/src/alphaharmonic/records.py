"""The verification record shared by the qc checks and the sweep harness."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

CSV_COLUMNS = ("theorem", "alpha", "p", "r", "boundary", "lhs", "rhs", "margin", "nodes", "pass")


def _num(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def _parse_num(text: str):
    if text == "":
        return None
    return float(text)


@dataclass
class VerificationRecord:
    """One checked inequality ``lhs <= rhs`` at one parameter tuple.

    ``passed`` holds exactly when ``margin = rhs - lhs >= -tol``.
    """

    theorem: str
    alpha: float
    p: float | None
    r: float | None
    boundary: str
    lhs: float
    rhs: float
    tol: float = 0.0
    nodes: int = 0
    elapsed: float = 0.0
    notes: str = ""
    margin: float = field(init=False)
    passed: bool = field(init=False)

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        self.margin = self.rhs - self.lhs
        self.passed = bool(self.margin >= -self.tol) and not math.isnan(self.margin)

    def sort_key(self):
        nan = -math.inf
        return (
            self.theorem,
            self.alpha,
            nan if self.p is None else self.p,
            nan if self.r is None else self.r,
            self.boundary,
        )

    def csv_row(self) -> list[str]:
        return [
            self.theorem,
            _num(self.alpha),
            _num(self.p),
            _num(self.r),
            self.boundary,
            _num(self.lhs),
            _num(self.rhs),
            _num(self.margin),
            str(int(self.nodes)),
            "true" if self.passed else "false",
        ]

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "alpha": self.alpha,
            "p": self.p,
            "r": self.r,
            "boundary": self.boundary,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "nodes": int(self.nodes),
            "pass": self.passed,
            "tol": self.tol,
            "elapsed": self.elapsed,
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationRecord":
        return cls(
            theorem=d["theorem"],
            alpha=d["alpha"],
            p=d["p"],
            r=d["r"],
            boundary=d["boundary"],
            lhs=d["lhs"],
            rhs=d["rhs"],
            tol=d.get("tol", 0.0),
            nodes=d.get("nodes", 0),
            elapsed=d.get("elapsed", 0.0),
            notes=d.get("notes", ""),
        )

    @classmethod
    def from_csv_row(cls, row: list[str], tol: float = 0.0) -> "VerificationRecord":
        theorem, alpha, p, r, boundary, lhs, rhs, _margin, nodes, flag = row
        rec = cls(
            theorem=theorem,
            alpha=float(alpha),
            p=_parse_num(p),
            r=_parse_num(r),
            boundary=boundary,
            lhs=float(lhs),
            rhs=float(rhs),
            tol=tol,
            nodes=int(nodes),
        )
        # the tolerance is not a CSV column; the stored verdict is kept as written
        rec.passed = flag == "true"
        return rec
