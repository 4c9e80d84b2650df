"""Parameter sweeps over the theorem checks, sharpness studies and report files."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .boundary import BoundaryFunction, extremal_family, lp_norm, native_lp_norm, parse_boundary
from .constants import constant, sharp_A0
from .core import as_alpha, extension_and_partials, kernel_mean
from .errors import AlphaHarmonicError, ConfigError, ConvergenceError, UnsupportedError
from .means import as_exponent, integral_means
from .qc import verify_thm19, verify_thm110
from .quadrature import TWO_PI, QuadratureSpec, count_nodes
from .records import CSV_COLUMNS, VerificationRecord

__all__ = [
    "SharpnessRow",
    "SweepConfig",
    "THEOREM_IDS",
    "load_config",
    "parse_config",
    "run_sweep",
    "sharpness_study",
    "write_csv",
    "write_json",
]

THEOREM_IDS = ("1.6", "1.6-H", "1.7-A", "1.7-B", "1.7-C", "1.8-D", "1.8-E", "1.8-F", "1.9", "1.10")
# angles at which the pointwise bounds of 1.7 are sampled on each circle
POINTWISE_ANGLES = 64
# means below this are roundoff of vanishing quantities for unit-scale data
SWEEP_ATOL = 1e-13
NONCONVERGENCE = "non-convergence"

_LIST_KEYS = ("theorems", "alpha", "p", "r", "rho")
_KEY_ALIASES = {"theorem": "theorems", "boundaries": "boundary"}


@dataclass(frozen=True)
class SweepConfig:
    """Grids and boundary specs for one sweep.

    Boundary specs may contain ``{alpha}``, ``{p}`` and ``{rho}``; each is
    expanded over the corresponding grid. ``random_boundaries`` adds that many
    seeded trigonometric polynomials of degree 1 to 6.
    """

    theorems: tuple = ("1.6",)
    alpha: tuple = (0.0,)
    p: tuple = (2.0,)
    r: tuple = (0.5,)
    rho: tuple = (0.9,)
    boundary: tuple = ()
    tol: float = 1e-6
    seed: int = 0
    random_boundaries: int = 0

    def __post_init__(self):
        for name in _LIST_KEYS:
            if not getattr(self, name):
                raise ConfigError(f"field {name!r}: grid must be nonempty")
        for a in self.alpha:
            if not a > -1.0:
                raise ConfigError(f"field 'alpha': need alpha > -1, got {a!r}")
        for p in self.p:
            if not p >= 1.0:
                raise ConfigError(f"field 'p': need p >= 1, got {p!r}")
        for r in self.r:
            if not 0.0 <= r < 1.0:
                raise ConfigError(f"field 'r': need 0 <= r < 1, got {r!r}")
        for rho in self.rho:
            if not 0.0 < rho < 1.0:
                raise ConfigError(f"field 'rho': need 0 < rho < 1, got {rho!r}")
        if not self.tol > 0:
            raise ConfigError(f"field 'tol': must be positive, got {self.tol!r}")
        if self.random_boundaries < 0:
            raise ConfigError("field 'random_boundaries': must be nonnegative")
        if not self.boundary and not self.random_boundaries:
            raise ConfigError("field 'boundary': no boundary data given")
        for t in self.theorems:
            if not _selects(t):
                raise ConfigError(f"field 'theorems': unknown theorem id {t!r}")

    def boundary_specs(self) -> list[str]:
        specs = list(self.boundary)
        for i in range(self.random_boundaries):
            specs.append(f"trigpoly:{self.seed + i},{1 + i % 6}")
        return specs


def _selects(theorem_id: str) -> list[str]:
    return [t for t in THEOREM_IDS if t == theorem_id or t.startswith(theorem_id + "-")]


def _float(text: str) -> float:
    return float(text.strip())


def parse_config(text: str, source: str = "<config>") -> SweepConfig:
    """Parse flat ``key = value`` text; lists are comma separated.

    Boundary specs contain commas themselves, so several specs on one line are
    separated by ``;`` and the ``boundary`` key may be repeated.
    """
    values: dict = {}
    boundaries: list[str] = []
    fields = {f for f in SweepConfig.__dataclass_fields__}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}, line {lineno}: expected key = value, got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = _KEY_ALIASES.get(key, key)
        if key not in fields:
            raise ConfigError(f"{source}, line {lineno}, field {key!r}: unknown key")
        try:
            if key == "boundary":
                boundaries.extend(s.strip() for s in value.split(";") if s.strip())
            elif key == "theorems":
                values[key] = tuple(s.strip() for s in value.split(",") if s.strip())
            elif key in _LIST_KEYS:
                values[key] = tuple(_float(s) for s in value.split(",") if s.strip())
            elif key == "tol":
                values[key] = _float(value)
            else:
                values[key] = int(value)
        except ValueError as exc:
            raise ConfigError(f"{source}, line {lineno}, field {key!r}: {exc}") from None
    if boundaries:
        values["boundary"] = tuple(boundaries)
    try:
        return SweepConfig(**values)
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(path) -> SweepConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!s}: {exc.strerror}") from None
    return parse_config(text, source=str(path))


# --- sweep -------------------------------------------------------------------


def _expand(spec: str, alpha: float, p: float, rho: float) -> str:
    return spec.replace("{alpha}", repr(alpha)).replace("{p}", repr(p)).replace("{rho}", repr(rho))


def _norm(f: BoundaryFunction, p: float, quad) -> float:
    known = f.known_lp_norm(p)
    if known is not None:
        return float(known)
    if f.native is not None:
        return native_lp_norm(f, p, quad)
    return lp_norm(f, p, quad)


def _failed(theorem, alpha, p, r, label, exc: Exception) -> VerificationRecord:
    kind = NONCONVERGENCE if isinstance(exc, ConvergenceError) else "error"
    return VerificationRecord(
        theorem=theorem, alpha=alpha, p=p, r=r, boundary=label,
        lhs=math.nan, rhs=math.nan, notes=f"{kind}: {exc}",
    )


class _Sweep:
    def __init__(self, config: SweepConfig, quad: QuadratureSpec):
        self.config = config
        self.quad = quad
        self.selected = {t for tid in config.theorems for t in _selects(tid)}
        self._boundaries: dict = {}
        self._norms: dict = {}
        self._partial_means: dict = {}

    def boundary(self, spec: str) -> BoundaryFunction:
        if spec not in self._boundaries:
            self._boundaries[spec] = parse_boundary(spec)
        return self._boundaries[spec]

    def norm(self, f: BoundaryFunction, p: float) -> float:
        key = (f.label, p)
        if key not in self._norms:
            self._norms[key] = _norm(f, p, self.quad)
        return self._norms[key]

    def specs(self, alpha: float, p: float):
        seen = []
        for spec in self.config.boundary_specs():
            for rho in self.config.rho:
                s = _expand(spec, alpha, p, rho)
                if s not in seen:
                    seen.append(s)
        return seen

    def record(self, theorem, alpha, p, r, f, compute, tol_scale):
        """Run ``compute() -> (lhs, rhs)`` under a node counter; errors become failed records."""
        start = time.perf_counter()
        try:
            with count_nodes() as used:
                lhs, rhs = compute()
        except AlphaHarmonicError as exc:
            return _failed(theorem, alpha, p, r, f.label, exc)
        return VerificationRecord(
            theorem=theorem, alpha=alpha, p=p, r=r, boundary=f.label, lhs=lhs, rhs=rhs,
            tol=self.config.tol * tol_scale, nodes=used[0], elapsed=time.perf_counter() - start,
        )

    def run(self) -> list[VerificationRecord]:
        out: list[VerificationRecord] = []
        cfg = self.config
        for alpha in cfg.alpha:
            for p in cfg.p:
                for spec in self.specs(alpha, p):
                    out.extend(self.means_and_pointwise(alpha, p, spec))
            if self.selected & {"1.9", "1.10"}:
                for spec in self.specs(alpha, cfg.p[0]):
                    out.extend(self.qc_checks(alpha, spec))
        return sorted(out, key=VerificationRecord.sort_key)

    def means_and_pointwise(self, alpha, p, spec):
        out = []
        try:
            f = self.boundary(spec)
            nf = self.norm(f, p)
        except AlphaHarmonicError as exc:
            return [_failed(t, alpha, p, None, spec, exc) for t in sorted(self.selected) if t not in ("1.9", "1.10")]
        sel = self.selected
        q = self.quad
        means_seen = []
        for r in self.config.r:
            if "1.6" in sel or "1.6-H" in sel:

                def m_u(r=r):
                    g = lambda z: extension_and_partials(alpha, f, z, q, full=False)[0]  # noqa: E731
                    return integral_means(g, r, p, q), kernel_mean(alpha, r) * nf

                rec = self.record("1.6", alpha, p, r, f, m_u, nf)
                means_seen.append(rec)
                if "1.6" in sel:
                    out.append(rec)
            if 1.0 < p < math.inf:
                for kind in "ABC":
                    if f"1.7-{kind}" in sel:
                        out.append(self.record(f"1.7-{kind}", alpha, p, r, f, self._pointwise(kind, alpha, p, r, f, nf), nf))
            for kind in "DEF":
                if f"1.8-{kind}" in sel:
                    out.append(self.record(f"1.8-{kind}", alpha, p, r, f, self._means(kind, alpha, p, r, f, nf), nf))
        if "1.6-H" in sel and means_seen:
            lhs = max(rec.lhs for rec in means_seen)
            out.append(
                VerificationRecord(
                    theorem="1.6-H", alpha=alpha, p=p, r=max(self.config.r), boundary=f.label,
                    lhs=lhs, rhs=nf, tol=self.config.tol * nf,
                    nodes=sum(rec.nodes for rec in means_seen),
                    notes=f"sup over r grid {tuple(self.config.r)!r}",
                )
            )
        return out

    def _pointwise(self, kind, alpha, p, r, f, nf):
        def compute():
            th = TWO_PI * np.arange(POINTWISE_ANGLES) / POINTWISE_ANGLES
            _, parts = extension_and_partials(alpha, f, r * np.exp(1j * th), self.quad, full=True)
            if kind == "A":
                vals = np.abs(parts.u_r)
            elif kind == "B":
                vals = np.abs(parts.u_theta)
            else:
                vals = np.maximum(np.abs(parts.u_z), np.abs(parts.u_zbar))
            weight = (1.0 - r * r) ** (1.0 + 1.0 / p)
            return weight * float(np.max(vals)), constant(kind, alpha, p, r).value * nf

        return compute

    def _means(self, kind, alpha, p, r, f, nf):
        def compute():
            key = (alpha, p, r, f.label)
            if key not in self._partial_means:
                # all four partials share one pass over the circle
                def g(z):
                    parts = extension_and_partials(alpha, f, z, self.quad, full=True)[1]
                    return np.stack([parts.u_r, parts.u_theta, parts.u_z, parts.u_zbar])

                self._partial_means[key] = integral_means(g, r, p, self.quad)
            m = self._partial_means[key]
            lhs = {"D": m[0], "E": m[1], "F": max(m[2], m[3])}[kind]
            return (1.0 - r * r) * float(lhs), constant(kind, alpha, p, r).value * nf

        return compute

    def qc_checks(self, alpha, spec):
        radii = tuple(r for r in self.config.r if r > 0)
        out = []
        try:
            f = self.boundary(spec)
        except AlphaHarmonicError as exc:
            return [_failed(t, alpha, None, None, spec, exc) for t in ("1.9", "1.10") if t in self.selected]
        for theorem, run in (
            ("1.9", lambda: verify_thm19(alpha, f, radii, self.quad)),
            ("1.10", lambda: verify_thm110(alpha, f, (radii, 512), self.quad)),
        ):
            if theorem not in self.selected or not radii:
                continue
            try:
                out.extend(run())
            except AlphaHarmonicError as exc:
                out.append(_failed(theorem, alpha, None, None, f.label, exc))
        return out


def run_sweep(config: SweepConfig, quad: QuadratureSpec | None = None) -> list[VerificationRecord]:
    """One record per (theorem, parameter tuple, boundary), sorted by that tuple.

    A failing or non-convergent check yields a failed record; the sweep goes on.
    """
    quad = quad or QuadratureSpec(tol=min(1e-10, config.tol * 1e-3), atol=SWEEP_ATOL)
    return _Sweep(config, quad).run()


def nonconvergent(records) -> bool:
    return any(rec.notes.startswith(NONCONVERGENCE) for rec in records)


# --- reports -----------------------------------------------------------------


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()


def write_csv(records, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(records_to_csv(records))


def write_json(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([rec.to_dict() for rec in records], fh, indent=2)
        fh.write("\n")


def read_csv(path) -> list[VerificationRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise ConfigError(f"{path!s}: not a verification CSV")
    return [VerificationRecord.from_csv_row(row) for row in rows[1:]]


# --- sharpness ---------------------------------------------------------------


@dataclass(frozen=True)
class SharpnessRow:
    rho: float
    ratio: float
    target: float
    error: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "error", abs(self.ratio - self.target))


def _sharpness_target(kind: str, alpha: float, p: float) -> float:
    if kind == "A":
        return sharp_A0(p)
    if kind in "BC":
        return constant(kind, alpha, p).value
    return constant(kind, alpha).value


def sharpness_study(kind: str, alpha, p, rho_list, quad: QuadratureSpec | None = None) -> list[SharpnessRow]:
    """Normalised ratios of the extremal families at ``z = rho``.

    A, B, C use ``(1 - rho^2)^(1 + 1/p) |partial u(rho)| / ||f_rho||_p`` with the
    partial ``u_r``, ``u_theta``, ``u_z``; D, E, F use ``(1 - rho^2) |partial u(rho)|
    / ||f_rho||_p``. The pointwise value at ``z = rho`` is where the family
    concentrates, so for D, E, F it is the ``p = inf`` mean.
    """
    a = as_alpha(alpha).alpha
    if kind not in "ABCDEF" or len(kind) != 1:
        raise UnsupportedError(f"kind must be one of A..F, got {kind!r}")
    pv = as_exponent(p).p
    if kind == "B":
        if pv == 1.0 or math.isinf(pv) or a + 2.0 / pv < 0:
            raise UnsupportedError(
                f"sharpness of B is established only for 1 < p < inf with alpha + 2/p >= 0 "
                f"(got alpha={a!r}, p={pv!r})"
            )
    elif a != 0.0:
        raise UnsupportedError(f"sharpness of {kind} is established only for alpha = 0 (got alpha={a!r})")
    if kind in "AC" and (pv == 1.0 or math.isinf(pv)):
        raise UnsupportedError(f"sharpness of {kind} needs 1 < p < inf (got p={pv!r})")
    quad = quad or QuadratureSpec(tol=1e-11)
    target = _sharpness_target(kind, a, pv)
    comp = {"A": "u_r", "B": "u_theta", "C": "u_z", "D": "u_r", "E": "u_theta", "F": "u_z"}[kind]
    rows = []
    for rho in rho_list:
        rho = float(rho)
        f = extremal_family(kind, a, pv, rho)
        nf = _norm(f, pv, quad)
        _, parts = extension_and_partials(a, f, complex(rho), quad, full=True)
        weight = (1.0 - rho * rho) ** ((1.0 + 1.0 / pv) if kind in "ABC" else 1.0)
        rows.append(SharpnessRow(rho=rho, ratio=weight * abs(getattr(parts, comp)) / nf, target=target))
    return rows


def sharpness_to_csv(kind, alpha, p, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("kind", "alpha", "p", "rho", "ratio", "target", "error"))
    for row in rows:
        writer.writerow((kind, repr(float(alpha)), repr(float(p)), repr(row.rho), repr(row.ratio), repr(row.target), repr(row.error)))
    return buf.getvalue()
