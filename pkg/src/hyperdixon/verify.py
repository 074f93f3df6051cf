"""Grid sweeps that check every identity numerically and tally the outcome.

Each grid point is classified exactly once:

* ``Pass`` / ``Fail`` -- both sides evaluated, residual compared to tolerance;
* ``PoleSkip`` -- a Gamma argument or series denominator sits on a pole;
* ``SlowSkip`` -- some series hit its term budget before converging.

Reports are deterministic for a given grid and seed: random axes come from a
seeded ``random.Random`` and outcomes are sorted by coordinates.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import random
import re
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import product

from .dixon import SUPPORTED_PAIRS, SYMMETRY_PAIRS, DixonCase, dixon_oracle, dixon_sum
from .errors import (
    ConfigError,
    DivisionByZeroError,
    DomainError,
    IndeterminateError,
    PoleError,
)
from .series import SeriesControl, SeriesResult
from .transform import (
    LIMITING_CASES,
    SPECIAL_CASES,
    GeneralTransformSpec,
    TransformPoint,
    exton_general_lhs,
    exton_general_rhs,
    exton_lhs_theorem,
    exton_rhs_theorem,
    limiting_case,
    reduction_2_2_rhs,
    special_case,
    srivastava_identity_check,
)

DEFAULT_SEED = 20140601

THEOREM_AXES = {
    "b": (0.3, 0.8, 1.6),
    "d": (0.6, 1.1, 1.7, 2.35),
    "x": (-0.9, -0.5, -0.2, 0.2, 0.5, 0.75),
}
LIMIT_AXES = {"d": THEOREM_AXES["d"], "x": THEOREM_AXES["x"]}
SRIVASTAVA_AXES = {"a": (0.6, 1.0, 1.8), "x": (-0.6, -0.2, 0.2, 0.6, 0.9)}

TOL_TABLES = 1e-9
TOL_TABLES_TERMINATING = 1e-11
TOL_TRANSFORM = 1e-8
TOL_SRIVASTAVA = 1e-11
SKIP_WARNING_FRACTION = 0.2

# Direct sums of 3F2(1) converge algebraically; a tighter per-term cutoff
# keeps the truncated tail well under the table tolerance.
ORACLE_CONTROL = SeriesControl(rel_tol=1e-16)
DIXON_MARGIN_RANGE = (3.5, 6.0)
DIXON_BC_RANGE = (-0.9, 2.0)
DIXON_TERMINATING_A_RANGE = (0.3, 2.5)
DIXON_MAX_N = 8
POLE_CLEARANCE = 0.1


class Classification(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    POLE_SKIP = "PoleSkip"
    SLOW_SKIP = "SlowSkip"


_CELL_KINDS = ("DIXON_CELL", "THEOREM_21", "REDUCTION_CHAIN")
_REQUIRED_AXES = {
    "DIXON_CELL": ("a", "b", "c"),
    "THEOREM_21": ("b", "d", "x"),
    "REDUCTION_CHAIN": ("b", "d", "x"),
    "SRIVASTAVA": ("a", "x"),
    "GENERAL_13": ("d", "x", "y"),
    **{cid: ("b", "d", "x") for cid in SPECIAL_CASES},
    **{cid: ("d", "x") for cid in LIMITING_CASES},
}
_CELL_RE = re.compile(r"^([A-Z_0-9]+)\((-?\d+),\s*(-?\d+)\)$")


def parse_identity(identity: str) -> tuple[str, tuple[int, int] | None]:
    """Split ``"THEOREM_21(1,2)"`` into ``("THEOREM_21", (1, 2))``."""
    m = _CELL_RE.match(identity.strip())
    if m:
        kind, cell = m.group(1), (int(m.group(2)), int(m.group(3)))
        if kind not in _CELL_KINDS:
            raise ConfigError(f"identity {kind!r} does not take an (i, j) cell")
        allowed = SUPPORTED_PAIRS | SYMMETRY_PAIRS if kind == "DIXON_CELL" else SUPPORTED_PAIRS
        if cell not in allowed:
            raise ConfigError(f"{identity}: cell {cell} is not supported")
        return kind, cell
    kind = identity.strip()
    if kind in _CELL_KINDS:
        raise ConfigError(f"identity {kind!r} needs an (i, j) cell, e.g. {kind}(0,0)")
    if kind not in _REQUIRED_AXES:
        raise ConfigError(f"unknown identity {identity!r}")
    return kind, None


def cell_id(kind: str, cell: tuple[int, int]) -> str:
    return f"{kind}({cell[0]},{cell[1]})"


@dataclass(frozen=True)
class GridSpec:
    """An identity plus the sample points to check it at.

    Points are the cartesian product of ``axes`` unless ``points`` lists
    explicit coordinate mappings.
    """

    identity: str
    axes: Mapping[str, tuple[float, ...]] = field(default_factory=dict)
    tolerance: float = TOL_TRANSFORM
    seed: int = DEFAULT_SEED
    points: tuple[Mapping[str, float], ...] | None = None

    def validate(self) -> tuple[str, tuple[int, int] | None]:
        kind, cell = parse_identity(self.identity)
        if not self.tolerance > 0:
            raise ConfigError(f"tolerance must be positive, got {self.tolerance!r}")
        required = _REQUIRED_AXES[kind]
        if self.points is not None:
            for pt in self.points:
                missing = [k for k in required if k not in pt]
                if missing:
                    raise ConfigError(f"{self.identity}: point {dict(pt)} lacks {missing}")
        else:
            for k in required:
                if not self.axes.get(k):
                    raise ConfigError(f"{self.identity}: axis {k!r} is missing or empty")
        return kind, cell

    def iter_points(self) -> Iterable[dict[str, float]]:
        if self.points is not None:
            yield from (dict(p) for p in self.points)
            return
        names = sorted(self.axes)
        for values in product(*(self.axes[n] for n in names)):
            yield dict(zip(names, values))


@dataclass(frozen=True)
class PointOutcome:
    identity: str
    coordinates: dict[str, float]
    classification: Classification
    rel_residual: float | None
    tolerance: float
    detail: str = ""

    def record(self) -> dict:
        return {
            "identity": self.identity,
            "coords": self.coordinates,
            "class": self.classification.value,
            "residual": self.rel_residual,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerificationReport:
    grid: GridSpec
    outcomes: tuple[PointOutcome, ...]
    max_residual: float | None
    counts: dict[str, int]
    warnings: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.counts[Classification.FAIL.value] == 0

    @property
    def skip_fraction(self) -> float:
        skips = self.counts[Classification.POLE_SKIP.value] + self.counts[Classification.SLOW_SKIP.value]
        return skips / len(self.outcomes) if self.outcomes else 0.0

    def summary(self) -> dict:
        return {
            "identity": self.grid.identity,
            "tolerance": self.grid.tolerance,
            "seed": self.grid.seed,
            "points": len(self.outcomes),
            "counts": dict(self.counts),
            "max_residual": self.max_residual,
            "warnings": list(self.warnings),
        }


def _sort_key(outcome: PointOutcome):
    return (outcome.identity, tuple(sorted(outcome.coordinates.items())))


def build_report(grid: GridSpec, outcomes: Iterable[PointOutcome]) -> VerificationReport:
    ordered = tuple(sorted(outcomes, key=_sort_key))
    tally = Counter(o.classification.value for o in ordered)
    counts = {c.value: tally.get(c.value, 0) for c in Classification}
    residuals = [o.rel_residual for o in ordered if o.rel_residual is not None]
    report = VerificationReport(grid, ordered, max(residuals) if residuals else None, counts)
    if ordered and report.skip_fraction > SKIP_WARNING_FRACTION:
        warning = f"{report.skip_fraction:.0%} of points skipped (threshold {SKIP_WARNING_FRACTION:.0%})"
        report = VerificationReport(grid, ordered, report.max_residual, counts, (warning,))
    return report


# -- per-identity evaluation ---------------------------------------------------

class _Slow(Exception):
    pass


def _need(*results: SeriesResult) -> None:
    if not all(r.usable for r in results):
        raise _Slow("series exceeded its term budget")


def _residual(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def _general_spec(p: Mapping[str, float]) -> GeneralTransformSpec:
    a_list = [p[k] for k in sorted((k for k in p if re.fullmatch(r"a\d+", k)), key=lambda k: int(k[1:]))]
    h_list = [p[k] for k in sorted((k for k in p if re.fullmatch(r"h\d+", k)), key=lambda k: int(k[1:]))]
    return GeneralTransformSpec(a_list, h_list, p["d"], p["x"], p["y"])


def _evaluate(kind: str, cell, p: Mapping[str, float]) -> float:
    """Residual of one identity at one point (raises on poles / slow series)."""
    if kind == "DIXON_CELL":
        case = DixonCase(p["a"], p["b"], p["c"], *cell)
        oracle = dixon_oracle(case, ORACLE_CONTROL)
        _need(oracle)
        return _residual(dixon_sum(case), oracle.value)
    if kind in ("THEOREM_21", "REDUCTION_CHAIN"):
        pt = TransformPoint(p["b"], p["d"], cell[0], cell[1], p["x"])
        lhs = exton_lhs_theorem(pt)
        rhs = exton_rhs_theorem(pt)
        if kind == "THEOREM_21":
            _need(lhs, rhs)
            return _residual(lhs.value, rhs.value)
        mid = reduction_2_2_rhs(pt)
        _need(lhs, mid, rhs)
        return max(
            _residual(lhs.value, mid.value),
            _residual(mid.value, rhs.value),
            _residual(lhs.value, rhs.value),
        )
    if kind == "GENERAL_13":
        spec = _general_spec(p)
        lhs, rhs = exton_general_lhs(spec), exton_general_rhs(spec)
        _need(lhs, rhs)
        return _residual(lhs.value, rhs.value)
    if kind == "SRIVASTAVA":
        pair = srivastava_identity_check(p["a"], p["x"])
    elif kind in SPECIAL_CASES:
        pair = special_case(kind, p["b"], p["d"], p["x"])
    else:
        pair = limiting_case(kind, p["d"], p["x"])
    _need(pair.lhs, pair.rhs)
    return pair.rel_residual


def _classify(identity: str, kind: str, cell, p: dict[str, float], tolerance: float) -> PointOutcome:
    try:
        r = _evaluate(kind, cell, p)
    except (PoleError, IndeterminateError, DivisionByZeroError) as exc:
        return PointOutcome(identity, p, Classification.POLE_SKIP, None, tolerance, str(exc))
    except _Slow as exc:
        return PointOutcome(identity, p, Classification.SLOW_SKIP, None, tolerance, str(exc))
    except DomainError as exc:
        raise ConfigError(f"{identity}: point {p} is outside the domain: {exc}") from exc
    cls = Classification.PASS if r <= tolerance else Classification.FAIL
    return PointOutcome(identity, p, cls, r, tolerance)


def run_grid(spec: GridSpec) -> VerificationReport:
    """Evaluate ``spec.identity`` at every grid point and tally the outcomes."""
    kind, cell = spec.validate()
    outcomes = [_classify(spec.identity, kind, cell, p, spec.tolerance) for p in spec.iter_points()]
    return build_report(spec, outcomes)


# -- randomized grids ----------------------------------------------------------

def _clear_of_poles(values: Iterable[float]) -> bool:
    for v in values:
        if v <= POLE_CLEARANCE and abs(v - round(v)) < POLE_CLEARANCE:
            return False
    return True


def sample_dixon_case(rng: random.Random, i: int, j: int, terminating: bool) -> DixonCase:
    """Random case for cell (i, j) with every Gamma argument and series
    parameter at least ``POLE_CLEARANCE`` from a pole.

    Convergent draws fix the margin ``a - 2b - 2c + 2 + 2i + j`` (which is
    the decay exponent of the series terms) inside ``DIXON_MARGIN_RANGE``;
    terminating draws use ``b = -n`` with ``n <= DIXON_MAX_N``.
    """
    while True:
        c = rng.uniform(*DIXON_BC_RANGE)
        if terminating:
            b = float(-rng.randint(0, DIXON_MAX_N))
            a = rng.uniform(*DIXON_TERMINATING_A_RANGE)
            params = [a, c]
        else:
            b = rng.uniform(*DIXON_BC_RANGE)
            margin = rng.uniform(*DIXON_MARGIN_RANGE)
            a = margin - 2 - 2 * i - j + 2 * b + 2 * c
            params = [a, b, c]
        case = DixonCase(a, b, c, i, j)
        if _clear_of_poles(case.gamma_arguments() + params + list(case.series_params().denominator)):
            return case


def validate_tables(samples_per_cell: int = 50, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Check the closed form of every printed cell against the direct series.

    A third of the draws per cell are terminating (``b = -n``) and are held
    to ``TOL_TABLES_TERMINATING``; the rest converge and use ``TOL_TABLES``.
    """
    if samples_per_cell < 1:
        raise ConfigError("samples_per_cell must be at least 1")
    rng = random.Random(seed)
    outcomes = []
    points = []
    for cell in sorted(SUPPORTED_PAIRS):
        identity = cell_id("DIXON_CELL", cell)
        for k in range(samples_per_cell):
            terminating = k % 3 == 0
            case = sample_dixon_case(rng, *cell, terminating)
            p = {"a": case.a, "b": case.b, "c": case.c}
            tol = TOL_TABLES_TERMINATING if terminating else TOL_TABLES
            outcomes.append(_classify(identity, "DIXON_CELL", cell, p, tol))
            points.append({**p, "i": cell[0], "j": cell[1]})
    grid = GridSpec("DIXON_TABLES", {}, TOL_TABLES, seed, tuple(points))
    return build_report(grid, outcomes)


_GENERAL_SHAPES = ((0, 0), (1, 0), (0, 1), (1, 1), (2, 1))


def general_transform_points(count: int = 20, seed: int = DEFAULT_SEED) -> tuple[dict[str, float], ...]:
    """Random inputs for the general transform with up to two (a) and one (h).

    Only shapes with ``len(a) <= len(h) + 1`` are drawn, since otherwise the
    left-hand series diverges.
    """
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        n_a, n_h = rng.choice(_GENERAL_SHAPES)
        p = {f"a{k + 1}": rng.uniform(0.2, 2.5) for k in range(n_a)}
        p.update({f"h{k + 1}": rng.uniform(0.2, 2.5) for k in range(n_h)})
        p["d"] = rng.uniform(0.2, 2.5)
        p["x"] = rng.uniform(-0.8, 0.8)
        p["y"] = rng.choice((-0.8, 0.5, 1.0))
        pts.append(p)
    return tuple(pts)


# -- suites --------------------------------------------------------------------

SUITES = ("tables", "theorem", "reduction", "general", "special", "limiting", "srivastava")


def run_suite(name: str, seed: int = DEFAULT_SEED, samples_per_cell: int = 50) -> list[VerificationReport]:
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, seed, samples_per_cell)]
    if name == "tables":
        return [validate_tables(samples_per_cell, seed)]
    if name in ("theorem", "reduction"):
        kind = "THEOREM_21" if name == "theorem" else "REDUCTION_CHAIN"
        return [
            run_grid(GridSpec(cell_id(kind, cell), THEOREM_AXES, TOL_TRANSFORM, seed))
            for cell in sorted(SUPPORTED_PAIRS)
        ]
    if name == "general":
        pts = general_transform_points(20, seed)
        return [run_grid(GridSpec("GENERAL_13", {}, TOL_TRANSFORM, seed, pts))]
    if name == "special":
        return [run_grid(GridSpec(cid, THEOREM_AXES, TOL_TRANSFORM, seed)) for cid in SPECIAL_CASES]
    if name == "limiting":
        return [run_grid(GridSpec(cid, LIMIT_AXES, TOL_TRANSFORM, seed)) for cid in LIMITING_CASES]
    if name == "srivastava":
        return [run_grid(GridSpec("SRIVASTAVA", SRIVASTAVA_AXES, TOL_SRIVASTAVA, seed))]
    raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")


# -- serialization -------------------------------------------------------------

def totals(reports: Sequence[VerificationReport]) -> dict:
    counts = Counter()
    for r in reports:
        counts.update(r.counts)
    residuals = [r.max_residual for r in reports if r.max_residual is not None]
    return {
        "grids": len(reports),
        "points": sum(len(r.outcomes) for r in reports),
        "counts": {c.value: counts.get(c.value, 0) for c in Classification},
        "max_residual": max(residuals) if residuals else None,
        "passed": all(r.passed for r in reports),
    }


def to_json(reports: Sequence[VerificationReport]) -> str:
    doc = {
        "reports": [
            {"summary": r.summary(), "records": [o.record() for o in r.outcomes]} for r in reports
        ],
        "summary": totals(reports),
    }
    return json.dumps(doc, indent=1, sort_keys=True)


def to_csv(reports: Sequence[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["identity", "coords", "class", "residual", "tolerance", "detail"])
    for r in reports:
        for o in r.outcomes:
            rec = o.record()
            w.writerow([
                rec["identity"],
                json.dumps(rec["coords"], sort_keys=True),
                rec["class"],
                "" if rec["residual"] is None else repr(rec["residual"]),
                repr(rec["tolerance"]),
                rec["detail"],
            ])
    return buf.getvalue()


def to_text(reports: Sequence[VerificationReport]) -> str:
    lines = []
    for r in reports:
        s = r.summary()
        c = s["counts"]
        mr = "n/a" if s["max_residual"] is None else f"{s['max_residual']:.2e}"
        status = "ok  " if r.passed else "FAIL"
        lines.append(
            f"{status} {s['identity']:<24} points={s['points']:<5} pass={c['Pass']:<5} fail={c['Fail']:<3} "
            f"pole-skip={c['PoleSkip']:<4} slow-skip={c['SlowSkip']:<3} max-residual={mr} tol={s['tolerance']:.0e}"
        )
        lines.extend(f"     warning: {w}" for w in s["warnings"])
        lines.extend(
            f"     fail at {o.coordinates}: residual {o.rel_residual:.3e}"
            for o in r.outcomes
            if o.classification is Classification.FAIL
        )
    t = totals(reports)
    lines.append(
        f"total: grids={t['grids']} points={t['points']} "
        + " ".join(f"{k}={v}" for k, v in t["counts"].items())
        + f" -> {'PASSED' if t['passed'] else 'FAILED'}"
    )
    return "\n".join(lines)
