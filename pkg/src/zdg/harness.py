"""Ring catalogs, per-ring invariant rows and the theorem checks run over them."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

from . import __version__
from .domination import (
    ENUMERATION_CAP,
    domination_number,
    enumerate_minimum_total_dominating_sets,
    total_domination_number,
)
from .dsl import canonical, compile_spec
from .errors import ZdgError
from .graph import LoopGraph, build_zdg, diameter, girth, is_connected, universal_vertex
from .ring import (
    FiniteRing,
    annihilator_ideal_witness,
    is_z2_times_domain,
    peirce_split,
    zero_divisor_set,
)

INF = math.inf
CLIQUE_CAP = 30

SPECIAL_QUOTIENTS = ("Z2[x]/(x^2)", "Z3[x]/(x^2)", "Z2[x]/(x^3)", "Z4[x]/(x^2+2, 2x)")
MIXED_PRODUCTS = ("Z2 x Z2[x]/(x^2)", "Z2 x Z4")
# girth-infinity rings with gamma = gamma_t = 2
CASE2_SPECS = frozenset(MIXED_PRODUCTS)

CSV_COLUMNS = (
    "spec",
    "order",
    "z_star",
    "gamma",
    "gamma_t",
    "girth",
    "diameter",
    "z2xD",
    "ann_witness",
    "checks_failed",
)


@dataclass(frozen=True)
class Bounds:
    max_zn: int = 200
    max_product_factor: int = 13
    product_arity: int = 4
    include_special: bool = True


@dataclass
class Catalog:
    specs: list[str]
    bounds: Bounds | None = None


@dataclass
class InvariantRow:
    spec: str
    order: int
    z_star: int
    gamma: int | None = None
    gamma_t: float | int | None = None
    girth: float | int | None = None
    diameter: float | int | None = None
    connected: bool | None = None
    z2xD: bool = False
    z2xD_witness: str | None = None
    z2_local4: bool = False
    ann_witness: str | None = None
    universal_vertex: str | None = None
    gamma_witness: list[str] | None = None
    gamma_t_witness: list[str] | None = None
    skip_reason: str | None = None

    @property
    def skipped(self) -> bool:
        return self.skip_reason is not None

    def to_dict(self) -> dict:
        return {k: _jsonable(v) for k, v in asdict(self).items()}

    @classmethod
    def from_dict(cls, data: dict) -> "InvariantRow":
        names = {f.name for f in fields(cls)}
        return cls(**{k: (INF if v == "inf" else v) for k, v in data.items() if k in names})


@dataclass
class CheckResult:
    name: str
    spec: str
    verdict: str  # "pass" | "fail" | "skip"
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "detail": {k: _jsonable(v) for k, v in self.detail.items()}}


@dataclass
class VerificationReport:
    rows: list[InvariantRow]
    checks: list[list[CheckResult]]

    @property
    def failures(self) -> list[CheckResult]:
        return [c for per_ring in self.checks for c in per_ring if c.verdict == "fail"]

    def summary(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for per_ring in self.checks:
            for c in per_ring:
                counts = out.setdefault(c.name, {"pass": 0, "fail": 0, "skip": 0})
                counts[c.verdict] += 1
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row, checks in zip(self.rows, self.checks):
            failed = ";".join(c.name for c in checks if c.verdict == "fail")
            writer.writerow([_cell(getattr(row, col)) for col in CSV_COLUMNS[:-1]] + [failed])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = []
        for row, checks in zip(self.rows, self.checks):
            entry = {col: _jsonable(getattr(row, col)) for col in CSV_COLUMNS[:-1]}
            entry["checks_failed"] = [c.name for c in checks if c.verdict == "fail"]
            entry["checks"] = {c.name: c.to_dict() for c in checks}
            rows.append(entry)
        payload = {"version": __version__, "rows": rows, "summary": self.summary()}
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, tuple):
        return list(v)
    return v


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return str(v)


# ---------------------------------------------------------------------------
# Catalog


def catalog_default(bounds: Bounds | None = None) -> Catalog:
    b = bounds or Bounds()
    if b.max_zn < 0 or b.max_product_factor < 0 or b.product_arity < 0:
        raise ValueError("catalog bounds must be non-negative")
    specs = [f"Z{n}" for n in range(2, b.max_zn + 1)]
    for a in range(2, b.max_product_factor + 1):
        for c in range(a, b.max_product_factor + 1):
            specs.append(f"Z{a} x Z{c}")
    for k in range(3, b.product_arity + 1):
        specs.append(" x ".join(["Z2"] * k))
    if b.include_special:
        specs += SPECIAL_QUOTIENTS
        specs += MIXED_PRODUCTS
    seen = set()
    out = []
    for s in specs:
        s = canonical(s)
        if s not in seen:
            seen.add(s)
            out.append(s)
    return Catalog(out, b)


# ---------------------------------------------------------------------------
# Rows


def z2_times_local4(ring: FiniteRing) -> int | None:
    """Idempotent e splitting R as Z2 x S with S of order 4 and one nonzero zero-divisor.

    The only such S are Z4 and Z2[x]/(x^2).
    """
    for e, _, rest in peirce_split(ring, 2):
        if len(rest) != 4:
            continue
        members = [s for s in rest if s != 0]
        zd = [s for s in members if any(ring.mul(s, t) == 0 for t in members)]
        if len(zd) == 1:
            return e
    return None


def _analyze(spec: str) -> tuple[InvariantRow, FiniteRing | None, LoopGraph | None]:
    try:
        spec = canonical(spec)
        ring = compile_spec(spec)
    except ZdgError as exc:
        return InvariantRow(spec, 0, 0, skip_reason=f"compile error: {exc}"), None, None
    zs = zero_divisor_set(ring)
    if not len(zs):
        return InvariantRow(spec, ring.order, 0, skip_reason="empty zero-divisor graph"), ring, None
    g = build_zdg(ring)
    dom = domination_number(g)
    tot = total_domination_number(g)
    z2 = is_z2_times_domain(ring)
    ann = annihilator_ideal_witness(ring)
    uv = universal_vertex(g)
    row = InvariantRow(
        spec=spec,
        order=ring.order,
        z_star=len(zs),
        gamma=dom.value,
        gamma_t=tot.value,
        girth=girth(g),
        diameter=diameter(g),
        connected=is_connected(g),
        z2xD=z2 is not None,
        z2xD_witness=ring.element_label(z2) if z2 is not None else None,
        z2_local4=z2_times_local4(ring) is not None,
        ann_witness=ring.element_label(ann) if ann is not None else None,
        universal_vertex=g.labels[uv] if uv is not None else None,
        gamma_witness=list(dom.labels(g)),
        gamma_t_witness=list(tot.labels(g)) if tot.witness is not None else None,
    )
    return row, ring, g


def invariant_row(spec: str) -> InvariantRow:
    return _analyze(spec)[0]


# ---------------------------------------------------------------------------
# Checks


def _result(name: str, row: InvariantRow, ok: bool, **detail) -> CheckResult:
    return CheckResult(name, row.spec, "pass" if ok else "fail", detail)


def _skip(name: str, spec: str, reason: str) -> CheckResult:
    return CheckResult(name, spec, "skip", {"reason": reason})


def check_main_theorem(row: InvariantRow) -> CheckResult:
    """Z2 x D gives (gamma, gamma_t) = (1, 2); every other ring has gamma = gamma_t."""
    name = "main_theorem"
    if row.skipped:
        return _skip(name, row.spec, row.skip_reason)
    if row.z2xD:
        ok = row.gamma == 1 and row.gamma_t == 2
    else:
        ok = row.gamma == row.gamma_t
    return _result(name, row, ok, gamma=row.gamma, gamma_t=row.gamma_t, z2xD=row.z2xD)


def check_gamma_one(row: InvariantRow) -> CheckResult:
    name = "gamma_one"
    if row.skipped:
        return _skip(name, row.spec, row.skip_reason)
    ok = (row.gamma == 1) == (row.z2xD or row.ann_witness is not None)
    return _result(name, row, ok, gamma=row.gamma, z2xD=row.z2xD, ann_witness=row.ann_witness)


def check_total_one(row: InvariantRow) -> CheckResult:
    name = "total_one"
    if row.skipped:
        return _skip(name, row.spec, row.skip_reason)
    ok = (row.gamma_t == 1) == (row.ann_witness is not None)
    return _result(name, row, ok, gamma_t=row.gamma_t, ann_witness=row.ann_witness)


def check_girth_consequences(row: InvariantRow) -> CheckResult:
    name = "girth_consequences"
    if row.skipped:
        return _skip(name, row.spec, row.skip_reason)
    big_total = row.gamma_t >= 3
    ok = (not big_total or row.girth == 3)
    ok = ok and (row.girth != 4 or (row.gamma == 2 and row.gamma_t == 2))
    ok = ok and (row.girth not in (4, INF) or row.gamma_t <= 2 or row.z2xD)
    return _result(name, row, ok, gamma=row.gamma, gamma_t=row.gamma_t, girth=row.girth)


def check_girth_inf_cases(row: InvariantRow) -> CheckResult:
    name = "girth_inf_cases"
    if row.skipped:
        return _skip(name, row.spec, row.skip_reason)
    if row.girth != INF:
        return _skip(name, row.spec, f"girth is {row.girth}")
    case2 = row.spec in CASE2_SPECS or row.z2_local4
    if row.z2xD and case2:
        return _result(name, row, False, case="ambiguous")
    if row.z2xD:
        case, expected = 1, (1, 2)
    elif case2:
        case, expected = 2, (2, 2)
    else:
        case, expected = 3, (1, 1)
    ok = (row.gamma, row.gamma_t) == expected
    return _result(name, row, ok, case=case, expected=list(expected), got=[row.gamma, row.gamma_t])


def check_metric_bounds(row: InvariantRow) -> CheckResult:
    name = "metric_bounds"
    if row.skipped:
        return _skip(name, row.spec, row.skip_reason)
    ok = bool(row.connected) and row.diameter <= 3 and row.girth in (3, 4, INF)
    return _result(name, row, ok, connected=row.connected, diameter=row.diameter, girth=row.girth)


def check_row_consistency(row: InvariantRow) -> CheckResult:
    name = "row_consistency"
    if row.skipped:
        return _skip(name, row.spec, row.skip_reason)
    ok = row.gamma <= row.gamma_t and (row.gamma == 1) == (row.universal_vertex is not None)
    return _result(name, row, ok, gamma=row.gamma, gamma_t=row.gamma_t, universal_vertex=row.universal_vertex)


def _clique_check(
    spec: str, ring: FiniteRing | None, g: LoopGraph | None, cap: int, enum_cap: int
) -> CheckResult:
    name = "clique_lemma"
    if g is None:
        return _skip(name, spec, "empty zero-divisor graph")
    if g.n > cap:
        return _skip(name, spec, f"|Z(R)*| = {g.n} exceeds cap {cap}")
    sets, truncated = enumerate_minimum_total_dominating_sets(g, cap=enum_cap)
    if truncated:
        return _skip(name, spec, f"enumeration truncated at {enum_cap} sets")
    for s in sets:
        elems = [g.elements[v] for v in s]
        for i, a in enumerate(elems):
            for b in elems[i + 1 :]:
                if ring.mul(a, b) != 0:
                    return CheckResult(
                        name,
                        spec,
                        "fail",
                        {"set": [g.labels[v] for v in s], "pair": [ring.element_label(a), ring.element_label(b)]},
                    )
    return CheckResult(name, spec, "pass", {"sets": len(sets)})


def check_clique_lemma(spec: str, cap: int = CLIQUE_CAP, enum_cap: int = ENUMERATION_CAP) -> CheckResult:
    """Every minimum total dominating set is pairwise annihilating."""
    _, ring, g = _analyze(spec)
    return _clique_check(canonical(spec), ring, g, cap, enum_cap)


ROW_CHECKS = (
    check_main_theorem,
    check_gamma_one,
    check_total_one,
    check_girth_consequences,
    check_girth_inf_cases,
    check_metric_bounds,
    check_row_consistency,
)


def verify_spec(spec: str, clique_cap: int = CLIQUE_CAP) -> tuple[InvariantRow, list[CheckResult]]:
    row, ring, g = _analyze(spec)
    checks = [check(row) for check in ROW_CHECKS]
    if row.skipped:
        checks.append(_skip("clique_lemma", row.spec, row.skip_reason))
    else:
        checks.append(_clique_check(row.spec, ring, g, clique_cap, ENUMERATION_CAP))
    return row, checks


def _work(args):
    return verify_spec(*args)


def run_all(catalog: Catalog | list[str], jobs: int = 1, clique_cap: int = CLIQUE_CAP) -> VerificationReport:
    specs = catalog.specs if isinstance(catalog, Catalog) else list(catalog)
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    work = [(s, clique_cap) for s in specs]
    if jobs == 1 or len(work) <= 1:
        results = [_work(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_work, work, chunksize=4))
    return VerificationReport([r for r, _ in results], [c for _, c in results])
