"""``zdg`` command line: ring-info, invariants, export, verify, solve.

Exit codes: 0 ok, 1 theorem check failed, 2 parse error, 3 empty graph, 4 I/O.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .domination import domination_number, total_domination_number
from .dsl import canonical, compile_spec
from .errors import EmptyGraphError, GraphFormatError, PresentationError, RingSyntaxError, ZdgError
from .graph import build_zdg, read_graph, to_dot, to_json
from .harness import (
    CSV_COLUMNS,
    ROW_CHECKS,
    Bounds,
    Catalog,
    InvariantRow,
    VerificationReport,
    _cell,
    catalog_default,
    invariant_row,
    run_all,
)
from .ring import annihilator_ideal_witness, is_domain, is_z2_times_domain, zero_divisor_set

EXIT_OK = 0
EXIT_THEOREM = 1
EXIT_PARSE = 2
EXIT_EMPTY = 3
EXIT_IO = 4


@dataclass
class CliConfig:
    cache_dir: Path
    bounds: Bounds = field(default_factory=Bounds)
    jobs: int = 1
    fmt: str = "text"

    def __post_init__(self):
        if self.jobs < 1:
            raise ValueError("worker count must be at least 1")

    @classmethod
    def from_env(cls, **kw) -> "CliConfig":
        root = os.environ.get("ZDG_CACHE_DIR") or Path.home() / ".cache" / "zdg"
        return cls(cache_dir=Path(root), **kw)


class InvariantCache:
    """Append-only JSON-lines cache of invariant rows keyed by canonical spec."""

    def __init__(self, directory: Path):
        self.path = Path(directory) / "invariants.jsonl"

    def get(self, spec: str) -> InvariantRow | None:
        if not self.path.exists():
            return None
        found = None
        with self.path.open(encoding="utf-8") as fh:
            for line in fh:
                try:
                    entry = json.loads(line)
                except json.JSONDecodeError:
                    continue
                if entry.get("spec") == spec and entry.get("version") == __version__:
                    found = entry["row"]
        return InvariantRow.from_dict(found) if found is not None else None

    def put(self, spec: str, row: InvariantRow) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        entry = {"spec": spec, "version": __version__, "row": row.to_dict()}
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, sort_keys=True) + "\n")


def _err(msg: str) -> None:
    print(f"zdg: {msg}", file=sys.stderr)


def _fmt_set(labels) -> str:
    return "{" + ", ".join(labels) + "}"


def _compile(text: str):
    spec = canonical(text)
    return spec, compile_spec(spec)


# ---------------------------------------------------------------------------
# Commands


def cmd_ring_info(args) -> int:
    spec, ring = _compile(args.spec)
    zs = zero_divisor_set(ring)
    z2 = is_z2_times_domain(ring)
    ann = annihilator_ideal_witness(ring)
    info = {
        "ring": spec,
        "order": ring.order,
        "zero_divisors": [ring.element_label(a) for a in zs],
        "z_star": len(zs),
        "domain": is_domain(ring),
        "z2xD_witness": ring.element_label(z2) if z2 is not None else None,
        "ann_witness": ring.element_label(ann) if ann is not None else None,
    }
    if args.format == "json":
        print(json.dumps(info))
        return EXIT_OK
    print(f"ring: {spec}")
    print(f"order: {ring.order}")
    print(f"zero_divisors: {_fmt_set(info['zero_divisors'])}")
    print(f"z_star: {len(zs)}")
    print(f"domain: {_cell(info['domain'])}")
    print(f"z2xD_witness: {info['z2xD_witness'] or 'none'}")
    print(f"ann_witness: {info['ann_witness'] or 'none'}")
    return EXIT_OK


def _render_row(row: InvariantRow, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(row.to_dict()) + "\n"
    failed = ";".join(c.name for c in (check(row) for check in ROW_CHECKS) if c.verdict == "fail")
    if fmt == "csv":
        cells = [_cell(getattr(row, col)) for col in CSV_COLUMNS[:-1]] + [failed]
        return ",".join(CSV_COLUMNS) + "\n" + ",".join(cells) + "\n"
    lines = [
        f"spec: {row.spec}",
        f"order: {row.order}",
        f"z_star: {row.z_star}",
        f"gamma: {row.gamma} witness {_fmt_set(row.gamma_witness)}",
        f"gamma_t: {_cell(row.gamma_t)} witness {_fmt_set(row.gamma_t_witness or [])}",
        f"girth: {_cell(row.girth)}",
        f"diameter: {_cell(row.diameter)}",
        f"z2xD: {_cell(row.z2xD)}" + (f" (e = {row.z2xD_witness})" if row.z2xD else ""),
        f"ann_witness: {row.ann_witness or 'none'}",
        f"universal_vertex: {row.universal_vertex or 'none'}",
    ]
    return "\n".join(lines) + "\n"


def cmd_invariants(args, config: CliConfig) -> int:
    spec = canonical(args.spec)
    cache = None if args.no_cache else InvariantCache(config.cache_dir)
    row = cache.get(spec) if cache else None
    if row is None:
        row = invariant_row(spec)
        if row.skip_reason and row.skip_reason.startswith("compile error"):
            _err(row.skip_reason)
            return EXIT_PARSE
        if cache and not row.skipped:
            try:
                cache.put(spec, row)
            except OSError as exc:
                _err(f"cache write failed: {exc}")
    if row.skipped:
        _err(f"{spec}: empty zero-divisor graph")
        return EXIT_EMPTY
    sys.stdout.write(_render_row(row, config.fmt))
    return EXIT_OK


def cmd_export(args) -> int:
    spec, ring = _compile(args.spec)
    g = build_zdg(ring)
    text = to_dot(g) if args.format == "dot" else to_json(g)
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        Path(args.out).write_text(text, encoding="utf-8")
    except OSError as exc:
        _err(f"cannot write {args.out}: {exc}")
        return EXIT_IO
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_verify(args, config: CliConfig) -> int:
    if args.ring:
        catalog = Catalog([canonical(s) for s in args.ring])
    else:
        catalog = catalog_default(config.bounds)
    report: VerificationReport = run_all(catalog, jobs=config.jobs, clique_cap=args.clique_cap)
    fmt = args.format
    if fmt is None:
        fmt = "json" if args.out and str(args.out).endswith(".json") else "csv"
    body = report.to_json() if fmt == "json" else report.to_csv()
    human = sys.stdout
    if args.out is None:
        sys.stdout.write(body)
        human = sys.stderr
    else:
        try:
            Path(args.out).write_text(body, encoding="utf-8")
        except OSError as exc:
            _err(f"cannot write {args.out}: {exc}")
            return EXIT_IO
    skipped = sum(r.skipped for r in report.rows)
    print(f"rings: {len(report.rows)} (skipped {skipped})", file=human)
    for name, counts in report.summary().items():
        print(f"  {name}: pass {counts['pass']} fail {counts['fail']} skip {counts['skip']}", file=human)
    for c in report.failures:
        print(f"FAIL {c.name} {c.spec} {json.dumps(c.to_dict()['detail'])}", file=human)
    return EXIT_THEOREM if report.failures else EXIT_OK


def cmd_solve(args) -> int:
    try:
        text = Path(args.graph).read_text(encoding="utf-8")
    except OSError as exc:
        _err(f"cannot read {args.graph}: {exc}")
        return EXIT_IO
    try:
        g = read_graph(text)
    except GraphFormatError as exc:
        _err(f"{args.graph}: {exc}")
        return EXIT_PARSE
    dom = domination_number(g)
    out = {"gamma": dom.value, "gamma_witness": list(dom.witness)}
    if args.total:
        tot = total_domination_number(g)
        out["gamma_t"] = tot.value
        out["gamma_t_witness"] = list(tot.witness) if tot.witness is not None else None
    if args.format == "json":
        print(json.dumps({k: _cell(v) if isinstance(v, float) else v for k, v in out.items()}))
        return EXIT_OK
    print(f"gamma: {dom.value} {_fmt_set(map(str, dom.witness))}")
    if args.total:
        wit = "" if out["gamma_t_witness"] is None else " " + _fmt_set(map(str, out["gamma_t_witness"]))
        print(f"gamma_t: {_cell(out['gamma_t'])}{wit}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zdg", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"zdg {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ring-info", help="order, zero-divisors and structural witnesses")
    s.add_argument("spec")
    s.add_argument("--format", choices=["text", "json"], default="text")

    s = sub.add_parser("invariants", help="gamma, gamma_t, girth, diameter and witnesses")
    s.add_argument("spec")
    s.add_argument("--format", choices=["text", "json", "csv"], default="text")
    s.add_argument("--no-cache", action="store_true")

    s = sub.add_parser("export", help="write the zero-divisor graph as DOT or JSON")
    s.add_argument("spec")
    s.add_argument("--format", choices=["dot", "json"], default="dot")
    s.add_argument("--out")

    s = sub.add_parser("verify", help="check every theorem over a ring catalog")
    s.add_argument("--max-zn", type=int, default=Bounds.max_zn)
    s.add_argument("--max-product-factor", type=int, default=Bounds.max_product_factor)
    s.add_argument("--product-arity", type=int, default=Bounds.product_arity)
    s.add_argument("--no-special", action="store_true", help="omit quotient rings and mixed products")
    s.add_argument("--ring", action="append", metavar="SPEC", help="verify these rings instead of the catalog")
    s.add_argument("--clique-cap", type=int, default=30)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.add_argument("--format", choices=["csv", "json"])

    s = sub.add_parser("solve", help="domination numbers of a graph file")
    s.add_argument("--graph", required=True)
    s.add_argument("--total", action="store_true")
    s.add_argument("--format", choices=["text", "json"], default="text")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "ring-info":
            return cmd_ring_info(args)
        if args.command == "invariants":
            return cmd_invariants(args, CliConfig.from_env(fmt=args.format))
        if args.command == "export":
            return cmd_export(args)
        if args.command == "verify":
            if args.jobs < 1:
                _err("--jobs must be at least 1")
                return EXIT_PARSE
            bounds = Bounds(args.max_zn, args.max_product_factor, args.product_arity, not args.no_special)
            return cmd_verify(args, CliConfig.from_env(bounds=bounds, jobs=args.jobs))
        return cmd_solve(args)
    except (RingSyntaxError, PresentationError) as exc:
        _err(str(exc))
        return EXIT_PARSE
    except EmptyGraphError as exc:
        _err(str(exc))
        return EXIT_EMPTY
    except ZdgError as exc:
        _err(str(exc))
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
