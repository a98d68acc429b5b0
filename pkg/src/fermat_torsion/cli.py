"""Command-line frontend.

    ftl catalog {flex|sextactic|type9}
    ftl tangents {sextactic|type9}
    ftl conics {sextactic|type9}
    ftl census {sextactic|type9}
    ftl verify --all

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from pathlib import Path

from .arrangements import (
    CensusError,
    DegeneracyError,
    TheoremViolation,
    conic_catalog,
    shadow_census,
    tangent_analysis,
)
from .catalogs import CatalogError, PointCatalog, VerificationFailure, catalog
from .polynomials import hom_eval
from .projective import FERMAT
from .verify import Check, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
DEFAULT_OUT = "ftl_out"


class CacheError(RuntimeError):
    pass


# -- serialization -------------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def flat(e) -> str:
    """Basis coefficients of a field element as "c0;c1;..." (lossy view)."""
    return ";".join(str(c) for c in e.coeffs)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def render_catalog(cat: PointCatalog, fmt: str) -> str:
    if fmt == "json":
        return dumps(cat.to_json())
    if fmt == "csv":
        return _csv(["index", "x", "y", "z"],
                    [[i] + [flat(c) for c in P.coords] for i, P in enumerate(cat.points)])
    lines = [f"{cat.kind}: {len(cat)} points over {cat.field}"]
    lines += [f"{i:4d}  {P}" for i, P in enumerate(cat.points)]
    return "\n".join(lines) + "\n"


def render_tangents(rep, fmt: str) -> str:
    if fmt == "json":
        return dumps(rep.to_json())
    if fmt == "csv":
        rows = []
        for i, e in enumerate(rep.entries):
            rows.append([i] + [flat(c) for c in e.base.coords] + [flat(c) for c in e.line.coeffs]
                        + [flat(c) for c in e.residual.coords] + [e.classification])
        return _csv(["index", "x", "y", "z", "u", "v", "w", "rx", "ry", "rz", "residual_kind"], rows)
    lines = [f"tangent lines at {rep.kind} points"]
    for i, e in enumerate(rep.entries):
        lines.append(f"{i:4d}  {e.base} -> {e.residual} ({e.classification})")
    if rep.orbits:
        lines.append(f"{len(rep.orbits)} orbits: " + " ".join(str(list(o)) for o in rep.orbits))
    return "\n".join(lines) + "\n"


def render_conics(cc, fmt: str) -> str:
    if fmt == "json":
        return dumps(cc.to_json())
    if fmt == "csv":
        rows = [[k] + [flat(c) for c in oc.conic.coeffs] + list(pair)
                for k, (oc, pair) in enumerate(zip(cc.conics, cc.base_pairs))]
        return _csv(["index", "a", "b", "c", "d", "e", "f", "base_i", "base_j"], rows)
    lines = [f"{len(cc.conics)} {cc.kind} conics"]
    for k, (oc, pair) in enumerate(zip(cc.conics, cc.base_pairs)):
        lines.append(f"{k:4d}  base {pair}  {oc.conic}")
    return "\n".join(lines) + "\n"


def render_census(cs, fmt: str) -> str:
    if fmt == "json":
        return dumps(cs.to_json())
    if fmt == "csv":
        rows = [[i] + [flat(c) for c in P.coords] + [k, " ".join(map(str, ids))]
                for i, (P, k, ids) in enumerate(cs.points)]
        return _csv(["index", "x", "y", "z", "count", "conics"], rows)
    lines = [f"{cs.kind} census: {cs.total} points, strata {cs.strata}"]
    for k, pts in cs.special().items():
        lines.append(f"{len(pts)} points on {k} conics:")
        lines += [f"  {P}" for P in pts]
    return "\n".join(lines) + "\n"


# -- catalog cache ---------------------------------------------------------------


def _sidecar(path: Path) -> Path:
    return path.with_name(path.name + ".sha256")


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def write_cached(path: Path, text: str) -> None:
    data = text.encode()
    path.write_bytes(data)
    _sidecar(path).write_text(_digest(data) + "\n")


def load_cached_catalog(path: Path) -> PointCatalog:
    """Read a cached catalog, checking its checksum and that every point is on F."""
    side = _sidecar(path)
    if not side.exists():
        raise CacheError(f"{path} has no checksum file")
    data = path.read_bytes()
    if _digest(data) != side.read_text().strip():
        raise CacheError(f"checksum mismatch for {path}")
    try:
        cat = PointCatalog.from_json(json.loads(data))
    except (ValueError, KeyError, TypeError) as exc:
        raise CacheError(f"unreadable catalog {path}: {exc}") from exc
    off = [P for P in cat.points if hom_eval(FERMAT, P.coords)]
    if off:
        raise CacheError(f"{path}: {len(off)} cached points are not on F")
    return cat


def cached_catalog_check(out: Path) -> Check | None:
    """Revalidate any cached catalog files in ``out`` against fresh ones."""
    found = sorted(out.glob("catalog_*.json")) if out.is_dir() else []
    if not found:
        return None
    bad = {}
    for path in found:
        try:
            cat = load_cached_catalog(path)
            if cat.points != catalog(cat.kind).points:
                bad[path.name] = "differs from a fresh build"
        except CacheError as exc:
            bad[path.name] = str(exc)
    return Check("cached_catalogs", "cached catalog files revalidate", not bad,
                 {}, bad, {"files": [p.name for p in found]})


# -- commands --------------------------------------------------------------------


def _write(out: Path, name: str, text: str, cache: bool = False) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    if cache:
        write_cached(path, text)
    else:
        path.write_text(text)
    return path


def cmd_catalog(args) -> int:
    ext = args.format
    path = args.out / f"catalog_{args.kind}.{ext}"
    if ext == "json" and args.cache and path.exists():
        cached = load_cached_catalog(path)
        if cached.kind != args.kind:
            raise CacheError(f"{path} holds a {cached.kind} catalog")
        print(f"{path} (cached, {len(cached)} points)")
        return EXIT_OK
    cat = catalog(args.kind)
    _write(args.out, path.name, render_catalog(cat, ext), cache=ext == "json")
    print(f"{path} ({len(cat)} points)")
    return EXIT_OK


def cmd_tangents(args) -> int:
    rep = tangent_analysis(args.kind, args.threads)
    path = _write(args.out, f"tangents_{args.kind}.{args.format}", render_tangents(rep, args.format))
    print(f"{path} ({len(rep.entries)} tangent lines)")
    return EXIT_OK


def cmd_conics(args) -> int:
    cc = conic_catalog(args.kind, args.threads)
    path = _write(args.out, f"conics_{args.kind}.{args.format}", render_conics(cc, args.format))
    print(f"{path} ({len(cc.conics)} conics)")
    return EXIT_OK


def cmd_census(args) -> int:
    cs = shadow_census(args.kind, args.threads)
    path = _write(args.out, f"census_{args.kind}.{args.format}", render_census(cs, args.format))
    print(f"{path} ({cs.total} points, strata {cs.strata})")
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.all:
        print("verify: pass --all", file=sys.stderr)
        return EXIT_USAGE
    extra = []
    if args.cache:
        check = cached_catalog_check(args.out)
        if check is not None:
            extra.append(check)
    report = run_all(args.threads, extra)
    print(report.to_text())
    if args.format == "json":
        _write(args.out, "verify.json", dumps(report.to_json()))
    failure = report.first_failure()
    if failure is not None:
        print(f"first failure: {failure.name}: {json.dumps(failure.to_json()['computed'])}",
              file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _threads(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("thread count must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=None,
                        help="output directory (default: $FTL_OUT or ./ftl_out)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--threads", type=_threads, default=1)
    common.add_argument("--no-cache", dest="cache", action="store_false",
                        help="ignore and do not revalidate cached catalogs")

    p = argparse.ArgumentParser(prog="ftl", description="Torsion-point arrangements on x^3 + y^3 + z^3 = 0")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("catalog", parents=[common], help="flex, sextactic or type-9 points")
    c.add_argument("kind", choices=("flex", "sextactic", "type9"))
    c.set_defaults(func=cmd_catalog)
    for name, func, helptext in (
        ("tangents", cmd_tangents, "tangent-line residuals"),
        ("conics", cmd_conics, "osculating conics through point pairs"),
        ("census", cmd_census, "intersection census of the conics"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("kind", choices=("sextactic", "type9"))
        s.set_defaults(func=func)
    v = sub.add_parser("verify", parents=[common], help="run every acceptance check")
    v.add_argument("--all", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.out is None:
        args.out = Path(os.environ.get("FTL_OUT") or DEFAULT_OUT)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (CacheError, CatalogError, VerificationFailure, TheoremViolation,
            CensusError, DegeneracyError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
